#include "horo/word_metric.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "horo/group_io.hpp"

namespace horo {

namespace {

std::vector<std::int64_t> key_of(const GroupElement& g) {
  return std::vector<std::int64_t>(g.coords().data(), g.coords().data() + g.coords().size());
}

GroupElement element_of(const GroupShape& shape, const std::int64_t* key) {
  GroupElement::Coords c(shape.coordinate_count());
  for (int i = 0; i < c.size(); ++i) c(i) = key[i];
  return GroupElement(shape, std::move(c));
}

std::vector<std::vector<std::int64_t>> generator_keys(const MarkedGroup& G) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& g : G.generators()) out.push_back(key_of(g.element));
  return out;
}

}  // namespace

std::string_view to_string(LengthStatus s) {
  switch (s) {
    case LengthStatus::Exact: return "exact";
    case LengthStatus::ExceedsBudget: return "exceeds_budget";
    case LengthStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// DistanceTable / ball

DistanceTable::DistanceTable(const MarkedGroup& G, int radius)
    : shape_(G.shape()), hash_(G.hash()), radius_(radius), table_(G.shape().coordinate_count()) {}

std::optional<int> DistanceTable::distance(const std::int64_t* key) const {
  if (const std::int32_t* d = table_.find(key)) return *d;
  return std::nullopt;
}

std::optional<int> DistanceTable::distance(const GroupElement& g) const {
  if (!(g.shape() == shape_)) throw DomainError("group kind mismatch");
  return distance(g.coords().data());
}

std::vector<std::pair<GroupElement, int>> DistanceTable::entries() const {
  std::vector<std::pair<GroupElement, int>> out;
  out.reserve(table_.size());
  table_.for_each([&](const std::int64_t* key, std::int32_t d) {
    out.emplace_back(element_of(shape_, key), d);
  });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  return out;
}

std::vector<std::size_t> DistanceTable::sphere_sizes() const {
  std::vector<std::size_t> out(radius_ + 1, 0);
  table_.for_each([&](const std::int64_t*, std::int32_t d) { ++out[d]; });
  return out;
}

DistanceTable DistanceTable::truncated(int radius) const {
  if (radius > radius_) throw DomainError("cannot truncate a ball to a larger radius");
  DistanceTable out(*this);
  out.radius_ = radius;
  out.table_ = FlatTable(table_.stride(), table_.size());
  table_.for_each([&](const std::int64_t* key, std::int32_t d) {
    if (d <= radius) out.table_.insert(key, d);
  });
  return out;
}

DistanceTable ball(const MarkedGroup& G, int radius, const SearchLimits& limits) {
  if (radius < 0) throw DomainError("ball radius must be nonnegative");
  const int stride = G.shape().coordinate_count();
  const auto gens = generator_keys(G);
  DistanceTable out(G, radius);
  std::vector<std::int64_t> frontier(stride, 0);
  out.table_.insert(frontier.data(), 0);
  std::vector<std::int64_t> next, scratch(stride);
  for (int r = 1; r <= radius && !frontier.empty(); ++r) {
    next.clear();
    for (std::size_t f = 0; f < frontier.size(); f += stride) {
      for (const auto& s : gens) {
        multiply_coords(G.shape(), &frontier[f], s.data(), scratch.data());
        if (out.table_.insert(scratch.data(), r)) {
          next.insert(next.end(), scratch.begin(), scratch.end());
          if (out.table_.size() > limits.max_entries)
            throw BudgetError("ball exceeds the entry budget", r - 1);
        }
      }
    }
    frontier.swap(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSONL cache

void save_ball(const DistanceTable& table, const std::string& path) {
  std::ofstream out(path + ".tmp");
  if (!out) throw DomainError("cannot write ball cache '" + path + "'");
  nlohmann::json header;
  header["group_hash"] = table.group_hash();
  header["radius"] = table.radius();
  header["key_encoding"] = "int64 coordinates: " + std::string(to_string(table.shape().kind)) +
                           " rank " + std::to_string(table.shape().rank);
  header["size"] = table.size();
  out << header.dump() << '\n';
  for (const auto& [g, d] : table.entries()) {
    nlohmann::json rec;
    rec["key"] = key_of(g);
    rec["dist"] = d;
    out << rec.dump() << '\n';
  }
  out.close();
  std::filesystem::rename(path + ".tmp", path);
}

std::optional<DistanceTable> load_ball(const MarkedGroup& G, const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  const nlohmann::json header = parse_json(line);
  if (header.value("group_hash", "") != G.hash()) return std::nullopt;
  DistanceTable out(G, header.at("radius").get<int>());
  const int stride = G.shape().coordinate_count();
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = parse_json(line);
    } catch (const ParseError& e) {
      throw ParseError("corrupt ball cache '" + path + "'", line_no, e.column());
    }
    const auto key = rec.at("key").get<std::vector<std::int64_t>>();
    if (static_cast<int>(key.size()) != stride) throw ParseError("ball cache key width", line_no, 1);
    out.table_.insert(key.data(), rec.at("dist").get<int>());
  }
  if (out.table_.size() != header.value("size", out.table_.size()))
    throw ParseError("ball cache '" + path + "' is truncated");
  return out;
}

std::string cache_directory(const std::string& fallback) {
  if (const char* env = std::getenv("HOROCALC_CACHE"); env && *env) return env;
  return fallback;
}

DistanceTable cached_ball(const MarkedGroup& G, int radius, const std::string& dir,
                          const SearchLimits& limits) {
  if (dir.empty()) return ball(G, radius, limits);
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/ball-" + G.hash() + ".jsonl";
  if (auto cached = load_ball(G, path); cached && cached->radius() >= radius)
    return cached->radius() == radius ? std::move(*cached) : cached->truncated(radius);
  DistanceTable table = ball(G, radius, limits);
  save_ball(table, path);
  return table;
}

// ---------------------------------------------------------------------------
// WordMetric

WordMetric::WordMetric(const MarkedGroup& G, SearchLimits limits)
    : G_(G),
      limits_(limits),
      polytope_(Polytope::from_generators(G)),
      heuristic_(polytope_.heuristic()),
      gens_(generator_keys(G)) {}

void WordMetric::attach_ball(std::shared_ptr<const DistanceTable> table) {
  if (table && table->group_hash() != G_.hash())
    throw DomainError("attached ball belongs to a different generating set");
  std::lock_guard lock(mutex_);
  ball_ = std::move(table);
}

int WordMetric::lower_bound(const GroupElement& g) const {
  return static_cast<int>(heuristic_.ceil_at(g.coords().data()));
}

LengthResult WordMetric::bounded_search(const GroupElement& g, int bound) const {
  const GroupShape& shape = G_.shape();
  const int stride = shape.coordinate_count();
  const int ab = shape.abelian_rank();
  const std::int64_t* target = g.coords().data();

  LengthResult res;
  res.budget = bound;
  FlatTable fwd(stride), bwd(stride);
  std::vector<std::int64_t> ff(stride, 0), bf(target, target + stride);
  fwd.insert(ff.data(), 0);
  bwd.insert(bf.data(), 0);
  int kf = 0, kb = 0;
  std::vector<std::int64_t> next, y(stride), rem(ab);

  while (true) {
    if (kf + kb >= bound || ff.empty() || bf.empty()) {
      res.status = LengthStatus::ExceedsBudget;
      res.stored = fwd.size() + bwd.size();
      return res;
    }
    const bool forward = ff.size() <= bf.size();
    std::vector<std::int64_t>& frontier = forward ? ff : bf;
    FlatTable& mine = forward ? fwd : bwd;
    const FlatTable& other = forward ? bwd : fwd;
    const int depth = (forward ? kf : kb) + 1;
    int best = std::numeric_limits<int>::max();
    next.clear();
    for (std::size_t f = 0; f < frontier.size(); f += stride) {
      for (const auto& s : gens_) {
        multiply_coords(shape, &frontier[f], s.data(), y.data());
        if (mine.find(y.data())) continue;
        // Forward nodes still need |y^-1 g|, backward nodes |y|; both are
        // bounded below by the gauge of the abelianized difference.
        if (forward)
          for (int i = 0; i < ab; ++i) rem[i] = checked_sub(target[i], y[i]);
        else
          for (int i = 0; i < ab; ++i) rem[i] = y[i];
        if (depth + heuristic_.ceil_at(rem.data()) > bound) continue;
        mine.insert(y.data(), depth);
        next.insert(next.end(), y.begin(), y.end());
        if (const std::int32_t* d = other.find(y.data())) best = std::min(best, depth + *d);
        if (fwd.size() + bwd.size() > limits_.max_entries) {
          res.status = LengthStatus::Inconclusive;
          res.stored = fwd.size() + bwd.size();
          return res;
        }
      }
    }
    frontier.swap(next);
    (forward ? kf : kb) = depth;
    if (best != std::numeric_limits<int>::max()) {
      res.status = LengthStatus::Exact;
      res.length = best;
      res.stored = fwd.size() + bwd.size();
      return res;
    }
  }
}

LengthResult WordMetric::length(const GroupElement& g, int budget) const {
  if (!(g.shape() == G_.shape())) throw DomainError("group kind mismatch");
  if (budget < 0) throw DomainError("length budget must be nonnegative");
  const auto key = key_of(g);
  int lb = lower_bound(g);
  {
    std::lock_guard lock(mutex_);
    ++queries_;
    if (auto it = exact_.find(key); it != exact_.end()) {
      LengthResult r;
      r.budget = budget;
      r.lower_bound = lb;
      r.length = it->second;
      r.status = it->second <= budget ? LengthStatus::Exact : LengthStatus::ExceedsBudget;
      if (!r.exact()) r.length = -1;
      return r;
    }
    if (ball_) {
      if (auto d = ball_->distance(key.data())) {
        exact_.emplace(key, *d);
        LengthResult r;
        r.budget = budget;
        r.lower_bound = lb;
        r.length = *d <= budget ? *d : -1;
        r.status = *d <= budget ? LengthStatus::Exact : LengthStatus::ExceedsBudget;
        return r;
      }
      lb = std::max(lb, ball_->radius() + 1);
    }
    if (auto it = exceeds_.find(key); it != exceeds_.end()) lb = std::max(lb, it->second + 1);
  }

  LengthResult r;
  r.budget = budget;
  r.lower_bound = lb;
  if (g.is_identity()) {
    r.status = LengthStatus::Exact;
    r.length = 0;
    return r;
  }
  if (lb > budget) {
    r.status = LengthStatus::ExceedsBudget;
    return r;
  }
  // Bounds lb, lb+1, lb+2, lb+4, ... up to budget. A search with bound B is
  // exact whenever the length is at most B, so the schedule only affects cost.
  int step = 1;
  for (int bound = lb;; bound = std::min(budget, bound + step), step *= 2) {
    LengthResult attempt = bounded_search(g, bound);
    attempt.lower_bound = r.lower_bound;
    attempt.budget = budget;
    std::lock_guard lock(mutex_);
    if (attempt.status == LengthStatus::Exact) {
      exact_[key] = attempt.length;
      return attempt;
    }
    if (attempt.status == LengthStatus::Inconclusive) return attempt;
    auto& proven = exceeds_[key];
    proven = std::max(proven, bound);
    if (bound >= budget) {
      attempt.status = LengthStatus::ExceedsBudget;
      return attempt;
    }
  }
}

int WordMetric::exact_length(const GroupElement& g, int budget) const {
  const LengthResult r = length(g, budget);
  if (r.exact()) return r.length;
  if (r.status == LengthStatus::ExceedsBudget)
    throw BudgetError("word length exceeds budget " + std::to_string(budget), budget);
  throw BudgetError("word length search ran out of memory", r.lower_bound - 1);
}

bool WordMetric::is_geodesic_word(const Word& w) const {
  const GroupElement g = G_.evaluate(w);
  if (w.empty()) return true;
  const int n = static_cast<int>(w.size());
  const LengthResult r = length(g, n - 1);
  if (r.status == LengthStatus::ExceedsBudget) return true;
  if (r.exact()) return false;
  throw BudgetError("geodesic test inconclusive (memory)", r.lower_bound - 1);
}

LengthResult word_length(const MarkedGroup& G, const GroupElement& g, int budget,
                         const SearchLimits& limits) {
  return WordMetric(G, limits).length(g, budget);
}

bool is_geodesic_word(const MarkedGroup& G, const Word& w) {
  return WordMetric(G).is_geodesic_word(w);
}

FaceCertificate geodesic_certificate_by_face(const Polytope& P, const MarkedGroup& G,
                                             const Word& w) {
  if (w.empty()) return FaceCertificate::Certified;
  std::vector<int> idx = G.indices(w);
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return P.minimal_face(idx) ? FaceCertificate::Certified : FaceCertificate::Unknown;
}

FaceCertificate geodesic_certificate_by_face(const MarkedGroup& G, const Word& w) {
  return geodesic_certificate_by_face(Polytope::from_generators(G), G, w);
}

}  // namespace horo
