#include "horo/horoboundary.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "horo/group_io.hpp"

namespace horo {

namespace {

constexpr int kBaseLengthBudget = 256;
const SearchLimits kWindowBallLimits{4'000'000};

// One period of the first-quadrant staircase for the primitive direction
// (A, B), A, B >= 0, as 'x'/'y' steps.
std::string staircase(std::int64_t A, std::int64_t B, std::int64_t steps) {
  std::string out;
  out.reserve(static_cast<std::size_t>(steps));
  std::int64_t X = 0, Y = 0;
  for (std::int64_t i = 0; i < steps; ++i) {
    // Sign of the square centred at (X + 1/2, Y + 1/2) relative to the ray:
    // s > 0 centre above the ray, s < 0 below.
    const std::int64_t s = checked_sub(checked_mul(A, 2 * Y + 1), checked_mul(B, 2 * X + 1));
    bool step_x;
    if (s > 0) {
      step_x = true;
    } else if (s < 0) {
      step_x = false;
    } else {
      // Centre on the ray: this is on-line square number t (A, B odd).
      const std::int64_t t = ((2 * X + 1) / A - 1) / 2;
      step_x = t % 2 == 0;
    }
    if (step_x) {
      out.push_back('x');
      ++X;
    } else {
      out.push_back('y');
      ++Y;
    }
  }
  return out;
}

Word letters_of(const RaySpec& spec, const std::string& steps) {
  const Label lx = spec.a >= 0 ? "x" : "x~";
  const Label ly = spec.b >= 0 ? "y" : "y~";
  Word w;
  w.reserve(steps.size());
  for (char c : steps) w.push_back(c == 'x' ? lx : ly);
  return w;
}

std::int64_t digitized_period(const RaySpec& spec) {
  const std::int64_t A = std::abs(spec.a), B = std::abs(spec.b);
  const bool ties = A % 2 == 1 && B % 2 == 1;
  return (A + B) * (ties ? 2 : 1);
}

const Label& letter_at(const RaySpec& p, std::size_t i) {
  if (i < p.prefix.size()) return p.prefix[i];
  return p.block[(i - p.prefix.size()) % p.block.size()];
}

std::vector<GroupElement> ray_points(const MarkedGroup& G, const RaySpec& spec, int n) {
  std::vector<GroupElement> pts{G.identity()};
  const Word w = ray_prefix(spec, n);
  for (const auto& l : w) pts.push_back(mul(pts.back(), G.generator(G.index_of(l)).element));
  return pts;
}

}  // namespace

// ---------------------------------------------------------------------------
// RaySpec

RaySpec RaySpec::periodic(Word prefix, Word block) {
  if (block.empty()) throw DomainError("periodic ray needs a nonempty block");
  RaySpec s;
  s.kind = Kind::Periodic;
  s.prefix = std::move(prefix);
  s.block = std::move(block);
  return s;
}

RaySpec RaySpec::digitized(std::int64_t a, std::int64_t b) {
  if (a == 0 && b == 0) throw DomainError("digitized direction (0,0)");
  const std::int64_t g = std::gcd(a, b);
  RaySpec s;
  s.kind = Kind::Digitized;
  s.a = a / g;
  s.b = b / g;
  return s;
}

RaySpec RaySpec::digitized(const Rational& a, const Rational& b) {
  const BigInt l = lcm(BigInt(denominator(a)), BigInt(denominator(b)));
  return digitized(to_int64(Rational(a * l)), to_int64(Rational(b * l)));
}

Word ray_prefix(const RaySpec& spec, int n) {
  if (n < 0) throw DomainError("ray_prefix: negative length");
  if (spec.kind == RaySpec::Kind::Digitized)
    return letters_of(spec, staircase(std::abs(spec.a), std::abs(spec.b), n));
  Word w;
  w.reserve(n);
  for (int i = 0; i < n; ++i) w.push_back(letter_at(spec, i));
  return w;
}

RaySpec to_periodic(const RaySpec& spec) {
  if (spec.kind == RaySpec::Kind::Periodic) return spec;
  return RaySpec::periodic({}, ray_prefix(spec, static_cast<int>(digitized_period(spec))));
}

std::vector<Label> tail_letters(const RaySpec& spec) {
  const RaySpec p = to_periodic(spec);
  std::set<Label> s(p.block.begin(), p.block.end());
  return {s.begin(), s.end()};
}

RaySpec ray_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("ray spec must be a JSON object");
  if (doc.contains("digitized")) {
    const auto& d = doc.at("digitized");
    if (!d.is_array() || d.size() != 2) throw ParseError("\"digitized\" must be a pair [a, b]");
    return RaySpec::digitized(rational_from_json(d[0]), rational_from_json(d[1]));
  }
  if (doc.contains("periodic")) {
    const auto& p = doc.at("periodic");
    if (!p.is_object() || !p.contains("block") || !p.at("block").is_string())
      throw ParseError("\"periodic\" needs a \"block\" word");
    const std::string prefix = p.contains("prefix") ? p.at("prefix").get<std::string>() : "";
    return RaySpec::periodic(split_word(prefix), split_word(p.at("block").get<std::string>()));
  }
  throw ParseError("ray spec needs \"digitized\" or \"periodic\"");
}

RaySpec parse_ray(std::string_view text) { return ray_from_json(parse_json(text)); }

nlohmann::json ray_to_json(const RaySpec& spec) {
  nlohmann::json j;
  if (spec.kind == RaySpec::Kind::Digitized) {
    j["digitized"] = {spec.a, spec.b};
    j["tie_rule"] = kTieRule;
  } else {
    j["periodic"] = {{"prefix", join_word(spec.prefix)}, {"block", join_word(spec.block)}};
  }
  return j;
}

bool has_standard_grid(const MarkedGroup& G) {
  if (G.abelianization_dimension() != 2) return false;
  const auto x = G.find("x"), y = G.find("y");
  if (!x || !y) return false;
  const IntVector px = abelianize(G.generator(*x).element);
  const IntVector py = abelianize(G.generator(*y).element);
  return px(0) == 1 && px(1) == 0 && py(0) == 0 && py(1) == 1;
}

void validate_ray(const WordMetric& metric, const RaySpec& spec, int horizon) {
  const MarkedGroup& G = metric.group();
  if (spec.kind == RaySpec::Kind::Digitized) {
    if (!has_standard_grid(G))
      throw DomainError("digitized rays need generators x, y abelianizing to the unit grid");
  } else {
    G.indices(spec.prefix);
    G.indices(spec.block);
  }
  const Word w = ray_prefix(spec, horizon);
  if (geodesic_certificate_by_face(metric.polytope(), G, w) == FaceCertificate::Certified) return;
  if (!metric.is_geodesic_word(w))
    throw DomainError("ray is not geodesic within the first " + std::to_string(horizon) + " letters");
}

// ---------------------------------------------------------------------------
// Windows and Busemann values

HorofnWindow horofn_window(const WordMetric& metric, const GroupElement& x, int R, int budget) {
  const MarkedGroup& G = metric.group();
  HorofnWindow win;
  win.radius = R;
  win.base = x;
  const DistanceTable B = ball(G, R);
  const GroupElement xinv = inv(x);
  const int dx = metric.exact_length(xinv, budget);
  // One ball of radius |x| + R answers every query when it fits the budget.
  std::optional<DistanceTable> big;
  try {
    big.emplace(ball(G, dx + R, kWindowBallLimits));
  } catch (const BudgetError&) {
  }
  for (const auto& [w, d] : B.entries()) {
    (void)d;
    const GroupElement target = mul(xinv, w);
    const int dxw = big ? *big->distance(target) : metric.exact_length(target, dx + R);
    win.values.emplace_back(w, dxw - dx);
  }
  return win;
}

std::size_t lipschitz_violations(const std::vector<std::pair<GroupElement, int>>& values,
                                 const DistanceTable& table) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const GroupElement wi = inv(values[i].first);
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const auto d = table.distance(mul(wi, values[j].first));
      if (!d) throw DomainError("lipschitz check: distance table too small");
      if (std::abs(values[i].second - values[j].second) > *d) ++bad;
    }
  }
  return bad;
}

int busemann_lower_bound(const WordMetric& metric, const RaySpec& spec, const GroupElement& h) {
  const MarkedGroup& G = metric.group();
  const Polytope& P = metric.polytope();
  const RaySpec p = to_periodic(spec);
  const std::vector<Label> tail = tail_letters(p);
  auto pr = [&](const GroupElement& g) {
    const IntVector v = abelianize(g);
    RationalVector r(v.size());
    for (int i = 0; i < v.size(); ++i) r(i) = to_rational(v(i));
    return r;
  };
  std::optional<BigInt> best;
  if (P.has_interior_origin()) {
    const RationalVector ph = pr(h);
    for (const auto& facet : P.facets()) {
      const RationalVector f = facet.functional / facet.level;
      auto f_of = [&](const Label& l) { return Rational(f.dot(pr(G.generator(G.index_of(l)).element))); };
      if (!std::all_of(tail.begin(), tail.end(), [&](const Label& l) { return f_of(l) == 1; })) continue;
      Rational bound = -f.dot(ph);
      for (const auto& l : p.prefix) bound -= 1 - f_of(l);
      const BigInt c = ceil(bound);
      if (!best || c > *best) best = c;
    }
  }
  if (best) return static_cast<int>(to_int64(*best));
  return -metric.exact_length(h, kBaseLengthBudget);
}

BusemannEstimate busemann_eval(const WordMetric& metric, const RaySpec& spec, const GroupElement& h,
                               int horizon) {
  if (horizon < 0) throw DomainError("busemann_eval: negative horizon");
  const MarkedGroup& G = metric.group();
  BusemannEstimate est;
  est.requested_horizon = horizon;
  est.lower_bound = busemann_lower_bound(metric, spec, h);
  const Word w = ray_prefix(spec, horizon);
  GroupElement g = inv(h);
  const LengthResult first = metric.length(g, kBaseLengthBudget);
  if (!first.exact()) throw BudgetError("busemann_eval: |h| out of reach", -1);
  est.sequence.push_back(first.length);
  for (int n = 1; n <= horizon; ++n) {
    g = mul(g, G.generator(G.index_of(w[n - 1])).element);
    const int prev = est.sequence.back();
    const LengthResult r = metric.length(g, prev + n);
    if (r.status == LengthStatus::Inconclusive) {
      est.budget_exhausted = true;
      break;
    }
    if (!r.exact())
      throw std::logic_error("busemann_eval: |h^-1 gamma_n| - n increased at n = " + std::to_string(n));
    const int value = r.length - n;
    if (value < est.lower_bound)
      throw std::logic_error("busemann_eval: value below the certified lower bound");
    est.sequence.push_back(value);
  }
  est.horizon = static_cast<int>(est.sequence.size()) - 1;
  est.value = est.sequence.back();
  for (int n = est.horizon; n > 0 && est.sequence[n] == est.sequence[n - 1]; --n) ++est.stable_for;
  est.certified = est.value == est.lower_bound;
  return est;
}

// ---------------------------------------------------------------------------
// Comparisons

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::NotFound: return "not_found";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

ComparisonReport compare(const WordMetric& metric, const RaySpec& s1, const RaySpec& s2, int C, int N,
                         int M) {
  if (N < 0 || M < N || C < 0) throw DomainError("ray comparison needs 0 <= N <= M and C >= 0");
  const MarkedGroup& G = metric.group();
  const auto gamma = ray_points(G, s1, M);
  const auto eta = ray_points(G, s2, M);
  ComparisonReport rep;
  rep.N = N;
  rep.M = M;
  rep.slack = C;
  // A witness m for n also works for every m' > m and for n - 1, so the
  // search for n can start at the previous witness.
  int start = 0;
  for (int n = 0; n <= N; ++n) {
    bool found = false;
    for (int m = std::max(n, start); m <= M && !found; ++m) {
      const int budget = m - n + C;
      const LengthResult a = metric.distance(gamma[m], eta[n], budget);
      if (a.status == LengthStatus::Inconclusive) {
        rep.verdict = Verdict::Inconclusive;
        rep.failed_at = n;
        return rep;
      }
      if (!a.exact()) continue;
      const LengthResult b = metric.distance(eta[m], gamma[n], budget);
      if (b.status == LengthStatus::Inconclusive) {
        rep.verdict = Verdict::Inconclusive;
        rep.failed_at = n;
        return rep;
      }
      if (!b.exact()) continue;
      rep.witnesses.push_back({n, m});
      start = m;
      found = true;
    }
    if (!found) {
      rep.verdict = Verdict::NotFound;
      rep.failed_at = n;
      return rep;
    }
  }
  rep.verdict = Verdict::Verified;
  return rep;
}

}  // namespace

ComparisonReport same_busemann(const WordMetric& metric, const RaySpec& s1, const RaySpec& s2, int N,
                               int M) {
  return compare(metric, s1, s2, 0, N, M);
}

ComparisonReport reduced_equiv(const WordMetric& metric, const RaySpec& s1, const RaySpec& s2, int C,
                               int N, int M) {
  return compare(metric, s1, s2, C, N, M);
}

std::optional<CofinalWitness> cofinal_orbit_witness(const MarkedGroup& G, const RaySpec& s1,
                                                    const RaySpec& s2) {
  const RaySpec p1 = to_periodic(s1), p2 = to_periodic(s2);
  const std::size_t period = std::lcm(p1.block.size(), p2.block.size());
  const std::size_t n1 = p1.prefix.size() + p1.block.size();
  const std::size_t n2 = p2.prefix.size() + p2.block.size();
  for (std::size_t j = 0; j < n2; ++j) {
    for (std::size_t i = 0; i < n1; ++i) {
      // Once both positions are past their prefixes, agreement over one
      // common period means agreement forever.
      const std::size_t lead =
          std::max({p1.prefix.size() > i ? p1.prefix.size() - i : 0,
                    p2.prefix.size() > j ? p2.prefix.size() - j : 0, std::size_t(0)});
      bool equal = true;
      for (std::size_t k = 0; k < lead + period && equal; ++k)
        equal = letter_at(p1, i + k) == letter_at(p2, j + k);
      if (!equal) continue;
      CofinalWitness w;
      w.u = ray_prefix(p1, static_cast<int>(i));
      w.v = ray_prefix(p2, static_cast<int>(j));
      w.g = mul(G.evaluate(w.u), inv(G.evaluate(w.v)));
      return w;
    }
  }
  return std::nullopt;
}

RaySpec lift_ray(const MarkedGroup& G, const MarkedGroup& H, const std::map<Label, Label>& hom,
                 const RaySpec& spec) {
  auto image = [&](const Label& g) -> std::optional<Label> {
    if (auto it = hom.find(g); it != hom.end()) return it->second;
    if (auto it = hom.find(inverse_label(g)); it != hom.end()) return inverse_label(it->second);
    return std::nullopt;
  };
  std::map<Label, Label> preimage;
  for (const auto& gen : G.generators()) {
    const auto img = image(gen.label);
    if (!img) continue;
    if (!H.find(*img)) throw DomainError("label map sends '" + gen.label + "' outside the target");
    preimage.emplace(*img, gen.label);
  }
  auto lift = [&](const Label& l) {
    auto it = preimage.find(l);
    if (it == preimage.end()) throw DomainError("label '" + l + "' has no preimage");
    return it->second;
  };
  if (spec.kind == RaySpec::Kind::Digitized && has_standard_grid(G) &&
      preimage.count("x") && preimage.count("y") && preimage.at("x") == "x" && preimage.at("y") == "y")
    return spec;
  const RaySpec p = to_periodic(spec);
  Word prefix, block;
  for (const auto& l : p.prefix) prefix.push_back(lift(l));
  for (const auto& l : p.block) block.push_back(lift(l));
  return RaySpec::periodic(std::move(prefix), std::move(block));
}

}  // namespace horo
