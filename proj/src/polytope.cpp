#include "horo/polytope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace horo {

namespace {

using Rows = std::vector<RationalVector>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Rows& rows, int cols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p](c) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational lead = rows[r](c);
    rows[r] /= lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i](c) == 0) continue;
      const Rational f = rows[i](c);
      rows[i] -= rows[r] * f;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank_of(Rows rows, int cols) { return static_cast<int>(rref(rows, cols).size()); }

// Basis of {c : row . c = 0 for all rows}.
Rows nullspace(Rows rows, int cols) {
  const std::vector<int> pivots = rref(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  Rows basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v = RationalVector::Zero(cols);
    v(free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v(pivots[i]) = -rows[i](free);
    basis.push_back(v);
  }
  return basis;
}

RationalMatrix invert(const RationalMatrix& m) {
  const int n = static_cast<int>(m.rows());
  Rows rows;
  for (int i = 0; i < n; ++i) {
    RationalVector r = RationalVector::Zero(2 * n);
    r.head(n) = m.row(i).transpose();
    r(n + i) = 1;
    rows.push_back(r);
  }
  if (static_cast<int>(rref(rows, n).size()) != n) throw DomainError("singular matrix");
  RationalMatrix inv(n, n);
  for (int i = 0; i < n; ++i) inv.row(i) = rows[i].tail(n).transpose();
  return inv;
}

// Scales a nonzero rational vector to a primitive integer vector; returns the
// positive factor used.
Rational make_primitive(RationalVector& v) {
  BigInt den_lcm = 1;
  for (int i = 0; i < v.size(); ++i) den_lcm = lcm(den_lcm, BigInt(denominator(v(i))));
  BigInt num_gcd = 0;
  for (int i = 0; i < v.size(); ++i) num_gcd = gcd(num_gcd, BigInt(numerator(v(i) * den_lcm)));
  const Rational factor = Rational(den_lcm, num_gcd == 0 ? BigInt(1) : num_gcd);
  v *= factor;
  return factor;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

int affine_dimension(const std::vector<RationalVector>& pts) {
  if (pts.empty()) return -1;
  Rows diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return diffs.empty() ? 0 : rank_of(diffs, static_cast<int>(pts[0].size()));
}

GaugeHeuristic::GaugeHeuristic(std::vector<std::vector<std::int64_t>> normals,
                               std::vector<std::int64_t> scales)
    : normals_(std::move(normals)), scales_(std::move(scales)) {}

std::int64_t GaugeHeuristic::ceil_at(const std::int64_t* v) const {
  std::int64_t best = 0;
  for (std::size_t k = 0; k < normals_.size(); ++k) {
    std::int64_t dot = 0;
    for (std::size_t i = 0; i < normals_[k].size(); ++i)
      dot = checked_add(dot, checked_mul(normals_[k][i], v[i]));
    best = std::max(best, ceil_div(dot, scales_[k]));
  }
  return best;
}

Polytope::Polytope(std::vector<RationalVector> points) : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("polytope needs at least one point");
  ambient_ = static_cast<int>(points_[0].size());
  for (const auto& p : points_)
    if (p.size() != ambient_) throw DomainError("polytope points have mixed dimensions");

  // Distinct points, remembering which inputs map to each.
  std::vector<RationalVector> unique;
  std::vector<int> unique_of(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    auto it = std::find(unique.begin(), unique.end(), points_[i]);
    unique_of[i] = static_cast<int>(it - unique.begin());
    if (it == unique.end()) unique.push_back(points_[i]);
  }
  if (static_cast<int>(unique.size()) > kMaxPoints)
    throw DomainError("polytope: at most " + std::to_string(kMaxPoints) + " distinct points");

  // Basis of the affine hull and the pivot rows on which it is invertible.
  const RationalVector& p0 = unique[0];
  Rows basis;
  for (std::size_t i = 1; i < unique.size(); ++i) {
    Rows trial = basis;
    trial.push_back(unique[i] - p0);
    if (rank_of(trial, ambient_) == static_cast<int>(trial.size())) basis = std::move(trial);
  }
  dim_ = static_cast<int>(basis.size());
  if (dim_ > kMaxDimension)
    throw DomainError("polytope: affine hull has dimension " + std::to_string(dim_) +
                      " (at most " + std::to_string(kMaxDimension) + " supported)");
  if (dim_ == 0) return;

  Rows basis_rows = basis;
  const std::vector<int> pivots = rref(basis_rows, ambient_);
  RationalMatrix R(dim_, dim_);
  for (int r = 0; r < dim_; ++r)
    for (int j = 0; j < dim_; ++j) R(r, j) = basis[j](pivots[r]);
  const RationalMatrix Rinv = invert(R);

  auto intrinsic = [&](const RationalVector& p) {
    RationalVector d(dim_);
    for (int r = 0; r < dim_; ++r) d(r) = p(pivots[r]) - p0(pivots[r]);
    return RationalVector(Rinv * d);
  };
  std::vector<RationalVector> T;
  for (const auto& p : unique) T.push_back(intrinsic(p));

  // Facets: hyperplanes through dim_ affinely independent points with all
  // points on one side.
  std::set<std::vector<int>> seen;
  std::vector<std::pair<std::vector<int>, RationalVector>> facet_data;
  for_each_subset(static_cast<int>(unique.size()), dim_, [&](const std::vector<int>& sub) {
    Rows diffs;
    for (std::size_t j = 1; j < sub.size(); ++j) diffs.push_back(T[sub[j]] - T[sub[0]]);
    const Rows normal = nullspace(diffs, dim_);
    if (normal.size() != 1) return;
    RationalVector c = normal[0];
    const Rational h = c.dot(T[sub[0]]);
    bool below = true, above = true;
    std::vector<int> on;
    for (std::size_t i = 0; i < T.size(); ++i) {
      const Rational v = c.dot(T[i]);
      if (v > h) below = false;
      if (v < h) above = false;
      if (v == h) on.push_back(static_cast<int>(i));
    }
    if (!below && !above) return;
    if (!below) c = -c;
    if (seen.insert(on).second) facet_data.emplace_back(on, c);
  });

  auto ambient_face = [&](const std::vector<int>& on_unique, const RationalVector& c) {
    Face f;
    f.functional = RationalVector::Zero(ambient_);
    const RationalVector row = (c.transpose() * Rinv).transpose();
    for (int r = 0; r < dim_; ++r) f.functional(pivots[r]) = row(r);
    make_primitive(f.functional);
    f.level = f.functional.dot(unique[on_unique[0]]);
    Rows mp;
    for (int u : on_unique) mp.push_back(unique[u]);
    f.dimension = affine_dimension(mp);
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (std::binary_search(on_unique.begin(), on_unique.end(), unique_of[i]))
        f.members.push_back(static_cast<int>(i));
    return f;
  };
  for (const auto& [on, c] : facet_data) facets_.push_back(ambient_face(on, c));

  // Intersection closure over unique-index member sets.
  std::set<std::vector<int>> all(seen.begin(), seen.end());
  std::vector<std::vector<int>> frontier(all.begin(), all.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    const std::vector<std::vector<int>> current(all.begin(), all.end());
    for (const auto& a : frontier)
      for (const auto& b : current) {
        std::vector<int> meet;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
        if (!meet.empty() && all.insert(meet).second) next.push_back(meet);
      }
    frontier = std::move(next);
  }

  for (const auto& on : all) {
    Face f;
    f.functional = RationalVector::Zero(ambient_);
    for (std::size_t k = 0; k < facet_data.size(); ++k) {
      const auto& facet_on = facet_data[k].first;
      if (std::includes(facet_on.begin(), facet_on.end(), on.begin(), on.end()))
        f.functional += facets_[k].functional;
    }
    make_primitive(f.functional);
    // Validate: the argmax set of the summed functional is exactly `on`.
    Rational best = f.functional.dot(unique[0]);
    for (const auto& p : unique) best = std::max(best, f.functional.dot(p));
    std::vector<int> argmax;
    for (std::size_t u = 0; u < unique.size(); ++u)
      if (f.functional.dot(unique[u]) == best) argmax.push_back(static_cast<int>(u));
    if (argmax != on) throw std::logic_error("polytope: face functional failed argmax check");
    f.level = best;
    Rows mp;
    for (int u : on) mp.push_back(unique[u]);
    f.dimension = affine_dimension(mp);
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (std::binary_search(on.begin(), on.end(), unique_of[i]))
        f.members.push_back(static_cast<int>(i));
    faces_.push_back(std::move(f));
  }
  auto by_dim = [](const Face& a, const Face& b) {
    return std::tie(a.dimension, a.members) < std::tie(b.dimension, b.members);
  };
  std::sort(faces_.begin(), faces_.end(), by_dim);
  std::sort(facets_.begin(), facets_.end(), by_dim);
}

Polytope Polytope::from_generators(const MarkedGroup& G) {
  std::vector<RationalVector> pts;
  for (const auto& g : G.generators()) {
    const IntVector v = abelianize(g.element);
    RationalVector r(v.size());
    for (int i = 0; i < v.size(); ++i) r(i) = to_rational(v(i));
    pts.push_back(r);
  }
  return Polytope(std::move(pts));
}

std::optional<Face> Polytope::minimal_face(const std::vector<int>& subset) const {
  if (subset.empty()) throw DomainError("minimal_face: empty subset");
  const Face* best = nullptr;
  for (const auto& f : faces_) {
    const bool contains = std::all_of(subset.begin(), subset.end(), [&](int i) {
      return std::binary_search(f.members.begin(), f.members.end(), i);
    });
    if (contains && (!best || f.members.size() < best->members.size())) best = &f;
  }
  if (!best) return std::nullopt;
  return *best;
}

std::optional<Face> Polytope::minimal_face_of_points(const std::vector<RationalVector>& pts) const {
  if (pts.empty()) throw DomainError("minimal_face: empty subset");
  const Face* best = nullptr;
  for (const auto& f : faces_) {
    const bool contains =
        std::all_of(pts.begin(), pts.end(), [&](const RationalVector& p) { return on_face(f, p); });
    if (contains && (!best || f.members.size() < best->members.size())) best = &f;
  }
  if (!best) return std::nullopt;
  return *best;
}

bool Polytope::has_interior_origin() const {
  if (dim_ != ambient_ || facets_.empty()) return false;
  return std::all_of(facets_.begin(), facets_.end(), [](const Face& f) { return f.level > 0; });
}

Rational Polytope::gauge(const RationalVector& v) const {
  if (!has_interior_origin()) throw DomainError("gauge: 0 is not an interior point of the polytope");
  if (v.size() != ambient_) throw DomainError("gauge: dimension mismatch");
  Rational best = 0;
  for (const auto& f : facets_) best = std::max(best, Rational(f.functional.dot(v) / f.level));
  return best;
}

GaugeHeuristic Polytope::heuristic() const {
  if (!has_interior_origin()) return {};
  std::vector<std::vector<std::int64_t>> normals;
  std::vector<std::int64_t> scales;
  for (const auto& f : facets_) {
    const BigInt p(numerator(f.level)), q(denominator(f.level));
    std::vector<std::int64_t> n(ambient_);
    for (int i = 0; i < ambient_; ++i) n[i] = to_int64(BigInt(numerator(f.functional(i))) * q);
    normals.push_back(std::move(n));
    scales.push_back(to_int64(p));
  }
  return GaugeHeuristic(std::move(normals), std::move(scales));
}

}  // namespace horo
