#pragma once

#include <optional>
#include <vector>

#include "horo/marked_group.hpp"

namespace horo {

/// A face of a polytope: the argmax set of `functional`, attaining `level`.
/// `members` are indices into the polytope's input points (duplicates of a
/// point are all listed).
struct Face {
  RationalVector functional;
  Rational level = 0;
  std::vector<int> members;
  int dimension = 0;

  friend bool operator==(const Face& a, const Face& b) { return a.members == b.members; }
  friend bool operator<(const Face& a, const Face& b) { return a.members < b.members; }
};

/// Integer form of the gauge: gauge(v) = max_k (normal_k . v) / scale_k.
/// `ceil_at` is an admissible word-length lower bound for abelianized targets.
class GaugeHeuristic {
 public:
  GaugeHeuristic() = default;
  GaugeHeuristic(std::vector<std::vector<std::int64_t>> normals, std::vector<std::int64_t> scales);

  bool available() const { return !normals_.empty(); }
  int dimension() const { return normals_.empty() ? 0 : static_cast<int>(normals_[0].size()); }
  /// max(0, max_k ceil(normal_k . v / scale_k)); 0 when unavailable.
  std::int64_t ceil_at(const std::int64_t* v) const;

 private:
  std::vector<std::vector<std::int64_t>> normals_;
  std::vector<std::int64_t> scales_;
};

/// Convex hull of finitely many rational points with its full face lattice.
/// Works in the affine hull, so degenerate point sets are fine as long as the
/// hull has dimension at most 4.
class Polytope {
 public:
  static constexpr int kMaxDimension = 4;
  static constexpr int kMaxPoints = 24;

  explicit Polytope(std::vector<RationalVector> points);
  /// Abelianized images of all generators, indexed like G.generators().
  static Polytope from_generators(const MarkedGroup& G);

  int ambient_dimension() const { return ambient_; }
  /// Dimension of the affine hull.
  int dimension() const { return dim_; }
  const std::vector<RationalVector>& points() const { return points_; }
  /// All proper faces, sorted by member set (vertices first in size order is
  /// not guaranteed; use dimension).
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Face>& facets() const { return facets_; }

  /// Smallest face containing the given point indices; nullopt when only the
  /// whole polytope does.
  std::optional<Face> minimal_face(const std::vector<int>& subset) const;
  /// Same for arbitrary points of the polytope.
  std::optional<Face> minimal_face_of_points(const std::vector<RationalVector>& pts) const;

  /// True when the hull is full-dimensional with 0 in its interior.
  bool has_interior_origin() const;
  /// Minkowski functional. Throws DomainError unless has_interior_origin().
  Rational gauge(const RationalVector& v) const;
  /// Integer heuristic; unavailable when gauge() would throw.
  GaugeHeuristic heuristic() const;

 private:
  int ambient_ = 0;
  int dim_ = 0;
  std::vector<RationalVector> points_;
  std::vector<Face> facets_;
  std::vector<Face> faces_;

  bool on_face(const Face& f, const RationalVector& p) const { return f.functional.dot(p) == f.level; }
};

/// Affine dimension of a point set.
int affine_dimension(const std::vector<RationalVector>& pts);

}  // namespace horo
