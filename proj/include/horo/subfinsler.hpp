#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horo/horoboundary.hpp"

namespace horo {

using Point2 = Vector2<Rational>;

Point2 point2(const Rational& a, const Rational& b);

/// omega((a,b),(a',b')) = a'b - ab'
Rational omega(const Point2& v, const Point2& w);

/// Centrally symmetric convex polygon with vertices v_1..v_2N numbered
/// counterclockwise, v_1 the vertex of smallest angle in [0, 2pi). Indices are
/// cyclic: v_0 = v_2N.
class Polygon {
 public:
  /// Convex hull of the points; rejects hulls that are not centrally
  /// symmetric, or have 0 outside the interior.
  static Polygon hull(const std::vector<Point2>& points);
  /// Hull of the projected generators of an H_1 marking.
  static Polygon of_group(const MarkedGroup& G);
  static Polygon diamond();

  int size() const { return static_cast<int>(v_.size()); }
  const Point2& vertex(int k) const;
  /// e_k = v_k - v_{k-1}
  Point2 edge(int k) const;
  /// omega(e_k, v) / omega(e_k, v_k)
  Rational alpha(int k, const Point2& v) const;
  /// Minkowski functional of the polygon.
  Rational gauge(const Point2& v) const;
  const std::vector<Point2>& vertices() const { return v_; }

 private:
  std::vector<Point2> v_;
};

struct HorofnClass {
  enum class Kind { Vertical, NonVertical, Mixed };
  /// Which branch takes omega(v_i, v) <= 0.
  enum class Orientation { LeqFirst, GeqFirst };

  Kind kind = Kind::Vertical;
  int index = 1;  // k (non-vertical) or i (mixed)
  Rational r = 0;
  Orientation orientation = Orientation::LeqFirst;
  int variant = 1;  // mixed: first branch alpha_i (1) or alpha_{i-1} (2)

  static HorofnClass vertical() { return {}; }
  static HorofnClass non_vertical(int k, Rational r);
  static HorofnClass mixed(int i, Rational r, Orientation o, int variant);

  /// "vertical", "nonvertical:k:r", "mixed:i:r:le|ge:1|2"
  static HorofnClass parse(std::string_view text);
  std::string to_string() const;
};

/// Closed-form class value at (v, c); c does not enter. On the seam
/// omega(v_i, v) = 0 of a mixed class the first listed branch is used.
Rational horofn_eval(const Polygon& P, const HorofnClass& cls, const Point2& v);
void validate_class(const Polygon& P, const HorofnClass& cls);

struct SeamReport {
  int samples = 0;
  int mismatches = 0;
  /// Seam points where the branches disagree, with both branch values.
  std::vector<std::tuple<Point2, Rational, Rational>> examples;
};

/// Compares both branch formulas of a mixed class at t v_i, t = -samples..samples.
SeamReport mixed_seam_check(const Polygon& P, const HorofnClass& cls, int samples);

// ---------------------------------------------------------------------------
// Discrete comparison

/// Lattice sequences x_n: central z^n, vertex s_i^n with Pr(s_i) = v_i, or
/// edge (s_k^p s_{k-1}^(q-p))^n for r = p/q.
struct SamplingSequence {
  enum class Preset { Central, Vertex, Edge };
  Preset preset = Preset::Central;
  int index = 1;
  Rational r = 0;

  /// "central", "vertex:i", "edge:k:r"
  static SamplingSequence parse(std::string_view text);
  std::string to_string() const;
};

GroupElement sequence_element(const MarkedGroup& G, const Polygon& P, const SamplingSequence& seq, int n);

struct WindowComparisonRow {
  int radius = 0;
  std::size_t points = 0;
  Rational max_difference;
};

struct WindowComparison {
  HorofnClass cls;
  SamplingSequence sequence;
  int n = 0;
  GroupElement x;
  std::vector<WindowComparisonRow> rows;  // radii 0..R, nested windows
  bool partial = false;
};

/// max |phi_x(w) - class(Pr w)| over the ball of each radius 0..R, where
/// phi_x(w) = d(x, w) - d(x, e).
WindowComparison discrete_vs_continuous(const WordMetric& metric, const Polygon& P, const HorofnClass& cls,
                                        const SamplingSequence& seq, int n, int R);

/// Class values on the radius-R ball, in DistanceTable::entries order.
std::vector<Rational> window_fingerprint(const MarkedGroup& G, const Polygon& P, const HorofnClass& cls, int R);

}  // namespace horo
