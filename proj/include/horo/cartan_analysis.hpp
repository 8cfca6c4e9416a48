#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horo/horoboundary.hpp"

namespace horo {

enum class DirectionParity { BothOdd, MixedParity, Axis };
std::string_view to_string(DirectionParity p);

/// Rational direction u = (a, b) reduced to a primitive pair, and
/// u_perp = (-b, a). Pairings are exact and unnormalized.
struct DirectionFrame {
  std::int64_t a = 1, b = 0;
  DirectionParity parity = DirectionParity::Axis;

  static DirectionFrame of(std::int64_t a, std::int64_t b);
  Vector2<Rational> u() const;
  Vector2<Rational> u_perp() const;
  /// <v ; u_perp>
  Rational pair_perp(const Vector2<Rational>& v) const;
  RaySpec ray() const { return RaySpec::digitized(a, b); }
  friend bool operator==(const DirectionFrame&, const DirectionFrame&) = default;
};

/// Every operation below expects the standard Cartan marking {x, y}±.
void require_standard_cartan(const MarkedGroup& G);

struct CentralElement {
  Word word;
  GroupElement element;
};

/// [x^b1 y^b2, [x, y]]: endpoint 0, area 0, barycenter b.
CentralElement central_with_barycenter(const MarkedGroup& G, std::int64_t b1, std::int64_t b2);

// ---------------------------------------------------------------------------
// Lower bound audit

enum class AuditMode { Exhaustive, Search };
inline constexpr int kExhaustiveMaxLength = 12;

struct LowerAuditRecord {
  int delta = 0;
  /// Elements g with endpoint of gamma_{u,n} and |g| = n + delta.
  std::size_t count = 0;
  std::optional<Rational> max_pairing;  // max <B(g); u_perp>
};

struct LowerAuditRow {
  int n = 0;
  Rational reference;  // <B(gamma_{u,n}); u_perp>
  std::vector<LowerAuditRecord> records;
  /// Smallest integer M >= 0 with max_pairing <= reference + M delta^3 for delta >= 1.
  std::int64_t M = 0;
  /// delta = 0 records above the reference.
  int violations = 0;
  std::size_t explored = 0;
};

struct BoundAuditReport {
  DirectionFrame u;
  int delta_max = 0;
  AuditMode mode = AuditMode::Exhaustive;
  std::vector<LowerAuditRow> rows;
  std::int64_t M = 0;
  int violations = 0;
};

/// Breadth-first enumeration of all elements whose shortest words stay able
/// to reach the endpoint of gamma_{u,n}; lengths are exact. Exhaustive mode
/// caps n + delta_max at 12; search mode lifts the cap and relies on
/// `max_entries` (BudgetError when exceeded).
BoundAuditReport bound_audit_lower(const MarkedGroup& G, const DirectionFrame& u, const std::vector<int>& ns,
                                   int delta_max, AuditMode mode, std::size_t max_entries = 8'000'000);

// ---------------------------------------------------------------------------
// Upper bound audit

struct NamedElement {
  std::string name;
  GroupElement element;
};

struct UpperAuditRow {
  std::string name;
  Rational area;
  Rational pairing;  // <-B(h); u_perp>
  BusemannEstimate estimate;
};

struct UpperAuditReport {
  DirectionFrame u;
  int horizon = 0;
  std::vector<UpperAuditRow> rows;
  /// Smallest multiple of 1/1000 with b(h) <= C2 (cbrt(X) + 1) on every row,
  /// X = max(pairing, 0) + |A(h)|.
  Rational C2;
  /// Same with X = max(pairing, 0); only for both-odd directions.
  std::optional<Rational> C2_improved;
  bool partial = false;
};

/// e, [x,y], [y,x], [x,y][x~,y~] and z(b) for |b|_inf <= 1.
std::vector<NamedElement> audit_central_elements(const MarkedGroup& G);

/// Estimates b_{gamma_u}(h) = lim |h^-1 gamma_{u,n}| - n for central h and
/// fits the constants of the piecewise cube-root bound to the estimates.
UpperAuditReport bound_audit_upper(const WordMetric& metric, const DirectionFrame& u,
                                   const std::vector<NamedElement>& hs, int horizon);

/// Smallest k/1000 (k >= 0) with value <= (k/1000) (cbrt(X) + 1), decided exactly.
Rational fit_cube_root_constant(const std::vector<std::pair<std::int64_t, Rational>>& value_and_X);

// ---------------------------------------------------------------------------
// Distinctness and stabilizer evidence

struct PowerEvaluation {
  int power = 0;
  int norm = 0;  // |h^power|
  BusemannEstimate for_u, for_v;
};

struct DistinctnessReport {
  DirectionFrame u, v;
  std::int64_t b1 = 0, b2 = 0;
  Rational pairing_u, pairing_v;  // <-b; u_perp>, <-b; v_perp>
  CentralElement h;
  std::vector<PowerEvaluation> evaluations;
  bool partial = false;
};

/// b with <-b; u_perp> > 0 >= <-b; v_perp>, smallest in l-infinity norm and
/// then lexicographically.
std::pair<std::int64_t, std::int64_t> separating_barycenter(const DirectionFrame& u, const DirectionFrame& v);

/// Evaluates both Busemann functions at h^k for k = 1.. while |h^k| <= max_norm.
DistinctnessReport distinctness_witness(const WordMetric& metric, const DirectionFrame& u, const DirectionFrame& v,
                                        int horizon, int max_norm);

struct StabilizerRow {
  int n = 0;
  BusemannEstimate plain;    // b(h^n)
  BusemannEstimate shifted;  // b(g^-m h^n)
  int gap = 0;               // shifted - b(g^-m) - plain
};

struct StabilizerReport {
  DirectionFrame u;
  GroupElement g;
  Rational pairing;  // <g_hat; u_perp>
  std::int64_t m = 0;
  Rational C1, C2;
  BusemannEstimate base;  // b(g^-m)
  std::vector<StabilizerRow> rows;
  bool partial = false;
};

/// h = [x,y][x^-1,y^-1]; m is the smallest |m| with m <g_hat; u_perp> > 0 and
/// C1 cbrt(m <g_hat; u_perp>) > C2.
StabilizerReport stabilizer_escape(const WordMetric& metric, const DirectionFrame& u, const GroupElement& g,
                                   int n_max, int horizon, const Rational& C1, const Rational& C2);

}  // namespace horo
