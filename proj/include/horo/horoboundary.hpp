#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "horo/word_metric.hpp"

namespace horo {

/// Finite description of an infinite word starting at the identity.
///   Periodic:  prefix . block . block . ...
///   Digitized: staircase best approximating the Euclidean ray R+(a,b) over
///              the grid letters x, y (and inverses by reflection).
struct RaySpec {
  enum class Kind { Periodic, Digitized };

  Kind kind = Kind::Periodic;
  Word prefix;
  Word block;
  std::int64_t a = 0, b = 0;

  static RaySpec periodic(Word prefix, Word block);
  /// Reduces (a, b) by their gcd; rejects (0, 0).
  static RaySpec digitized(std::int64_t a, std::int64_t b);
  /// Rational direction, scaled to a primitive integer pair.
  static RaySpec digitized(const Rational& a, const Rational& b);

  friend bool operator==(const RaySpec&, const RaySpec&) = default;
};

/// The first on-line square is passed below, the next above, and so on.
inline constexpr const char* kTieRule = "alternate, first on-line square passed below";

/// First n letters.
Word ray_prefix(const RaySpec& spec, int n);
/// Eventually periodic form of any spec (digitized rays are purely periodic).
RaySpec to_periodic(const RaySpec& spec);
/// Letters that occur infinitely often.
std::vector<Label> tail_letters(const RaySpec& spec);

RaySpec ray_from_json(const nlohmann::json& doc);
RaySpec parse_ray(std::string_view text);
nlohmann::json ray_to_json(const RaySpec& spec);

/// Checks labels, grid compatibility of digitized specs, and that the first
/// `horizon` letters form a geodesic (face certificate, else search).
/// Throws DomainError when the spec is not geodesic.
void validate_ray(const WordMetric& metric, const RaySpec& spec, int horizon);
/// True when x, y exist and abelianize to the two unit vectors of Z^2.
bool has_standard_grid(const MarkedGroup& G);

// ---------------------------------------------------------------------------

/// phi_x(w) = d(x, w) - d(x, e) on the ball of radius R.
struct HorofnWindow {
  int radius = 0;
  GroupElement base;
  std::vector<std::pair<GroupElement, int>> values;  // sorted like DistanceTable::entries
};

HorofnWindow horofn_window(const WordMetric& metric, const GroupElement& x, int R, int budget);

/// Number of pairs (w, w') with |f(w) - f(w')| > d(w, w'), distances taken from
/// `table`, which must contain every w^-1 w'.
std::size_t lipschitz_violations(const std::vector<std::pair<GroupElement, int>>& values,
                                 const DistanceTable& table);

struct BusemannEstimate {
  /// |h^-1 gamma_n| - n for n = 0..horizon.
  std::vector<int> sequence;
  int value = 0;
  int stable_for = 0;
  int horizon = 0;
  int requested_horizon = 0;
  int lower_bound = 0;
  bool certified = false;
  bool budget_exhausted = false;
};

/// Scans n = 0..horizon; stops early (budget_exhausted) when a distance query
/// runs out of memory. The sequence must be nonincreasing; a violation throws
/// std::logic_error.
BusemannEstimate busemann_eval(const WordMetric& metric, const RaySpec& spec, const GroupElement& h,
                               int horizon);

/// Integer lower bound for b_spec(h) from the facet functionals that equal 1 on
/// every tail letter.
int busemann_lower_bound(const WordMetric& metric, const RaySpec& spec, const GroupElement& h);

// ---------------------------------------------------------------------------

enum class Verdict { Verified, NotFound, Inconclusive };
std::string_view to_string(Verdict v);

struct SwitchWitness {
  int n = 0;
  int m = 0;
};

struct ComparisonReport {
  Verdict verdict = Verdict::NotFound;
  int N = 0, M = 0, slack = 0;
  std::vector<SwitchWitness> witnesses;
  /// First n without a witness (NotFound) or where the search stopped (Inconclusive).
  int failed_at = -1;
};

/// For every n <= N look for n <= m <= M with
///   d(gamma_m, eta_n) <= m - n + C  and  d(eta_m, gamma_n) <= m - n + C.
/// C = 0 is the equality test for b_gamma = b_eta; C > 0 the bounded-difference one.
ComparisonReport same_busemann(const WordMetric& metric, const RaySpec& s1, const RaySpec& s2, int N,
                               int M);
ComparisonReport reduced_equiv(const WordMetric& metric, const RaySpec& s1, const RaySpec& s2, int C,
                               int N, int M);

struct CofinalWitness {
  GroupElement g;
  Word u, v;  // removed prefixes: spec1 = u w, spec2 = v w, g = u v^-1
};

/// Some(g) with g . b_spec2 = b_spec1 when the label sequences are cofinal.
std::optional<CofinalWitness> cofinal_orbit_witness(const MarkedGroup& G, const RaySpec& s1,
                                                    const RaySpec& s2);

/// Lifts a ray over H to G through a label map G -> H (inverse labels follow).
/// Each H label is lifted to the first G label (in generator order) mapping to it.
RaySpec lift_ray(const MarkedGroup& G, const MarkedGroup& H, const std::map<Label, Label>& hom,
                 const RaySpec& spec);

}  // namespace horo
