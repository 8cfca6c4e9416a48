#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horo/horoboundary.hpp"
#include "horo/polytope.hpp"

namespace horo {

/// D: letters used infinitely often; F: minimal face of Pr(B) containing
/// Pr(D); E: minimal face of B = Conv(log S) containing log D, computed inside
/// the face Conv(log S_F). Face members are generator indices.
struct RayInvariants {
  std::vector<Label> D;
  Face F;
  std::vector<int> S_F;
  bool F_commutative = true;
  std::optional<Face> E;  // nullopt: not computed (hull of log S_F beyond dimension 4)
};

/// Classification context for one marked group (abelian or Heisenberg).
class Classifier {
 public:
  explicit Classifier(const MarkedGroup& G);

  const MarkedGroup& group() const { return G_; }
  const Polytope& projected() const { return projected_; }
  /// No two generators have a nontrivial commutator: classified as an
  /// abelian group by faces of Conv(log S).
  bool abelian_like() const { return abelian_like_; }

  RayInvariants invariants_of_letters(const std::vector<int>& D) const;
  RayInvariants ray_invariants(const RaySpec& spec) const;

  struct Decision {
    bool same = false;
    std::string reason;
  };
  Decision same_orbit(const RaySpec& s1, const RaySpec& s2) const;

  struct OrbitKey {
    std::vector<int> F;
    std::optional<std::vector<int>> E;  // present for commutative faces
    bool commutative = true;
    friend auto operator<=>(const OrbitKey&, const OrbitKey&) = default;
  };
  /// Distinct keys over all nonempty letter subsets with a proper face.
  std::vector<OrbitKey> orbit_census() const;

 private:
  MarkedGroup G_;
  Polytope projected_;
  bool abelian_like_ = false;
  std::optional<Polytope> log_hull_;  // Conv(log S), abelian-like groups only

  bool commute(int i, int j) const;
  std::optional<Face> face_in_log_hull(const std::vector<int>& within, const std::vector<int>& D) const;
};

inline constexpr int kMaxCensusGenerators = 20;

// ---------------------------------------------------------------------------
// Anagram sets

struct AnagramSet {
  Word word;
  /// Sorted offsets a (in units of the generator of [H,H]) with w' = w z^a.
  std::vector<std::int64_t> offsets;
  /// max |commutator exponent| over S x S.
  std::int64_t delta = 0;
};

/// Dynamic programming over consumed-letter count vectors; the central
/// increment of appending s depends only on the counts consumed so far.
AnagramSet anagram_set(const MarkedGroup& G, const Word& w, std::size_t max_states = 4'000'000);

struct IntervalReport {
  std::vector<Label> D;
  /// gcd of commutator exponents over D x D (0 when D commutes).
  std::int64_t subgroup_generator = 0;
  Word u;
  /// Prefix lengths checked and the largest K with
  /// subgroup_generator * {-K..K} contained in the offsets of that prefix.
  std::vector<int> lengths;
  std::vector<std::int64_t> attained;
  /// Every offset lies in the subgroup.
  bool within_subgroup = true;
  bool pass = false;
};

/// Builds u = (s1 s2)^M (s1 s3)^M ... of length n and tracks the attained
/// symmetric interval of the subgroup generated by commutators within D.
IntervalReport interval_lemma_check(const MarkedGroup& G, const std::vector<Label>& D, int n);

std::int64_t central_increment_bound(const MarkedGroup& G);

}  // namespace horo
