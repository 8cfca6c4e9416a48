#include "horo/heisenberg_classifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace horo {

namespace {

RationalVector log_point(const GroupElement& g) { return log_coordinates(g); }

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Classifier::Classifier(const MarkedGroup& G) : G_(G), projected_(Polytope::from_generators(G)) {
  if (G.kind() == GroupKind::Cartan)
    throw DomainError("orbit classification needs an abelian or Heisenberg group");
  abelian_like_ = G.kind() == GroupKind::Heisenberg && !G.cyclic_commutator();
  if (abelian_like_) {
    std::vector<RationalVector> pts;
    for (const auto& s : G.generators()) pts.push_back(log_point(s.element));
    log_hull_.emplace(std::move(pts));
  }
}

bool Classifier::commute(int i, int j) const {
  if (G_.kind() == GroupKind::Abelian) return true;
  return commutator(G_.generator(i).element, G_.generator(j).element).is_identity();
}

std::optional<Face> Classifier::face_in_log_hull(const std::vector<int>& within,
                                                 const std::vector<int>& D) const {
  std::vector<RationalVector> pts;
  for (int i : within) pts.push_back(log_point(G_.generator(i).element));
  if (affine_dimension(pts) > Polytope::kMaxDimension) return std::nullopt;
  const Polytope hull(pts);
  std::vector<int> local;
  for (int d : D) local.push_back(static_cast<int>(std::find(within.begin(), within.end(), d) - within.begin()));
  std::optional<Face> f = hull.minimal_face(local);
  Face out;
  if (f) {
    out = *f;
  } else {
    // Minimal face is the whole face Conv(log S_F) of B.
    out.functional = RationalVector::Zero(pts[0].size());
    out.dimension = hull.dimension();
    for (std::size_t i = 0; i < within.size(); ++i) out.members.push_back(static_cast<int>(i));
  }
  for (int& m : out.members) m = within[m];
  std::sort(out.members.begin(), out.members.end());
  return out;
}

RayInvariants Classifier::invariants_of_letters(const std::vector<int>& D_in) const {
  const std::vector<int> D = sorted_unique(D_in);
  if (D.empty()) throw DomainError("empty letter set");
  RayInvariants inv;
  for (int d : D) inv.D.push_back(G_.generator(d).label);
  if (abelian_like_) {
    auto f = log_hull_->minimal_face(D);
    if (!f) throw DomainError("spec not geodesic: letters span no proper face");
    inv.F = *f;
    inv.S_F = f->members;
    inv.E = f;
    return inv;
  }
  auto f = projected_.minimal_face(D);
  if (!f) throw DomainError("spec not geodesic: letters span no proper face");
  inv.F = *f;
  inv.S_F = f->members;
  if (G_.kind() == GroupKind::Abelian) {
    inv.E = f;
    return inv;
  }
  for (std::size_t a = 0; a < inv.S_F.size() && inv.F_commutative; ++a)
    for (std::size_t b = a + 1; b < inv.S_F.size(); ++b)
      if (!commute(inv.S_F[a], inv.S_F[b])) {
        inv.F_commutative = false;
        break;
      }
  inv.E = face_in_log_hull(inv.S_F, D);
  return inv;
}

RayInvariants Classifier::ray_invariants(const RaySpec& spec) const {
  std::vector<int> D;
  for (const auto& l : tail_letters(spec)) D.push_back(G_.index_of(l));
  return invariants_of_letters(D);
}

Classifier::Decision Classifier::same_orbit(const RaySpec& s1, const RaySpec& s2) const {
  const RayInvariants a = ray_invariants(s1), b = ray_invariants(s2);
  if (G_.kind() == GroupKind::Abelian || abelian_like_) {
    if (a.E->members == b.E->members) return {true, "same face of the generator polytope"};
    return {false, "different faces of the generator polytope"};
  }
  if (a.F.members != b.F.members) return {false, "different minimal faces F"};
  if (!a.F_commutative) return {true, "same non-commutative face F"};
  if (!a.E || !b.E) throw DomainError("face E not computed (hull dimension above 4)");
  if (a.E->members == b.E->members) return {true, "same commutative face F and same face E"};
  return {false, "same commutative face F but different faces E"};
}

std::vector<Classifier::OrbitKey> Classifier::orbit_census() const {
  const int n = G_.size();
  if (n > kMaxCensusGenerators)
    throw DomainError("census refuses more than " + std::to_string(kMaxCensusGenerators) +
                      " generators");
  std::set<OrbitKey> keys;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> D;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) D.push_back(i);
    const Polytope& P = abelian_like_ ? *log_hull_ : projected_;
    if (!P.minimal_face(D)) continue;
    const RayInvariants inv = invariants_of_letters(D);
    OrbitKey key;
    key.F = inv.F.members;
    key.commutative = inv.F_commutative;
    if (inv.F_commutative) {
      if (!inv.E) throw DomainError("face E not computed (hull dimension above 4)");
      key.E = inv.E->members;
    }
    keys.insert(key);
  }
  return {keys.begin(), keys.end()};
}

// ---------------------------------------------------------------------------

std::int64_t central_increment_bound(const MarkedGroup& G) {
  std::int64_t delta = 0;
  for (const auto& s : G.generators())
    for (const auto& t : G.generators())
      delta = std::max(delta, std::abs(commutator_z_exponent(G, s.element, t.element)));
  return delta;
}

AnagramSet anagram_set(const MarkedGroup& G, const Word& w, std::size_t max_states) {
  if (G.kind() != GroupKind::Heisenberg || !G.cyclic_commutator())
    throw DomainError("anagram sets need a Heisenberg group with infinite cyclic [H,H]");
  AnagramSet out;
  out.word = w;
  out.delta = central_increment_bound(G);
  const int k = G.shape().rank;

  std::map<Label, int> count;
  for (const auto& l : w) {
    G.index_of(l);
    ++count[l];
  }
  std::vector<const GroupElement*> elem;
  std::vector<int> mult, stride;
  std::size_t states = 1;
  for (const auto& [label, m] : count) {
    elem.push_back(&G.generator(G.index_of(label)).element);
    mult.push_back(m);
    stride.push_back(static_cast<int>(states));
    states *= static_cast<std::size_t>(m + 1);
    if (states > max_states) throw BudgetError("anagram state space exceeds budget", 0);
  }
  const int L = static_cast<int>(elem.size());

  // reach[state] = sorted accumulated sums of a(prefix) . b(next letter).
  std::vector<std::vector<std::int64_t>> reach(states);
  reach[0] = {0};
  std::vector<int> digits(L);
  std::size_t stored = 1;
  for (std::size_t s = 0; s < states; ++s) {
    if (reach[s].empty()) continue;
    std::size_t rest = s;
    for (int i = 0; i < L; ++i) {
      digits[i] = static_cast<int>(rest % (mult[i] + 1));
      rest /= (mult[i] + 1);
    }
    std::vector<std::int64_t> a(k, 0);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < k; ++j) a[j] = checked_add(a[j], checked_mul(std::int64_t{digits[i]}, (*elem[i])[j]));
    for (int i = 0; i < L; ++i) {
      if (digits[i] == mult[i]) continue;
      std::int64_t inc = 0;
      for (int j = 0; j < k; ++j) inc = checked_add(inc, checked_mul(a[j], (*elem[i])[k + j]));
      auto& dst = reach[s + stride[i]];
      const std::size_t before = dst.size();
      std::vector<std::int64_t> merged;
      merged.reserve(dst.size() + reach[s].size());
      std::vector<std::int64_t> shifted(reach[s]);
      for (auto& v : shifted) v += inc;
      std::set_union(dst.begin(), dst.end(), shifted.begin(), shifted.end(), std::back_inserter(merged));
      dst.swap(merged);
      stored += dst.size() - before;
      if (stored > max_states) throw BudgetError("anagram value sets exceed budget", 0);
    }
    if (s + 1 < states) std::vector<std::int64_t>().swap(reach[s]);
  }

  std::int64_t base = 0;
  for (int i = 0; i < L; ++i) base += mult[i] * (*elem[i])[2 * k];
  const std::int64_t cw = G.evaluate(w)[2 * k];
  const std::int64_t unit = G.commutator_unit();
  for (std::int64_t v : reach[states - 1]) {
    const std::int64_t diff = base + v - cw;
    if (diff % unit != 0) throw std::logic_error("anagram offset not in [H,H]");
    out.offsets.push_back(diff / unit);
  }
  std::sort(out.offsets.begin(), out.offsets.end());
  return out;
}

IntervalReport interval_lemma_check(const MarkedGroup& G, const std::vector<Label>& D, int n) {
  if (D.empty()) throw DomainError("interval check needs a nonempty letter set");
  if (n < 1) throw DomainError("interval check needs n >= 1");
  IntervalReport rep;
  rep.D = D;
  std::int64_t g = 0;
  for (const auto& s : D)
    for (const auto& t : D)
      g = std::gcd(g, commutator_z_exponent(G, G.evaluate(Word{s}), G.evaluate(Word{t})));
  rep.subgroup_generator = g;

  const int pairs = std::max<int>(1, static_cast<int>(D.size()) - 1);
  const int M = (n + 2 * pairs - 1) / (2 * pairs);
  if (D.size() == 1) {
    rep.u = Word(n, D[0]);
  } else {
    for (std::size_t j = 1; j < D.size(); ++j)
      for (int r = 0; r < M; ++r) {
        rep.u.push_back(D[0]);
        rep.u.push_back(D[j]);
      }
    rep.u.resize(n);
  }

  for (int len = 2; len <= n + 1; len += 2) {
    const int L = std::min(len, n);
    if (!rep.lengths.empty() && rep.lengths.back() == L) break;
    const AnagramSet A = anagram_set(G, Word(rep.u.begin(), rep.u.begin() + L));
    for (auto a : A.offsets)
      if ((g == 0 && a != 0) || (g != 0 && a % g != 0)) rep.within_subgroup = false;
    std::int64_t K = 0;
    if (g != 0)
      while (std::binary_search(A.offsets.begin(), A.offsets.end(), (K + 1) * g) &&
             std::binary_search(A.offsets.begin(), A.offsets.end(), -(K + 1) * g))
        ++K;
    rep.lengths.push_back(L);
    rep.attained.push_back(K);
  }
  const bool monotone = std::is_sorted(rep.attained.begin(), rep.attained.end());
  rep.pass = rep.within_subgroup && monotone &&
             (g == 0 || rep.attained.back() > rep.attained.front() || rep.attained.size() == 1);
  return rep;
}

}  // namespace horo
