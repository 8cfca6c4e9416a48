// One PASS/FAIL line per acceptance criterion. Tolerances and sizes are fixed
// below; the exit status is nonzero when any line fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "horo/cartan_analysis.hpp"
#include "horo/cartan_oracle.hpp"
#include "horo/cli.hpp"
#include "horo/heisenberg_classifier.hpp"
#include "horo/polytope.hpp"
#include "horo/subfinsler.hpp"
#include "reference.hpp"

using namespace horo;

namespace {

// Pinned sizes, tolerances and frozen regression values.
constexpr int kTriples = 10'000;
constexpr int kOracleWords = 1'000;
constexpr int kOracleMaxLength = 12;
constexpr double kGroupLawSeconds = 30;
constexpr int kH1BallRadius = 10;
constexpr int kCartanBallRadius = 7;
constexpr double kBallSeconds = 300;
constexpr double kCensusSeconds = 1;
constexpr int kSwitchN = 8, kSwitchM = 40;
constexpr double kSwitchSeconds = 600;
constexpr int kAbelianN = 10, kAbelianM = 60;
constexpr int kAnagramWords = 200;
constexpr int kAnagramMaxLength = 8;
constexpr int kIntervalLength = 12;
constexpr std::int64_t kIntervalHalfWidth = 2;
constexpr double kAnagramSeconds = 120;
constexpr int kLowerDeltaMax = 2;
constexpr double kLowerSeconds = 900;
constexpr int kCartanHorizon = 16;
constexpr int kCartanMaxNorm = 12;
constexpr std::int64_t kFrozenC0 = 2;
constexpr int kSubfinslerN = 64;
constexpr int kSubfinslerRadius = 8;
constexpr std::int64_t kFrozenWindowBound = 4;
constexpr int kGaugePoints = 1'000;
constexpr std::uint64_t kSeed = 20240611;

int failures = 0;

void report(int id, bool pass, const std::string& what, double seconds) {
  std::printf("%s  %2d  %s  [%.2f s]\n", pass ? "PASS" : "FAIL", id, what.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <class F>
void criterion(int id, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string what;
  try {
    pass = body(what);
  } catch (const std::exception& e) {
    what += std::string(" exception: ") + e.what();
    pass = false;
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, pass, what, s);
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Lipschitz bookkeeping shared by several criteria.
struct LipschitzLog {
  std::size_t tables = 0;
  std::size_t violations = 0;
  void add(const std::vector<std::pair<GroupElement, int>>& values, const DistanceTable& table) {
    ++tables;
    violations += lipschitz_violations(values, table);
  }
};
LipschitzLog lipschitz;

// 1 -------------------------------------------------------------------------
bool group_laws(std::string& what) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed);
  std::size_t bad = 0, checked = 0;
  for (const MarkedGroup& G : {MarkedGroup::abelian_standard(3), MarkedGroup::heisenberg_standard(1),
                               MarkedGroup::heisenberg_standard(2), MarkedGroup::cartan_standard()}) {
    const auto alphabet = ref::labels(G);
    for (int i = 0; i < kTriples; ++i) {
      const GroupElement a = G.evaluate(ref::random_word(rng, alphabet, 20));
      const GroupElement b = G.evaluate(ref::random_word(rng, alphabet, 20));
      const GroupElement c = G.evaluate(ref::random_word(rng, alphabet, 20));
      bool ok = mul(mul(a, b), c) == mul(a, mul(b, c));
      ok = ok && mul(a, inv(a)).is_identity() && mul(inv(a), a).is_identity();
      ok = ok && mul(a, G.identity()) == a && mul(G.identity(), a) == a;
      ok = ok && ref::key_of(mul(a, b)) == ref::mul(G.shape(), ref::key_of(a), ref::key_of(b));
      ++checked;
      if (!ok) ++bad;
    }
  }
  const MarkedGroup C = MarkedGroup::cartan_standard();
  std::size_t oracle_bad = 0;
  for (int i = 0; i < kOracleWords; ++i) {
    const Word w = ref::random_word(rng, ref::labels(C), kOracleMaxLength);
    if (!(cartan_params(C.evaluate(w)) == cartan_path_oracle(w))) ++oracle_bad;
  }
  const double s = since(t0);
  what = fmt("group laws: %zu triples over 4 groups, %zu failures; Cartan path oracle on %d words, %zu mismatches; "
             "limit %.0f s",
             checked, bad, kOracleWords, oracle_bad, kGroupLawSeconds);
  return bad == 0 && oracle_bad == 0 && s < kGroupLawSeconds;
}

// 2 -------------------------------------------------------------------------
bool concatenation_spot(std::string& what) {
  const MarkedGroup C = MarkedGroup::cartan_standard();
  const CartanParams p = cartan_params(C.evaluate("x y"));
  what = fmt("Cartan x*y: A = %s, B = (%s, %s); expected 1/2, (1/3, 1/6)", to_string(p.area).c_str(),
             to_string(p.barycenter(0)).c_str(), to_string(p.barycenter(1)).c_str());
  return p.area == Rational(1, 2) && p.barycenter(0) == Rational(1, 3) && p.barycenter(1) == Rational(1, 6) &&
         p.endpoint == Vector2<Rational>(Rational(1), Rational(1));
}

// 3 -------------------------------------------------------------------------
bool metric_engine(std::string& what) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t mismatches = 0, total = 0;
  int commutators_ok = 0;
  for (auto [G, r] : {std::pair{MarkedGroup::heisenberg_standard(1), kH1BallRadius},
                      std::pair{MarkedGroup::cartan_standard(), kCartanBallRadius}}) {
    const DistanceTable fast = ball(G, r);
    const auto slow = ref::naive_ball(G, r);
    if (fast.size() != slow.size()) ++mismatches;
    for (const auto& [g, d] : fast.entries()) {
      auto it = slow.find(ref::key_of(g));
      if (it == slow.end() || it->second != d) ++mismatches;
    }
    total += fast.size();
    if (fast.distance(G.evaluate("x y x~ y~")) == 4) ++commutators_ok;
  }
  const double s = since(t0);
  what = fmt("ball vs reference search: H1 r%d and Cartan r%d, %zu elements, %zu mismatches; |[x,y]| = 4 in %d/2 "
             "groups; limit %.0f s",
             kH1BallRadius, kCartanBallRadius, total, mismatches, commutators_ok, kBallSeconds);
  return mismatches == 0 && commutators_ok == 2 && s < kBallSeconds;
}

// 4 -------------------------------------------------------------------------
bool census(std::string& what) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t h1 = Classifier(MarkedGroup::heisenberg_standard(1)).orbit_census().size();
  const std::size_t z2 = Classifier(MarkedGroup::abelian_standard(2)).orbit_census().size();
  const std::size_t h1z = Classifier(MarkedGroup::heisenberg_standard(1, true)).orbit_census().size();
  const double s = since(t0);
  what = fmt("orbit census: H1 %zu, Z2 %zu, H1 with z %zu (expected 8 each); limit %.0f s", h1, z2, h1z,
             kCensusSeconds);
  return h1 == 8 && z2 == 8 && h1z == 8 && s < kCensusSeconds;
}

// 5 -------------------------------------------------------------------------
bool switch_cross_validation(std::string& what) {
  const auto t0 = std::chrono::steady_clock::now();
  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const WordMetric metric(H);
  const RaySpec a = RaySpec::digitized(1, 2), b = RaySpec::digitized(2, 1);
  const ComparisonReport r = same_busemann(metric, a, b, kSwitchN, kSwitchM);
  const bool classifier_same = Classifier(H).same_orbit(a, b).same;
  int max_m = 0;
  for (const auto& w : r.witnesses) max_m = std::max(max_m, w.m);
  const double s = since(t0);
  what = fmt("H1 digitized (1,2) vs (2,1): %s for n <= %d with m <= %d (largest m used %d); classifier same orbit: "
             "%s; limit %.0f s",
             std::string(to_string(r.verdict)).c_str(), kSwitchN, kSwitchM, max_m, classifier_same ? "yes" : "no",
             kSwitchSeconds);
  return r.verdict == Verdict::Verified && classifier_same && s < kSwitchSeconds;
}

// 6 -------------------------------------------------------------------------
bool abelian_consistency(std::string& what) {
  const MarkedGroup Z2 = MarkedGroup::abelian_standard(2);
  const WordMetric metric(Z2);
  const Polytope& P = metric.polytope();
  const std::vector<std::string> blocks = {"x",       "y",         "x~",    "y~",    "x y",   "y x",    "x x y",
                                           "x y y",   "x~ y",      "y x~",  "x~ x~ y", "x~ y~", "y~ x~",  "x~ y~ y~",
                                           "x y~",    "y~ x",      "x x y~", "y y x~", "x x x y", "y~ y~ x~"};
  std::vector<RaySpec> rays;
  std::vector<std::vector<int>> faces;
  for (const auto& b : blocks) {
    rays.push_back(RaySpec::periodic({}, split_word(b)));
    std::set<int> letters;
    for (const auto& l : split_word(b)) letters.insert(Z2.index_of(l));
    const auto f = P.minimal_face({letters.begin(), letters.end()});
    if (!f) throw DomainError("ray block '" + b + "' has no proper face");
    faces.push_back(f->members);
  }
  int pairs = 0, agree = 0, verified = 0, inconclusive = 0;
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      const ComparisonReport r = same_busemann(metric, rays[i], rays[j], kAbelianN, kAbelianM);
      const bool same_face = faces[i] == faces[j];
      ++pairs;
      if (r.verdict == Verdict::Inconclusive) ++inconclusive;
      if (r.verdict == Verdict::Verified) ++verified;
      if ((r.verdict == Verdict::Verified) == same_face) ++agree;
    }
  what = fmt("Z2: %zu periodic rays, %d pairs at N=%d M=%d; verdicts agreeing with face equality %d/%d (%d verified, "
             "%d inconclusive)",
             rays.size(), pairs, kAbelianN, kAbelianM, agree, pairs, verified, inconclusive);
  return agree == pairs && inconclusive == 0;
}

// 7 -------------------------------------------------------------------------
std::vector<std::int64_t> permutation_offsets(const MarkedGroup& G, Word w) {
  const int c = static_cast<int>(G.identity().coords().size()) - 1;
  const ref::Key base = ref::key_of(G.evaluate(w));
  const auto unit = Rational(BigInt(G.commutator_unit()));
  std::sort(w.begin(), w.end());
  std::set<std::int64_t> out;
  do {
    ref::Key k = ref::key_of(G.identity());
    for (const auto& l : w) k = ref::mul(G.shape(), k, ref::key_of(G.generator(G.index_of(l)).element));
    const Rational off = (k[c] - base[c]) / unit;
    out.insert(numerator(off).convert_to<std::int64_t>());
  } while (std::next_permutation(w.begin(), w.end()));
  return {out.begin(), out.end()};
}

bool contains_stst(const MarkedGroup& G, const Word& w) {
  for (int s = 0; s < G.size(); ++s)
    for (int t = 0; t < G.size(); ++t) {
      const auto& gs = G.generator(s).element;
      const auto& gt = G.generator(t).element;
      if (mul(gs, gt) == mul(gt, gs)) continue;
      const Label pattern[] = {G.generator(s).label, G.generator(t).label, G.generator(s).label,
                               G.generator(t).label};
      int k = 0;
      for (const auto& l : w)
        if (k < 4 && l == pattern[k]) ++k;
      if (k == 4) return true;
    }
  return false;
}

bool anagrams(std::string& what) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed + 7);
  const std::vector<MarkedGroup> groups = {MarkedGroup::heisenberg_standard(1), MarkedGroup::heisenberg_standard(2),
                                           MarkedGroup::heisenberg_standard(1, true)};
  int equal = 0, applicable = 0, lemma_ok = 0;
  for (int i = 0; i < kAnagramWords; ++i) {
    const MarkedGroup& G = groups[i % groups.size()];
    const Word w = ref::random_word(rng, ref::labels(G), kAnagramMaxLength);
    const AnagramSet a = anagram_set(G, w);
    if (a.offsets == permutation_offsets(G, w)) ++equal;
    if (contains_stst(G, w)) {
      ++applicable;
      if (a.offsets.front() < 0 && a.offsets.back() > 0) ++lemma_ok;
    }
  }
  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const IntervalReport iv = interval_lemma_check(H, {"x", "y"}, kIntervalLength);
  const std::int64_t K = iv.attained.empty() ? -1 : iv.attained.back();
  const double s = since(t0);
  what = fmt("anagram DP equals permutations on %d/%d words; both signs on %d/%d applicable words; interval check "
             "D={x,y} n=%d attains [-%lld, %lld] (need %lld); limit %.0f s",
             equal, kAnagramWords, lemma_ok, applicable, kIntervalLength, static_cast<long long>(K),
             static_cast<long long>(K), static_cast<long long>(kIntervalHalfWidth), kAnagramSeconds);
  return equal == kAnagramWords && lemma_ok == applicable && applicable > 0 && K >= kIntervalHalfWidth &&
         iv.pass && s < kAnagramSeconds;
}

// 8 -------------------------------------------------------------------------
bool lower_audit(std::string& what) {
  const auto t0 = std::chrono::steady_clock::now();
  const BoundAuditReport r = bound_audit_lower(MarkedGroup::cartan_standard(), DirectionFrame::of(1, 1), {4, 6, 8},
                                               kLowerDeltaMax, AuditMode::Exhaustive);
  bool extremal = true;
  std::string rows;
  for (const auto& row : r.rows) {
    for (const auto& rec : row.records)
      if (rec.delta == 0 && (!rec.max_pairing || *rec.max_pairing > row.reference)) extremal = false;
    rows += fmt(" n=%d ref=%s M=%lld;", row.n, to_string(row.reference).c_str(), static_cast<long long>(row.M));
  }
  const double s = since(t0);
  what = fmt("Cartan lower audit u=(1,1) n in {4,6,8} delta <= %d: M = %lld, violations %d, delta=0 extremal %s;%s "
             "limit %.0f s",
             kLowerDeltaMax, static_cast<long long>(r.M), r.violations, extremal ? "yes" : "no", rows.c_str(),
             kLowerSeconds);
  return r.violations == 0 && extremal && r.rows.size() == 3 && s < kLowerSeconds;
}

// 9 -------------------------------------------------------------------------
bool distinctness(std::string& what) {
  const MarkedGroup C = MarkedGroup::cartan_standard();
  const WordMetric metric(C);
  const DirectionFrame u = DirectionFrame::of(-1, -1), v = DirectionFrame::of(1, 1);
  // C0 is the upper-bound constant fitted along v on the audit elements.
  const UpperAuditReport up = bound_audit_upper(metric, v, audit_central_elements(C), kCartanHorizon);
  const Rational C0 = up.C2;
  const DistinctnessReport r = distinctness_witness(metric, u, v, kCartanHorizon, kCartanMaxNorm);
  bool sep = !r.evaluations.empty(), monotone = true;
  std::string vals;
  int prev = std::numeric_limits<int>::min();
  for (const auto& e : r.evaluations) {
    sep = sep && e.for_u.value >= 1 && Rational(e.for_v.value) <= C0;
    monotone = monotone && e.for_u.value >= prev;
    prev = e.for_u.value;
    vals += fmt(" k=%d |h^k|=%d b_u=%d b_v=%d;", e.power, e.norm, e.for_u.value, e.for_v.value);
  }
  what = fmt("Cartan distinctness u=(-1,-1) v=(1,1): b=(%lld,%lld); fitted C0 = %s (frozen %lld);%s sign separation "
             "%s, b_u nondecreasing %s; asymptotic cube-root growth not verified",
             static_cast<long long>(r.b1), static_cast<long long>(r.b2), to_string(C0).c_str(),
             static_cast<long long>(kFrozenC0), vals.c_str(), sep ? "yes" : "no", monotone ? "yes" : "no");
  return r.b1 == -1 && r.b2 == 0 && C0 == kFrozenC0 && sep && monotone;
}

// 10 ------------------------------------------------------------------------
bool lipschitz_property(std::string& what) {
  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const WordMetric mh(H);
  const int R = 4;
  const DistanceTable bh = ball(H, 2 * R);
  for (const RaySpec& spec : {RaySpec::digitized(1, 2), RaySpec::digitized(1, 0), RaySpec::digitized(-3, 1)})
    for (int n : {6, 12, 20}) lipschitz.add(horofn_window(mh, H.evaluate(ray_prefix(spec, n)), R, 64).values, bh);
  GroupElement z = H.identity();
  for (int i = 0; i < kSubfinslerN; ++i) z = mul(z, H.evaluate("x y x~ y~"));
  lipschitz.add(horofn_window(mh, z, R, 64).values, bh);

  // Busemann tables over a small ball
  const DistanceTable b3 = ball(H, 3), b6 = ball(H, 6);
  for (const RaySpec& spec : {RaySpec::digitized(1, 2), RaySpec::periodic(split_word("y~"), split_word("x"))}) {
    std::vector<std::pair<GroupElement, int>> table;
    for (const auto& [g, d] : b3.entries()) table.push_back({g, busemann_eval(mh, spec, g, 20).value});
    lipschitz.add(table, b6);
  }
  const MarkedGroup Z2 = MarkedGroup::abelian_standard(2);
  const WordMetric mz(Z2);
  const DistanceTable z3 = ball(Z2, 3), z6 = ball(Z2, 6);
  std::vector<std::pair<GroupElement, int>> table;
  for (const auto& [g, d] : z3.entries())
    table.push_back({g, busemann_eval(mz, RaySpec::periodic({}, split_word("x y")), g, 20).value});
  lipschitz.add(table, z6);
  lipschitz.add(horofn_window(mz, Z2.evaluate("x x x x x x x x x x y y y"), 3, 32).values, z6);

  // Cartan window around a ray point
  const MarkedGroup C = MarkedGroup::cartan_standard();
  const WordMetric mc(C);
  const DistanceTable c4 = ball(C, 4);
  lipschitz.add(horofn_window(mc, C.evaluate(ray_prefix(RaySpec::digitized(1, 1), 8)), 2, 32).values, c4);

  what = fmt("1-Lipschitz: %zu horofunction windows and Busemann tables, %zu violations", lipschitz.tables,
             lipschitz.violations);
  return lipschitz.violations == 0 && lipschitz.tables > 0;
}

// 11 ------------------------------------------------------------------------
bool subfinsler(std::string& what) {
  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const Polygon P = Polygon::of_group(H);
  std::vector<RationalVector> verts;
  for (const auto& v : P.vertices()) verts.push_back(RationalVector(v));
  const Polytope poly(verts);
  std::mt19937_64 rng(kSeed + 11);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 97);
  int gauge_ok = 0;
  for (int i = 0; i < kGaugePoints; ++i) {
    const Point2 v = point2(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    if (horofn_eval(P, HorofnClass::vertical(), v) == -poly.gauge(RationalVector(v))) ++gauge_ok;
  }
  const WordMetric metric(H);
  const WindowComparison c = discrete_vs_continuous(metric, P, HorofnClass::vertical(),
                                                    SamplingSequence::parse("central"), kSubfinslerN, kSubfinslerRadius);
  const Rational at_R = c.rows.back().max_difference;
  bool nondecreasing = true;
  for (std::size_t i = 1; i < c.rows.size(); ++i)
    nondecreasing = nondecreasing && c.rows[i].max_difference >= c.rows[i - 1].max_difference;
  bool distinct = true;
  for (int R = 4; R <= 6; ++R)
    distinct = distinct && window_fingerprint(H, P, HorofnClass::non_vertical(1, 0), R) !=
                               window_fingerprint(H, P, HorofnClass::non_vertical(1, Rational(1, 2)), R);
  what = fmt("sub-Finsler: vertical = -gauge on %d/%d points; central z^%d vs vertical at radius %d: max difference %s "
             "(frozen bound %lld, nondecreasing %s); nonvertical r=0 vs r=1/2 fingerprints distinct at R=4..6: %s",
             gauge_ok, kGaugePoints, kSubfinslerN, kSubfinslerRadius, to_string(at_R).c_str(),
             static_cast<long long>(kFrozenWindowBound), nondecreasing ? "yes" : "no", distinct ? "yes" : "no");
  return gauge_ok == kGaugePoints && !c.partial && at_R <= kFrozenWindowBound && nondecreasing && distinct;
}

// 12 ------------------------------------------------------------------------
bool determinism(std::string& what) {
  const std::vector<std::vector<std::string>> cmds = {
      {"census", "--group", "builtin:h1"},
      {"dist", "--group", "builtin:cartan", "--word", "x y x~ y~ x~ y~ x y"},
      {"busemann", "--group", "builtin:h1", "--ray", "digitized:1,2", "--element", "x y x~ y~", "--horizon", "16"},
      {"anagram", "--group", "builtin:h2", "--word", "x1 y1 x2 y2 x1 y1", "--interval", "x1,y1", "--n", "8"},
      {"cartan-audit", "--direction", "1,1", "--n", "4,6", "--delta", "2"},
      {"subfinsler", "--window", "4", "--n", "16", "--versus", "nonvertical:1:1/2"},
      {"selftest", "--seed", "5"},
  };
  int identical = 0;
  for (const auto& c : cmds) {
    std::ostringstream a, b, ea, eb;
    const int ca = run_cli(c, a, ea), cb = run_cli(c, b, eb);
    if (ca == cb && a.str() == b.str() && !a.str().empty()) ++identical;
  }
  what = fmt("determinism: %d/%zu CLI reports byte-identical across two runs", identical, cmds.size());
  return identical == static_cast<int>(cmds.size());
}

}  // namespace

int main() {
  criterion(1, group_laws);
  criterion(2, concatenation_spot);
  criterion(3, metric_engine);
  criterion(4, census);
  criterion(5, switch_cross_validation);
  criterion(6, abelian_consistency);
  criterion(7, anagrams);
  criterion(8, lower_audit);
  criterion(9, distinctness);
  criterion(10, lipschitz_property);
  criterion(11, subfinsler);
  criterion(12, determinism);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
