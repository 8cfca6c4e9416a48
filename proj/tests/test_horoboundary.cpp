#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "horo/horoboundary.hpp"
#include "horo/polytope.hpp"

using namespace horo;

namespace {

// Staircase from the square classification: column i rises to the number of
// its squares lying under the path. A square whose center is on the line is a
// tie; ties are met in order of distance, the first passed below (so it stays
// above the path), the next above, alternating.
Word staircase_oracle(std::int64_t a, std::int64_t b, int n) {
  Word w;
  int tie = 0;
  std::int64_t prev = 0;
  for (std::int64_t i = 0; static_cast<int>(w.size()) < n; ++i) {
    std::int64_t h = 0;
    for (std::int64_t j = 0;; ++j) {
      // center (i + 1/2, j + 1/2) against the line b x = a y, doubled
      const std::int64_t s = b * (2 * i + 1) - a * (2 * j + 1);
      if (s > 0) {
        ++h;
      } else if (s == 0) {
        if (tie++ % 2 == 1) ++h;
        break;
      } else {
        break;
      }
      if (h > n) break;
    }
    for (std::int64_t k = prev; k < h; ++k) w.push_back("y");
    w.push_back("x");
    prev = h;
  }
  w.resize(n);
  return w;
}

Word reflect(Word w, bool flip_x, bool flip_y) {
  for (auto& l : w) {
    if (flip_x && l == "x") l = "x~";
    if (flip_y && l == "y") l = "y~";
  }
  return w;
}

}  // namespace

TEST_CASE("ray prefixes") {
  CHECK(ray_prefix(RaySpec::digitized(1, 0), 5) == split_word("x x x x x"));
  CHECK(ray_prefix(RaySpec::periodic({}, split_word("x y")), 3) == split_word("x y x"));
  CHECK(ray_prefix(RaySpec::periodic(split_word("y"), split_word("x")), 3) == split_word("y x x"));
  const Word diag = ray_prefix(RaySpec::digitized(1, 1), 4);
  CHECK(diag.front() == "x");
  CHECK(std::count(diag.begin(), diag.end(), "x") == 2);
  CHECK(std::count(diag.begin(), diag.end(), "y") == 2);
  CHECK_THROWS_AS(RaySpec::digitized(0, 0), DomainError);
  CHECK(RaySpec::digitized(2, 4) == RaySpec::digitized(1, 2));
  CHECK(RaySpec::digitized(Rational(1, 2), Rational(1)) == RaySpec::digitized(1, 2));
}

TEST_CASE("digitized rays match the square classification in every quadrant") {
  for (std::int64_t a = 0; a <= 6; ++a)
    for (std::int64_t b = 0; b <= 6; ++b) {
      if (std::gcd(a, b) != 1) continue;
      // the oracle walks columns, so the vertical axis is handled separately
      const Word base = a == 0 ? Word(30, "y") : staircase_oracle(a, b, 30);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(ray_prefix(RaySpec::digitized(a, b), 30) == base);
      if (a != 0) CHECK(ray_prefix(RaySpec::digitized(-a, b), 30) == reflect(base, true, false));
      if (b != 0) CHECK(ray_prefix(RaySpec::digitized(a, -b), 30) == reflect(base, false, true));
      if (a != 0 && b != 0) CHECK(ray_prefix(RaySpec::digitized(-a, -b), 30) == reflect(base, true, true));
    }
}

TEST_CASE("periodic form and tail letters") {
  const RaySpec d = RaySpec::digitized(1, 2);
  const RaySpec p = to_periodic(d);
  CHECK(p.kind == RaySpec::Kind::Periodic);
  CHECK(ray_prefix(p, 40) == ray_prefix(d, 40));
  CHECK(tail_letters(RaySpec::periodic(split_word("y"), split_word("x"))) == std::vector<Label>{"x"});
  CHECK(parse_ray(ray_to_json(d).dump()) == d);
  CHECK(parse_ray(R"({"periodic":{"prefix":"y","block":"x y"}})") ==
        RaySpec::periodic(split_word("y"), split_word("x y")));
}

TEST_CASE("digitized rays are certified by face membership") {
  for (const MarkedGroup& G : {MarkedGroup::abelian_standard(2), MarkedGroup::heisenberg_standard(1),
                               MarkedGroup::cartan_standard()})
    for (auto [a, b] : {std::pair{1, 2}, {2, 1}, {1, 1}, {-1, 3}, {-2, -1}, {3, -1}}) {
      const Word w = ray_prefix(RaySpec::digitized(a, b), 24);
      CHECK(geodesic_certificate_by_face(G, w) == FaceCertificate::Certified);
    }
}

TEST_CASE("validate_ray rejects non-geodesic specs") {
  const WordMetric metric(MarkedGroup::heisenberg_standard(1));
  CHECK_THROWS_AS(validate_ray(metric, RaySpec::periodic({}, split_word("x x~")), 4), DomainError);
  CHECK_THROWS_AS(validate_ray(metric, RaySpec::periodic({}, split_word("q")), 4), DomainError);
  CHECK_NOTHROW(validate_ray(metric, RaySpec::digitized(1, 2), 12));
}

TEST_CASE("Busemann values on translations") {
  const MarkedGroup Z2 = MarkedGroup::abelian_standard(2);
  const WordMetric metric(Z2);
  const RaySpec xs = RaySpec::periodic({}, split_word("x"));
  const BusemannEstimate fwd = busemann_eval(metric, xs, Z2.evaluate("x"), 8);
  CHECK(fwd.value == -1);
  CHECK(fwd.certified);
  const BusemannEstimate back = busemann_eval(metric, xs, Z2.evaluate("x~"), 8);
  CHECK(back.value == 1);
  CHECK(back.certified);
}

TEST_CASE("Busemann function along a digitized ray in H1") {
  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const WordMetric metric(H);
  const RaySpec spec = RaySpec::digitized(1, 2);
  const GroupElement z = H.evaluate("x y x~ y~");
  const BusemannEstimate e = busemann_eval(metric, spec, z, 24);
  CHECK(e.value >= e.lower_bound);
  CHECK(e.stable_for >= 1);
  for (std::size_t i = 1; i < e.sequence.size(); ++i) CHECK(e.sequence[i] <= e.sequence[i - 1]);
  CHECK(e.sequence.back() >= -4);
  for (const auto& gen : H.generators()) {
    const BusemannEstimate nb = busemann_eval(metric, spec, mul(z, gen.element), 24);
    CHECK(std::abs(nb.value - e.value) <= 1);
  }
  // b(gamma_n) = -n along the ray itself
  for (int n = 0; n <= 6; ++n) {
    const BusemannEstimate on = busemann_eval(metric, spec, H.evaluate(ray_prefix(spec, n)), 16);
    CHECK(on.value == -n);
    CHECK(on.certified);
  }
}

TEST_CASE("horofunction windows") {
  const MarkedGroup Z2 = MarkedGroup::abelian_standard(2);
  const WordMetric mz(Z2);
  const HorofnWindow at_e = horofn_window(mz, Z2.identity(), 3, 16);
  const DistanceTable bz = ball(Z2, 3);
  for (const auto& [w, v] : at_e.values) CHECK(v == *bz.distance(w));
  const HorofnWindow far = horofn_window(mz, Z2.evaluate("x x x x x x x x x x"), 3, 32);
  for (const auto& [w, v] : far.values)
    if (w == Z2.evaluate("x")) CHECK(v == -1);

  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const WordMetric mh(H);
  const RaySpec spec = RaySpec::digitized(2, 1);
  const int n = 10, R = 4;
  const HorofnWindow win = horofn_window(mh, H.evaluate(ray_prefix(spec, n)), R, 32);
  const DistanceTable bh = ball(H, 2 * R);
  CHECK(lipschitz_violations(win.values, bh) == 0);
  for (int k = 0; k <= R; ++k) {
    const GroupElement gk = H.evaluate(ray_prefix(spec, k));
    auto it = std::find_if(win.values.begin(), win.values.end(), [&](const auto& p) { return p.first == gk; });
    REQUIRE(it != win.values.end());
    CHECK(it->second == -k);
  }
}

TEST_CASE("switch comparisons") {
  const MarkedGroup Z2 = MarkedGroup::abelian_standard(2);
  const WordMetric mz(Z2);
  const RaySpec xs = RaySpec::periodic({}, split_word("x"));
  const RaySpec xy = RaySpec::periodic({}, split_word("x y"));
  const ComparisonReport same = same_busemann(mz, xy, xy, 6, 12);
  CHECK(same.verdict == Verdict::Verified);
  for (const auto& w : same.witnesses) CHECK(w.m == w.n);
  CHECK(same_busemann(mz, xs, xy, 6, 20).verdict == Verdict::NotFound);
  for (int C : {0, 1, 3}) CHECK(reduced_equiv(mz, xy, xy, C, 6, 12).verdict == Verdict::Verified);

  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const WordMetric mh(H);
  const ComparisonReport edge = same_busemann(mh, RaySpec::digitized(1, 2), RaySpec::digitized(2, 1), 6, 30);
  CHECK(edge.verdict == Verdict::Verified);
  CHECK(reduced_equiv(mh, RaySpec::digitized(1, 2), RaySpec::digitized(2, 1), 0, 6, 30).verdict ==
        Verdict::Verified);

  const WordMetric mc(MarkedGroup::cartan_standard());
  CHECK(reduced_equiv(mc, RaySpec::digitized(1, 1), RaySpec::digitized(-1, -1), 2, 2, 8).verdict !=
        Verdict::Verified);
}

TEST_CASE("cofinal orbit witnesses") {
  const MarkedGroup Z2 = MarkedGroup::abelian_standard(2);
  const RaySpec xy = RaySpec::periodic({}, split_word("x y"));
  const RaySpec yx = RaySpec::periodic({}, split_word("y x"));
  const auto self = cofinal_orbit_witness(Z2, xy, xy);
  REQUIRE(self);
  CHECK(self->g.is_identity());
  const auto shift = cofinal_orbit_witness(Z2, xy, yx);
  REQUIRE(shift);
  CHECK(shift->g == Z2.evaluate("x"));
  CHECK_FALSE(cofinal_orbit_witness(Z2, xy, RaySpec::periodic({}, split_word("x"))));

  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const RaySpec a = RaySpec::periodic(split_word("y y"), split_word("x"));
  const RaySpec b = RaySpec::periodic(split_word("y~"), split_word("x"));
  const auto w = cofinal_orbit_witness(H, a, b);
  REQUIRE(w);
  CHECK(w->g == mul(H.evaluate(w->u), inv(H.evaluate(w->v))));
}

TEST_CASE("lifting rays through label maps") {
  const MarkedGroup C = MarkedGroup::cartan_standard();
  const MarkedGroup Z2 = MarkedGroup::abelian_standard(2);
  const RaySpec xs = RaySpec::periodic({}, split_word("x"));
  CHECK(lift_ray(C, Z2, {{"x", "x"}, {"y", "y"}}, xs) == xs);
  CHECK(lift_ray(Z2, Z2, {{"x", "x"}, {"y", "y"}}, RaySpec::periodic({}, split_word("x y~"))) ==
        RaySpec::periodic({}, split_word("x y~")));
  CHECK_THROWS_AS(lift_ray(C, Z2, {{"x", "x"}}, RaySpec::periodic({}, split_word("y"))), DomainError);
}

TEST_CASE("periodic geodesic rays keep their letters in a proper face") {
  // A finite geodesic may use every letter (x x y y x~ x~ y~ y~ does); the
  // face condition only bites along rays.
  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const WordMetric metric(H);
  CHECK(metric.is_geodesic_word(split_word("x x y y x~ x~ y~ y~")));
  const Polytope& P = metric.polytope();
  const int k = H.size();
  std::size_t improper = 0, proper = 0;
  for (int L = 1; L <= 4; ++L) {
    std::vector<int> digits(L, 0);
    for (;;) {
      Word block;
      std::vector<int> support;
      for (int d : digits) {
        block.push_back(H.generator(d).label);
        support.push_back(d);
      }
      std::sort(support.begin(), support.end());
      support.erase(std::unique(support.begin(), support.end()), support.end());
      bool ray_like = true;
      Word w;
      for (int rep = 0; rep < 6 && ray_like; ++rep) {
        w.insert(w.end(), block.begin(), block.end());
        ray_like = metric.is_geodesic_word(w);
      }
      if (P.minimal_face(support)) {
        ++proper;
        CHECK(ray_like == metric.is_geodesic_word(block));
      } else {
        ++improper;
        CAPTURE(join_word(block));
        CHECK_FALSE(ray_like);
      }
      int pos = 0;
      while (pos < L && ++digits[pos] == k) digits[pos++] = 0;
      if (pos == L) break;
    }
  }
  CHECK(proper > 0);
  CHECK(improper > 0);
}
