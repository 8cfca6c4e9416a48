#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "horo/polytope.hpp"
#include "horo/subfinsler.hpp"

using namespace horo;

namespace {

Point2 pt(std::int64_t a, std::int64_t b) { return point2(to_rational(a), to_rational(b)); }

Point2 random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> num(-50, 50), den(1, 7);
  return point2(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

Polygon hexagon() { return Polygon::hull({pt(2, 0), pt(1, 1), pt(-1, 1), pt(-2, 0), pt(-1, -1), pt(1, -1)}); }

}  // namespace

TEST_CASE("omega") {
  CHECK(omega(pt(1, 0), pt(0, 1)) == -1);
  CHECK(omega(pt(0, 1), pt(1, 0)) == 1);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Point2 u = random_point(rng), v = random_point(rng), w = random_point(rng);
    const Rational s(i % 5 - 2, 3);
    CHECK(omega(v, v) == 0);
    CHECK(omega(u, v) == -omega(v, u));
    CHECK(omega(u + s * v, w) == omega(u, w) + s * omega(v, w));
  }
}

TEST_CASE("polygon construction") {
  const Polygon d = Polygon::diamond();
  REQUIRE(d.size() == 4);
  CHECK(d.vertex(1) == pt(1, 0));
  CHECK(d.vertex(2) == pt(0, 1));
  CHECK(d.vertex(0) == d.vertex(4));
  CHECK(d.edge(1) == pt(1, 1));
  const Polygon g = Polygon::of_group(MarkedGroup::heisenberg_standard(1));
  CHECK(g.vertices() == d.vertices());
  // interior and duplicate points are dropped
  const Polygon h = Polygon::hull({pt(1, 0), pt(0, 0), pt(0, 1), pt(-1, 0), pt(0, -1), pt(1, 0), pt(0, 1)});
  CHECK(h.vertices() == d.vertices());
  CHECK(hexagon().size() == 6);
  CHECK(hexagon().vertex(1) == pt(2, 0));
  CHECK_THROWS_AS(Polygon::hull({pt(1, 0), pt(0, 1), pt(-1, -1)}), DomainError);
  CHECK_THROWS_AS(Polygon::hull({pt(1, 0), pt(-1, 0)}), DomainError);
}

TEST_CASE("alpha") {
  for (const Polygon& P : {Polygon::diamond(), hexagon()})
    for (int k = 1; k <= P.size(); ++k) {
      CHECK(P.alpha(k, P.vertex(k)) == 1);
      CHECK(P.alpha(k, P.vertex(k - 1)) == 1);
      CHECK(P.alpha(k, P.edge(k)) == 0);
      std::mt19937_64 rng(k);
      for (int i = 0; i < 50; ++i) {
        const Point2 v = random_point(rng);
        const Rational t(i - 25, 4);
        CHECK(P.alpha(k, v + t * P.edge(k)) == P.alpha(k, v));
      }
    }
}

TEST_CASE("vertical class is minus the gauge") {
  const Polygon d = Polygon::diamond();
  CHECK(horofn_eval(d, HorofnClass::vertical(), pt(3, 4)) == -7);
  for (const Polygon& P : {d, hexagon()}) {
    std::vector<RationalVector> verts;
    for (const auto& v : P.vertices()) verts.push_back(RationalVector(v));
    const Polytope poly(verts);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
      const Point2 v = random_point(rng);
      CHECK(horofn_eval(P, HorofnClass::vertical(), v) == -poly.gauge(RationalVector(v)));
    }
    // 1-homogeneous
    const Point2 v = pt(3, -2);
    CHECK(horofn_eval(P, HorofnClass::vertical(), v * Rational(5, 2)) ==
          Rational(5, 2) * horofn_eval(P, HorofnClass::vertical(), v));
  }
}

TEST_CASE("non-vertical classes") {
  const Polygon P = hexagon();
  std::mt19937_64 rng(5);
  for (int k = 1; k <= P.size(); ++k)
    for (int i = 0; i < 40; ++i) {
      const Point2 v = random_point(rng);
      CHECK(horofn_eval(P, HorofnClass::non_vertical(k, 1), v) == P.alpha(k, v));
      CHECK(horofn_eval(P, HorofnClass::non_vertical(k, 0), v) == P.alpha(k - 1, v));
      const Rational half = horofn_eval(P, HorofnClass::non_vertical(k, Rational(1, 2)), v);
      CHECK(half == (P.alpha(k, v) + P.alpha(k - 1, v)) / 2);
    }
  CHECK_THROWS_AS(horofn_eval(P, HorofnClass::non_vertical(7, 0), pt(1, 1)), DomainError);
  CHECK_THROWS_AS(horofn_eval(P, HorofnClass::non_vertical(1, 2), pt(1, 1)), DomainError);
}

TEST_CASE("mixed classes and their seam") {
  const Polygon P = hexagon();
  for (int i = 1; i <= P.size(); ++i) {
    const auto le = HorofnClass::mixed(i, 1, HorofnClass::Orientation::LeqFirst, 1);
    const auto same_r0 = HorofnClass::mixed(i, 0, HorofnClass::Orientation::GeqFirst, 2);
    CHECK(mixed_seam_check(P, le, 5).mismatches == 0);
    CHECK(mixed_seam_check(P, same_r0, 5).mismatches == 0);
    // on the seam the first branch wins
    const auto v2 = HorofnClass::mixed(i, 0, HorofnClass::Orientation::LeqFirst, 1);
    const Point2 seam = P.vertex(i) * Rational(3);
    CHECK(horofn_eval(P, v2, seam) == P.alpha(i, seam));
    const Point2 off = P.vertex(i) + P.vertex(i + 1);
    const bool first = omega(P.vertex(i), off) <= 0;
    CHECK(horofn_eval(P, v2, off) == (first ? P.alpha(i, off) : P.alpha(i - 1, off)));
  }
  const SeamReport r =
      mixed_seam_check(P, HorofnClass::mixed(2, Rational(1, 2), HorofnClass::Orientation::LeqFirst, 2), 3);
  CHECK(r.samples == 6);
  CHECK(r.mismatches == static_cast<int>(r.examples.size()));
  CHECK_THROWS_AS(mixed_seam_check(P, HorofnClass::vertical(), 3), DomainError);
}

TEST_CASE("class and sequence text forms") {
  for (const char* text : {"vertical", "nonvertical:2:1/3", "mixed:3:1/2:ge:2", "mixed:1:0:le:1"})
    CHECK(HorofnClass::parse(text).to_string() == text);
  for (const char* text : {"central", "vertex:2", "edge:1:1/2"})
    CHECK(SamplingSequence::parse(text).to_string() == text);
  CHECK_THROWS(HorofnClass::parse("diagonal"));
  CHECK_THROWS(SamplingSequence::parse("edge:1"));
}

TEST_CASE("sampling sequences") {
  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const Polygon P = Polygon::of_group(H);
  GroupElement z5 = H.identity();
  for (int i = 0; i < 5; ++i) z5 = mul(z5, H.evaluate("x y x~ y~"));
  CHECK(sequence_element(H, P, SamplingSequence::parse("central"), 5) == z5);
  CHECK(sequence_element(H, P, SamplingSequence::parse("vertex:2"), 3) == H.evaluate("y y y"));
  CHECK(sequence_element(H, P, SamplingSequence::parse("edge:2:1/3"), 2) == H.evaluate("y x x y x x"));
}

TEST_CASE("window fingerprints separate non-vertical classes") {
  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const Polygon P = Polygon::of_group(H);
  for (int R : {4, 5}) {
    const auto f0 = window_fingerprint(H, P, HorofnClass::non_vertical(1, 0), R);
    const auto fh = window_fingerprint(H, P, HorofnClass::non_vertical(1, Rational(1, 2)), R);
    CHECK(f0.size() == ball(H, R).size());
    CHECK(f0 != fh);
  }
}

TEST_CASE("central sequence against the vertical class") {
  const MarkedGroup H = MarkedGroup::heisenberg_standard(1);
  const WordMetric metric(H);
  const WindowComparison c = discrete_vs_continuous(metric, Polygon::of_group(H), HorofnClass::vertical(),
                                                    SamplingSequence::parse("central"), 64, 8);
  CHECK_FALSE(c.partial);
  REQUIRE(c.rows.size() == 9);
  const int frozen[] = {0, 0, 2, 2, 2, 2, 4, 4, 4};
  for (int R = 0; R <= 8; ++R) {
    CHECK(c.rows[R].radius == R);
    CHECK(c.rows[R].max_difference == frozen[R]);
    if (R > 0) CHECK(c.rows[R].max_difference >= c.rows[R - 1].max_difference);
  }
}
