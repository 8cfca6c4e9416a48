#include "horo/cartan_oracle.hpp"

#include <algorithm>
#include <vector>

namespace horo {

namespace {

using Point = Vector2<Rational>;
using Polygon = std::vector<Point>;

Rational cross(const Point& a, const Point& b) { return a(0) * b(1) - a(1) * b(0); }

// Signed side of p relative to the directed line a -> b.
Rational side(const Point& a, const Point& b, const Point& p) { return cross(b - a, p - a); }

// Keeps the part of `poly` where sign * side(a, b, .) >= 0.
Polygon clip(const Polygon& poly, const Point& a, const Point& b, int sign) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const Rational sp = side(a, b, p) * sign;
    const Rational sq = side(a, b, q) * sign;
    if (sp >= 0) out.push_back(p);
    if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
      const Rational t = sp / (sp - sq);
      out.push_back(p + (q - p) * t);
    }
  }
  return out;
}

struct Integrals {
  Rational area = 0;
  Point moment = Point::Zero();
};

// Shoelace area and first moments of a simple polygon (any orientation is
// made positive).
Integrals integrate(const Polygon& poly) {
  Integrals r;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const Rational c = cross(p, q);
    r.area += c / 2;
    r.moment += (p + q) * (c / 6);
  }
  if (r.area < 0) {
    r.area = -r.area;
    r.moment = -r.moment;
  }
  return r;
}

int winding_number(const std::vector<Point>& closed, const Point& p) {
  int w = 0;
  const std::size_t n = closed.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = closed[i];
    const Point& b = closed[(i + 1) % n];
    if (a(1) <= p(1)) {
      if (b(1) > p(1) && side(a, b, p) > 0) ++w;
    } else if (b(1) <= p(1) && side(a, b, p) < 0) {
      --w;
    }
  }
  return w;
}

}  // namespace

CartanParams cartan_path_oracle(const Word& w) {
  std::vector<Point> path{Point::Zero()};
  std::int64_t x = 0, y = 0;
  std::int64_t lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& letter : w) {
    if (letter == "x") ++x;
    else if (letter == "x~") --x;
    else if (letter == "y") ++y;
    else if (letter == "y~") --y;
    else throw DomainError("cartan_path_oracle: letter '" + letter + "' is not in {x,y}+-");
    path.push_back(Point(to_rational(x), to_rational(y)));
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  }
  CartanParams out;
  out.endpoint = path.back();
  // The closing chord runs from the endpoint straight back to the origin,
  // which is path.front(); the polygon closes implicitly.
  const Point origin = Point::Zero();
  const Point end = path.back();
  const bool cut = !(end(0) == 0 && end(1) == 0);

  for (std::int64_t i = lo_x; i < hi_x; ++i) {
    for (std::int64_t j = lo_y; j < hi_y; ++j) {
      const Polygon cell{Point(to_rational(i), to_rational(j)),
                         Point(to_rational(i + 1), to_rational(j)),
                         Point(to_rational(i + 1), to_rational(j + 1)),
                         Point(to_rational(i), to_rational(j + 1))};
      std::vector<Polygon> pieces;
      if (cut) {
        for (int sign : {1, -1}) {
          Polygon piece = clip(cell, origin, end, sign);
          if (piece.size() >= 3) pieces.push_back(std::move(piece));
        }
      } else {
        pieces.push_back(cell);
      }
      for (const auto& piece : pieces) {
        const Integrals I = integrate(piece);
        if (I.area == 0) continue;
        const Point centroid = I.moment / I.area;
        const int wn = winding_number(path, centroid);
        if (wn == 0) continue;
        out.area += I.area * wn;
        out.barycenter += I.moment * wn;
      }
    }
  }
  return out;
}

}  // namespace horo
