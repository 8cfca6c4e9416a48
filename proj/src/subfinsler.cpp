#include "horo/subfinsler.hpp"

#include <algorithm>
#include <sstream>

namespace horo {

Point2 point2(const Rational& a, const Rational& b) {
  Point2 p;
  p << a, b;
  return p;
}

Rational omega(const Point2& v, const Point2& w) { return w(0) * v(1) - v(0) * w(1); }

namespace {

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

bool less_xy(const Point2& a, const Point2& b) {
  return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
}

// 0 for angles in [0, pi), 1 for [pi, 2pi).
int half_plane(const Point2& v) { return (v(1) > 0 || (v(1) == 0 && v(0) > 0)) ? 0 : 1; }

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError("expected an integer, got '" + s + "'");
  }
}

}  // namespace

Polygon Polygon::hull(const std::vector<Point2>& input) {
  std::vector<Point2> pts = input;
  std::sort(pts.begin(), pts.end(), less_xy);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw DomainError("polygon needs at least three distinct points");
  // Monotone chain, collinear points dropped.
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw DomainError("polygon is degenerate");

  auto first = std::min_element(h.begin(), h.end(), [](const Point2& a, const Point2& b) {
    const int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return omega(b, a) > 0;  // cross(a, b) > 0
  });
  std::rotate(h.begin(), first, h.end());

  Polygon P;
  P.v_ = std::move(h);
  const int n = P.size();
  if (n % 2 != 0) throw DomainError("polygon is not centrally symmetric");
  for (int i = 0; i < n / 2; ++i)
    if (P.v_[i + n / 2] != Point2(-P.v_[i])) throw DomainError("polygon is not centrally symmetric");
  for (int k = 1; k <= n; ++k)
    if (omega(P.edge(k), P.vertex(k)) == 0) throw DomainError("polygon edge passes through the origin");
  return P;
}

Polygon Polygon::of_group(const MarkedGroup& G) {
  if (G.kind() != GroupKind::Heisenberg || G.shape().rank != 1)
    throw DomainError("sub-Finsler comparison needs an H_1 marking");
  std::vector<Point2> pts;
  for (const auto& s : G.generators()) pts.push_back(point2(to_rational(s.element[0]), to_rational(s.element[1])));
  return hull(pts);
}

Polygon Polygon::diamond() {
  return hull({point2(1, 0), point2(0, 1), point2(-1, 0), point2(0, -1)});
}

const Point2& Polygon::vertex(int k) const {
  const int n = size();
  return v_[((k - 1) % n + n) % n];
}

Point2 Polygon::edge(int k) const { return vertex(k) - vertex(k - 1); }

Rational Polygon::alpha(int k, const Point2& v) const {
  const Point2 e = edge(k);
  return omega(e, v) / omega(e, vertex(k));
}

Rational Polygon::gauge(const Point2& v) const {
  Rational best = alpha(1, v);
  for (int k = 2; k <= size(); ++k) best = std::max(best, alpha(k, v));
  return best;
}

// ---------------------------------------------------------------------------

HorofnClass HorofnClass::non_vertical(int k, Rational r) {
  HorofnClass c;
  c.kind = Kind::NonVertical;
  c.index = k;
  c.r = std::move(r);
  return c;
}

HorofnClass HorofnClass::mixed(int i, Rational r, Orientation o, int variant) {
  HorofnClass c;
  c.kind = Kind::Mixed;
  c.index = i;
  c.r = std::move(r);
  c.orientation = o;
  c.variant = variant;
  return c;
}

HorofnClass HorofnClass::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts[0] == "vertical" && parts.size() == 1) return vertical();
  if (parts[0] == "nonvertical" && parts.size() == 3)
    return non_vertical(parse_int(parts[1]), parse_rational(parts[2]));
  if (parts[0] == "mixed" && parts.size() == 5) {
    Orientation o;
    if (parts[3] == "le") o = Orientation::LeqFirst;
    else if (parts[3] == "ge") o = Orientation::GeqFirst;
    else throw DomainError("mixed orientation must be le or ge");
    return mixed(parse_int(parts[1]), parse_rational(parts[2]), o, parse_int(parts[4]));
  }
  throw DomainError("unknown horofunction class '" + std::string(text) + "'");
}

std::string HorofnClass::to_string() const {
  switch (kind) {
    case Kind::Vertical: return "vertical";
    case Kind::NonVertical: return "nonvertical:" + std::to_string(index) + ":" + horo::to_string(r);
    case Kind::Mixed:
      return "mixed:" + std::to_string(index) + ":" + horo::to_string(r) + ":" +
             (orientation == Orientation::LeqFirst ? "le" : "ge") + ":" + std::to_string(variant);
  }
  return "?";
}

void validate_class(const Polygon& P, const HorofnClass& cls) {
  if (cls.kind == HorofnClass::Kind::Vertical) return;
  if (cls.index < 1 || cls.index > P.size())
    throw DomainError("class index must lie in 1.." + std::to_string(P.size()));
  if (cls.r < 0 || cls.r > 1) throw DomainError("class parameter r must lie in [0,1]");
  if (cls.kind == HorofnClass::Kind::Mixed && cls.variant != 1 && cls.variant != 2)
    throw DomainError("mixed variant must be 1 or 2");
}

namespace {

// (first branch, second branch) of a mixed class.
std::pair<Rational, Rational> mixed_branches(const Polygon& P, const HorofnClass& cls, const Point2& v) {
  const int i = cls.index;
  const Rational ai = P.alpha(i, v), aprev = P.alpha(i - 1, v);
  return {cls.variant == 1 ? ai : aprev, cls.r * ai + (1 - cls.r) * aprev};
}

}  // namespace

Rational horofn_eval(const Polygon& P, const HorofnClass& cls, const Point2& v) {
  validate_class(P, cls);
  switch (cls.kind) {
    case HorofnClass::Kind::Vertical: return -P.gauge(v);
    case HorofnClass::Kind::NonVertical:
      return cls.r * P.alpha(cls.index, v) + (1 - cls.r) * P.alpha(cls.index - 1, v);
    case HorofnClass::Kind::Mixed: {
      const Rational w = omega(P.vertex(cls.index), v);
      const bool first = cls.orientation == HorofnClass::Orientation::LeqFirst ? w <= 0 : w >= 0;
      auto [a, b] = mixed_branches(P, cls, v);
      return first ? a : b;
    }
  }
  return 0;
}

SeamReport mixed_seam_check(const Polygon& P, const HorofnClass& cls, int samples) {
  validate_class(P, cls);
  if (cls.kind != HorofnClass::Kind::Mixed) throw DomainError("seam check needs a mixed class");
  SeamReport rep;
  for (int t = -samples; t <= samples; ++t) {
    if (t == 0) continue;
    const Point2 v = P.vertex(cls.index) * to_rational(std::int64_t{t});
    auto [a, b] = mixed_branches(P, cls, v);
    ++rep.samples;
    if (a != b) {
      ++rep.mismatches;
      rep.examples.emplace_back(v, a, b);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

SamplingSequence SamplingSequence::parse(std::string_view text) {
  const auto parts = split(text, ':');
  SamplingSequence s;
  if (parts[0] == "central" && parts.size() == 1) return s;
  if (parts[0] == "vertex" && parts.size() == 2) {
    s.preset = Preset::Vertex;
    s.index = parse_int(parts[1]);
    return s;
  }
  if (parts[0] == "edge" && parts.size() == 3) {
    s.preset = Preset::Edge;
    s.index = parse_int(parts[1]);
    s.r = parse_rational(parts[2]);
    return s;
  }
  throw DomainError("unknown sampling sequence '" + std::string(text) + "'");
}

std::string SamplingSequence::to_string() const {
  switch (preset) {
    case Preset::Central: return "central";
    case Preset::Vertex: return "vertex:" + std::to_string(index);
    case Preset::Edge: return "edge:" + std::to_string(index) + ":" + horo::to_string(r);
  }
  return "?";
}

namespace {

constexpr int kSequenceLengthBudget = 256;

const GroupElement& generator_over(const MarkedGroup& G, const Point2& v) {
  for (const auto& s : G.generators())
    if (to_rational(s.element[0]) == v(0) && to_rational(s.element[1]) == v(1)) return s.element;
  throw DomainError("no generator projects to the requested vertex");
}

}  // namespace

GroupElement sequence_element(const MarkedGroup& G, const Polygon& P, const SamplingSequence& seq, int n) {
  if (G.kind() != GroupKind::Heisenberg || G.shape().rank != 1 || !G.cyclic_commutator())
    throw DomainError("sampling sequences need an H_1 marking");
  if (n < 0) throw DomainError("sequence index must be nonnegative");
  switch (seq.preset) {
    case SamplingSequence::Preset::Central:
      return heisenberg_element(std::vector<std::int64_t>{0}, std::vector<std::int64_t>{0},
                                checked_mul<std::int64_t>(n, G.commutator_unit()));
    case SamplingSequence::Preset::Vertex:
      if (seq.index < 1 || seq.index > P.size()) throw DomainError("vertex index out of range");
      return power(generator_over(G, P.vertex(seq.index)), n);
    case SamplingSequence::Preset::Edge: {
      if (seq.index < 1 || seq.index > P.size()) throw DomainError("edge index out of range");
      if (seq.r < 0 || seq.r > 1) throw DomainError("edge ratio must lie in [0,1]");
      const std::int64_t p = to_int64(BigInt(numerator(seq.r))), q = to_int64(BigInt(denominator(seq.r)));
      const GroupElement block = mul(power(generator_over(G, P.vertex(seq.index)), p),
                                     power(generator_over(G, P.vertex(seq.index - 1)), q - p));
      return power(block, n);
    }
  }
  return G.identity();
}

WindowComparison discrete_vs_continuous(const WordMetric& metric, const Polygon& P, const HorofnClass& cls,
                                        const SamplingSequence& seq, int n, int R) {
  const MarkedGroup& G = metric.group();
  validate_class(P, cls);
  if (R < 0) throw DomainError("window radius must be nonnegative");
  WindowComparison rep;
  rep.cls = cls;
  rep.sequence = seq;
  rep.n = n;
  rep.x = sequence_element(G, P, seq, n);
  std::vector<Rational> worst(R + 1, Rational(0));
  std::vector<std::size_t> points(R + 1, 0);
  try {
    const HorofnWindow win = horofn_window(metric, rep.x, R, kSequenceLengthBudget);
    const DistanceTable B = ball(G, R);
    for (const auto& [w, phi] : win.values) {
      const int d = *B.distance(w);
      const Rational cont = horofn_eval(P, cls, point2(to_rational(w[0]), to_rational(w[1])));
      const Rational diff = abs(to_rational(std::int64_t{phi}) - cont);
      for (int r = d; r <= R; ++r) {
        ++points[r];
        worst[r] = std::max(worst[r], diff);
      }
    }
  } catch (const BudgetError&) {
    rep.partial = true;
    return rep;
  }
  for (int r = 0; r <= R; ++r) rep.rows.push_back({r, points[r], worst[r]});
  return rep;
}

std::vector<Rational> window_fingerprint(const MarkedGroup& G, const Polygon& P, const HorofnClass& cls, int R) {
  std::vector<Rational> out;
  for (const auto& [w, d] : ball(G, R).entries()) {
    (void)d;
    out.push_back(horofn_eval(P, cls, point2(to_rational(w[0]), to_rational(w[1]))));
  }
  return out;
}

}  // namespace horo
