#include "horo/cartan_analysis.hpp"

#include <array>
#include <cstdlib>
#include <numeric>

#include "horo/flat_table.hpp"

namespace horo {

std::string_view to_string(DirectionParity p) {
  switch (p) {
    case DirectionParity::BothOdd: return "both-odd";
    case DirectionParity::MixedParity: return "mixed-parity";
    case DirectionParity::Axis: return "axis";
  }
  return "?";
}

DirectionFrame DirectionFrame::of(std::int64_t a, std::int64_t b) {
  if (a == 0 && b == 0) throw DomainError("direction must be nonzero");
  const std::int64_t g = std::gcd(a, b);
  DirectionFrame f;
  f.a = a / g;
  f.b = b / g;
  if (f.a == 0 || f.b == 0)
    f.parity = DirectionParity::Axis;
  else if ((f.a % 2 != 0) && (f.b % 2 != 0))
    f.parity = DirectionParity::BothOdd;
  else
    f.parity = DirectionParity::MixedParity;
  return f;
}

Vector2<Rational> DirectionFrame::u() const {
  Vector2<Rational> v;
  v << to_rational(a), to_rational(b);
  return v;
}

Vector2<Rational> DirectionFrame::u_perp() const {
  Vector2<Rational> v;
  v << to_rational(-b), to_rational(a);
  return v;
}

Rational DirectionFrame::pair_perp(const Vector2<Rational>& v) const {
  return v(0) * to_rational(-b) + v(1) * to_rational(a);
}

void require_standard_cartan(const MarkedGroup& G) {
  if (G.kind() != GroupKind::Cartan || G.size() != 4 || !has_standard_grid(G) ||
      !(G.generator(G.index_of("x")).element == MarkedGroup::cartan_standard().evaluate("x")) ||
      !(G.generator(G.index_of("y")).element == MarkedGroup::cartan_standard().evaluate("y")))
    throw DomainError("Cartan analysis needs the standard marking {x, y}");
}

CentralElement central_with_barycenter(const MarkedGroup& G, std::int64_t b1, std::int64_t b2) {
  require_standard_cartan(G);
  Word g = letter_power("x", b1);
  const Word yb = letter_power("y", b2);
  g.insert(g.end(), yb.begin(), yb.end());
  const Word h = split_word("x y x~ y~");
  CentralElement out;
  out.word = g;
  out.word.insert(out.word.end(), h.begin(), h.end());
  const Word gi = inverse_word(g), hi = inverse_word(h);
  out.word.insert(out.word.end(), gi.begin(), gi.end());
  out.word.insert(out.word.end(), hi.begin(), hi.end());
  out.word = free_reduce(out.word);
  out.element = G.evaluate(out.word);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using Key = std::array<std::int64_t, 5>;

LowerAuditRow audit_row(const MarkedGroup& G, const DirectionFrame& u, int n, int delta_max,
                        std::size_t max_entries) {
  LowerAuditRow row;
  row.n = n;
  const GroupElement target = G.evaluate(ray_prefix(u.ray(), n));
  row.reference = u.pair_perp(cartan_params(target).barycenter);
  const std::int64_t tx = target[0], ty = target[1];
  const int L = n + delta_max;

  // 6 <B(g); u_perp> as an integer.
  auto pairing6 = [&](const std::int64_t* k) {
    return checked_add(checked_mul(-u.b, k[3]), checked_mul(u.a, k[4]));
  };
  std::vector<std::optional<std::int64_t>> best(delta_max + 1);
  std::vector<std::size_t> count(delta_max + 1, 0);
  auto record = [&](const std::int64_t* k, int depth) {
    if (k[0] != tx || k[1] != ty) return;
    const int delta = depth - n;
    if (delta < 0 || delta > delta_max) return;
    ++count[delta];
    const std::int64_t p = pairing6(k);
    if (!best[delta] || p > *best[delta]) best[delta] = p;
  };

  const GroupShape shape = G.shape();
  std::vector<Key> gens;
  for (const auto& s : G.generators()) gens.push_back({s.element[0], s.element[1], s.element[2], s.element[3], s.element[4]});
  FlatTable seen(5, 1024);
  std::vector<Key> frontier{Key{}}, next;
  seen.insert(frontier[0].data(), 0);
  record(frontier[0].data(), 0);
  for (int depth = 0; depth < L; ++depth) {
    next.clear();
    const int remaining = L - depth - 1;
    for (const Key& e : frontier) {
      for (const Key& s : gens) {
        Key c;
        multiply_coords(shape, e.data(), s.data(), c.data());
        if (std::abs(tx - c[0]) + std::abs(ty - c[1]) > remaining) continue;
        if (!seen.insert(c.data(), depth + 1)) continue;
        if (seen.size() > max_entries) throw BudgetError("lower audit exceeds the entry budget", depth);
        record(c.data(), depth + 1);
        next.push_back(c);
      }
    }
    frontier.swap(next);
  }
  row.explored = seen.size();

  for (int d = 0; d <= delta_max; ++d) {
    LowerAuditRecord rec;
    rec.delta = d;
    rec.count = count[d];
    if (best[d]) rec.max_pairing = make_rational(*best[d], 6);
    if (rec.max_pairing) {
      const Rational excess = *rec.max_pairing - row.reference;
      if (d == 0) {
        if (excess > 0) ++row.violations;
      } else if (excess > 0) {
        const Rational need = excess / to_rational(std::int64_t{d} * d * d);
        row.M = std::max(row.M, to_int64(ceil(need)));
      }
    }
    row.records.push_back(std::move(rec));
  }
  return row;
}

}  // namespace

BoundAuditReport bound_audit_lower(const MarkedGroup& G, const DirectionFrame& u, const std::vector<int>& ns,
                                   int delta_max, AuditMode mode, std::size_t max_entries) {
  require_standard_cartan(G);
  if (delta_max < 0) throw DomainError("delta_max must be nonnegative");
  BoundAuditReport rep;
  rep.u = u;
  rep.delta_max = delta_max;
  rep.mode = mode;
  for (int n : ns) {
    if (n < 0) throw DomainError("n must be nonnegative");
    if (mode == AuditMode::Exhaustive && n + delta_max > kExhaustiveMaxLength)
      throw DomainError("exhaustive mode needs n + delta <= " + std::to_string(kExhaustiveMaxLength));
    rep.rows.push_back(audit_row(G, u, n, delta_max, max_entries));
    rep.M = std::max(rep.M, rep.rows.back().M);
    rep.violations += rep.rows.back().violations;
  }
  return rep;
}

// ---------------------------------------------------------------------------

Rational fit_cube_root_constant(const std::vector<std::pair<std::int64_t, Rational>>& value_and_X) {
  const Rational scale = make_rational(1000);
  std::int64_t worst = 0;
  for (const auto& [value, X] : value_and_X) {
    if (value <= 0) continue;
    auto ok = [&](std::int64_t k) {
      const Rational t = to_rational(value) * scale / to_rational(k) - 1;
      return t <= 0 || t * t * t <= X;
    };
    std::int64_t lo = 1, hi = checked_mul(value, std::int64_t{1000});
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (ok(mid)) hi = mid;
      else lo = mid + 1;
    }
    worst = std::max(worst, lo);
  }
  return make_rational(worst, 1000);
}

std::vector<NamedElement> audit_central_elements(const MarkedGroup& G) {
  require_standard_cartan(G);
  std::vector<NamedElement> hs{{"e", G.identity()},
                               {"[x,y]", G.evaluate("x y x~ y~")},
                               {"[y,x]", G.evaluate("y x y~ x~")},
                               {"[x,y][x~,y~]", G.evaluate("x y x~ y~ x~ y~ x y")}};
  for (int b1 = -1; b1 <= 1; ++b1)
    for (int b2 = -1; b2 <= 1; ++b2)
      hs.push_back({"z(" + std::to_string(b1) + "," + std::to_string(b2) + ")",
                    central_with_barycenter(G, b1, b2).element});
  return hs;
}

UpperAuditReport bound_audit_upper(const WordMetric& metric, const DirectionFrame& u,
                                   const std::vector<NamedElement>& hs, int horizon) {
  require_standard_cartan(metric.group());
  UpperAuditReport rep;
  rep.u = u;
  rep.horizon = horizon;
  std::vector<std::pair<std::int64_t, Rational>> general, improved;
  for (const auto& h : hs) {
    if (h.element[0] != 0 || h.element[1] != 0) throw DomainError("upper audit needs h in [C,C]: " + h.name);
    UpperAuditRow row;
    row.name = h.name;
    const CartanParams p = cartan_params(h.element);
    row.area = p.area;
    row.pairing = -u.pair_perp(p.barycenter);
    row.estimate = busemann_eval(metric, u.ray(), h.element, horizon);
    if (row.estimate.budget_exhausted) rep.partial = true;
    const Rational pos = row.pairing > 0 ? row.pairing : Rational(0);
    general.emplace_back(row.estimate.value, pos + abs(row.area));
    improved.emplace_back(row.estimate.value, pos);
    rep.rows.push_back(std::move(row));
  }
  rep.C2 = fit_cube_root_constant(general);
  if (u.parity == DirectionParity::BothOdd) rep.C2_improved = fit_cube_root_constant(improved);
  return rep;
}

// ---------------------------------------------------------------------------

std::pair<std::int64_t, std::int64_t> separating_barycenter(const DirectionFrame& u, const DirectionFrame& v) {
  if (u == v) throw DomainError("directions must be distinct");
  for (std::int64_t r = 1;; ++r) {
    for (std::int64_t b1 = -r; b1 <= r; ++b1)
      for (std::int64_t b2 = -r; b2 <= r; ++b2) {
        if (std::max(std::abs(b1), std::abs(b2)) != r) continue;
        Vector2<Rational> minus_b;
        minus_b << to_rational(-b1), to_rational(-b2);
        if (u.pair_perp(minus_b) > 0 && v.pair_perp(minus_b) <= 0) return {b1, b2};
      }
  }
}

DistinctnessReport distinctness_witness(const WordMetric& metric, const DirectionFrame& u, const DirectionFrame& v,
                                        int horizon, int max_norm) {
  const MarkedGroup& G = metric.group();
  require_standard_cartan(G);
  DistinctnessReport rep;
  rep.u = u;
  rep.v = v;
  std::tie(rep.b1, rep.b2) = separating_barycenter(u, v);
  Vector2<Rational> minus_b;
  minus_b << to_rational(-rep.b1), to_rational(-rep.b2);
  rep.pairing_u = u.pair_perp(minus_b);
  rep.pairing_v = v.pair_perp(minus_b);
  rep.h = central_with_barycenter(G, rep.b1, rep.b2);
  for (int k = 1;; ++k) {
    const GroupElement hk = power(rep.h.element, k);
    const LengthResult len = metric.length(hk, max_norm);
    if (len.status == LengthStatus::ExceedsBudget) break;
    if (len.status == LengthStatus::Inconclusive) {
      rep.partial = true;
      break;
    }
    PowerEvaluation ev;
    ev.power = k;
    ev.norm = len.length;
    ev.for_u = busemann_eval(metric, u.ray(), hk, horizon);
    ev.for_v = busemann_eval(metric, v.ray(), hk, horizon);
    const bool stop = ev.for_u.budget_exhausted || ev.for_v.budget_exhausted;
    rep.evaluations.push_back(std::move(ev));
    if (stop) {
      rep.partial = true;
      break;
    }
  }
  return rep;
}

StabilizerReport stabilizer_escape(const WordMetric& metric, const DirectionFrame& u, const GroupElement& g,
                                   int n_max, int horizon, const Rational& C1, const Rational& C2) {
  const MarkedGroup& G = metric.group();
  require_standard_cartan(G);
  if (C1 <= 0 || C2 <= 0) throw DomainError("constants must be positive");
  StabilizerReport rep;
  rep.u = u;
  rep.g = g;
  rep.C1 = C1;
  rep.C2 = C2;
  Vector2<Rational> ghat;
  ghat << to_rational(g[0]), to_rational(g[1]);
  rep.pairing = u.pair_perp(ghat);
  if (rep.pairing == 0) throw DomainError("g_hat lies on the line of u");
  const Rational p = abs(rep.pairing);
  const Rational need = (C2 * C2 * C2) / (C1 * C1 * C1 * p);
  std::int64_t m = to_int64(floor(need)) + 1;
  rep.m = rep.pairing > 0 ? m : -m;

  const GroupElement h = G.evaluate("x y x~ y~ x~ y~ x y");
  const GroupElement gm = power(g, -rep.m);
  rep.base = busemann_eval(metric, u.ray(), gm, horizon);
  if (rep.base.budget_exhausted) {
    rep.partial = true;
    return rep;
  }
  for (int n = 0; n <= n_max; ++n) {
    StabilizerRow row;
    row.n = n;
    const GroupElement hn = power(h, n);
    row.plain = busemann_eval(metric, u.ray(), hn, horizon);
    row.shifted = busemann_eval(metric, u.ray(), mul(gm, hn), horizon);
    row.gap = row.shifted.value - rep.base.value - row.plain.value;
    const bool stop = row.plain.budget_exhausted || row.shifted.budget_exhausted;
    rep.rows.push_back(std::move(row));
    if (stop) {
      rep.partial = true;
      break;
    }
  }
  return rep;
}

}  // namespace horo
