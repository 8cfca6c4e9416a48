#include "horo/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "horo/group_io.hpp"

namespace horo {

namespace {

json rat(const Rational& v) { return rational_to_json(v); }

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

json int_list(const std::vector<int>& v) { return json(v); }

}  // namespace

json element_to_json(const GroupElement& g) {
  json j;
  json coords = json::array();
  for (int i = 0; i < g.coords().size(); ++i) coords.push_back(g[i]);
  j["coords"] = coords;
  if (g.shape().kind == GroupKind::Cartan) {
    const CartanParams p = cartan_params(g);
    j["endpoint"] = {rat(p.endpoint(0)), rat(p.endpoint(1))};
    j["area"] = rat(p.area);
    j["barycenter"] = {rat(p.barycenter(0)), rat(p.barycenter(1))};
  }
  return j;
}

json word_to_json(const Word& w) { return join_word(w); }

json point_to_json(const Point2& p) { return json::array({rat(p(0)), rat(p(1))}); }

json to_json(const LengthResult& r) {
  json j;
  j["status"] = std::string(to_string(r.status));
  j["budget"] = r.budget;
  j["lower_bound"] = r.lower_bound;
  j["length"] = r.exact() ? json(r.length) : json(nullptr);
  return j;
}

json to_json(const BusemannEstimate& e) {
  json j;
  j["sequence"] = e.sequence;
  j["value"] = e.value;
  j["stable_for"] = e.stable_for;
  j["horizon"] = e.horizon;
  j["requested_horizon"] = e.requested_horizon;
  j["lower_bound"] = e.lower_bound;
  j["certified"] = e.certified;
  j["budget_exhausted"] = e.budget_exhausted;
  return j;
}

json to_json(const ComparisonReport& r) {
  json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["N"] = r.N;
  j["M"] = r.M;
  j["slack"] = r.slack;
  json w = json::array();
  for (const auto& s : r.witnesses) w.push_back({{"n", s.n}, {"m", s.m}});
  j["witnesses"] = w;
  j["failed_at"] = r.failed_at >= 0 ? json(r.failed_at) : json(nullptr);
  return j;
}

json to_json(const CofinalWitness& w) {
  return {{"g", element_to_json(w.g)}, {"u", word_to_json(w.u)}, {"v", word_to_json(w.v)}};
}

json to_json(const MarkedGroup& G, const RayInvariants& inv) {
  auto labels = [&](const std::vector<int>& idx) {
    json a = json::array();
    for (int i : idx) a.push_back(G.generator(i).label);
    return a;
  };
  json j;
  j["D"] = inv.D;
  j["F"] = labels(inv.F.members);
  j["F_dimension"] = inv.F.dimension;
  j["F_commutative"] = inv.F_commutative;
  j["E"] = inv.E ? labels(inv.E->members) : json(nullptr);
  return j;
}

json to_json(const Classifier::OrbitKey& key) {
  json j;
  j["F"] = int_list(key.F);
  j["commutative"] = key.commutative;
  j["E"] = key.E ? int_list(*key.E) : json(nullptr);
  return j;
}

json to_json(const AnagramSet& a) {
  json j;
  j["word"] = word_to_json(a.word);
  j["offsets"] = a.offsets;
  j["delta"] = a.delta;
  const bool pos = !a.offsets.empty() && a.offsets.back() > 0;
  const bool neg = !a.offsets.empty() && a.offsets.front() < 0;
  j["has_positive"] = pos;
  j["has_negative"] = neg;
  return j;
}

json to_json(const IntervalReport& r) {
  json j;
  j["D"] = r.D;
  j["subgroup_generator"] = r.subgroup_generator;
  j["u"] = word_to_json(r.u);
  j["lengths"] = r.lengths;
  j["attained"] = r.attained;
  j["within_subgroup"] = r.within_subgroup;
  j["pass"] = r.pass;
  return j;
}

json to_json(const DirectionFrame& f) {
  json j;
  j["u"] = {f.a, f.b};
  j["u_perp"] = {-f.b, f.a};
  j["parity"] = std::string(to_string(f.parity));
  return j;
}

json to_json(const BoundAuditReport& r) {
  json j;
  j["direction"] = to_json(r.u);
  j["delta_max"] = r.delta_max;
  j["mode"] = r.mode == AuditMode::Exhaustive ? "exhaustive" : "search";
  j["M"] = r.M;
  j["violations"] = r.violations;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr;
    jr["n"] = row.n;
    jr["reference"] = rat(row.reference);
    jr["M"] = row.M;
    jr["violations"] = row.violations;
    jr["explored"] = row.explored;
    json recs = json::array();
    for (const auto& rec : row.records)
      recs.push_back({{"delta", rec.delta},
                      {"count", rec.count},
                      {"max_pairing", rec.max_pairing ? rat(*rec.max_pairing) : json(nullptr)}});
    jr["records"] = recs;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  return j;
}

json to_json(const UpperAuditReport& r) {
  json j;
  j["direction"] = to_json(r.u);
  j["horizon"] = r.horizon;
  j["C2"] = rat(r.C2);
  j["C2_improved"] = r.C2_improved ? rat(*r.C2_improved) : json(nullptr);
  j["partial"] = r.partial;
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"name", row.name},
                    {"area", rat(row.area)},
                    {"pairing", rat(row.pairing)},
                    {"estimate", to_json(row.estimate)}});
  j["rows"] = rows;
  return j;
}

json to_json(const CentralElement& c) {
  return {{"word", word_to_json(c.word)}, {"element", element_to_json(c.element)}};
}

json to_json(const DistinctnessReport& r) {
  json j;
  j["u"] = to_json(r.u);
  j["v"] = to_json(r.v);
  j["b"] = {r.b1, r.b2};
  j["pairing_u"] = rat(r.pairing_u);
  j["pairing_v"] = rat(r.pairing_v);
  j["h"] = to_json(r.h);
  j["partial"] = r.partial;
  json ev = json::array();
  for (const auto& e : r.evaluations)
    ev.push_back({{"power", e.power}, {"norm", e.norm}, {"b_u", to_json(e.for_u)}, {"b_v", to_json(e.for_v)}});
  j["evaluations"] = ev;
  return j;
}

json to_json(const StabilizerReport& r) {
  json j;
  j["direction"] = to_json(r.u);
  j["g"] = element_to_json(r.g);
  j["pairing"] = rat(r.pairing);
  j["m"] = r.m;
  j["C1"] = rat(r.C1);
  j["C2"] = rat(r.C2);
  j["base"] = to_json(r.base);
  j["partial"] = r.partial;
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n}, {"plain", to_json(row.plain)}, {"shifted", to_json(row.shifted)}, {"gap", row.gap}});
  j["rows"] = rows;
  return j;
}

json to_json(const Polygon& P) {
  json v = json::array();
  for (const auto& p : P.vertices()) v.push_back(point_to_json(p));
  return {{"vertices", v}};
}

json to_json(const WindowComparison& r) {
  json j;
  j["class"] = r.cls.to_string();
  j["sequence"] = r.sequence.to_string();
  j["n"] = r.n;
  j["x"] = element_to_json(r.x);
  j["partial"] = r.partial;
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"radius", row.radius}, {"points", row.points}, {"max_difference", rat(row.max_difference)}});
  j["rows"] = rows;
  return j;
}

json to_json(const SeamReport& r) {
  json j;
  j["samples"] = r.samples;
  j["mismatches"] = r.mismatches;
  json ex = json::array();
  for (const auto& [v, a, b] : r.examples) ex.push_back({{"v", point_to_json(v)}, {"first", rat(a)}, {"second", rat(b)}});
  j["examples"] = ex;
  return j;
}

std::string lower_audit_csv(const BoundAuditReport& r) {
  std::ostringstream out;
  out << "n,delta,count,max_pairing,reference,excess,cbrt_excess\n";
  for (const auto& row : r.rows)
    for (const auto& rec : row.records) {
      out << row.n << ',' << rec.delta << ',' << rec.count << ',';
      if (rec.max_pairing) {
        const Rational excess = *rec.max_pairing - row.reference;
        out << to_string(*rec.max_pairing) << ',' << to_string(row.reference) << ',' << to_string(excess) << ','
            << fixed6(std::cbrt(excess.convert_to<double>())) << '\n';
      } else {
        out << ',' << to_string(row.reference) << ",,\n";
      }
    }
  return out.str();
}

std::string window_comparison_csv(const WindowComparison& r) {
  std::ostringstream out;
  out << "radius,points,max_difference\n";
  for (const auto& row : r.rows) out << row.radius << ',' << row.points << ',' << to_string(row.max_difference) << '\n';
  return out.str();
}

std::string sphere_sizes_csv(const DistanceTable& t) {
  std::ostringstream out;
  out << "distance,count\n";
  const auto s = t.sphere_sizes();
  for (std::size_t i = 0; i < s.size(); ++i) out << i << ',' << s[i] << '\n';
  return out.str();
}

}  // namespace horo
