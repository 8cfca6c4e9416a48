#include "horo/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "horo/cartan_oracle.hpp"
#include "horo/group_io.hpp"
#include "horo/report.hpp"

namespace horo {

MarkedGroup resolve_group(const std::string& spec) {
  static const std::map<std::string, std::function<MarkedGroup()>> builtins = {
      {"z2", [] { return MarkedGroup::abelian_standard(2); }},
      {"z3", [] { return MarkedGroup::abelian_standard(3); }},
      {"h1", [] { return MarkedGroup::heisenberg_standard(1); }},
      {"h1z", [] { return MarkedGroup::heisenberg_standard(1, true); }},
      {"h2", [] { return MarkedGroup::heisenberg_standard(2); }},
      {"cartan", [] { return MarkedGroup::cartan_standard(); }},
  };
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    auto it = builtins.find(spec.substr(prefix.size()));
    if (it == builtins.end()) throw DomainError("unknown builtin group '" + spec + "'");
    return it->second();
  }
  return load_group(spec);
}

RaySpec parse_ray_argument(std::string_view text) {
  if (!text.empty() && text.front() == '{') return parse_ray(text);
  const std::string s(text);
  if (s.rfind("digitized:", 0) == 0) {
    const std::string body = s.substr(10);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw ParseError("digitized ray needs 'a,b'");
    return RaySpec::digitized(parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1)));
  }
  if (s.rfind("periodic:", 0) == 0) {
    const std::string body = s.substr(9);
    const auto bar = body.find('|');
    if (bar == std::string::npos) return RaySpec::periodic({}, split_word(body));
    return RaySpec::periodic(split_word(body.substr(0, bar)), split_word(body.substr(bar + 1)));
  }
  throw ParseError("ray must be JSON, 'digitized:a,b' or 'periodic:[PREFIX|]BLOCK'");
}

namespace {

std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("expected 'a,b', got '" + text + "'");
  try {
    return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ParseError("expected integers 'a,b', got '" + text + "'");
  }
}

/// "4..10", "4,6,8" or "6".
std::vector<int> parse_range(const std::string& text) {
  std::vector<int> out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
      for (int n = lo; n <= hi; ++n) out.push_back(n);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  } catch (const std::exception&) {
    throw ParseError("bad range '" + text + "'");
  }
  if (out.empty()) throw ParseError("empty range");
  return out;
}

std::vector<Label> parse_labels(const std::string& text) {
  std::vector<Label> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Word w = split_word(item);
    if (w.size() != 1) throw ParseError("bad label list '" + text + "'");
    out.push_back(w[0]);
  }
  return out;
}

Polygon parse_polygon(const std::string& text, const MarkedGroup& G) {
  if (text == "auto") return Polygon::of_group(G);
  std::vector<Point2> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw ParseError("polygon points are 'a,b;c,d;...'");
    pts.push_back(point2(parse_rational(item.substr(0, comma)), parse_rational(item.substr(comma + 1))));
  }
  return Polygon::hull(pts);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

// ---------------------------------------------------------------------------
// selftest suites

struct Suite {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
};

Word random_word(std::mt19937_64& rng, const MarkedGroup& G, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, G.size() - 1);
  Word w(len(rng));
  for (auto& l : w) l = G.generator(pick(rng)).label;
  return w;
}

BigElement big_evaluate(const MarkedGroup& G, const Word& w) {
  BigElement g = BigElement::identity(G.shape());
  for (const auto& l : w) g = mul(g, element_cast<BigInt>(G.generator(G.index_of(l)).element));
  return g;
}

Suite suite_group_laws(std::mt19937_64& rng) {
  Suite s{"group laws, int64 against BigInt evaluation"};
  for (const MarkedGroup& G : {MarkedGroup::abelian_standard(2), MarkedGroup::heisenberg_standard(1),
                               MarkedGroup::heisenberg_standard(2), MarkedGroup::cartan_standard()}) {
    for (int i = 0; i < 10000; ++i) {
      const Word a = random_word(rng, G, 10), b = random_word(rng, G, 10), c = random_word(rng, G, 10);
      const GroupElement ga = G.evaluate(a), gb = G.evaluate(b), gc = G.evaluate(c);
      bool ok = mul(mul(ga, gb), gc) == mul(ga, mul(gb, gc));
      ok = ok && mul(ga, inv(ga)).is_identity() && mul(G.identity(), ga) == ga;
      ok = ok && element_cast<std::int64_t>(big_evaluate(G, a)) == ga;
      ++s.cases;
      if (!ok) ++s.failures;
    }
  }
  return s;
}

Suite suite_cartan_oracle(std::mt19937_64& rng) {
  Suite s{"Cartan arithmetic against the winding-number path oracle"};
  const MarkedGroup G = MarkedGroup::cartan_standard();
  for (int i = 0; i < 1000; ++i) {
    const Word w = random_word(rng, G, 12);
    ++s.cases;
    if (!(cartan_params(G.evaluate(w)) == cartan_path_oracle(w))) ++s.failures;
  }
  return s;
}

Suite suite_ball(const MarkedGroup& G, int radius, const std::string& name) {
  Suite s{name};
  // Plain FIFO search over an ordered map.
  std::map<GroupElement, int> dist{{G.identity(), 0}};
  std::vector<GroupElement> frontier{G.identity()};
  for (int r = 0; r < radius; ++r) {
    std::vector<GroupElement> next;
    for (const auto& g : frontier)
      for (const auto& gen : G.generators()) {
        const GroupElement h = mul(g, gen.element);
        if (dist.emplace(h, r + 1).second) next.push_back(h);
      }
    frontier.swap(next);
  }
  const DistanceTable B = ball(G, radius);
  ++s.cases;
  if (B.size() != dist.size()) ++s.failures;
  for (const auto& [g, d] : dist) {
    ++s.cases;
    if (B.distance(g) != d) ++s.failures;
  }
  return s;
}

Suite suite_search(std::mt19937_64& rng) {
  Suite s{"bidirectional length search against the ball"};
  const MarkedGroup G = MarkedGroup::heisenberg_standard(1);
  const DistanceTable B = ball(G, 8);
  const auto entries = B.entries();
  const WordMetric metric(G);
  std::uniform_int_distribution<std::size_t> pick(0, entries.size() - 1);
  for (int i = 0; i < 200; ++i) {
    const auto& [g, d] = entries[pick(rng)];
    ++s.cases;
    const LengthResult r = metric.length(g, 8);
    if (!r.exact() || r.length != d) ++s.failures;
  }
  return s;
}

Suite suite_anagram(std::mt19937_64& rng) {
  Suite s{"anagram dynamic programming against permutations"};
  const MarkedGroup G = MarkedGroup::heisenberg_standard(1);
  for (int i = 0; i < 60; ++i) {
    Word w = random_word(rng, G, 7);
    const AnagramSet a = anagram_set(G, w);
    const std::int64_t c0 = G.evaluate(w)[2];
    std::set<std::int64_t> brute;
    std::sort(w.begin(), w.end());
    do brute.insert(G.evaluate(w)[2] - c0);
    while (std::next_permutation(w.begin(), w.end()));
    ++s.cases;
    if (std::vector<std::int64_t>(brute.begin(), brute.end()) != a.offsets) ++s.failures;
  }
  return s;
}

// ---------------------------------------------------------------------------

struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;
};

json envelope(const Context& ctx, const std::string& command, const MarkedGroup* G) {
  json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = ctx.cfg.seed;
  j["threads"] = ctx.cfg.threads;
  j["budgets"] = {{"radius", ctx.cfg.radius_budget},
                  {"memory", ctx.cfg.memory_budget},
                  {"time", ctx.cfg.time_budget}};
  if (G) {
    j["group_hash"] = G->hash();
    j["group"] = group_to_json(*G);
  }
  j["budget_outcome"] = "complete";
  return j;
}

void emit(const Context& ctx, const json& doc) { ctx.out << doc.dump(2) << '\n'; }

void emit_csv(const Context& ctx, const std::string& csv) {
  if (ctx.cfg.format != "csv") return;
  if (ctx.cfg.out.empty()) throw DomainError("--format csv needs --out");
  write_file(ctx.cfg.out, csv);
}

SearchLimits limits(const RunConfig& cfg) { return SearchLimits{cfg.memory_budget}; }

void partial(json& doc, bool is_partial) {
  if (is_partial) doc["budget_outcome"] = "partial";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"horocalc: word metrics, Busemann points and horofunction audits for nilpotent groups"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::map<std::string, std::string> default_group_of;
  auto common = [&](CLI::App* sub, bool needs_group, const std::string& default_group = "") {
    default_group_of[sub->get_name()] = default_group;
    auto* g = sub->add_option("--group", cfg.group, "group JSON file or builtin:{z2,z3,h1,h1z,h2,cartan}");
    if (needs_group && default_group.empty()) g->required();
    sub->add_option("--radius-budget", cfg.radius_budget, "largest ball radius to build")->check(CLI::PositiveNumber);
    sub->add_option("--memory-budget", cfg.memory_budget, "stored elements per search")->check(CLI::PositiveNumber);
    sub->add_option("--time-budget", cfg.time_budget, "seconds (recorded in the report)");
    sub->add_option("--cache", cfg.cache_dir, "ball cache directory (HOROCALC_CACHE overrides)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "CSV output path");
    sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    sub->add_option("--threads", cfg.threads, "worker cap (runs are single-threaded)")->check(CLI::PositiveNumber);
  };

  std::function<json(Context&)> action;
  std::string word, word2, ray1, ray2, direction = "1,1", dir_v = "1,1", ns = "4..8", klass = "vertical",
                                         compare = "central", polygon = "auto", versus, interval, mode = "exhaustive",
                                         c1 = "1", c2 = "2";
  int radius = 4, budget = 64, horizon = 24, cartan_horizon = 16, N = 8, M = 40, C = 0, n = 12, n_max = 2,
      delta = 2, window = 8, seq_n = 64, max_norm = 12, seam = 0;
  std::string criterion = "switch1b";
  bool upper = false;

  auto* ball_cmd = app.add_subcommand("ball", "exact ball with sphere sizes (cached)");
  common(ball_cmd, true);
  ball_cmd->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  ball_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      if (radius > ctx.cfg.radius_budget) throw BudgetError("radius exceeds --radius-budget", ctx.cfg.radius_budget);
      const DistanceTable B = cached_ball(G, radius, cache_directory(ctx.cfg.cache_dir), limits(ctx.cfg));
      json doc = envelope(ctx, "ball", &G);
      // A cached table may be larger than requested.
      auto spheres = B.sphere_sizes();
      spheres.resize(std::min<std::size_t>(spheres.size(), radius + 1));
      std::size_t size = 0;
      for (auto c : spheres) size += c;
      doc["radius"] = radius;
      doc["size"] = size;
      doc["sphere_sizes"] = spheres;
      if (ctx.cfg.format == "csv") {
        emit_csv(ctx, sphere_sizes_csv(B));
      } else if (!ctx.cfg.out.empty()) {
        save_ball(B, ctx.cfg.out);
        doc["out"] = ctx.cfg.out;
      }
      return doc;
    };
  });

  auto* dist_cmd = app.add_subcommand("dist", "word length, or distance between two words");
  common(dist_cmd, true);
  dist_cmd->add_option("--word", word, "word (empty string: identity)")->required();
  dist_cmd->add_option("--to", word2, "second word: report d(word, to)");
  dist_cmd->add_option("--budget", budget, "largest length searched")->check(CLI::NonNegativeNumber);
  dist_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      const WordMetric metric(G, limits(ctx.cfg));
      GroupElement g = G.evaluate(word);
      if (!word2.empty()) g = mul(inv(g), G.evaluate(word2));
      const LengthResult r = metric.length(g, budget);
      json doc = envelope(ctx, "dist", &G);
      doc["word"] = word;
      if (!word2.empty()) doc["to"] = word2;
      doc["element"] = element_to_json(g);
      doc["search"] = to_json(r);
      doc["length"] = r.exact() ? json(r.length) : json(nullptr);
      doc["certified"] = r.exact();
      partial(doc, r.status == LengthStatus::Inconclusive);
      return doc;
    };
  });

  auto* geo_cmd = app.add_subcommand("geodesic-check", "is the word a geodesic");
  common(geo_cmd, true);
  geo_cmd->add_option("--word", word)->required();
  geo_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      const WordMetric metric(G, limits(ctx.cfg));
      const Word w = split_word(word);
      json doc = envelope(ctx, "geodesic-check", &G);
      doc["word"] = word;
      doc["word_length"] = w.size();
      doc["face_certificate"] =
          geodesic_certificate_by_face(metric.polytope(), G, w) == FaceCertificate::Certified;
      doc["geodesic"] = metric.is_geodesic_word(w);
      doc["length"] = metric.exact_length(G.evaluate(w), static_cast<int>(w.size()));
      return doc;
    };
  });

  auto* ray_cmd = app.add_subcommand("ray", "prefix, periodic form and tail letters of a ray");
  common(ray_cmd, true);
  ray_cmd->add_option("--ray", ray1)->required();
  ray_cmd->add_option("--n", n, "prefix length checked for geodesicity")->check(CLI::NonNegativeNumber);
  ray_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      const WordMetric metric(G, limits(ctx.cfg));
      const RaySpec spec = parse_ray_argument(ray1);
      validate_ray(metric, spec, n);
      json doc = envelope(ctx, "ray", &G);
      doc["ray"] = ray_to_json(spec);
      doc["periodic_form"] = ray_to_json(to_periodic(spec));
      doc["prefix"] = word_to_json(ray_prefix(spec, n));
      doc["tail_letters"] = tail_letters(spec);
      doc["geodesic_through"] = n;
      return doc;
    };
  });

  auto* bus_cmd = app.add_subcommand("busemann", "b_ray(h) = lim |h^-1 ray_n| - n");
  common(bus_cmd, true);
  bus_cmd->add_option("--ray", ray1)->required();
  bus_cmd->add_option("--element,--word", word, "h as a word")->required();
  bus_cmd->add_option("--horizon", horizon)->check(CLI::NonNegativeNumber);
  bus_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      const WordMetric metric(G, limits(ctx.cfg));
      const RaySpec spec = parse_ray_argument(ray1);
      validate_ray(metric, spec, horizon);
      const BusemannEstimate e = busemann_eval(metric, spec, G.evaluate(word), horizon);
      json doc = envelope(ctx, "busemann", &G);
      doc["ray"] = ray_to_json(spec);
      doc["word"] = word;
      doc["estimate"] = to_json(e);
      partial(doc, e.budget_exhausted);
      return doc;
    };
  });

  auto* cmp_cmd = app.add_subcommand("compare-rays", "switch-witness comparison of two Busemann points");
  common(cmp_cmd, true);
  cmp_cmd->add_option("--ray1", ray1)->required();
  cmp_cmd->add_option("--ray2", ray2)->required();
  cmp_cmd->add_option("--N", N)->check(CLI::NonNegativeNumber);
  cmp_cmd->add_option("--M", M)->check(CLI::NonNegativeNumber);
  cmp_cmd->add_option("--criterion", criterion, "switch1b: equal functions; switch2b: difference bounded by --C")
      ->check(CLI::IsMember({"switch1b", "switch2b"}));
  cmp_cmd->add_option("--C", C, "slack for switch2b")->check(CLI::NonNegativeNumber);
  cmp_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      const WordMetric metric(G, limits(ctx.cfg));
      const RaySpec s1 = parse_ray_argument(ray1), s2 = parse_ray_argument(ray2);
      validate_ray(metric, s1, M);
      validate_ray(metric, s2, M);
      if (criterion == "switch2b" && C == 0) throw DomainError("switch2b needs --C > 0");
      const ComparisonReport r =
          criterion == "switch1b" ? same_busemann(metric, s1, s2, N, M) : reduced_equiv(metric, s1, s2, C, N, M);
      json doc = envelope(ctx, "compare-rays", &G);
      doc["ray1"] = ray_to_json(s1);
      doc["ray2"] = ray_to_json(s2);
      doc["criterion"] = criterion;
      doc["comparison"] = to_json(r);
      const auto cof = cofinal_orbit_witness(G, s1, s2);
      doc["cofinal_witness"] = cof ? to_json(*cof) : json(nullptr);
      if (G.kind() != GroupKind::Cartan) {
        const Classifier cl(G);
        const auto d = cl.same_orbit(s1, s2);
        doc["classifier"] = {{"same_orbit", d.same}, {"reason", d.reason}};
      }
      partial(doc, r.verdict == Verdict::Inconclusive);
      return doc;
    };
  });

  auto* census_cmd = app.add_subcommand("census", "orbit keys of Busemann points");
  common(census_cmd, true);
  census_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      const Classifier cl(G);
      const auto keys = cl.orbit_census();
      json doc = envelope(ctx, "census", &G);
      doc["orbits"] = keys.size();
      doc["abelian_like"] = cl.abelian_like();
      json jk = json::array();
      for (const auto& k : keys) jk.push_back(to_json(k));
      doc["keys"] = jk;
      return doc;
    };
  });

  auto* ana_cmd = app.add_subcommand("anagram", "central offsets reachable by reordering a word");
  common(ana_cmd, true);
  ana_cmd->add_option("--word", word)->required();
  ana_cmd->add_option("--interval", interval, "letters D as 'x,y': run the interval check");
  ana_cmd->add_option("--n", n, "interval check length")->check(CLI::PositiveNumber);
  ana_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      json doc = envelope(ctx, "anagram", &G);
      const AnagramSet a = anagram_set(G, split_word(word), ctx.cfg.memory_budget);
      doc.update(to_json(a));
      if (!interval.empty()) doc["interval"] = to_json(interval_lemma_check(G, parse_labels(interval), n));
      return doc;
    };
  });

  auto* audit_cmd = app.add_subcommand("cartan-audit", "lower (and upper) bound audits along a digitized ray");
  common(audit_cmd, false, "builtin:cartan");
  audit_cmd->add_option("--direction", direction, "a,b");
  audit_cmd->add_option("--n", ns, "range 'lo..hi' or list 'a,b,c'");
  audit_cmd->add_option("--delta", delta)->check(CLI::NonNegativeNumber);
  audit_cmd->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "search"}));
  audit_cmd->add_flag("--upper", upper, "also fit the upper-bound constants on central elements");
  audit_cmd->add_option("--horizon", cartan_horizon, "Busemann horizon for --upper")->check(CLI::NonNegativeNumber);
  audit_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      const auto [a, b] = parse_pair(direction);
      const DirectionFrame u = DirectionFrame::of(a, b);
      const BoundAuditReport low = bound_audit_lower(
          G, u, parse_range(ns), delta, mode == "exhaustive" ? AuditMode::Exhaustive : AuditMode::Search,
          ctx.cfg.memory_budget);
      json doc = envelope(ctx, "cartan-audit", &G);
      doc["lower"] = to_json(low);
      if (upper) {
        const WordMetric metric(G, limits(ctx.cfg));
        const std::vector<NamedElement> hs = audit_central_elements(G);
        const UpperAuditReport up = bound_audit_upper(metric, u, hs, cartan_horizon);
        doc["upper"] = to_json(up);
        partial(doc, up.partial);
      }
      emit_csv(ctx, lower_audit_csv(low));
      return doc;
    };
  });

  auto* dis_cmd = app.add_subcommand("distinctness", "separating central element for two directions");
  common(dis_cmd, false, "builtin:cartan");
  dis_cmd->add_option("--u", direction, "a,b")->required();
  dis_cmd->add_option("--v", dir_v, "a,b")->required();
  dis_cmd->add_option("--horizon", cartan_horizon)->check(CLI::NonNegativeNumber);
  dis_cmd->add_option("--max-norm", max_norm)->check(CLI::NonNegativeNumber);
  dis_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      const WordMetric metric(G, limits(ctx.cfg));
      const auto [ua, ub] = parse_pair(direction);
      const auto [va, vb] = parse_pair(dir_v);
      const DistinctnessReport r =
          distinctness_witness(metric, DirectionFrame::of(ua, ub), DirectionFrame::of(va, vb), cartan_horizon, max_norm);
      json doc = envelope(ctx, "distinctness", &G);
      doc["report"] = to_json(r);
      partial(doc, r.partial);
      return doc;
    };
  });

  auto* stab_cmd = app.add_subcommand("stabilizer", "b(h^n) against b(g^-m h^n) - b(g^-m)");
  common(stab_cmd, false, "builtin:cartan");
  stab_cmd->add_option("--direction", direction, "a,b");
  stab_cmd->add_option("--g", word, "g as a word")->required();
  stab_cmd->add_option("--n-max", n_max)->check(CLI::NonNegativeNumber);
  stab_cmd->add_option("--horizon", cartan_horizon)->check(CLI::NonNegativeNumber);
  stab_cmd->add_option("--c1", c1, "lower constant C1");
  stab_cmd->add_option("--c2", c2, "upper constant C2");
  stab_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      const WordMetric metric(G, limits(ctx.cfg));
      const auto [a, b] = parse_pair(direction);
      const StabilizerReport r = stabilizer_escape(metric, DirectionFrame::of(a, b), G.evaluate(word), n_max, cartan_horizon,
                                                   parse_rational(c1), parse_rational(c2));
      json doc = envelope(ctx, "stabilizer", &G);
      doc["report"] = to_json(r);
      partial(doc, r.partial);
      return doc;
    };
  });

  auto* sf_cmd = app.add_subcommand("subfinsler", "closed-form sub-Finsler classes against discrete windows");
  common(sf_cmd, false, "builtin:h1");
  sf_cmd->add_option("--polygon", polygon, "auto or 'a,b;c,d;...'");
  sf_cmd->add_option("--class", klass, "vertical | nonvertical:k:r | mixed:i:r:le|ge:1|2");
  sf_cmd->add_option("--compare", compare, "central | vertex:i | edge:k:r | none");
  sf_cmd->add_option("--window", window)->check(CLI::NonNegativeNumber);
  sf_cmd->add_option("--n", seq_n, "index of the sequence element")->check(CLI::NonNegativeNumber);
  sf_cmd->add_option("--versus", versus, "second class: compare window fingerprints");
  sf_cmd->add_option("--seam-samples", seam, "mixed classes: seam check over t v_i, |t| <= samples");
  sf_cmd->callback([&] {
    action = [&](Context& ctx) {
      const MarkedGroup G = resolve_group(ctx.cfg.group);
      const WordMetric metric(G, limits(ctx.cfg));
      const Polygon P = parse_polygon(polygon, G);
      const HorofnClass cls = HorofnClass::parse(klass);
      validate_class(P, cls);
      json doc = envelope(ctx, "subfinsler", &G);
      doc["polygon"] = to_json(P);
      doc["class"] = cls.to_string();
      if (!versus.empty()) {
        const HorofnClass other = HorofnClass::parse(versus);
        doc["versus"] = {{"class", other.to_string()},
                         {"fingerprints_distinct",
                          window_fingerprint(G, P, cls, window) != window_fingerprint(G, P, other, window)}};
      }
      if (seam > 0) doc["seam"] = to_json(mixed_seam_check(P, cls, seam));
      if (compare != "none") {
        const WindowComparison r =
            discrete_vs_continuous(metric, P, cls, SamplingSequence::parse(compare), seq_n, window);
        doc["comparison"] = to_json(r);
        emit_csv(ctx, window_comparison_csv(r));
        partial(doc, r.partial);
      }
      return doc;
    };
  });

  auto* self_cmd = app.add_subcommand("selftest", "oracle-equivalence suites");
  common(self_cmd, false);
  self_cmd->callback([&] {
    action = [&](Context& ctx) {
      std::mt19937_64 rng(ctx.cfg.seed);
      std::vector<Suite> suites;
      suites.push_back(suite_group_laws(rng));
      suites.push_back(suite_cartan_oracle(rng));
      suites.push_back(suite_ball(MarkedGroup::heisenberg_standard(1), 7, "H1 ball against a plain search"));
      suites.push_back(suite_ball(MarkedGroup::cartan_standard(), 5, "Cartan ball against a plain search"));
      suites.push_back(suite_search(rng));
      suites.push_back(suite_anagram(rng));
      json doc = envelope(ctx, "selftest", nullptr);
      json js = json::array();
      bool pass = true;
      for (const auto& s : suites) {
        js.push_back({{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}});
        pass = pass && s.failures == 0;
      }
      doc["suites"] = js;
      doc["pass"] = pass;
      return doc;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }
  if (cfg.group.empty()) cfg.group = default_group_of[app.get_subcommands().front()->get_name()];
  Context ctx{cfg, out, err};

  auto fail = [&](const char* type, const std::string& message, int code, const json& extra = json::object()) {
    json doc;
    doc["schema"] = kSchema;
    doc["version"] = kVersion;
    doc["error"] = {{"type", type}, {"message", message}};
    doc["error"].update(extra);
    out << doc.dump(2) << '\n';
    err << "horocalc: " << message << '\n';
    return code;
  };
  try {
    const json doc = action(ctx);
    emit(ctx, doc);
    if (doc.contains("pass") && !doc["pass"].get<bool>()) return kExitFailure;
    return kExitOk;
  } catch (const ParseError& e) {
    return fail("parse", e.what(), kExitParse, {{"line", e.line()}, {"column", e.column()}});
  } catch (const BudgetError& e) {
    return fail("budget", e.what(), kExitBudget, {{"achieved", e.achieved()}});
  } catch (const DomainError& e) {
    return fail("domain", e.what(), kExitDomain);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitFailure);
  }
}

}  // namespace horo
