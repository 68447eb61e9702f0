#include "continuum_lab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "continuum_lab/chain_realization.hpp"
#include "continuum_lab/chains.hpp"
#include "continuum_lab/continua.hpp"
#include "continuum_lab/errors.hpp"
#include "continuum_lab/psi_model.hpp"
#include "continuum_lab/suite.hpp"
#include "continuum_lab/svg.hpp"
#include "continuum_lab/whitney.hpp"

namespace continuum_lab {

namespace {

using nlohmann::json;

struct Options {
  std::string out, svg, input;
  std::string model = "path";
  std::string map = "series";
  std::string set, other, pattern, from, to, parts, ts;
  std::uint64_t seed = 0;
  std::optional<double> tol, t, eps;
  std::size_t m = 6, level = 2, size = 10, n = 4, tower_n = 3, tower_levels = 3, trials = 1000, samples = 40, limit = 100, criterion = 0;
  std::size_t budget = 50'000'000;
  bool normalize = false, no_timings = false, full = false;
};

// Result of one command: a JSON payload plus the named violations.
struct Run {
  json result = json::object();
  std::vector<std::string> violations;
  std::string svg;
};

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw DomainError("not an index list: " + text);
    }
    if (pos != item.size() || v < 0) throw DomainError("not an index list: " + text);
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw DomainError("not a number list: " + text);
    }
    if (pos != item.size()) throw DomainError("not a number list: " + text);
    out.push_back(v);
  }
  return out;
}

VertexSet parse_set(std::size_t universe, const std::string& text) {
  const auto idx = parse_indices(text);
  if (idx.empty()) throw DomainError("empty vertex set");
  return VertexSet(universe, idx);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

// "path" counts vertices; the other kinds take the build_continuum size.
GraphContinuum model_graph(const Options& o) {
  if (!o.input.empty()) return graph_from_json(read_json_file(o.input));
  if (o.model == "path") {
    if (o.size == 0) throw DomainError("size must be positive");
    return build_continuum(ContinuumKind::interval, o.size - 1);
  }
  return build_continuum(continuum_kind_from_string(o.model), o.size);
}

SetFunction model_map(const Options& o, const GraphContinuum& g, std::optional<WhitneyMap>& storage) {
  if (o.map == "series") {
    storage.emplace(build_whitney_map(g, o.seed));
    return storage->as_function();
  }
  if (o.map == "size-squared") {
    return [](const VertexSet& a) {
      const double n = static_cast<double>(a.count()) - 1.0;
      return n * n;
    };
  }
  if (o.map == "exponential") {
    return [](const VertexSet& a) { return std::ldexp(1.0, static_cast<int>(a.count())) - 2.0; };
  }
  if (o.map == "negative-size") {
    return [](const VertexSet& a) { return -static_cast<double>(a.count()); };
  }
  throw DomainError("unknown map " + o.map);
}

json sets_json(std::span<const VertexSet> sets, std::span<const std::size_t> ids) {
  auto out = json::array();
  for (std::size_t i : ids) out.push_back(sets[i].members());
  return out;
}

PsiHyperspace psi_space(const Options& o) {
  auto h = enumerate_psi_hyperspace(build_psi_model(o.m, o.level));
  return o.normalize ? normalize_to_psi0(h) : h;
}

json tower_json(const ChainTower& t, bool full) {
  json j = {{"endpoints", {t.x, t.y}}, {"patterns", t.patterns}, {"diagnostics", t.diagnostics}};
  if (full) j["levels"] = t.levels;
  return j;
}

// ---- chains ----

Run chains_verify(const Options& o) {
  Run r;
  json doc;
  if (!o.input.empty()) {
    doc = read_json_file(o.input);
  } else if (!o.pattern.empty()) {
    doc = {{"pattern", parse_indices(o.pattern)}, {"n_coarse", o.n}};
  } else {
    throw DomainError("chains verify needs --input or --pattern");
  }
  if (doc.contains("links")) {
    const Chain chain = doc.get<Chain>();
    const double eps = o.eps.value_or(doc.value("eps", chain.mesh + 1.0));
    const auto rep = verify_chain(chain, eps);
    r.result = {{"kind", "chain"}, {"eps", eps}, {"report", rep}};
    for (const auto& [a, b] : rep.adjacency_violations) {
      r.violations.push_back("links " + std::to_string(a) + " and " + std::to_string(b) +
                             " break the chain adjacency rule");
    }
    for (std::size_t l : rep.mesh_violations) {
      r.violations.push_back("link " + std::to_string(l) + " has diameter at least eps");
    }
    return r;
  }
  const auto p = doc.get<RefinementPattern>();
  r.result = {{"kind", "pattern"}, {"pattern", p}};
  try {
    const auto c = is_crooked(p, p.n_coarse);
    r.result["crooked"] = c;
    if (c.counterexample) {
      const auto& w = *c.counterexample;
      r.violations.push_back("not crooked at k=" + std::to_string(w.k) + " m=" + std::to_string(w.m) +
                             " i=" + std::to_string(w.i) + " j=" + std::to_string(w.j));
    }
  } catch (const PreconditionError& e) {
    r.result["crooked"] = nullptr;
    r.violations.push_back(std::string("not a refinement: ") + e.what());
  }
  return r;
}

Run chains_generate(const Options& o) {
  Run r;
  const auto p = generate_crooked_pattern(o.n);
  const auto c = is_crooked(p, o.n);
  r.result = {{"pattern", p}, {"crooked", c}, {"monotone_runs", monotone_runs(p.assignment)}};
  if (!c.crooked) r.violations.push_back("generated pattern is not crooked");
  if (!o.svg.empty()) {
    const auto coarse = realize_planar(o.n, 8);
    const auto fine = refine_snake(coarse, p.assignment, required_refinement_factor(p.assignment));
    r.svg = chains_svg({to_chain(coarse), to_chain(fine.fine)});
  }
  return r;
}

Run chains_tower(const Options& o) {
  Run r;
  const auto t = build_tower(o.tower_n, o.tower_levels, {0.0, 0.0}, {1.0, 0.0});
  r.result = tower_json(t, o.full);
  for (std::size_t k = 0; k < t.diagnostics.size(); ++k) {
    const auto& d = t.diagnostics[k];
    const std::string lv = "level " + std::to_string(k + 1);
    if (d.mesh > d.mesh_bound) r.violations.push_back(lv + " mesh exceeds its bound");
    if (!d.nested_in_previous) r.violations.push_back(lv + " is not nested in the previous level");
    if (!d.crooked_in_previous) r.violations.push_back(lv + " is not crooked in the previous level");
    if (d.hausdorff_to_next && *d.hausdorff_to_next > d.mesh) {
      r.violations.push_back(lv + " is farther than its mesh from the next level");
    }
  }
  if (!o.svg.empty()) r.svg = tower_svg(t);
  return r;
}

// ---- continuum ----

Run continuum_build(const Options& o) {
  Run r;
  const auto g = model_graph(o);
  r.result = {{"continuum", g}};
  if (!o.svg.empty()) r.svg = continuum_svg(g);
  return r;
}

Run continuum_enumerate(const Options& o) {
  Run r;
  const auto g = model_graph(o);
  const auto poset = enumerate_subcontinua(g);
  r.result = poset_to_json(poset);
  return r;
}

Run continuum_orderarcs(const Options& o) {
  Run r;
  const auto g = model_graph(o);
  const VertexSet a = o.from.empty() ? VertexSet(g.size(), {0}) : parse_set(g.size(), o.from);
  const VertexSet b = o.to.empty() ? VertexSet::full(g.size()) : parse_set(g.size(), o.to);
  const auto arcs = order_arcs_between(g, a, b);
  auto shown = json::array();
  for (std::size_t i = 0; i < arcs.size() && i < o.limit; ++i) {
    auto steps = json::array();
    for (const auto& s : arcs[i]) steps.push_back(s.members());
    shown.push_back(std::move(steps));
  }
  r.result = {{"from", a.members()}, {"to", b.members()}, {"count", arcs.size()}, {"arcs", shown}};
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t s = 1; s < arcs[i].size(); ++s) {
      if (!g.is_connected(arcs[i][s]) || (arcs[i][s] - arcs[i][s - 1]).count() != 1) {
        r.violations.push_back("order-arc " + std::to_string(i) + " step " + std::to_string(s) + " is malformed");
      }
    }
  }
  return r;
}

Run continuum_triod(const Options& o) {
  Run r;
  const auto g = model_graph(o);
  const auto poset = enumerate_subcontinua(g);
  const auto t = detect_triod(poset, o.budget);
  r.result = {{"subcontinua", poset.size()}, {"triod", nullptr}};
  if (t) {
    r.result["triod"] = {{"a", t->a.members()}, {"b", t->b.members()}, {"c", t->c.members()},
                         {"core", t->core.members()}};
  }
  return r;
}

// ---- whitney ----

Run whitney_build(const Options& o) {
  Run r;
  const auto g = model_graph(o);
  const auto mu = build_whitney_map(g, o.seed);
  const auto poset = enumerate_subcontinua(g);
  std::vector<double> values;
  for (const auto& s : poset.elements()) values.push_back(mu(s));
  r.result = {{"map", whitney_map_to_json(mu)}, {"elements", poset_to_json(poset)["elements"]}, {"values", values}};
  return r;
}

Run whitney_eval(const Options& o) {
  Run r;
  const auto g = model_graph(o);
  std::optional<WhitneyMap> storage;
  const auto mu = model_map(o, g, storage);
  if (o.set.empty()) throw DomainError("whitney eval needs --set");
  const VertexSet a = parse_set(g.size(), o.set);
  r.result = {{"set", a.members()}, {"value", mu(a)}, {"connected", g.is_connected(a)}};
  if (!o.other.empty()) {
    const VertexSet b = parse_set(g.size(), o.other);
    const auto d = whitney_distance(mu, g, a, b);
    r.result["other"] = b.members();
    r.result["other_value"] = mu(b);
    r.result["distance"] = d.value;
    r.result["two_x_mode"] = d.two_x_mode;
  }
  return r;
}

Run whitney_check(const Options& o) {
  Run r;
  const auto g = model_graph(o);
  std::optional<WhitneyMap> storage;
  const auto mu = model_map(o, g, storage);
  const auto poset = enumerate_subcontinua(g);
  const auto ax = check_whitney_axioms(mu, poset.elements());
  r.result = {{"map", o.map}, {"subcontinua", poset.size()}, {"axioms", ax}};
  if (!ax.a) r.violations.push_back("axiom (a) fails at element " + std::to_string(ax.a_violations.front()));
  if (!ax.b) {
    r.violations.push_back("axiom (b) fails at pair " + std::to_string(ax.b_violations.front().first) + "," +
                           std::to_string(ax.b_violations.front().second));
  }
  if (!ax.c) {
    r.violations.push_back("axiom (c) fails at pair " + std::to_string(ax.c_violations.front().first) + "," +
                           std::to_string(ax.c_violations.front().second));
  }
  if (!ax.c_prime) {
    const auto& v = ax.c_prime_violations.front();
    r.violations.push_back("axiom (c') fails at triple " + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," +
                           std::to_string(v[2]));
  }
  if (!ax.pass()) return r;
  const auto d = distance_matrix(mu, poset.elements());
  const auto met = check_metric_axioms(d);
  r.result["metric"] = met;
  if (!met.pass()) r.violations.push_back("d_mu is not a metric");
  const std::size_t pf = check_point_distance(mu, poset.elements());
  r.result["point_distance_failures"] = pf;
  if (pf != 0) r.violations.push_back("d_mu(A,{x}) differs from mu(A) " + std::to_string(pf) + " times");
  try {
    const auto arcs = maximal_order_arcs(g, 200'000);
    const double defect = order_arc_isometry_defect(mu, arcs);
    r.result["order_arcs"] = {{"count", arcs.size()}, {"isometry_defect", defect}};
    if (defect > kTolerance) r.violations.push_back("order-arc isometry defect " + std::to_string(defect));
  } catch (const ResourceError& e) {
    r.result["order_arcs"] = {{"skipped", e.what()}};
  }
  return r;
}

Run whitney_level(const Options& o) {
  Run r;
  const auto g = model_graph(o);
  const auto mu = build_whitney_map(g, o.seed);
  const auto poset = enumerate_subcontinua(g);
  std::vector<double> values;
  std::vector<std::vector<std::size_t>> up(poset.size());
  for (std::size_t i = 0; i < poset.size(); ++i) {
    values.push_back(mu(poset[i]));
    up[i] = poset.covers(i);
  }
  if (!o.t) throw DomainError("whitney level needs --t");
  const double top = mu.whole();
  const double tol = o.tol.value_or(default_level_tolerance(values));
  const auto level = continuum_lab::whitney_level(values, *o.t, tol, top);
  const auto crossing = crossing_level(values, up, *o.t);
  r.result = {{"t", *o.t}, {"tol", tol}, {"top", top}, {"level", sets_json(poset.elements(), level)},
              {"crossing_level", sets_json(poset.elements(), crossing)}};
  return r;
}

Run whitney_refine(const Options& o) {
  Run r;
  const auto g = model_graph(o);
  const auto mu = build_whitney_map(g, o.seed);
  const auto poset = enumerate_subcontinua(g);
  std::vector<double> values;
  for (const auto& s : poset.elements()) values.push_back(mu(s));
  std::vector<VertexSet> members;
  if (o.parts.empty()) {
    members.push_back(VertexSet::full(g.size()));
  } else {
    std::stringstream ss(o.parts);
    std::string part;
    while (std::getline(ss, part, ';')) members.push_back(parse_set(g.size(), part));
  }
  if (!o.t) throw DomainError("whitney refine needs --t");
  const auto ref = equal_level_refinement(members, poset.elements(), values, *o.t, o.tol);
  auto pieces = json::array();
  VertexSet covered(g.size());
  for (std::size_t d = 0; d < members.size(); ++d) {
    pieces.push_back({{"member", members[d].members()}, {"pieces", sets_json(poset.elements(), ref.pieces[d])}});
    for (std::size_t p : ref.pieces[d]) covered |= poset[p];
  }
  r.result = {{"t0", ref.t0}, {"tol", ref.tol}, {"members", pieces}};
  VertexSet all(g.size());
  for (const auto& d : members) all |= d;
  const VertexSet missed = all - covered;
  if (!missed.empty()) r.violations.push_back("vertex " + std::to_string(missed.first()) + " is in no piece");
  return r;
}

// ---- psi ----

void psi_checks(const PsiHyperspace& h, Run& r) {
  const auto p = planck_report(h);
  std::vector<std::size_t> fibers;
  for (std::size_t a = 0; a < h.model.m; ++a) fibers.push_back(h.full_fiber(a));
  if (p.boundary != fibers) r.violations.push_back("Planck boundary is not the set of full fibers");
  const auto ax = check_psi_axioms(h);
  r.result["axioms"] = ax;
  if (!ax.pass()) r.violations.push_back("the psi map violates a Whitney axiom");
  r.result["planck"] = p;
  if (h.normalized && std::abs(p.L - p.l) > kTolerance) r.violations.push_back("normalized fibers differ in value");
}

Run psi_build(const Options& o) {
  Run r;
  const auto h = psi_space(o);
  r.result = {{"model", psi_model_to_json(h.model)}, {"hyperspace", psi_hyperspace_to_json(h)}};
  return r;
}

Run psi_report(const Options& o) {
  Run r;
  const auto h = psi_space(o);
  std::size_t filament = 0, minimal = 0;
  for (std::size_t e = 0; e < h.elements.size(); ++e) {
    const auto c = classify_element(h, e);
    filament += c.cls == ElementClass::filament ? 1 : 0;
    minimal += c.minimal ? 1 : 0;
  }
  r.result = {{"m", h.model.m},
              {"level", h.model.level},
              {"links_per_fiber", h.model.links_per_fiber()},
              {"normalized", h.normalized},
              {"elements", h.elements.size()},
              {"closed_form", psi_element_count(h.model.m, h.model.links_per_fiber())},
              {"filament", filament},
              {"ample", h.elements.size() - filament},
              {"minimal", minimal},
              {"top", h.top()}};
  psi_checks(h, r);
  return r;
}

Run psi_levels(const Options& o) {
  Run r;
  const auto h = psi_space(o);
  const double l = planck_report(h).l;
  std::vector<double> ts;
  if (!o.ts.empty()) {
    ts = parse_reals(o.ts);
  } else if (o.t) {
    ts = {*o.t};
  } else {
    for (double f : {0.25, 0.5, 0.75}) ts.push_back(f * l);
    for (double f : {0.0, 0.25, 0.5}) ts.push_back(l + f * (h.top() - l));
  }
  auto reports = json::array();
  for (double t : ts) reports.push_back(level_structure_report(h, t));
  r.result = {{"l", l}, {"top", h.top()}, {"normalized", h.normalized}, {"levels", reports}};
  return r;
}

Run psi_path(const Options& o) {
  Run r;
  const auto h = psi_space(o);
  if (o.from.empty() || o.to.empty()) throw DomainError("psi path needs --from and --to element indices");
  const auto p = parse_indices(o.from), q = parse_indices(o.to);
  if (p.size() != 1 || q.size() != 1) throw DomainError("psi path takes single element indices");
  const auto path = order_arc_path(h, p[0], q[0]);
  r.result = {{"from", psi_element_to_json(h, p[0])}, {"to", psi_element_to_json(h, q[0])}, {"path", path}};
  const auto& a = h.elements[p[0]];
  const auto& b = h.elements[q[0]];
  if (a.is_piece() && b.is_piece() && a.fiber != b.fiber && !path.contains_ample) {
    r.violations.push_back("cross-fiber path without an ample element");
  }
  return r;
}

Run psi_curvature(const Options& o) {
  Run r;
  const auto h = psi_space(o);
  const auto c = curvature_check(h, o.trials, o.seed);
  r.result = {{"seed", o.seed}, {"curvature", c}};
  if (!c.pass()) r.violations.push_back("degenerate triangle additivity fails, defect " + std::to_string(c.worst_defect));
  return r;
}

// ---- plot ----

Run plot_chain(const Options& o) {
  Run r = chains_tower(o);
  r.result = {{"diagnostics", r.result["diagnostics"]}};
  return r;
}

Run plot_hyperspace(const Options& o) {
  Run r;
  const auto kind = continuum_kind_from_string(o.model == "path" ? "interval" : o.model);
  r.svg = hyperspace_svg(kind, o.samples);
  r.result = {{"kind", to_string(kind)}, {"samples", o.samples}};
  return r;
}

Run plot_psi(const Options& o) {
  Run r;
  const auto h = psi_space(o);
  r.svg = psi_svg(h);
  r.result = {{"elements", h.elements.size()}, {"planck", planck_report(h)}};
  return r;
}

Run suite_all(const Options& o) {
  Run r;
  std::vector<CriterionResult> results;
  if (o.criterion != 0) {
    results.push_back(run_criterion(static_cast<int>(o.criterion)));
  } else {
    results = run_suite();
  }
  auto rows = json::array();
  auto timings = json::array();
  for (const auto& c : results) {
    rows.push_back(c);
    timings.push_back({{"id", c.id}, {"seconds", c.seconds}});
    if (!c.pass) r.violations.push_back("criterion " + std::to_string(c.id) + ": " + c.witness);
  }
  r.result = {{"criteria", rows}};
  if (!o.no_timings) r.result["criterion_timings"] = timings;
  return r;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite models of hyperspaces, Whitney maps, crooked chains and the circle of pseudo-arcs",
               "continuum-lab"};
  app.require_subcommand(1);
  Options o;
  std::function<Run()> action;
  std::string command;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<Run()> fn) {
    auto* sub = parent->add_subcommand(name, help);
    sub->add_option("--out", o.out, "write the JSON report here instead of stdout");
    sub->add_flag("--no-timings", o.no_timings, "omit timings from the report");
    sub->callback([&, fn, sub, parent] {
      action = fn;
      command = parent->get_name() + " " + sub->get_name();
    });
    return sub;
  };
  auto graph_opts = [&](CLI::App* s) {
    s->add_option("--model", o.model, "path (size = vertices), interval, cycle, cantor_fan, star");
    s->add_option("--size", o.size, "size parameter of the model");
    s->add_option("--input", o.input, "graph JSON instead of a built-in model");
  };
  auto psi_opts = [&](CLI::App* s) {
    s->add_option("--m", o.m, "number of fibers");
    s->add_option("--level", o.level, "crookedness level of each fiber");
    s->add_flag("--normalize", o.normalize, "use the normalized model");
  };

  auto* chains = app.add_subcommand("chains", "crooked chains and towers")->require_subcommand(1);
  auto* cv = leaf(chains, "verify", "verify a chain or a refinement pattern", [&] { return chains_verify(o); });
  cv->add_option("--input", o.input, "chain or pattern JSON");
  cv->add_option("--pattern", o.pattern, "comma separated pattern");
  cv->add_option("--n", o.n, "number of coarse links for --pattern");
  cv->add_option("--tol", o.eps, "mesh bound for chain verification");
  auto* cg = leaf(chains, "generate", "generate a crooked pattern", [&] { return chains_generate(o); });
  cg->add_option("--n", o.n, "number of coarse links");
  cg->add_option("--svg", o.svg, "draw the refinement");
  auto* ct = leaf(chains, "tower", "build a nested crooked tower", [&] { return chains_tower(o); });
  ct->add_option("--n", o.tower_n, "links of the first level");
  ct->add_option("--level", o.tower_levels, "number of levels");
  ct->add_flag("--full", o.full, "include every link's cells");
  ct->add_option("--svg", o.svg, "draw the tower");

  auto* cont = app.add_subcommand("continuum", "graph continua and their hyperspaces")->require_subcommand(1);
  auto* cb = leaf(cont, "build", "build a continuum", [&] { return continuum_build(o); });
  graph_opts(cb);
  cb->add_option("--svg", o.svg, "draw the continuum");
  graph_opts(leaf(cont, "enumerate", "list all subcontinua", [&] { return continuum_enumerate(o); }));
  auto* co = leaf(cont, "orderarcs", "order-arcs between two subcontinua", [&] { return continuum_orderarcs(o); });
  graph_opts(co);
  co->add_option("--from", o.from, "start set, default {0}");
  co->add_option("--to", o.to, "end set, default the whole continuum");
  co->add_option("--limit", o.limit, "number of arcs to print");
  auto* tr = leaf(cont, "triod", "search for a triod", [&] { return continuum_triod(o); });
  graph_opts(tr);
  tr->add_option("--budget", o.budget, "search budget");

  auto* wh = app.add_subcommand("whitney", "Whitney maps")->require_subcommand(1);
  auto* wb = leaf(wh, "build", "build a Whitney map", [&] { return whitney_build(o); });
  graph_opts(wb);
  wb->add_option("--seed", o.seed, "shuffle the dense sequence");
  auto* we = leaf(wh, "eval", "evaluate mu and d_mu", [&] { return whitney_eval(o); });
  graph_opts(we);
  we->add_option("--seed", o.seed, "shuffle the dense sequence");
  we->add_option("--set", o.set, "comma separated vertices");
  we->add_option("--other", o.other, "second set for d_mu");
  we->add_option("--map", o.map, "series, size-squared, exponential or negative-size");
  auto* wc = leaf(wh, "check", "run the axiom and metric suite", [&] { return whitney_check(o); });
  graph_opts(wc);
  wc->add_option("--seed", o.seed, "shuffle the dense sequence");
  wc->add_option("--map", o.map, "series, size-squared, exponential or negative-size");
  auto* wl = leaf(wh, "level", "Whitney level at t", [&] { return whitney_level(o); });
  graph_opts(wl);
  wl->add_option("--seed", o.seed, "shuffle the dense sequence");
  wl->add_option("--t", o.t, "level value")->required();
  wl->add_option("--tol", o.tol, "level tolerance");
  auto* wr = leaf(wh, "refine", "equal-level refinement", [&] { return whitney_refine(o); });
  graph_opts(wr);
  wr->add_option("--seed", o.seed, "shuffle the dense sequence");
  wr->add_option("--t", o.t, "level value t0")->required();
  wr->add_option("--tol", o.tol, "level tolerance");
  wr->add_option("--parts", o.parts, "decomposition as sets separated by ';'");

  auto* psi = app.add_subcommand("psi", "the circle of pseudo-arcs model")->require_subcommand(1);
  psi_opts(leaf(psi, "build", "build the model and its hyperspace", [&] { return psi_build(o); }));
  psi_opts(leaf(psi, "report", "Planck boundary and axiom report", [&] { return psi_report(o); }));
  auto* pl = leaf(psi, "levels", "Whitney level structure", [&] { return psi_levels(o); });
  psi_opts(pl);
  pl->add_option("--t", o.t, "one level value");
  pl->add_option("--ts", o.ts, "comma separated level values");
  auto* pp = leaf(psi, "path", "shortest order-arc path", [&] { return psi_path(o); });
  psi_opts(pp);
  pp->add_option("--from", o.from, "element index")->required();
  pp->add_option("--to", o.to, "element index")->required();
  auto* pc = leaf(psi, "curvature", "degenerate triangle test", [&] { return psi_curvature(o); });
  psi_opts(pc);
  pc->add_option("--trials", o.trials, "number of triples");
  pc->add_option("--seed", o.seed, "random seed");

  auto* plot = app.add_subcommand("plot", "SVG figures")->require_subcommand(1);
  auto* pch = leaf(plot, "chain", "crooked tower", [&] { return plot_chain(o); });
  pch->add_option("--n", o.tower_n, "links of the first level");
  pch->add_option("--level", o.tower_levels, "number of levels");
  pch->add_option("--svg", o.svg, "output file")->required();
  auto* phy = leaf(plot, "hyperspace", "triangle or disk image", [&] { return plot_hyperspace(o); });
  phy->add_option("--model", o.model, "interval or cycle");
  phy->add_option("--size", o.samples, "samples per side");
  phy->add_option("--svg", o.svg, "output file")->required();
  auto* pps = leaf(plot, "psi", "Planck boundary schematic", [&] { return plot_psi(o); });
  psi_opts(pps);
  pps->add_option("--svg", o.svg, "output file")->required();

  auto* suite = app.add_subcommand("suite", "property suites")->require_subcommand(1);
  leaf(suite, "all", "run every acceptance property", [&] { return suite_all(o); })
      ->add_option("--criterion", o.criterion, "run one criterion only");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    err << app.help();
    return 2;
  }

  json report = {{"command", command}};
  int status = 0;
  const auto start = std::chrono::steady_clock::now();
  try {
    Run r = action();
    report["result"] = std::move(r.result);
    if (!r.svg.empty()) {
      write_file(o.svg, r.svg);
      report["artifacts"]["svg"] = o.svg;
    }
    report["violations"] = r.violations;
    status = r.violations.empty() ? 0 : 1;
    report["status"] = status == 0 ? "pass" : "fail";
  } catch (const ResourceError& e) {
    report["status"] = "error";
    report["error"] = {{"kind", "resource"}, {"message", e.what()}, {"achievable", e.achievable()}};
    status = 2;
  } catch (const std::exception& e) {
    report["status"] = "error";
    report["error"] = {{"kind", "domain"}, {"message", e.what()}};
    status = 2;
  }
  if (!o.no_timings) {
    report["timings"] = {
        {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  }
  if (status == 2) err << "error: " << report["error"]["message"].get<std::string>() << "\n";
  const std::string text = report.dump(2) + "\n";
  try {
    if (o.out.empty()) {
      out << text;
    } else {
      write_file(o.out, text);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}

}  // namespace continuum_lab
