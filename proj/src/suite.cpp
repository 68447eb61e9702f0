#include "continuum_lab/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "continuum_lab/chain_realization.hpp"
#include "continuum_lab/chains.hpp"
#include "continuum_lab/continua.hpp"
#include "continuum_lab/errors.hpp"
#include "continuum_lab/psi_model.hpp"
#include "continuum_lab/whitney.hpp"

namespace continuum_lab {

namespace {

using nlohmann::json;

struct Outcome {
  bool pass = true;
  std::string witness;
  json detail = json::object();

  void fail(const std::string& what) {
    if (pass) witness = what;
    pass = false;
  }
};

std::string members_string(const VertexSet& s) {
  std::ostringstream o;
  o << "{";
  bool first = true;
  s.for_each([&](std::size_t x) {
    o << (first ? "" : ",") << x;
    first = false;
  });
  o << "}";
  return o.str();
}

GraphContinuum path_graph(std::size_t vertices) { return build_continuum(ContinuumKind::interval, vertices - 1); }

Outcome whitney_axioms() {
  Outcome out;
  const auto g = path_graph(10);
  const auto poset = enumerate_subcontinua(g);
  const auto mu = build_whitney_map(g);
  const auto r = check_whitney_axioms(mu.as_function(), poset.elements());
  out.detail = {{"subcontinua", poset.size()}, {"report", r}};
  if (poset.size() != 55) out.fail("path-10 has " + std::to_string(poset.size()) + " subcontinua, expected 55");
  if (!r.a) out.fail("axiom (a) fails at element " + std::to_string(r.a_violations.front()));
  if (!r.b) out.fail("axiom (b) fails at pair " + std::to_string(r.b_violations.front().first) + "," +
                     std::to_string(r.b_violations.front().second));
  if (!r.c) out.fail("axiom (c) fails at pair " + std::to_string(r.c_violations.front().first) + "," +
                     std::to_string(r.c_violations.front().second));
  if (!r.c_prime) {
    const auto& v = r.c_prime_violations.front();
    out.fail("axiom (c') fails at triple " + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," +
             std::to_string(v[2]));
  }
  return out;
}

Outcome c_equivalence() {
  Outcome out;
  struct Case {
    std::string name;
    GraphContinuum g;
    SetFunction mu;
    bool whitney;
  };
  std::vector<Case> cases;
  std::vector<WhitneyMap> maps;
  maps.reserve(6);
  const auto path = path_graph(10);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    maps.push_back(build_whitney_map(path, seed));
    cases.push_back({"path-10 seed " + std::to_string(seed), path, maps.back().as_function(), true});
  }
  const auto cycle = build_continuum(ContinuumKind::cycle, 8);
  maps.push_back(build_whitney_map(cycle));
  cases.push_back({"cycle-8", cycle, maps.back().as_function(), true});
  const auto star = build_continuum(ContinuumKind::star, 2);
  maps.push_back(build_whitney_map(star));
  cases.push_back({"star-2", star, maps.back().as_function(), true});
  cases.push_back({"(|A|-1)^2 on path-10", path,
                   [](const VertexSet& a) {
                     const double n = static_cast<double>(a.count()) - 1.0;
                     return n * n;
                   },
                   false});
  cases.push_back({"2^|A|-2 on path-10", path,
                   [](const VertexSet& a) { return std::ldexp(1.0, static_cast<int>(a.count())) - 2.0; }, false});
  cases.push_back({"(|A|-1)^2 on cycle-8", cycle,
                   [](const VertexSet& a) {
                     const double n = static_cast<double>(a.count()) - 1.0;
                     return n * n;
                   },
                   false});

  auto rows = json::array();
  std::size_t constructed = 0, adversarial = 0;
  for (const auto& c : cases) {
    const auto poset = enumerate_subcontinua(c.g);
    const auto r = check_whitney_axioms(c.mu, poset.elements());
    rows.push_back({{"map", c.name}, {"c", r.c}, {"c_prime", r.c_prime}, {"pass", r.pass()}});
    if (!r.c_agrees_with_c_prime()) out.fail("(c) and (c') disagree on " + c.name);
    if (c.whitney && !r.pass()) out.fail("constructed map " + c.name + " is not a Whitney map");
    if (!c.whitney && r.c) out.fail("adversarial map " + c.name + " passes (c)");
    (c.whitney ? constructed : adversarial) += 1;
  }
  out.detail = {{"maps", rows}, {"constructed", constructed}, {"adversarial", adversarial}};
  if (constructed < 5 || adversarial < 2) out.fail("too few maps");
  return out;
}

Outcome whitney_metric() {
  Outcome out;
  const auto g = path_graph(10);
  const auto poset = enumerate_subcontinua(g);
  const auto mu = build_whitney_map(g);
  const auto f = mu.as_function();
  const auto d = distance_matrix(f, poset.elements());
  const auto r = check_metric_axioms(d);
  const std::size_t point_failures = check_point_distance(f, poset.elements());
  const auto arcs = maximal_order_arcs(g);
  const double defect = order_arc_isometry_defect(f, arcs);
  out.detail = {{"metric", r}, {"point_distance_failures", point_failures}, {"order_arcs", arcs.size()},
                {"isometry_defect", defect}};
  if (!r.identity) out.fail("d_mu identity of indiscernibles fails");
  if (!r.symmetry) out.fail("d_mu symmetry fails");
  if (!r.triangle) {
    const auto& t = *r.triangle_violation;
    out.fail("triangle inequality fails at " + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
             std::to_string(t[2]));
  }
  if (point_failures != 0) out.fail(std::to_string(point_failures) + " failures of d_mu(A,{x}) = mu(A)");
  if (!(defect <= kTolerance)) out.fail("order-arc isometry defect " + std::to_string(defect));
  return out;
}

Outcome crookedness() {
  Outcome out;
  auto rows = json::array();
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto p = generate_crooked_pattern(n);
    const auto r = is_crooked(p, n);
    rows.push_back({{"n_coarse", n}, {"length", p.assignment.size()}, {"crooked", r.crooked}});
    if (!r.crooked) out.fail("generated pattern for n=" + std::to_string(n) + " is not crooked");
  }
  const auto shortest = shortest_crooked_pattern(4, 6);
  const auto shorter = shortest_crooked_pattern(4, 5);
  out.detail = {{"generated", rows},
                {"minimal_n4", shortest ? json(*shortest) : json(nullptr)},
                {"exists_length_5", shorter.has_value()}};
  if (!shortest || shortest->size() != 6) out.fail("no crooked pattern of length 6 for n=4");
  if (shorter) out.fail("a crooked pattern shorter than 6 exists for n=4");
  return out;
}

Outcome tower() {
  Outcome out;
  const auto t = build_tower(3, 3, {0.0, 0.0}, {1.0, 0.0});
  out.detail = {{"diagnostics", t.diagnostics}};
  for (std::size_t n = 0; n < t.levels.size(); ++n) {
    const auto& d = t.diagnostics[n];
    const double bound = std::ldexp(1.0, -static_cast<int>(n + 1));
    const std::string lv = "level " + std::to_string(n + 1);
    if (!(d.mesh <= bound)) out.fail(lv + " mesh " + std::to_string(d.mesh) + " exceeds " + std::to_string(bound));
    const auto rep = verify_chain(t.levels[n], bound);
    if (!rep.adjacency_violations.empty()) {
      out.fail(lv + " links " + std::to_string(rep.adjacency_violations.front().first) + "," +
               std::to_string(rep.adjacency_violations.front().second) + " break the chain adjacency rule");
    }
    if (!d.endpoints_in_end_links) out.fail(lv + " does not put the endpoints in its end links");
    if (n > 0 && !d.nested_in_previous) out.fail(lv + " is not nested in level " + std::to_string(n));
    if (n > 0 && !d.crooked_in_previous) out.fail(lv + " is not crooked in level " + std::to_string(n));
    if (n + 1 < t.levels.size()) {
      if (!d.hausdorff_to_next) {
        out.fail(lv + " has no Hausdorff distance to the next level");
      } else if (!(*d.hausdorff_to_next <= d.mesh)) {
        out.fail(lv + " d_H to next " + std::to_string(*d.hausdorff_to_next) + " exceeds mesh " +
                 std::to_string(d.mesh));
      }
    }
  }
  if (t.levels.size() != 3) out.fail("tower has " + std::to_string(t.levels.size()) + " levels");
  return out;
}

Outcome homeomorphisms() {
  Outcome out;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double tri_err = 0.0;
  std::size_t tri_samples = 0;
  constexpr std::size_t steps = 150;
  for (std::size_t i = 0; i < steps; ++i) {
    for (std::size_t j = i; j < steps; ++j) {
      const double a = static_cast<double>(i) / (steps - 1);
      const double b = static_cast<double>(j) / (steps - 1);
      const auto [a2, b2] = triangle_inverse(triangle_map(a, b));
      tri_err = std::max({tri_err, std::abs(a - a2), std::abs(b - b2)});
      ++tri_samples;
    }
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, two_pi);
  double disk_err = 0.0;
  constexpr std::size_t disk_samples = 10000;
  for (std::size_t s = 0; s < disk_samples; ++s) {
    const double alpha = angle(rng);
    // Lengths stay below 2 pi; the full circle is checked separately.
    const double len = s % 10 == 0 ? 0.0 : angle(rng) * (1.0 - 1e-9);
    const auto [a2, b2] = disk_inverse(disk_map(alpha, alpha + len));
    const double da = std::abs(std::remainder(alpha - a2, two_pi));
    disk_err = std::max({disk_err, da, std::abs(len - (b2 - a2))});
  }
  bool exact = true;
  for (double a : {0.0, 0.25, 0.5, 1.0}) {
    const Point2 p = triangle_map(a, a);
    if (p.x != a || p.y != 0.0) exact = false;
  }
  const Point2 top = triangle_map(0.0, 1.0);
  if (top.x != 0.5 || top.y != 1.0) exact = false;
  for (double a : {0.0, 1.0, 3.0}) {
    const Point2 p = disk_map(a, a + two_pi);
    if (p.x != 0.0 || p.y != 0.0) exact = false;
  }
  out.detail = {{"triangle_samples", tri_samples}, {"triangle_max_error", tri_err},
                {"disk_samples", disk_samples},    {"disk_max_error", disk_err},
                {"exact_values", exact}};
  if (tri_samples < 10000 || disk_samples < 10000) out.fail("fewer than 10^4 samples");
  if (!(tri_err < 1e-9)) out.fail("triangle roundtrip error " + std::to_string(tri_err));
  if (!(disk_err < 1e-9)) out.fail("disk roundtrip error " + std::to_string(disk_err));
  if (!exact) out.fail("an exact value of the triangle or disk map is off");
  return out;
}

std::vector<std::size_t> full_fibers(const PsiHyperspace& h) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < h.model.m; ++a) out.push_back(h.full_fiber(a));
  return out;
}

Outcome psi_structure() {
  Outcome out;
  const auto model = build_psi_model(6, 2);
  const auto raw = enumerate_psi_hyperspace(model);
  const std::size_t k = model.links_per_fiber();
  const std::size_t expected = psi_element_count(6, k);
  std::size_t filament = 0, ample = 0;
  for (std::size_t e = 0; e < raw.elements.size(); ++e) {
    const auto c = classify_element(raw, e);
    const bool proper_piece = raw.elements[e].is_piece();
    if ((c.cls == ElementClass::filament) != proper_piece) {
      out.fail("element " + std::to_string(e) + " is classified against its type");
    }
    (c.cls == ElementClass::filament ? filament : ample) += 1;
  }
  const auto fibers = full_fibers(raw);
  const auto planck = planck_report(raw);
  const auto norm = normalize_to_psi0(raw);
  const auto np = planck_report(norm);
  double worst = 0.0;
  for (std::size_t f : fibers) worst = std::max(worst, std::abs(norm.values[f] - np.l));
  const auto level = whitney_level(norm.values, np.l, default_level_tolerance(norm.values), norm.top());
  const auto raw_axioms = check_psi_axioms(raw);
  const auto norm_axioms = check_psi_axioms(norm);
  out.detail = {{"elements", raw.elements.size()}, {"closed_form", expected},     {"links_per_fiber", k},
                {"filament", filament},            {"ample", ample},              {"planck_raw", planck},
                {"planck_normalized", np},         {"fiber_spread", worst},       {"level_at_l", level},
                {"axioms_raw", raw_axioms},        {"axioms_normalized", norm_axioms}};
  if (raw.elements.size() != expected || expected != 157) {
    out.fail("element count " + std::to_string(raw.elements.size()) + " against closed form " +
             std::to_string(expected));
  }
  if (filament + ample != raw.elements.size()) out.fail("classes do not partition the elements");
  if (planck.boundary != fibers) out.fail("raw Planck boundary is not the set of full fibers");
  if (np.boundary != fibers) out.fail("normalized Planck boundary is not the set of full fibers");
  if (!(worst <= kTolerance)) out.fail("normalized fiber values differ from l by " + std::to_string(worst));
  if (level != fibers) out.fail("normalized level at l is not the set of full fibers");
  if (!raw_axioms.pass()) out.fail("raw psi map violates a Whitney axiom");
  if (!norm_axioms.pass()) out.fail("normalized psi map violates a Whitney axiom");
  return out;
}

Outcome psi_levels() {
  Outcome out;
  const auto norm = normalize_to_psi0(enumerate_psi_hyperspace(build_psi_model(6, 2)));
  const double l = planck_report(norm).l;
  const double delta = norm.top() - l;
  const auto fibers = full_fibers(norm);
  auto rows = json::array();
  for (double f : {0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
    const auto r = level_structure_report(norm, f * l);
    rows.push_back({{"t", r.t}, {"components", r.nerve.components}, {"betti1", r.nerve.betti1}});
    if (r.nerve.components != 6) {
      out.fail("t = " + std::to_string(f) + " l gives " + std::to_string(r.nerve.components) + " components");
    }
  }
  const auto at_l = level_structure_report(norm, l);
  rows.push_back({{"t", at_l.t}, {"components", at_l.nerve.components}, {"betti1", at_l.nerve.betti1}});
  if (at_l.level != fibers) out.fail("level at t = l is not the six full fibers");
  if (!at_l.nerve.cyclic()) out.fail("level at t = l is not one cyclic component");
  for (double f : {0.25, 0.5}) {
    const auto r = level_structure_report(norm, l + f * delta);
    rows.push_back({{"t", r.t}, {"components", r.nerve.components}, {"betti1", r.nerve.betti1}});
    if (!r.nerve.cyclic()) {
      out.fail("t = l + " + std::to_string(f) + " (top - l) gives " + std::to_string(r.nerve.components) +
               " components with betti1 " + std::to_string(r.nerve.betti1));
    }
  }
  out.detail = {{"l", l}, {"top", norm.top()}, {"levels", rows}};
  return out;
}

Outcome order_arcs() {
  Outcome out;
  const auto raw = enumerate_psi_hyperspace(build_psi_model(6, 2));
  const auto norm = normalize_to_psi0(raw);
  std::size_t pairs = 0;
  for (const PsiHyperspace* h : {&raw, &norm}) {
    for (std::size_t p = 0; p < h->elements.size(); ++p) {
      if (!h->elements[p].is_piece()) continue;
      const auto filament_only = order_arc_distances(*h, p, true);
      for (std::size_t q = p + 1; q < h->elements.size(); ++q) {
        if (!h->elements[q].is_piece() || h->elements[q].fiber == h->elements[p].fiber) continue;
        ++pairs;
        const auto path = order_arc_path(*h, p, q);
        if (!path.contains_ample) {
          out.fail("shortest path " + std::to_string(p) + " -> " + std::to_string(q) + " has no ample element");
        }
        if (std::isfinite(filament_only[q])) {
          out.fail("filament-only path joins pieces " + std::to_string(p) + " and " + std::to_string(q));
        }
      }
    }
  }
  const auto c = curvature_check(norm, 1000, 42);
  out.detail = {{"cross_fiber_pairs", pairs}, {"curvature", c}};
  if (!c.pass()) out.fail("degenerate triangle additivity defect " + std::to_string(c.worst_defect));
  if (c.compatible == 0) out.fail("no compatible triple among the samples");
  if (!(c.worst_defect <= kTolerance)) out.fail("worst additivity defect " + std::to_string(c.worst_defect));
  return out;
}

Outcome triods_and_terminality() {
  Outcome out;
  const auto path = enumerate_subcontinua(path_graph(10));
  const auto cycle = enumerate_subcontinua(build_continuum(ContinuumKind::cycle, 8));
  const auto star = enumerate_subcontinua(build_continuum(ContinuumKind::star, 2));
  const auto tp = detect_triod(path);
  const auto tc = detect_triod(cycle);
  const auto ts = detect_triod(star);
  if (tp) out.fail("path-10 yields a triod with core " + members_string(tp->core));
  if (tc) out.fail("cycle-8 yields a triod with core " + members_string(tc->core));
  if (!ts) out.fail("star yields no triod");

  const auto h = enumerate_psi_hyperspace(build_psi_model(6, 2));
  std::vector<VertexSet> family;
  for (const auto& el : h.elements) family.push_back(el.points);
  std::size_t fibers_terminal = 0, pieces_non_terminal = 0, singletons = 0;
  for (std::size_t e = 0; e < h.elements.size(); ++e) {
    const auto& el = h.elements[e];
    if (el.is_full_fiber()) {
      const auto r = is_terminal(el.points, family);
      if (r.terminal) {
        ++fibers_terminal;
      } else {
        out.fail("full fiber " + std::to_string(el.fiber) + " is not terminal, witness " + members_string(*r.witness));
      }
    } else if (el.is_piece()) {
      if (el.first == el.last) {
        ++singletons;
        continue;
      }
      if (is_terminal(el.points, family).terminal) {
        out.fail("proper piece " + std::to_string(e) + " is terminal");
      } else {
        ++pieces_non_terminal;
      }
    }
  }
  json star_witness = nullptr;
  if (ts) {
    star_witness = {{"a", ts->a.members()}, {"b", ts->b.members()}, {"c", ts->c.members()},
                    {"core", ts->core.members()}};
  }
  out.detail = {{"path_triod", tp.has_value()},
                {"cycle_triod", tc.has_value()},
                {"star_triod", star_witness},
                {"terminal_fibers", fibers_terminal},
                {"non_terminal_pieces", pieces_non_terminal},
                {"singleton_pieces_skipped", singletons}};
  return out;
}

struct Spec {
  const char* name;
  double limit;
  std::function<Outcome()> run;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> s = {
      {"Whitney axioms on path-10", 1.0, whitney_axioms},
      {"(c) and (c') verdicts agree", 1.0, c_equivalence},
      {"Whitney metric and order-arc isometry", 5.0, whitney_metric},
      {"crooked generator and minimal length", 10.0, crookedness},
      {"crooked tower convergence", 10.0, tower},
      {"triangle and disk homeomorphisms", 2.0, homeomorphisms},
      {"psi model structure and Planck boundary", 5.0, psi_structure},
      {"psi Whitney level structure", 5.0, psi_levels},
      {"order-arc geometry", 30.0, order_arcs},
      {"triods and terminal fibers", 5.0, triods_and_terminality},
  };
  return s;
}

}  // namespace

int criterion_count() { return static_cast<int>(specs().size()); }

CriterionResult run_criterion(int id) {
  if (id < 1 || id > criterion_count()) throw DomainError("no criterion " + std::to_string(id));
  const Spec& s = specs()[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.name = s.name;
  r.limit_seconds = s.limit;
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = s.run();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > s.limit) o.fail("runtime " + std::to_string(r.seconds) + " s exceeds " + std::to_string(s.limit) + " s");
  r.pass = o.pass;
  r.witness = o.witness;
  r.detail = std::move(o.detail);
  return r;
}

std::vector<CriterionResult> run_suite() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count(); ++id) out.push_back(run_criterion(id));
  return out;
}

void to_json(nlohmann::json& j, const CriterionResult& r) {
  j = {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"limit_seconds", r.limit_seconds}, {"detail", r.detail}};
  if (!r.pass) j["witness"] = r.witness;
}

}  // namespace continuum_lab
