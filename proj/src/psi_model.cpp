#include "continuum_lab/psi_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <random>
#include <string>

#include "continuum_lab/errors.hpp"

namespace continuum_lab {

namespace {

constexpr std::size_t kFiberBaseLinks = 4;
constexpr double kRadialSpread = 0.25;
constexpr double kRunSpread = 0.08;

std::vector<std::size_t> run_indices(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> runs(p.size(), 0);
  int dir = 0;
  std::size_t run = 0;
  for (std::size_t j = 1; j < p.size(); ++j) {
    const int d = p[j] > p[j - 1] ? 1 : (p[j] < p[j - 1] ? -1 : 0);
    if (d != 0) {
      if (dir != 0 && d != dir) ++run;
      dir = d;
    }
    runs[j] = run;
  }
  return runs;
}

std::size_t mod(std::size_t a, std::size_t m) { return a % m; }

}  // namespace

GraphContinuum PsiModel::fiber_nerve(std::size_t fiber) const {
  const auto& f = fibers.at(fiber);
  std::vector<Point2> v;
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t j = 0; j < f.links; ++j) {
    v.push_back(points[f.points[j]]);
    if (j > 0) e.emplace_back(j - 1, j);
  }
  return GraphContinuum(ContinuumKind::chain_nerve, std::move(v), std::move(e));
}

PsiModel build_psi_model(std::size_t m, std::size_t n) {
  if (m < 3) throw DomainError("the base cycle needs at least 3 vertices");
  if (n == 0) throw DomainError("fiber level must be at least 1");

  // Abstract tower 4 -> L(4) -> L(L(4)) ...; the fiber is its top level.
  RefinementPattern pattern = abstract_pattern(std::vector<std::size_t>(kFiberBaseLinks, 0), 1);
  std::size_t links = kFiberBaseLinks;
  std::vector<double> along(links);
  for (std::size_t j = 0; j < links; ++j) along[j] = static_cast<double>(j) / static_cast<double>(links - 1);
  for (std::size_t level = 2; level <= n; ++level) {
    const std::size_t len = generated_pattern_length(links);
    if (len > 4096) {
      throw ResourceError("fiber level " + std::to_string(n) + " needs a crooked pattern over " +
                              std::to_string(links) + " links; achievable level: " + std::to_string(level - 1),
                          level - 1);
    }
    pattern = generate_crooked_pattern(links);
    along.assign(len, 0.0);
    for (std::size_t j = 0; j < len; ++j) {
      along[j] = static_cast<double>(pattern.assignment[j]) / static_cast<double>(links - 1);
    }
    links = len;
  }
  const std::size_t k = links;
  const std::size_t pieces = m * (k * (k + 1) / 2 - 1);
  if (pieces + m * m + 1 > element_limit()) {
    throw ResourceError("psi hyperspace would exceed the element limit of " + std::to_string(element_limit()),
                        n - 1);
  }

  PsiModel model;
  model.m = m;
  model.level = n;
  const std::vector<std::size_t> runs =
      n == 1 ? std::vector<std::size_t>(k, 0) : run_indices(pattern.assignment);
  const std::size_t total_runs = runs.back() + 1;
  const double run_step = kRunSpread / static_cast<double>(std::max<std::size_t>(1, total_runs - 1));
  const bool crooked = is_crooked(pattern, pattern.n_coarse).crooked;
  for (std::size_t a = 0; a < m; ++a) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(m);
    const Point2 rad{std::cos(th), std::sin(th)};
    const Point2 tan{-std::sin(th), std::cos(th)};
    PsiFiber fiber;
    fiber.links = k;
    fiber.pattern = pattern;
    fiber.runs = runs;
    fiber.crooked = crooked;
    for (std::size_t j = 0; j < k; ++j) {
      const double r = 1.0 + kRadialSpread * (along[j] - 0.5);
      const double off = (static_cast<double>(runs[j]) - static_cast<double>(total_runs - 1) / 2.0) * run_step;
      fiber.points.push_back(model.points.size());
      model.points.push_back({r * rad.x + off * tan.x, r * rad.y + off * tan.y});
    }
    model.fibers.push_back(std::move(fiber));
  }
  for (std::size_t a = 0; a < m; ++a) {
    const double th = 2.0 * std::numbers::pi * (static_cast<double>(a) + 0.5) / static_cast<double>(m);
    model.bridges.push_back(model.points.size());
    model.points.push_back({std::cos(th), std::sin(th)});
  }
  model.space = FiniteMetricSpace::from_points(model.points);
  return model;
}

std::size_t psi_element_count(std::size_t m, std::size_t k) {
  return m * (k * (k + 1) / 2 - 1) + m * (m - 1) + 1 + m;
}

std::size_t PsiHyperspace::full_fiber(std::size_t alpha) const {
  const std::size_t k = model.links_per_fiber();
  return model.m * (k * (k + 1) / 2 - 1) + alpha;
}

namespace {

VertexSet arc_points(const PsiModel& model, std::size_t start, std::size_t edges) {
  const std::size_t m = model.m;
  VertexSet s(model.points.size());
  if (edges >= m) return VertexSet::full(model.points.size());
  for (std::size_t t = 0; t <= edges; ++t) {
    for (std::size_t p : model.fibers[mod(start + t, m)].points) s.insert(p);
  }
  for (std::size_t t = 0; t < edges; ++t) s.insert(model.bridges[mod(start + t, m)]);
  return s;
}

VertexSet base_arc(std::size_t m, std::size_t start, std::size_t edges) {
  VertexSet s(2 * m);
  if (edges >= m) return VertexSet::full(2 * m);
  for (std::size_t t = 0; t <= edges; ++t) s.insert(mod(start + t, m));
  for (std::size_t t = 0; t < edges; ++t) s.insert(m + mod(start + t, m));
  return s;
}

}  // namespace

PsiHyperspace enumerate_psi_hyperspace(const PsiModel& model) {
  PsiHyperspace h;
  h.model = model;
  const std::size_t m = model.m;
  const std::size_t k = model.links_per_fiber();
  const std::size_t universe = model.points.size();

  // Index of piece (a, i, j) in the enumeration order below.
  std::map<std::array<std::size_t, 3>, std::size_t> piece_id;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) {
        if (i == 0 && j == k - 1) continue;
        HyperElement e;
        e.type = PsiElementType::piece;
        e.fiber = a;
        e.first = i;
        e.last = j;
        e.points = VertexSet(universe);
        for (std::size_t t = i; t <= j; ++t) e.points.insert(model.fibers[a].points[t]);
        piece_id[{a, i, j}] = h.elements.size();
        h.elements.push_back(std::move(e));
      }
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> arc_id;
  auto add_arc = [&](std::size_t start, std::size_t edges) {
    HyperElement e;
    e.type = PsiElementType::base_union;
    e.fiber = start;
    e.edges = edges;
    e.points = arc_points(model, start, edges);
    arc_id[{start, edges}] = h.elements.size();
    h.elements.push_back(std::move(e));
  };
  for (std::size_t a = 0; a < m; ++a) add_arc(a, 0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t e = 1; e < m; ++e) add_arc(a, e);
  }
  add_arc(0, m);

  const std::size_t n = h.elements.size();
  h.covers_up.assign(n, {});
  h.covers_down.assign(n, {});
  auto link = [&](std::size_t lo, std::size_t hi) {
    h.covers_up[lo].push_back(hi);
    h.covers_down[hi].push_back(lo);
  };
  auto piece_or_fiber = [&](std::size_t a, std::size_t i, std::size_t j) {
    if (i == 0 && j == k - 1) return arc_id.at({a, 0});
    return piece_id.at({a, i, j});
  };
  for (const auto& [key, id] : piece_id) {
    const auto [a, i, j] = key;
    if (i > 0) link(id, piece_or_fiber(a, i - 1, j));
    if (j + 1 < k) link(id, piece_or_fiber(a, i, j + 1));
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t e = 0; e + 1 < m; ++e) {
      const std::size_t id = arc_id.at({a, e});
      link(id, arc_id.at({a, e + 1}));
      link(id, arc_id.at({mod(a + m - 1, m), e + 1}));
    }
    link(arc_id.at({a, m - 1}), arc_id.at({0, m}));
  }
  for (auto& v : h.covers_up) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (auto& v : h.covers_down) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  h.raw_map.emplace(build_whitney_map(model.space));
  h.values.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    h.values[e] = (*h.raw_map)(h.elements[e].points);
    h.index.emplace(h.elements[e].points, e);
  }
  for (std::size_t a = 0; a < m; ++a) h.fiber_raw.push_back(h.values[h.full_fiber(a)]);
  return h;
}

Classification classify_element(const PsiHyperspace& h, std::size_t e) {
  const auto& el = h.elements.at(e);
  if (el.is_piece()) return {ElementClass::filament, false};
  return {ElementClass::ample, el.is_full_fiber()};
}

PlanckData planck_report(const PsiHyperspace& h) {
  PlanckData p;
  p.l = std::numeric_limits<double>::infinity();
  p.L = -p.l;
  for (std::size_t e = 0; e < h.elements.size(); ++e) {
    if (h.elements[e].is_piece()) continue;
    const auto& below = h.covers_down[e];
    if (std::any_of(below.begin(), below.end(), [&](std::size_t b) { return h.elements[b].is_piece(); })) {
      p.boundary.push_back(e);
    }
  }
  for (std::size_t a = 0; a < h.model.m; ++a) {
    p.l = std::min(p.l, h.values[h.full_fiber(a)]);
    p.L = std::max(p.L, h.values[h.full_fiber(a)]);
  }
  return p;
}

PsiHyperspace normalize_to_psi0(const PsiHyperspace& h) {
  PsiHyperspace out = h;
  const std::size_t m = h.model.m;
  const double l = *std::min_element(h.fiber_raw.begin(), h.fiber_raw.end());
  std::vector<Point2> base;
  for (std::size_t a = 0; a < m; ++a) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(m);
    base.push_back({std::cos(th), std::sin(th)});
  }
  for (std::size_t a = 0; a < m; ++a) {
    const double th = 2.0 * std::numbers::pi * (static_cast<double>(a) + 0.5) / static_cast<double>(m);
    base.push_back({std::cos(th), std::sin(th)});
  }
  out.base_map.emplace(build_whitney_map(FiniteMetricSpace::from_points(base)));
  const WhitneyMap& w = *out.base_map;
  const double raw_top = h.values[h.whole()];
  out.base_scale = (raw_top - l) / w(VertexSet::full(2 * m));
  for (std::size_t e = 0; e < h.elements.size(); ++e) {
    const auto& el = h.elements[e];
    if (el.is_piece()) {
      out.values[e] = h.values[e] * (l / h.fiber_raw[el.fiber]);
    } else if (el.is_full_fiber()) {
      out.values[e] = l;
    } else if (el.is_whole(m)) {
      out.values[e] = raw_top;
    } else {
      out.values[e] = l + out.base_scale * w(base_arc(m, el.fiber, el.edges));
    }
  }
  out.normalized = true;
  return out;
}

std::optional<double> psi_value(const PsiHyperspace& h, const VertexSet& s) {
  if (s.universe() != h.model.points.size() || s.empty()) return std::nullopt;
  if (!h.normalized) return (*h.raw_map)(s);
  for (std::size_t a = 0; a < h.model.m; ++a) {
    const VertexSet& fiber = h.elements[h.full_fiber(a)].points;
    if (s.is_subset_of(fiber)) {
      const double l = h.values[h.full_fiber(a)];
      return (*h.raw_map)(s) * (l / h.fiber_raw[a]);
    }
  }
  if (const auto it = h.index.find(s); it != h.index.end()) return h.values[it->second];
  return std::nullopt;
}

PsiAxiomReport check_psi_axioms(const PsiHyperspace& h) {
  PsiAxiomReport r;
  const std::size_t n = h.elements.size();
  for (std::size_t e = 0; e < n; ++e) {
    if (h.elements[e].points.count() == 1) {
      ++r.checked_a;
      if (std::abs(h.values[e]) > kTolerance) ++r.violations_a;
    }
    for (std::size_t up : h.covers_up[e]) {
      ++r.checked_b;
      if (!(h.values[e] < h.values[up])) ++r.violations_b;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto& sa = h.elements[a].points;
      const auto& sb = h.elements[b].points;
      if (!sa.intersects(sb)) continue;
      const auto u = psi_value(h, sa | sb);
      const auto i = psi_value(h, sa & sb);
      if (!u || !i) continue;
      ++r.checked_c;
      if (*u > h.values[a] + h.values[b] - *i + kTolerance) ++r.violations_c;
    }
  }
  return r;
}

LevelReport level_structure_report(const PsiHyperspace& h, double t) {
  const double top = h.top();
  if (!(t > 0.0 && t < top)) {
    throw DomainError("level " + std::to_string(t) + " outside (0, " + std::to_string(top) + ")");
  }
  LevelReport r;
  r.t = t;
  r.level = crossing_level(h.values, h.covers_up, t);
  const std::size_t n = r.level.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      d[a][b] = d[b][a] =
          hausdorff_distance(h.model.space, h.elements[r.level[a]].points, h.elements[r.level[b]].points).value;
    }
  }
  auto attached_fiber = [&](std::size_t e) -> std::optional<std::size_t> {
    const auto& el = h.elements[e];
    if (el.is_piece() || el.is_full_fiber()) return el.fiber;
    return std::nullopt;
  };
  r.inside_filament = std::all_of(r.level.begin(), r.level.end(), [&](std::size_t e) { return h.elements[e].is_piece(); });
  r.inside_ample = std::none_of(r.level.begin(), r.level.end(), [&](std::size_t e) { return h.elements[e].is_piece(); });
  double eps = 0.0;
  if (r.inside_ample) {
    std::vector<std::size_t> all(n);
    for (std::size_t a = 0; a < n; ++a) all[a] = a;
    eps = connectivity_threshold(d, all);
  } else {
    for (std::size_t alpha = 0; alpha < h.model.m; ++alpha) {
      std::vector<std::size_t> items;
      for (std::size_t a = 0; a < n; ++a) {
        if (attached_fiber(r.level[a]) == alpha) items.push_back(a);
      }
      eps = std::max(eps, connectivity_threshold(d, items));
    }
  }
  r.nerve = proximity_nerve(d, eps);
  r.component_fibers.assign(r.nerve.components, {});
  for (std::size_t a = 0; a < n; ++a) {
    if (const auto f = attached_fiber(r.level[a])) r.component_fibers[r.nerve.component_of[a]].push_back(*f);
  }
  for (auto& v : r.component_fibers) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return r;
}

namespace {

struct Dijkstra {
  std::vector<double> dist;
  std::vector<std::size_t> prev;
};

Dijkstra run_dijkstra(const PsiHyperspace& h, std::size_t source, bool filament_only) {
  const std::size_t n = h.elements.size();
  Dijkstra out{std::vector<double>(n, std::numeric_limits<double>::infinity()), std::vector<std::size_t>(n, n)};
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  out.dist[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > out.dist[u]) continue;
    auto relax = [&](std::size_t v) {
      if (filament_only && !h.elements[v].is_piece()) return;
      const double nd = d + std::abs(h.values[v] - h.values[u]);
      if (nd < out.dist[v]) {
        out.dist[v] = nd;
        out.prev[v] = u;
        queue.push({nd, v});
      }
    };
    for (std::size_t v : h.covers_up[u]) relax(v);
    for (std::size_t v : h.covers_down[u]) relax(v);
  }
  return out;
}

}  // namespace

std::vector<double> order_arc_distances(const PsiHyperspace& h, std::size_t p, bool filament_only) {
  if (p >= h.elements.size()) throw DomainError("element index out of range");
  return run_dijkstra(h, p, filament_only).dist;
}

OrderArcPath order_arc_path(const PsiHyperspace& h, std::size_t p, std::size_t q) {
  const std::size_t n = h.elements.size();
  if (p >= n || q >= n) throw DomainError("element index out of range");
  OrderArcPath out;
  if (p == q) return out;
  const Dijkstra dj = run_dijkstra(h, p, false);
  for (std::size_t v = q; v != n; v = dj.prev[v]) {
    out.nodes.push_back(v);
    if (v == p) break;
  }
  std::reverse(out.nodes.begin(), out.nodes.end());
  out.length = dj.dist[q];
  std::vector<std::size_t> seg{out.nodes.front()};
  int dir = 0;
  for (std::size_t s = 1; s < out.nodes.size(); ++s) {
    const int d = h.values[out.nodes[s]] > h.values[out.nodes[s - 1]] ? 1 : -1;
    if (dir != 0 && d != dir) {
      out.segments.push_back(seg);
      seg = {out.nodes[s - 1]};
    }
    dir = d;
    seg.push_back(out.nodes[s]);
  }
  out.segments.push_back(seg);
  out.contains_ample = std::any_of(out.nodes.begin(), out.nodes.end(),
                                   [&](std::size_t v) { return !h.elements[v].is_piece(); });
  return out;
}

CurvatureReport curvature_check(const PsiHyperspace& h, std::size_t trials, std::uint64_t seed) {
  CurvatureReport r;
  const std::size_t n = h.elements.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::map<std::size_t, std::vector<double>> cache;
  auto dist = [&](std::size_t a, std::size_t b) {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, order_arc_distances(h, a)).first;
    return it->second[b];
  };
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t a = pick(rng);
    const std::size_t c = pick(rng);
    std::size_t b = pick(rng);
    // Every other trial draws the middle point from a geodesic between the ends.
    if (trial % 2 == 1) {
      const auto path = order_arc_path(h, a, c);
      if (!path.nodes.empty()) {
        std::uniform_int_distribution<std::size_t> along(0, path.nodes.size() - 1);
        b = path.nodes[along(rng)];
      }
    }
    ++r.trials;
    const std::array<std::size_t, 3> tri{a, b, c};
    bool compatible = false;
    bool additive = true;
    for (int mid = 0; mid < 3; ++mid) {
      const std::size_t x = tri[(mid + 1) % 3];
      const std::size_t y = tri[mid];
      const std::size_t z = tri[(mid + 2) % 3];
      const auto path = order_arc_path(h, x, z);
      const bool on_path = x == y || z == y || std::find(path.nodes.begin(), path.nodes.end(), y) != path.nodes.end();
      if (!on_path) continue;
      compatible = true;
      const double defect = std::abs(dist(x, y) + dist(y, z) - dist(x, z));
      r.worst_defect = std::max(r.worst_defect, defect);
      if (defect > kTolerance) additive = false;
    }
    if (compatible) {
      ++r.compatible;
      if (additive) ++r.additive;
    } else {
      ++r.non_degenerate;
    }
  }
  return r;
}

std::vector<Point2> ample_disk_points(const PsiHyperspace& h) {
  std::vector<Point2> out;
  const double m = static_cast<double>(h.model.m);
  for (const auto& el : h.elements) {
    if (el.is_piece()) continue;
    const double alpha = 2.0 * std::numbers::pi * static_cast<double>(el.fiber) / m;
    out.push_back(disk_map(alpha, alpha + 2.0 * std::numbers::pi * static_cast<double>(el.edges) / m));
  }
  return out;
}

nlohmann::json psi_model_to_json(const PsiModel& model) {
  auto fibers = nlohmann::json::array();
  for (const auto& f : model.fibers) {
    fibers.push_back({{"links", f.links}, {"pattern", f.pattern}, {"crooked", f.crooked}, {"points", f.points}});
  }
  return {{"m", model.m},
          {"level", model.level},
          {"links_per_fiber", model.links_per_fiber()},
          {"points", model.points},
          {"bridges", model.bridges},
          {"fibers", std::move(fibers)}};
}

nlohmann::json psi_element_to_json(const PsiHyperspace& h, std::size_t e) {
  const auto& el = h.elements.at(e);
  nlohmann::json j{{"id", e}, {"value", h.values[e]}};
  const auto cls = classify_element(h, e);
  j["class"] = cls.cls == ElementClass::filament ? "filament" : "ample";
  if (el.is_piece()) {
    j["type"] = "piece";
    j["fiber"] = el.fiber;
    j["interval"] = {el.first, el.last};
  } else {
    j["type"] = el.is_full_fiber() ? "fiber" : (el.is_whole(h.model.m) ? "whole" : "base_union");
    j["arc_start"] = el.fiber;
    j["edges"] = el.edges;
    j["minimal"] = cls.minimal;
  }
  return j;
}

nlohmann::json psi_hyperspace_to_json(const PsiHyperspace& h) {
  auto elements = nlohmann::json::array();
  for (std::size_t e = 0; e < h.elements.size(); ++e) elements.push_back(psi_element_to_json(h, e));
  std::size_t filament = 0;
  for (const auto& el : h.elements) filament += el.is_piece() ? 1 : 0;
  return {{"normalized", h.normalized},
          {"count", h.elements.size()},
          {"filament", filament},
          {"ample", h.elements.size() - filament},
          {"top", h.top()},
          {"elements", std::move(elements)}};
}

void to_json(nlohmann::json& j, const PlanckData& p) {
  j = {{"l", p.l}, {"L", p.L}, {"boundary", p.boundary}, {"boundary_size", p.boundary.size()}};
}

void to_json(nlohmann::json& j, const LevelReport& r) {
  j = {{"t", r.t},
       {"level", r.level},
       {"size", r.level.size()},
       {"inside_filament", r.inside_filament},
       {"inside_ample", r.inside_ample},
       {"nerve", r.nerve},
       {"component_fibers", r.component_fibers}};
}

void to_json(nlohmann::json& j, const OrderArcPath& p) {
  j = {{"nodes", p.nodes}, {"segments", p.segments}, {"length", p.length}, {"contains_ample", p.contains_ample}};
}

void to_json(nlohmann::json& j, const CurvatureReport& r) {
  j = {{"pass", r.pass()},         {"trials", r.trials},
       {"compatible", r.compatible}, {"additive", r.additive},
       {"non_degenerate", r.non_degenerate}, {"worst_defect", r.worst_defect}};
}

void to_json(nlohmann::json& j, const PsiAxiomReport& r) {
  j = {{"pass", r.pass()},
       {"a", {{"checked", r.checked_a}, {"violations", r.violations_a}}},
       {"b", {{"checked", r.checked_b}, {"violations", r.violations_b}}},
       {"c", {{"checked", r.checked_c}, {"violations", r.violations_c}}}};
}

}  // namespace continuum_lab
