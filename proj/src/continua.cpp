#include "continuum_lab/continua.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numbers>
#include <unordered_set>

#include "continuum_lab/errors.hpp"

namespace continuum_lab {

std::string to_string(ContinuumKind k) {
  switch (k) {
    case ContinuumKind::interval: return "interval";
    case ContinuumKind::cycle: return "cycle";
    case ContinuumKind::cantor_fan: return "cantor_fan";
    case ContinuumKind::star: return "star";
    case ContinuumKind::chain_nerve: return "chain_nerve";
    case ContinuumKind::custom: return "custom";
  }
  return "custom";
}

ContinuumKind continuum_kind_from_string(const std::string& s) {
  if (s == "interval" || s == "path") return ContinuumKind::interval;
  if (s == "cycle" || s == "circle") return ContinuumKind::cycle;
  if (s == "cantor_fan" || s == "fan") return ContinuumKind::cantor_fan;
  if (s == "star" || s == "triod") return ContinuumKind::star;
  if (s == "chain_nerve") return ContinuumKind::chain_nerve;
  if (s == "custom") return ContinuumKind::custom;
  throw DomainError("unknown continuum kind '" + s + "'");
}

GraphContinuum::GraphContinuum(ContinuumKind kind, std::vector<Point2> vertices,
                               std::vector<std::pair<std::size_t, std::size_t>> edges)
    : kind_(kind),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      metric_(FiniteMetricSpace::from_points(vertices_)) {
  const std::size_t n = vertices_.size();
  adjacency_.resize(n);
  for (const auto& [a, b] : edges_) {
    if (a >= n || b >= n) throw DomainError("edge refers to a missing vertex");
    if (a == b) throw DomainError("self-loops are not allowed");
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (vertices_[i] == vertices_[j]) throw DomainError("embedding is not injective");
    }
  }
  if (!is_connected(VertexSet::full(n))) throw DomainError("graph is not connected");
}

bool GraphContinuum::is_connected(const VertexSet& s) const {
  if (s.empty()) return false;
  VertexSet seen(size());
  std::vector<std::size_t> stack{s.first()};
  seen.insert(s.first());
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adjacency_[v]) {
      if (s.contains(w) && !seen.contains(w)) {
        seen.insert(w);
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == s.count();
}

std::vector<std::size_t> GraphContinuum::bfs_order() const {
  std::vector<std::size_t> order;
  std::vector<bool> seen(size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (std::size_t w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return order;
}

GraphContinuum build_continuum(ContinuumKind kind, std::size_t size) {
  if (size == 0) throw DomainError("size parameter must be positive");
  std::vector<Point2> v;
  std::vector<std::pair<std::size_t, std::size_t>> e;
  const double n = static_cast<double>(size);
  switch (kind) {
    case ContinuumKind::interval:
      for (std::size_t i = 0; i <= size; ++i) v.push_back({static_cast<double>(i) / n, 0.0});
      for (std::size_t i = 0; i < size; ++i) e.emplace_back(i, i + 1);
      break;
    case ContinuumKind::cycle:
      if (size < 3) throw DomainError("a cycle needs at least 3 vertices");
      for (std::size_t i = 0; i < size; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / n;
        v.push_back({std::cos(t), std::sin(t)});
      }
      for (std::size_t i = 0; i < size; ++i) e.emplace_back(i, (i + 1) % size);
      break;
    case ContinuumKind::cantor_fan: {
      if (size > 12) throw ResourceError("Cantor fan depth above 12 is not supported", 12);
      const Point2 apex{0.5, 1.0};
      v.push_back(apex);
      const double width = std::pow(3.0, -n);
      const std::size_t rays = std::size_t{1} << size;
      for (std::size_t r = 0; r < rays; ++r) {
        // Left end of the depth-`size` Cantor interval whose ternary digits are 2*bits(r).
        double left = 0.0;
        for (std::size_t d = 0; d < size; ++d) {
          if ((r >> (size - 1 - d)) & 1U) left += 2.0 * std::pow(3.0, -static_cast<double>(d + 1));
        }
        const Point2 end{left + 0.5 * width, 0.0};
        std::size_t prev = 0;
        for (std::size_t s = 1; s <= size + 1; ++s) {
          const double t = static_cast<double>(s) / (n + 1.0);
          v.push_back({apex.x + t * (end.x - apex.x), apex.y + t * (end.y - apex.y)});
          e.emplace_back(prev, v.size() - 1);
          prev = v.size() - 1;
        }
      }
      break;
    }
    case ContinuumKind::star: {
      v.push_back({0.0, 0.0});
      for (int leg = 0; leg < 3; ++leg) {
        const double t = 2.0 * std::numbers::pi * leg / 3.0 + std::numbers::pi / 2.0;
        std::size_t prev = 0;
        for (std::size_t s = 1; s <= size; ++s) {
          const double r = static_cast<double>(s) / n;
          v.push_back({r * std::cos(t), r * std::sin(t)});
          e.emplace_back(prev, v.size() - 1);
          prev = v.size() - 1;
        }
      }
      break;
    }
    case ContinuumKind::chain_nerve:
      for (std::size_t i = 0; i < size; ++i) {
        v.push_back({size == 1 ? 0.0 : static_cast<double>(i) / (n - 1.0), 0.0});
      }
      for (std::size_t i = 0; i + 1 < size; ++i) e.emplace_back(i, i + 1);
      break;
    case ContinuumKind::custom:
      throw DomainError("custom continua are read from JSON");
  }
  return GraphContinuum(kind, std::move(v), std::move(e));
}

GraphContinuum chain_nerve(const Chain& chain) {
  std::vector<Point2> v;
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (const auto& link : chain.links) {
    Point2 sum{0.0, 0.0};
    for (const auto& c : link.cells) {
      const Point2 p = chain.frame.center(c);
      sum.x += p.x;
      sum.y += p.y;
    }
    const double k = static_cast<double>(std::max<std::size_t>(1, link.cells.size()));
    v.push_back({sum.x / k, sum.y / k});
  }
  for (std::size_t i = 0; i + 1 < chain.links.size(); ++i) e.emplace_back(i, i + 1);
  return GraphContinuum(ContinuumKind::chain_nerve, std::move(v), std::move(e));
}

ContainmentPoset::ContainmentPoset(std::vector<VertexSet> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end(), canonical_less);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i], i).second) throw DomainError("duplicate element in family");
  }
  up_.resize(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const VertexSet& e = elements_[i];
    for (std::size_t v = 0; v < e.universe(); ++v) {
      if (e.contains(v)) continue;
      VertexSet bigger = e;
      bigger.insert(v);
      if (auto j = find(bigger)) up_[i].push_back(*j);
    }
  }
}

std::optional<std::size_t> ContainmentPoset::find(const VertexSet& s) const {
  const auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool ContainmentPoset::strictly_below(std::size_t i, std::size_t j) const {
  return i != j && elements_[i].is_subset_of(elements_[j]);
}

std::vector<std::pair<std::size_t, std::size_t>> ContainmentPoset::relation() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (strictly_below(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t element_limit() {
  if (const char* env = std::getenv("CONTINUUM_LAB_MAX_ELEMENTS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 200'000;
}

ContainmentPoset enumerate_subcontinua(const GraphContinuum& g, std::optional<std::size_t> size_cap) {
  const std::size_t n = g.size();
  const std::size_t cap = size_cap.value_or(n);
  const std::size_t limit = element_limit();
  std::unordered_set<VertexSet, VertexSetHash> all;
  std::vector<VertexSet> frontier;
  for (std::size_t v = 0; v < n; ++v) frontier.emplace_back(n, std::initializer_list<std::size_t>{v});
  for (std::size_t size = 1; size <= cap && !frontier.empty(); ++size) {
    std::unordered_set<VertexSet, VertexSetHash> next;
    for (const auto& s : frontier) {
      all.insert(s);
      if (all.size() > limit) {
        throw ResourceError("subcontinuum enumeration exceeds the element limit of " + std::to_string(limit) +
                                " (CONTINUUM_LAB_MAX_ELEMENTS)",
                            limit);
      }
      if (size == cap) continue;
      s.for_each([&](std::size_t v) {
        for (std::size_t w : g.neighbors(v)) {
          if (!s.contains(w)) {
            VertexSet t = s;
            t.insert(w);
            next.insert(std::move(t));
          }
        }
      });
    }
    frontier.assign(next.begin(), next.end());
  }
  return ContainmentPoset(std::vector<VertexSet>(all.begin(), all.end()));
}

std::vector<VertexSet> brute_force_subcontinua(const GraphContinuum& g) {
  const std::size_t n = g.size();
  if (n > 20) throw ResourceError("brute-force enumeration is limited to 20 vertices", 20);
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet s(n);
    for (std::size_t v = 0; v < n; ++v) {
      if ((mask >> v) & 1U) s.insert(v);
    }
    if (g.is_connected(s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<OrderArc> order_arcs_between(const GraphContinuum& g, const VertexSet& a, const VertexSet& b,
                                         std::size_t max_arcs) {
  if (a.universe() != g.size() || b.universe() != g.size()) {
    throw DomainError("order-arc endpoints are drawn from a different continuum");
  }
  if (!g.is_connected(a) || !g.is_connected(b)) throw DomainError("order-arc endpoints must be subcontinua");
  if (!a.is_subset_of(b)) throw DomainError("order-arcs need the start contained in the end");
  std::vector<OrderArc> out;
  OrderArc current{a};
  auto grow = [&](auto&& self) -> void {
    const VertexSet top = current.back();
    if (top == b) {
      if (out.size() >= max_arcs) {
        throw ResourceError("more than " + std::to_string(max_arcs) + " order-arcs", max_arcs);
      }
      out.push_back(current);
      return;
    }
    const VertexSet rest = b - top;
    rest.for_each([&](std::size_t v) {
      const auto& adj = g.neighbors(v);
      if (std::none_of(adj.begin(), adj.end(), [&](std::size_t w) { return top.contains(w); })) return;
      VertexSet next = current.back();
      next.insert(v);
      current.push_back(std::move(next));
      self(self);
      current.pop_back();
    });
  };
  grow(grow);
  return out;
}

std::vector<OrderArc> maximal_order_arcs(const GraphContinuum& g, std::size_t max_arcs) {
  std::vector<OrderArc> out;
  const VertexSet whole = VertexSet::full(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto arcs = order_arcs_between(g, VertexSet(g.size(), {v}), whole, max_arcs - out.size());
    for (auto& a : arcs) out.push_back(std::move(a));
  }
  return out;
}

Point2 triangle_map(double a, double b) {
  if (!(a >= 0.0 && a <= b && b <= 1.0)) throw DomainError("triangle map needs 0 <= a <= b <= 1");
  return {(a + b) / 2.0, b - a};
}

std::pair<double, double> triangle_inverse(Point2 p) {
  if (!(p.y >= 0.0 && p.x - p.y / 2.0 >= -kTolerance && p.x + p.y / 2.0 <= 1.0 + kTolerance)) {
    throw DomainError("point lies outside the triangle");
  }
  return {p.x - p.y / 2.0, p.x + p.y / 2.0};
}

Point2 disk_map(double alpha, double beta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double len = beta - alpha;
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !(len >= -kTolerance && len <= two_pi + kTolerance)) {
    throw DomainError("disk map needs 0 <= beta - alpha <= 2 pi");
  }
  const double r = std::clamp(1.0 - len / two_pi, 0.0, 1.0);
  const double mid = (alpha + beta) / 2.0;
  return {r * std::cos(mid), r * std::sin(mid)};
}

std::pair<double, double> disk_inverse(Point2 p) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double r = std::hypot(p.x, p.y);
  if (r > 1.0 + kTolerance) throw DomainError("point lies outside the unit disk");
  if (r == 0.0) return {0.0, two_pi};
  const double len = two_pi * (1.0 - std::min(r, 1.0));
  double alpha = std::atan2(p.y, p.x) - len / 2.0;
  alpha = std::fmod(alpha, two_pi);
  if (alpha < 0.0) alpha += two_pi;
  if (alpha >= two_pi) alpha -= two_pi;
  return {alpha, alpha + len};
}

TerminalResult is_terminal(const VertexSet& k, std::span<const VertexSet> family) {
  if (std::find(family.begin(), family.end(), k) == family.end()) {
    throw DomainError("element is not in the family");
  }
  for (const auto& l : family) {
    if (l.intersects(k) && !k.is_subset_of(l) && !l.is_subset_of(k)) return {false, l};
  }
  return {true, std::nullopt};
}

bool is_atomic(std::span<const VertexSet> point_inverses, std::span<const VertexSet> family) {
  return std::all_of(point_inverses.begin(), point_inverses.end(),
                     [&](const VertexSet& f) { return is_terminal(f, family).terminal; });
}

std::optional<Triod> detect_triod(const ContainmentPoset& poset, std::size_t budget) {
  std::size_t spent = 0;
  auto charge = [&] {
    if (++spent > budget) {
      throw ResourceError("triod search exceeded its budget of " + std::to_string(budget) + " steps", budget);
    }
  };
  for (std::size_t k = 0; k < poset.size(); ++k) {
    const VertexSet& core = poset[k];
    std::vector<std::size_t> above;
    for (std::size_t i = 0; i < poset.size(); ++i) {
      if (poset.strictly_below(k, i)) above.push_back(i);
    }
    for (std::size_t x = 0; x < above.size(); ++x) {
      for (std::size_t y = x + 1; y < above.size(); ++y) {
        charge();
        if (!((poset[above[x]] & poset[above[y]]) == core)) continue;
        for (std::size_t z = y + 1; z < above.size(); ++z) {
          charge();
          if ((poset[above[x]] & poset[above[z]]) == core && (poset[above[y]] & poset[above[z]]) == core) {
            return Triod{poset[above[x]], poset[above[y]], poset[above[z]], core};
          }
        }
      }
    }
  }
  return std::nullopt;
}

ElementClass classify_cantor_fan(const GraphContinuum& fan, const VertexSet& s) {
  if (fan.kind() != ContinuumKind::cantor_fan) throw DomainError("rule applies to the Cantor fan only");
  if (!fan.is_connected(s)) throw DomainError("not a subcontinuum");
  return s.contains(0) ? ElementClass::ample : ElementClass::filament;
}

void to_json(nlohmann::json& j, const GraphContinuum& g) {
  auto edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  j = {{"kind", to_string(g.kind())}, {"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

GraphContinuum graph_from_json(const nlohmann::json& j) {
  const auto kind = j.contains("kind") ? continuum_kind_from_string(j.at("kind").get<std::string>())
                                       : ContinuumKind::custom;
  auto vertices = j.at("vertices").get<std::vector<Point2>>();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  return GraphContinuum(kind, std::move(vertices), std::move(edges));
}

nlohmann::json poset_to_json(const ContainmentPoset& p) {
  auto elements = nlohmann::json::array();
  auto covers = nlohmann::json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    elements.push_back(p[i].members());
    covers.push_back(p.covers(i));
  }
  return {{"count", p.size()}, {"elements", std::move(elements)}, {"covers", std::move(covers)}};
}

}  // namespace continuum_lab
