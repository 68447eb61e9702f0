#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "continuum_lab/chains.hpp"
#include "continuum_lab/metric_core.hpp"
#include "continuum_lab/vertex_set.hpp"

namespace continuum_lab {

enum class ContinuumKind { interval, cycle, cantor_fan, star, chain_nerve, custom };

std::string to_string(ContinuumKind k);
ContinuumKind continuum_kind_from_string(const std::string& s);

// A finite connected geometric graph standing in for a continuum.
class GraphContinuum {
 public:
  GraphContinuum(ContinuumKind kind, std::vector<Point2> vertices,
                 std::vector<std::pair<std::size_t, std::size_t>> edges);

  ContinuumKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Point2>& vertices() const noexcept { return vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
  const FiniteMetricSpace& metric() const noexcept { return metric_; }

  // Induced subgraph on s is non-empty and connected.
  bool is_connected(const VertexSet& s) const;
  // Breadth-first order from vertex 0, ties by index.
  std::vector<std::size_t> bfs_order() const;

 private:
  ContinuumKind kind_;
  std::vector<Point2> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  FiniteMetricSpace metric_;
};

// interval: path on size+1 vertices over [0,1]; cycle: size vertices on the
// unit circle; cantor_fan: 2^size rays of size+1 edges from a common vertex;
// star: three legs of size edges; chain_nerve: path on size vertices.
GraphContinuum build_continuum(ContinuumKind kind, std::size_t size);
// Nerve of a realized chain: one vertex per link at the centroid of its cells.
GraphContinuum chain_nerve(const Chain& chain);

// Subcontinua ordered by canonical_less, with one-vertex covers.
class ContainmentPoset {
 public:
  explicit ContainmentPoset(std::vector<VertexSet> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  const VertexSet& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<VertexSet>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> find(const VertexSet& s) const;
  // Immediate successors: elements with exactly one more vertex that contain i.
  const std::vector<std::size_t>& covers(std::size_t i) const { return up_[i]; }
  bool strictly_below(std::size_t i, std::size_t j) const;
  std::vector<std::pair<std::size_t, std::size_t>> relation() const;

 private:
  std::vector<VertexSet> elements_;
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> index_;
  std::vector<std::vector<std::size_t>> up_;
};

// Limit from CONTINUUM_LAB_MAX_ELEMENTS, default 200000.
std::size_t element_limit();

ContainmentPoset enumerate_subcontinua(const GraphContinuum& g,
                                       std::optional<std::size_t> size_cap = std::nullopt);
// Independent check: filters all 2^n vertex subsets by connectivity (n <= 20).
std::vector<VertexSet> brute_force_subcontinua(const GraphContinuum& g);

using OrderArc = std::vector<VertexSet>;

// Every one-vertex growth sequence from a to b through connected sets.
std::vector<OrderArc> order_arcs_between(const GraphContinuum& g, const VertexSet& a, const VertexSet& b,
                                         std::size_t max_arcs = 1'000'000);
// All order-arcs from a singleton to the whole continuum.
std::vector<OrderArc> maximal_order_arcs(const GraphContinuum& g, std::size_t max_arcs = 1'000'000);

// Hyperspace of [0,1] onto the triangle, of the circle onto the disk.
Point2 triangle_map(double a, double b);
std::pair<double, double> triangle_inverse(Point2 p);
// The arc from alpha to beta counter-clockwise, 0 <= beta - alpha <= 2 pi.
Point2 disk_map(double alpha, double beta);
// Returns (alpha, beta) with alpha in [0, 2 pi).
std::pair<double, double> disk_inverse(Point2 p);

struct TerminalResult {
  bool terminal = true;
  std::optional<VertexSet> witness;
};

TerminalResult is_terminal(const VertexSet& k, std::span<const VertexSet> family);
// Every point-inverse is terminal in the family.
bool is_atomic(std::span<const VertexSet> point_inverses, std::span<const VertexSet> family);

struct Triod {
  VertexSet a, b, c, core;
};

std::optional<Triod> detect_triod(const ContainmentPoset& poset, std::size_t budget = 50'000'000);

enum class ElementClass { filament, ample };

// Rule for the Cantor fan: ample iff the set contains the fan's vertex (index 0).
ElementClass classify_cantor_fan(const GraphContinuum& fan, const VertexSet& s);

void to_json(nlohmann::json& j, const GraphContinuum& g);
GraphContinuum graph_from_json(const nlohmann::json& j);
nlohmann::json poset_to_json(const ContainmentPoset& p);

}  // namespace continuum_lab
