#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "continuum_lab/metric_core.hpp"

namespace continuum_lab {

struct GridCell {
  std::int64_t i = 0;
  std::int64_t j = 0;

  auto operator<=>(const GridCell&) const = default;
};

struct GridCellHash {
  std::size_t operator()(const GridCell& c) const noexcept {
    return std::hash<std::int64_t>{}(c.i * 0x1f1f1f1f + c.j);
  }
};

// Square grid in the plane. Cell (i, j) is centered at origin + h*(i*u + j*v)
// with v the counter-clockwise rotation of u.
struct GridFrame {
  Point2 origin{0.0, 0.0};
  Point2 axis_u{1.0, 0.0};
  double cell_size = 1.0;

  Point2 axis_v() const { return {-axis_u.y, axis_u.x}; }
  Point2 center(GridCell c) const;
  std::array<Point2, 4> corners(GridCell c) const;
  // The cell whose closed square contains p (ties resolve to the lower index).
  GridCell locate(Point2 p) const;
};

struct Link {
  std::size_t id = 0;
  std::vector<GridCell> cells;
};

// Links are unions of open grid squares; two links intersect iff they share a cell.
struct Chain {
  GridFrame frame;
  std::vector<Link> links;
  double mesh = 0.0;
};

// Diameter of the union of closed cells.
double link_diameter(const GridFrame& frame, std::span<const GridCell> cells);
Chain make_chain(const GridFrame& frame, std::vector<std::vector<GridCell>> link_cells);
bool link_contains_point(const Chain& chain, std::size_t link, Point2 p);

struct ChainReport {
  bool pass = true;
  double mesh = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> adjacency_violations;
  std::vector<std::size_t> mesh_violations;
};

ChainReport verify_chain(const Chain& chain, double eps);

struct RefinementPattern {
  std::size_t n_coarse = 0;
  std::vector<std::size_t> assignment;  // fine link i lies in coarse link assignment[i]
  std::vector<bool> containment;        // closure(D_i) inside C_{assignment[i]}
};

// Abstract pattern: containment holds by definition.
RefinementPattern abstract_pattern(std::vector<std::size_t> assignment, std::size_t n_coarse);
// Repeats every entry sigma times.
RefinementPattern expand_stays(const RefinementPattern& pattern, std::size_t sigma);

struct CrookedCounterexample {
  std::size_t k = 0, m = 0, i = 0, j = 0;

  bool operator==(const CrookedCounterexample&) const = default;
};

struct CrookedResult {
  bool crooked = true;
  std::optional<CrookedCounterexample> counterexample;
};

// Exhaustive check of condition (2) with strict incidence p(i) = k. Throws
// PreconditionError when condition (1) or adjacency is violated.
CrookedResult is_crooked(const RefinementPattern& pattern, std::size_t n_coarse);

RefinementPattern generate_crooked_pattern(std::size_t n_coarse);
// Length of generate_crooked_pattern(n) without building it; saturates at SIZE_MAX.
std::size_t generated_pattern_length(std::size_t n_coarse);
// Shortest spanning crooked pattern of length at most max_length, by exhaustive
// enumeration of all walks from 0 to n_coarse-1. Ties resolve lexicographically.
std::optional<std::vector<std::size_t>> shortest_crooked_pattern(std::size_t n_coarse,
                                                                 std::size_t max_length);
// Number of maximal monotone runs, ignoring repeated entries.
std::size_t monotone_runs(std::span<const std::size_t> assignment);

void to_json(nlohmann::json& j, const GridCell& c);
void to_json(nlohmann::json& j, const GridFrame& f);
void to_json(nlohmann::json& j, const Chain& c);
void to_json(nlohmann::json& j, const ChainReport& r);
void to_json(nlohmann::json& j, const RefinementPattern& p);
void to_json(nlohmann::json& j, const CrookedResult& r);
void from_json(const nlohmann::json& j, GridCell& c);
void from_json(const nlohmann::json& j, GridFrame& f);
void from_json(const nlohmann::json& j, Chain& c);
void from_json(const nlohmann::json& j, RefinementPattern& p);

}  // namespace continuum_lab
