#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "continuum_lab/chains.hpp"

namespace continuum_lab {

// A chain realized along a simple 4-connected path of grid cells. Link k is the
// inclusive index range links[k] of the path; consecutive ranges overlap.
struct SnakeChain {
  GridFrame frame;
  std::vector<GridCell> snake;
  std::vector<std::pair<std::size_t, std::size_t>> links;
};

Chain to_chain(const SnakeChain& s);
// Cell centers of each link.
std::vector<std::vector<Point2>> link_point_sets(const Chain& chain);

// Straight row: the first and last links own end_cells private cells, inner
// links own private_cells, neighbours share overlap cells.
SnakeChain straight_snake(std::size_t n_links, std::size_t end_cells, std::size_t overlap,
                          std::size_t private_cells, const GridFrame& frame);

// Canonical layout of an abstract n-link chain: unit-length links along the
// x-axis, resolution cells per unit, overlap of a quarter link.
SnakeChain realize_planar(std::size_t n_links, std::size_t resolution);

struct Refinement {
  SnakeChain fine;
  RefinementPattern pattern;  // containment flags computed on the grid
  std::size_t factor = 0;
};

// Smallest odd subdivision factor that fits one lane per monotone run.
std::size_t required_refinement_factor(std::span<const std::size_t> assignment);

// Realizes the pattern inside the coarse chain on the grid refined by factor.
// Requirements: the pattern starts at link 0, ends at the last link, visits
// those two links only in its first and last blocks, and moves by at most one
// link per step. Throws ResourceError when factor is too small.
Refinement refine_snake(const SnakeChain& coarse, std::span<const std::size_t> assignment,
                        std::size_t factor);

// Parent cell on the grid one refinement step coarser.
GridCell parent_cell(GridCell fine, std::size_t factor);

// d_H between the closures of the two unions, evaluated on fine cell centers.
// fine must be nested in coarse.
double grid_hausdorff(const SnakeChain& coarse, const SnakeChain& fine, std::size_t factor);
// Same quantity by brute-force point-set Hausdorff distance (small inputs only).
double grid_hausdorff_brute(const SnakeChain& coarse, const SnakeChain& fine, std::size_t factor);

struct TowerOptions {
  std::size_t max_levels = 4;
  std::size_t max_links = 4096;
  std::size_t max_cells = 4'000'000;
};

struct TowerLevelDiagnostics {
  std::size_t links = 0;
  double mesh = 0.0;
  double mesh_bound = 0.0;
  bool endpoints_in_end_links = false;
  // Filled for levels after the first.
  std::size_t stay_factor = 0;
  std::size_t refinement_factor = 0;
  bool nested_in_previous = true;
  bool crooked_in_previous = true;
  // d_H(closure of this level's union, closure of the next level's union).
  std::optional<double> hausdorff_to_next;
};

struct ChainTower {
  Point2 x, y;
  std::vector<SnakeChain> realizations;
  std::vector<Chain> levels;
  std::vector<RefinementPattern> patterns;  // patterns[n] maps level n+1 into level n
  std::vector<TowerLevelDiagnostics> diagnostics;
};

ChainTower build_tower(std::size_t n_coarse_initial, std::size_t levels, Point2 x, Point2 y,
                       const TowerOptions& options = {});

void to_json(nlohmann::json& j, const TowerLevelDiagnostics& d);
void to_json(nlohmann::json& j, const ChainTower& t);

}  // namespace continuum_lab
