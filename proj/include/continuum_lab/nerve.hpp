#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

namespace continuum_lab {

// Proximity graph on n items: i ~ j iff dist[i][j] <= eps (within 1e-12).
struct NerveSummary {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t triangles = 0;
  std::size_t components = 0;
  // First Betti number of the clique complex over GF(2).
  std::size_t betti1 = 0;
  double eps = 0.0;
  std::vector<std::size_t> component_of;

  bool cyclic() const { return components == 1 && betti1 == 1; }
};

NerveSummary proximity_nerve(const std::vector<std::vector<double>>& dist, double eps);

// Smallest eps making the proximity graph on the chosen items connected (the
// longest edge of a minimum spanning tree); 0 for fewer than two items.
double connectivity_threshold(const std::vector<std::vector<double>>& dist, std::span<const std::size_t> items);

void to_json(nlohmann::json& j, const NerveSummary& s);

}  // namespace continuum_lab
