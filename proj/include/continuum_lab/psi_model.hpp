#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "continuum_lab/chains.hpp"
#include "continuum_lab/continua.hpp"
#include "continuum_lab/metric_core.hpp"
#include "continuum_lab/nerve.hpp"
#include "continuum_lab/whitney.hpp"

namespace continuum_lab {

// One fiber: the chain nerve of the top level of an abstract crooked tower
// that starts with 4 links.
struct PsiFiber {
  std::size_t links = 0;
  RefinementPattern pattern;       // top level inside the level below
  std::vector<std::size_t> runs;   // monotone run index of each link
  bool crooked = false;
  std::vector<std::size_t> points; // model point index of each link
};

// m fibers over a cycle of m base vertices. Fiber alpha sits near angle
// 2 pi alpha / m; each base edge carries one bridge point at the mid angle that
// stands for the fibers over the open edge.
struct PsiModel {
  std::size_t m = 0;
  std::size_t level = 0;
  std::vector<PsiFiber> fibers;
  std::vector<std::size_t> bridges;  // bridges[a] sits on the edge (a, a+1)
  std::vector<Point2> points;
  FiniteMetricSpace space = FiniteMetricSpace::from_points({{0.0, 0.0}});

  std::size_t links_per_fiber() const { return fibers.empty() ? 0 : fibers.front().links; }
  // The quotient map on fibers.
  std::size_t quotient(std::size_t fiber) const { return fiber; }
  GraphContinuum fiber_nerve(std::size_t fiber) const;
};

PsiModel build_psi_model(std::size_t m, std::size_t n);

enum class PsiElementType { piece, base_union };

struct HyperElement {
  PsiElementType type = PsiElementType::piece;
  // piece: fiber index; base_union: first base vertex of the arc.
  std::size_t fiber = 0;
  std::size_t first = 0, last = 0;  // piece link interval
  std::size_t edges = 0;            // base_union arc length in edges; m for the whole
  VertexSet points;

  bool is_full_fiber() const { return type == PsiElementType::base_union && edges == 0; }
  bool is_whole(std::size_t m) const { return type == PsiElementType::base_union && edges == m; }
  bool is_piece() const { return type == PsiElementType::piece; }
};

struct PsiHyperspace {
  PsiModel model;
  std::vector<HyperElement> elements;
  std::vector<double> values;
  std::vector<std::vector<std::size_t>> covers_up, covers_down;
  bool normalized = false;
  std::vector<double> fiber_raw;  // raw value of each full fiber
  double base_scale = 0.0;        // c in l + c * w(arc), normalized only
  std::optional<WhitneyMap> raw_map;
  std::optional<WhitneyMap> base_map;  // normalized only
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> index;

  std::size_t whole() const { return elements.size() - 1; }
  std::size_t full_fiber(std::size_t alpha) const;
  double top() const { return values[whole()]; }
};

PsiHyperspace enumerate_psi_hyperspace(const PsiModel& model);
// Closed-form element count m (k(k+1)/2 - 1) + m (m - 1) + 1 + m.
std::size_t psi_element_count(std::size_t m, std::size_t k);

struct Classification {
  ElementClass cls = ElementClass::filament;
  bool minimal = false;
};

Classification classify_element(const PsiHyperspace& h, std::size_t e);

struct PlanckData {
  double l = 0.0;
  double L = 0.0;
  std::vector<std::size_t> boundary;
};

PlanckData planck_report(const PsiHyperspace& h);

// Pieces of fiber alpha scaled by l / mu(P_alpha); base unions valued
// l + c w(arc) with w a Whitney map on the base circle, c keeping the whole fixed.
PsiHyperspace normalize_to_psi0(const PsiHyperspace& h);

// Value of an arbitrary point set when the structure can represent it: any
// set for the raw model; for the normalized one, sets inside one fiber and
// sets equal to an element.
std::optional<double> psi_value(const PsiHyperspace& h, const VertexSet& s);

struct PsiAxiomReport {
  std::size_t checked_a = 0, checked_b = 0, checked_c = 0;
  std::size_t violations_a = 0, violations_b = 0, violations_c = 0;
  bool pass() const { return violations_a + violations_b + violations_c == 0; }
};

PsiAxiomReport check_psi_axioms(const PsiHyperspace& h);

struct LevelReport {
  double t = 0.0;
  std::vector<std::size_t> level;
  bool inside_filament = false;
  bool inside_ample = false;
  NerveSummary nerve;
  // Fibers met by each nerve component; empty for a component of base unions.
  std::vector<std::vector<std::size_t>> component_fibers;
};

// Nerve of the crossing level at t, elements joined when their d_H is at most
// eps. eps is the smallest value making the level elements attached to each
// fiber connected, or the whole level when it lies in the ample region.
LevelReport level_structure_report(const PsiHyperspace& h, double t);

struct OrderArcPath {
  std::vector<std::size_t> nodes;
  // Each segment is a maximal monotone run, i.e. one order-arc.
  std::vector<std::vector<std::size_t>> segments;
  double length = 0.0;
  bool contains_ample = false;
};

OrderArcPath order_arc_path(const PsiHyperspace& h, std::size_t p, std::size_t q);
// Shortest order-arc distances from p to every element.
std::vector<double> order_arc_distances(const PsiHyperspace& h, std::size_t p, bool filament_only = false);

struct CurvatureReport {
  std::size_t trials = 0;
  std::size_t compatible = 0;
  std::size_t additive = 0;
  std::size_t non_degenerate = 0;
  double worst_defect = 0.0;
  bool pass() const { return compatible == additive; }
};

CurvatureReport curvature_check(const PsiHyperspace& h, std::size_t trials, std::uint64_t seed);

// Images of the base unions in the closed disk.
std::vector<Point2> ample_disk_points(const PsiHyperspace& h);

nlohmann::json psi_model_to_json(const PsiModel& model);
nlohmann::json psi_element_to_json(const PsiHyperspace& h, std::size_t e);
nlohmann::json psi_hyperspace_to_json(const PsiHyperspace& h);
void to_json(nlohmann::json& j, const PlanckData& p);
void to_json(nlohmann::json& j, const LevelReport& r);
void to_json(nlohmann::json& j, const OrderArcPath& p);
void to_json(nlohmann::json& j, const CurvatureReport& r);
void to_json(nlohmann::json& j, const PsiAxiomReport& r);

}  // namespace continuum_lab
