#pragma once

#include <string>

#include "continuum_lab/chain_realization.hpp"
#include "continuum_lab/continua.hpp"
#include "continuum_lab/psi_model.hpp"

namespace continuum_lab {

// One path element per link boundary; coarser levels are stroked lighter.
std::string tower_svg(const ChainTower& tower);
std::string chains_svg(const std::vector<Chain>& levels);
std::string continuum_svg(const GraphContinuum& g);
// Triangle (interval) or disk (circle) image of sampled subcontinua.
std::string hyperspace_svg(ContinuumKind kind, std::size_t samples);
// Ample disk, Planck ring of fibers and the filament fans below it.
std::string psi_svg(const PsiHyperspace& h);

}  // namespace continuum_lab
