#pragma once

#include <optional>
#include <vector>

#include "polyroot/blackbox.hpp"
#include "polyroot/regions.hpp"
#include "polyroot/report.hpp"

namespace polyroot {

struct SimState {
  std::vector<Complex> z;
  std::vector<bool> tame;
  std::vector<Real> last_update;
  std::vector<int> small_updates;  // consecutive sweeps below the tame tolerance
  std::vector<Complex> weights;    // secular weights v_j, filled on first use
  int sweeps = 0;
};

// Starting points: circles through the annuli of a cover, counts per annulus
// and golden-angle phase offsets; without a cover, d equispaced points on
// the circle of radius r1_upper(p).
SimState initialize(const BlackBoxPoly& p,
                    const std::optional<std::vector<Annulus>>& cover = std::nullopt,
                    std::uint64_t seed = kDefaultSeed);

Real tame_tolerance(Complex z, int d, Real epsilon);

// One Jacobi sweep of the Ehrlich (Aberth) iteration over the wild roots.
void ehrlich_step(const BlackBoxPoly& p, SimState& s, Real epsilon);

enum class WeightUpdate {
  Consistent,   // keeps S = -p / (p_d prod (x - z_j)) after the move
  AsDisplayed,  // the printed formula, without the (z_i' - z_i) factor
};

// Secular weights from p: v_j = -p(z_j) / (p_d prod_{i != j} (z_j - z_i)).
std::vector<Complex> classical_weights(const BlackBoxPoly& p,
                                       const std::vector<Complex>& z);

// Newton on the secular equation S(x) = sum v_j/(x - z_j) - 1 for each wild
// root, then the weights are carried to the new nodes without evaluating p.
void secular_step(const BlackBoxPoly& p, SimState& s, Real epsilon,
                  WeightUpdate update = WeightUpdate::Consistent);

enum class SimMethod { Ehrlich, Secular };

struct EhrlichConfig {
  SimMethod method = SimMethod::Ehrlich;
  Real epsilon = 1e-12;
  int max_sweeps = 100;
  std::uint64_t seed = kDefaultSeed;
  WeightUpdate weight_update = WeightUpdate::Consistent;
  bool use_cover = true;
  bool deflate_wild = true;
  int wild_cap = -1;  // -1: max(16, d/50)
};

// Simultaneous iteration until every root is tame or max_sweeps. Close
// approximations are merged into clusters confirmed by a root count; roots
// still wild at the end are recovered by deflation when few enough.
RootReport solve_all(const BlackBoxPoly& p, const EhrlichConfig& cfg = {});

}  // namespace polyroot
