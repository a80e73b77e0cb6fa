#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyroot/scalar.hpp"

namespace polyroot {

enum class RootMethod { Subdivision, Newton, Ehrlich, Secular, Deflated, Segment };

std::string to_string(RootMethod m);

struct RootApprox {
  Complex approx;
  Real radius = 0;
  int multiplicity = 1;
  RootMethod method = RootMethod::Subdivision;
};

struct SolveStats {
  std::uint64_t evaluations = 0;
  std::uint64_t exclusions_run = 0;
  std::uint64_t exclusions_skipped = 0;
  double wall_ms = 0;
  int levels = 0;
  int sweeps = 0;
  int max_population = 0;
  int newton_attempts = 0;
  int newton_rejections = 0;
};

// Newton iterates for one component, starting at the cover center.
struct NewtonTrace {
  int multiplicity = 1;
  bool converged = false;
  std::vector<Complex> iterates;
};

struct RootReport {
  std::vector<RootApprox> roots;
  SolveStats stats;
  int expected_count = 0;         // roots the region should hold
  int residual_roots_missing = 0;
  bool partial = false;
  std::vector<int> population;    // suspect squares per level
  std::vector<NewtonTrace> newton_traces;

  int found() const {
    int n = 0;
    for (const auto& r : roots) n += r.multiplicity;
    return n;
  }
};

}  // namespace polyroot
