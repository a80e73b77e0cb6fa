#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "polyroot/blackbox.hpp"
#include "polyroot/regions.hpp"
#include "polyroot/report.hpp"

namespace polyroot {

struct SubdivisionConfig {
  Real epsilon = 1e-12;
  int q0 = 16;                  // samples per exclusion test (raised for large d)
  Real newton_threshold = 4;    // component isolation that triggers Newton
  int population_factor = 8;    // suspect squares may not exceed this times d
  int max_levels = 200;
  bool annuli_skip = true;      // discard squares missing the annuli cover
  bool cauchy_skip = true;      // keep squares with a close Cauchy root bound
  bool newton = true;
  bool deflate_missing = true;
  int threads = 1;              // 0: hardware concurrency
  std::uint64_t seed = kDefaultSeed;
  std::ostream* trace = nullptr;  // JSON lines, one per level
};

Square initial_square(const BlackBoxPoly& p);

std::vector<Square> subdivide(const Square& s);

enum class SkipDecision { Discard, SuspectWithoutTest, NeedsTest };

// Cheap pre-tests before an exclusion test. annuli may be empty.
SkipDecision skip_exclusion(const BlackBoxPoly& p, const Square& s,
                            const std::vector<Annulus>& annuli,
                            const SubdivisionConfig& cfg);

// Squares of one level, indexed on the level's grid.
struct GridSquare {
  Square square;
  long long i = 0;
  long long j = 0;
};

struct Component {
  std::vector<GridSquare> squares;
  Disc cover() const;
};

// 8-connected components.
std::vector<Component> components(const std::vector<GridSquare>& squares);

// Distance from this component's cover to the nearest other cover, in units
// of this cover's radius.
Real component_isolation(const Component& c, const std::vector<Component>& all);

struct NewtonOutcome {
  bool converged = false;
  Complex root;
  Real radius = 0;
  NewtonTrace trace;
};

// x <- x - m p/p' from the cover center, staying inside D(center, reach).
// Accepted once the step drops below epsilon/4 and a count on a small disc
// around the limit returns m; rejected after three growing steps or 64
// iterations.
NewtonOutcome newton_accelerate(const BlackBoxPoly& p, Complex start, Real reach,
                                int m, const SubdivisionConfig& cfg);

RootReport solve(const BlackBoxPoly& p, std::optional<Disc> region = std::nullopt,
                 const SubdivisionConfig& cfg = {});

}  // namespace polyroot
