#pragma once

#include <optional>
#include <vector>

#include "polyroot/blackbox.hpp"
#include "polyroot/regions.hpp"

namespace polyroot {

enum class Certainty { Certified, Heuristic };

struct RootCount {
  int count = 0;
  Certainty certainty = Certainty::Heuristic;
  Real error_bound = kInf;  // bound on |s_0* - count| when certified
  int q_used = 0;
  Complex s0;
};

struct CountOptions {
  std::optional<Real> theta;  // assumed isolation; certified count when given
  int q0 = 16;
  int qmax = 0;               // 0 picks 4 * next_pow2(d), at least 64
  bool rotate = false;
  std::uint64_t seed = kDefaultSeed;
};

// Number of roots in the disc from s_0*. With theta, q is raised to
// log_theta(2d+1) and the result certified when the error bound is below
// 1/4. Without, q doubles until two successive estimates agree.
RootCount count_roots(const BlackBoxPoly& p, const Disc& disc,
                      const CountOptions& opt = {});

struct ExclusionMode {
  enum Kind { Probabilistic, Deterministic } kind = Probabilistic;
  std::vector<int> h_list{0, 1};
  int q = 0;  // 0 picks a default from the degree
};

struct ExclusionVerdict {
  bool excluded = false;
  bool root_on_contour = false;
  std::vector<int> tested_h;
  Real max_abs_s = 0;  // max |s_h*| / rho^h over tested h
  int q = 0;
  ExclusionMode::Kind mode = ExclusionMode::Probabilistic;
};

// "No roots in the disc" when |s_h*| <= tol rho^h for every tested h. The
// deterministic mode takes q >= d and all h < q.
ExclusionVerdict exclusion_test(const BlackBoxPoly& p, const Disc& disc,
                                const ExclusionMode& mode = {},
                                Real tol = 0.25, bool rotate = false,
                                std::uint64_t seed = kDefaultSeed);

int default_exclusion_q(int d);

// Exclusion with q doubling from the mode's q up to qmax: excluded as soon
// as one q excludes.
ExclusionVerdict exclusion_test_adaptive(const BlackBoxPoly& p, const Disc& disc,
                                         int qmax, Real tol = 0.25,
                                         bool rotate = false,
                                         std::uint64_t seed = kDefaultSeed);

struct Bracket {
  Real lo = 0;
  Real hi = 0;
};

struct ProximityOptions {
  int bisection_steps = 6;
  int qmax = 1024;
  Real tol = 0.25;
};

// Bracket on the distance from c to the nearest root. D(c, r_minus) must be
// excluded.
Bracket proximity(const BlackBoxPoly& p, Complex c, Real r_minus,
                  const ProximityOptions& opt = {});

// Bracket on the distance from c to the farthest root, through the reverse
// polynomial of p(c + y). Needs coefficients and p(c) != 0.
Bracket max_distance(const Poly& p, Complex c, const ProximityOptions& opt = {});

struct Isolation {
  Real r_minus = 0;      // the roots inside the unit disc lie in D(0, r_minus)
  Real r_plus = kInf;    // the roots outside lie outside D(0, r_plus)
  int inside = 0;
  Real ratio() const { return r_minus > 0 ? r_plus / r_minus : kInf; }
};

// Isolation of the unit circle from Turan bounds on the power sums of the
// roots on either side. theta_floor is the isolation assumed when choosing q.
Isolation estimate_isolation(const BlackBoxPoly& p, int K, Real theta_floor,
                             int d_minus, int d_plus);

}  // namespace polyroot
