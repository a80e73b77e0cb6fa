#pragma once

#include <optional>
#include <span>
#include <vector>

#include "polyroot/blackbox.hpp"

namespace polyroot {

enum class DeflationMethod { PowerSum, EvalInterp, Laser };

struct Deflation {
  Poly factor;  // monic, degree w
  DeflationMethod method = DeflationMethod::PowerSum;
  std::optional<Real> residual;
  Real precision_loss_bits = 0;  // power-sum method only
  // Laser: the raw Taylor section p mod (x - c)^(w+1), expanded in x; the
  // result is only meaningful for a strongly isolated cluster at c.
  std::optional<Poly> section;
  bool needs_strong_isolation = false;
};

// Wild factor of degree w from the power sums of all roots minus those of
// the tame roots. Fails when more than `max_loss_bits` are cancelled.
Deflation deflate_powersum(const BlackBoxPoly& p, std::span<const Complex> tame,
                           int w, Real max_loss_bits = 40);

// Wild factor by interpolating p / prod(x - tame) at K > w points on the
// circle of radius R.
Deflation deflate_evalinterp(const BlackBoxPoly& p, std::span<const Complex> tame,
                             int w, Real R = 1);

// Taylor section of p at c. With w unset the order is the first derivative
// that does not nearly vanish at c.
Deflation deflate_laser(const BlackBoxPoly& p, Complex c,
                        std::optional<int> w = std::nullopt, Real tol = 1e-10);

// Every root y of the factor has Cauchy inclusion radius d|p(y)/p'(y)| <= tol.
bool verify_by_roots(const BlackBoxPoly& p, const Poly& factor, Real tol);

struct Modulus {
  enum Kind { XPowK, OneMinusXPowK } kind = XPowK;
  int k = 0;
};

struct ModularCheck {
  bool passed = false;
  bool inconclusive = false;
  bool heuristic_threshold = false;
  bool extended = false;  // x^k lengthened to deg q + 1 when the given moduli did not certify
  Real residual = kInf;   // |f q - p|_1 / |p|_1
  Real threshold = 0;
};

// Checks factor | p by rebuilding the cofactor q from its images modulo the
// given moduli: low coefficients from x^k, high ones from the reverse
// polynomials modulo x^k, values at k-th roots of unity from 1 - x^k. Each
// way of assembling q is tried and the smallest |f q - p| / |p| is compared
// with the threshold. An empty list uses k = 2w + a, a in {0, 1, 2}, for
// both kinds.
ModularCheck verify_modular(const Poly& p, const Poly& factor,
                            std::span<const Modulus> moduli, Real eps);

enum class DivisionMethod { Coefficient, EvalInterp, ModReduce };

struct Division {
  Poly quotient;
  Poly remainder;
  std::optional<Real> residual;  // |p - (q v + r)|_1 / |p|_1
};

Division divide(const BlackBoxPoly& p, const Poly& v, DivisionMethod method);

// Remainder of p modulo prod (x - y_j): the interpolant of p at the points.
Poly mod_reduce(const BlackBoxPoly& p, std::span<const Complex> points);

// Interpolating polynomial through (x_j, y_j) in the monomial basis.
Poly interpolate(std::span<const Complex> x, std::span<const Complex> y);

struct RefinementState {
  std::vector<Poly> factors;   // monic
  std::vector<Poly> h;         // h_j with deg h_j < deg f_j; empty to initialize
  std::vector<Real> delta;     // |p - prod f_j| / |p| per iteration
  std::vector<Real> sigma;     // |1 - sum h_j prod_{i != j} f_i|
};

// Newton-type refinement of a factorization p ~ prod f_j.
RefinementState refine_factorization(const Poly& p, RefinementState state,
                                     int iterations);

bool deflation_policy(int component_degree, int total_degree, Real nu = 2,
                      int cap = 64);

}  // namespace polyroot
