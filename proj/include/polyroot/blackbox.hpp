#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polyroot/poly.hpp"

namespace polyroot {

enum class PolyKind { Dense, Factored, Mandelbrot, MandelbrotMap, IteratedSquare, Custom };

std::string to_string(PolyKind kind);

// Evaluation backend. log_derivative() returns p'(x)/p(x); backends that can
// form it without the value overflowing override it.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual Evaluation eval(Complex x) const = 0;
  virtual Complex log_derivative(Complex x) const {
    const Evaluation e = eval(x);
    return e.derivative / e.value;
  }
};

// A polynomial known only through an oracle returning p(x) and p'(x).
// Implicitly constructible from a dense Poly, so every routine taking a
// BlackBoxPoly also accepts coefficients. Copies share one evaluation counter.
class BlackBoxPoly {
 public:
  BlackBoxPoly(const Poly& p);  // NOLINT(implicit)

  static BlackBoxPoly factored(std::vector<Complex> roots, Complex lead = 1);
  static BlackBoxPoly mandelbrot(int k);
  static BlackBoxPoly mandelbrot_map(int k);
  static BlackBoxPoly iterated_square(int k);
  static BlackBoxPoly custom(int degree, std::function<Evaluation(Complex)> f,
                             Complex lead = 1, bool sequential_only = false);
  static BlackBoxPoly from_evaluator(std::shared_ptr<const Evaluator> ev,
                                     int degree, Complex lead,
                                     PolyKind kind = PolyKind::Custom);

  int degree() const { return degree_; }
  PolyKind kind() const { return kind_; }
  int family_index() const { return family_k_; }
  Complex leading_coefficient() const { return lead_; }
  bool sequential_only() const { return sequential_only_; }

  Evaluation eval(Complex x) const;
  Complex log_derivative(Complex x) const;

  // Coefficients when they are known exactly enough to be used (dense input,
  // or a factored product whose expansion is finite); nullptr otherwise.
  const Poly* dense() const { return dense_.get(); }
  // Roots of a factored product.
  const std::vector<Complex>* known_roots() const { return roots_.get(); }

  std::uint64_t evaluations() const { return counter_->load(); }
  void add_evaluations(std::uint64_t n) const { counter_->fetch_add(n); }
  void reset_evaluations() const { counter_->store(0); }

  // x^d p(1/x), sharing this polynomial's counter.
  BlackBoxPoly reversed() const;

 private:
  BlackBoxPoly() = default;

  std::shared_ptr<const Evaluator> ev_;
  std::shared_ptr<const Poly> dense_;
  std::shared_ptr<const std::vector<Complex>> roots_;
  std::shared_ptr<std::atomic<std::uint64_t>> counter_;
  int degree_ = 0;
  int family_k_ = 0;
  Complex lead_{1};
  PolyKind kind_ = PolyKind::Dense;
  bool sequential_only_ = false;
};

// p at center + radius * w^g, g = 0..q-1, w = exp(2 pi i/q). Dense input on
// the unit circle with q a power of two goes through one transform of the
// wrapped coefficients.
std::vector<Evaluation> eval_at_roots_of_unity(const BlackBoxPoly& p,
                                               Complex center, Real radius,
                                               int q);

// Approximate Taylor coefficients p~_0..p~_{w-1} of p at c. The first two
// come from the oracle's value and derivative; the rest by divided
// differences with step eps.
std::vector<Complex> trailing_coeffs_blackbox(const BlackBoxPoly& p, Complex c,
                                              int w, Real eps = 1e-4);

}  // namespace polyroot
