#include "polyroot/blackbox.hpp"

#include <cmath>

#include "polyroot/dft.hpp"
#include "polyroot/error.hpp"

namespace polyroot {

std::string to_string(PolyKind kind) {
  switch (kind) {
    case PolyKind::Dense: return "dense";
    case PolyKind::Factored: return "factored";
    case PolyKind::Mandelbrot: return "mandelbrot";
    case PolyKind::MandelbrotMap: return "mandelbrot-map";
    case PolyKind::IteratedSquare: return "iterated-square";
    case PolyKind::Custom: return "custom";
  }
  return "unknown";
}

namespace {

class DenseEvaluator final : public Evaluator {
 public:
  explicit DenseEvaluator(std::shared_ptr<const Poly> p) : p_(std::move(p)) {}
  Evaluation eval(Complex x) const override { return eval_horner(*p_, x); }

 private:
  std::shared_ptr<const Poly> p_;
};

class FactoredEvaluator final : public Evaluator {
 public:
  FactoredEvaluator(std::shared_ptr<const std::vector<Complex>> r, Complex lead)
      : r_(std::move(r)), lead_(lead) {}

  Evaluation eval(Complex x) const override {
    Complex v = lead_;
    Complex d{0};
    for (Complex r : *r_) {
      d = d * (x - r) + v;
      v *= (x - r);
    }
    return {v, d};
  }

  Complex log_derivative(Complex x) const override {
    Complex s{0};
    for (Complex r : *r_) s += Real(1) / (x - r);
    return s;
  }

 private:
  std::shared_ptr<const std::vector<Complex>> r_;
  Complex lead_;
};

// Recurrence state. While the values are moderate p and p' are carried
// exactly; past 2^200 the value is kept as m 2^e and the derivative as the
// ratio r = p'/p, so deep recurrences neither overflow nor underflow.
struct RecState {
  Complex m;
  Complex dm;  // p', or p'/p once scaled
  long e = 0;
  bool scaled = false;

  static Complex ldexp(Complex a, long s) {
    if (s < -2000) return Complex{0};
    const int si = static_cast<int>(std::min<long>(s, 100000));
    return {std::ldexp(a.real(), si), std::ldexp(a.imag(), si)};
  }
  void normalize() {
    const Real a = std::abs(m);
    if (a == 0 || !std::isfinite(a)) return;
    int ex = 0;
    (void)std::frexp(a, &ex);
    m = ldexp(m, -ex);
    e += ex;
  }
  void maybe_scale() {
    if (scaled || !(std::abs(m) > 0x1p200) || !is_finite(m) || !is_finite(dm)) return;
    dm = dm / m;
    scaled = true;
    normalize();
  }
  Evaluation value() const {
    if (!scaled) return {m, dm};
    const Complex v = ldexp(m, e);
    return {v, v * dm};
  }
  Complex ratio() const { return scaled ? dm : dm / m; }
};

class RecurrenceEvaluator final : public Evaluator {
 public:
  RecurrenceEvaluator(PolyKind kind, int k) : kind_(kind), k_(k) {}

  Evaluation eval(Complex x) const override { return run(x).value(); }
  Complex log_derivative(Complex x) const override { return run(x).ratio(); }

 private:
  RecState run(Complex x) const {
    RecState s;
    int steps = 0;
    switch (kind_) {
      case PolyKind::Mandelbrot:
        // p0 = 1, p1 = x, p_{i+1} = x p_i^2 + 1
        if (k_ == 0) return {Complex{1}, Complex{0}, 0, false};
        s = {x, Complex{1}, 0, false};
        steps = k_ - 1;
        break;
      case PolyKind::MandelbrotMap:
        // p1 = x, p_{i+1} = p_i^2 + x
        s = {x, Complex{1}, 0, false};
        steps = k_ - 1;
        break;
      case PolyKind::IteratedSquare:
        // p0 = x, p_{i+1} = p_i^2 + 2
        s = {x, Complex{1}, 0, false};
        steps = k_;
        break;
      default:
        fail(ErrorCode::InvalidArgument, "recurrence: not a family kind");
    }
    for (int i = 0; i < steps; ++i) {
      if (!s.scaled) {
        const Complex p = s.m, dp = s.dm;
        switch (kind_) {
          case PolyKind::Mandelbrot:
            s.m = x * p * p + Real(1);
            s.dm = p * p + Real(2) * x * p * dp;
            break;
          case PolyKind::MandelbrotMap:
            s.m = p * p + x;
            s.dm = Real(2) * p * dp + Real(1);
            break;
          default:
            s.m = p * p + Real(2);
            s.dm = Real(2) * p * dp;
            break;
        }
        s.maybe_scale();
        continue;
      }
      // p^-2 and the unit in the scaled frame 2^(2e)
      const Complex unit = RecState::ldexp(Complex{1}, -2 * s.e);
      const Complex inv2 = unit / (s.m * s.m);
      const Complex r = s.dm;
      switch (kind_) {
        case PolyKind::Mandelbrot:
          s.dm = (Real(1) + Real(2) * x * r) / (x + inv2);
          s.m = x * s.m * s.m + unit;
          break;
        case PolyKind::MandelbrotMap:
          s.dm = (Real(2) * r + inv2) / (Real(1) + x * inv2);
          s.m = s.m * s.m + x * unit;
          break;
        default:
          s.dm = Real(2) * r / (Real(1) + Real(2) * inv2);
          s.m = s.m * s.m + Real(2) * unit;
          break;
      }
      s.e *= 2;
      s.normalize();
    }
    return s;
  }

  PolyKind kind_;
  int k_;
};

class FunctionEvaluator final : public Evaluator {
 public:
  explicit FunctionEvaluator(std::function<Evaluation(Complex)> f)
      : f_(std::move(f)) {}
  Evaluation eval(Complex x) const override { return f_(x); }

 private:
  std::function<Evaluation(Complex)> f_;
};

class ReversedEvaluator final : public Evaluator {
 public:
  ReversedEvaluator(std::shared_ptr<const Evaluator> inner, int d)
      : inner_(std::move(inner)), d_(d) {}

  Evaluation eval(Complex x) const override {
    if (x == Complex{0})
      fail(ErrorCode::InvalidArgument, "reversed black box evaluated at 0");
    const Complex y = Real(1) / x;
    const Evaluation e = inner_->eval(y);
    const Complex xd = std::pow(x, d_);
    // d/dx [x^d p(1/x)] = d x^(d-1) p(1/x) - x^(d-2) p'(1/x)
    return {xd * e.value, xd * y * (Real(d_) * e.value - y * e.derivative)};
  }

  Complex log_derivative(Complex x) const override {
    if (x == Complex{0})
      fail(ErrorCode::InvalidArgument, "reversed black box evaluated at 0");
    const Complex y = Real(1) / x;
    return y * (Real(d_) - y * inner_->log_derivative(y));
  }

 private:
  std::shared_ptr<const Evaluator> inner_;
  int d_;
};

}  // namespace

BlackBoxPoly::BlackBoxPoly(const Poly& p) {
  auto shared = std::make_shared<const Poly>(p);
  dense_ = shared;
  ev_ = std::make_shared<DenseEvaluator>(shared);
  counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  degree_ = p.degree();
  lead_ = p.leading();
  kind_ = PolyKind::Dense;
}

BlackBoxPoly BlackBoxPoly::factored(std::vector<Complex> roots, Complex lead) {
  require(lead != Complex{0}, "factored: zero leading coefficient");
  BlackBoxPoly b;
  auto r = std::make_shared<const std::vector<Complex>>(std::move(roots));
  b.ev_ = std::make_shared<FactoredEvaluator>(r, lead);
  Poly expanded = from_roots(*r, lead);
  if (expanded.is_finite()) b.dense_ = std::make_shared<const Poly>(expanded);
  b.roots_ = r;
  b.counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  b.degree_ = static_cast<int>(r->size());
  b.lead_ = lead;
  b.kind_ = PolyKind::Factored;
  return b;
}

namespace {
BlackBoxPoly family(PolyKind kind, int k, int degree) {
  return BlackBoxPoly::from_evaluator(
      std::make_shared<RecurrenceEvaluator>(kind, k), degree, 1, kind);
}
}  // namespace

BlackBoxPoly BlackBoxPoly::mandelbrot(int k) {
  require(k >= 0 && k <= 30, "mandelbrot: k out of range");
  BlackBoxPoly b = family(PolyKind::Mandelbrot, k, (1 << k) - 1);
  b.family_k_ = k;
  return b;
}

BlackBoxPoly BlackBoxPoly::mandelbrot_map(int k) {
  require(k >= 1 && k <= 31, "mandelbrot_map: k out of range");
  BlackBoxPoly b = family(PolyKind::MandelbrotMap, k, 1 << (k - 1));
  b.family_k_ = k;
  return b;
}

BlackBoxPoly BlackBoxPoly::iterated_square(int k) {
  require(k >= 0 && k <= 30, "iterated_square: k out of range");
  BlackBoxPoly b = family(PolyKind::IteratedSquare, k, 1 << k);
  b.family_k_ = k;
  return b;
}

BlackBoxPoly BlackBoxPoly::custom(int degree,
                                  std::function<Evaluation(Complex)> f,
                                  Complex lead, bool sequential_only) {
  BlackBoxPoly b = from_evaluator(
      std::make_shared<FunctionEvaluator>(std::move(f)), degree, lead);
  b.sequential_only_ = sequential_only;
  return b;
}

BlackBoxPoly BlackBoxPoly::from_evaluator(std::shared_ptr<const Evaluator> ev,
                                          int degree, Complex lead,
                                          PolyKind kind) {
  require(degree >= 0, "black box: negative degree");
  BlackBoxPoly b;
  b.ev_ = std::move(ev);
  b.counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  b.degree_ = degree;
  b.lead_ = lead;
  b.kind_ = kind;
  return b;
}

Evaluation BlackBoxPoly::eval(Complex x) const {
  counter_->fetch_add(1, std::memory_order_relaxed);
  return ev_->eval(x);
}

Complex BlackBoxPoly::log_derivative(Complex x) const {
  counter_->fetch_add(1, std::memory_order_relaxed);
  return ev_->log_derivative(x);
}

BlackBoxPoly BlackBoxPoly::reversed() const {
  BlackBoxPoly b = *this;
  b.ev_ = std::make_shared<ReversedEvaluator>(ev_, degree_);
  b.kind_ = PolyKind::Custom;
  b.roots_.reset();
  b.dense_.reset();
  if (dense_) {
    Poly r = reverse(*dense_);
    // keep the nominal degree: only usable when p(0) != 0
    if (r.degree() == degree_) b.dense_ = std::make_shared<const Poly>(r);
  }
  if (roots_) {
    bool zero_root = false;
    std::vector<Complex> inv;
    Complex lead = lead_;
    for (Complex r : *roots_) {
      if (r == Complex{0}) zero_root = true;
      inv.push_back(Real(1) / r);
      lead *= -r;
    }
    if (!zero_root) {
      b.roots_ = std::make_shared<const std::vector<Complex>>(std::move(inv));
      b.ev_ = std::make_shared<FactoredEvaluator>(b.roots_, lead);
      b.kind_ = PolyKind::Factored;
    }
  }
  if (!b.roots_ || b.kind_ != PolyKind::Factored) b.lead_ = ev_->eval(0).value;
  return b;
}

std::vector<Evaluation> eval_at_roots_of_unity(const BlackBoxPoly& p,
                                               Complex center, Real radius,
                                               int q) {
  require(q >= 1, "eval_at_roots_of_unity: q must be positive");
  std::vector<Evaluation> out(q);
  const Poly* dp = p.dense();
  if (dp && p.kind() == PolyKind::Dense && center == Complex{0} &&
      radius == 1 && is_pow2(q)) {
    // Wrap coefficients modulo q, then one forward transform each for p, p'.
    std::vector<Complex> a(q, Complex{0}), b(q, Complex{0});
    for (int i = 0; i <= dp->degree(); ++i) a[i % q] += (*dp)[i];
    for (int i = 1; i <= dp->degree(); ++i)
      b[(i - 1) % q] += (*dp)[i] * Real(i);
    dft_inplace(a, false);
    dft_inplace(b, false);
    for (int g = 0; g < q; ++g) out[g] = {a[g], b[g]};
    p.add_evaluations(static_cast<std::uint64_t>(q));
    return out;
  }
  for (int g = 0; g < q; ++g)
    out[g] = p.eval(center + radius * unit_root(q, g));
  return out;
}

std::vector<Complex> trailing_coeffs_blackbox(const BlackBoxPoly& p, Complex c,
                                              int w, Real eps) {
  require(w >= 1, "trailing_coeffs_blackbox: w must be positive");
  require(eps > 0, "trailing_coeffs_blackbox: eps must be positive");
  std::vector<Complex> t;
  const Evaluation e0 = p.eval(c);
  t.push_back(e0.value);
  if (w >= 2) t.push_back(e0.derivative);
  if (w <= 2) return t;

  const Complex pe = p.eval(c + eps).value;
  Real scale = 0;
  for (Complex a : t) scale = std::max(scale, std::abs(a));
  scale = std::max(scale, Real(1));
  for (int k = 2; k < w; ++k) {
    Complex num = pe;
    Real mag = std::abs(pe);
    Real ek = 1;
    for (int i = 0; i < k; ++i) {
      num -= t[i] * ek;
      mag += std::abs(t[i]) * ek;
      ek *= eps;
    }
    const Real noise = 4 * kEps * mag / ek;
    if (noise > scale)
      fail(ErrorCode::Cancellation,
           "trailing_coeffs_blackbox: cancellation at order " +
               std::to_string(k));
    t.push_back(num / ek);
    scale = std::max(scale, std::abs(t.back()));
  }
  return t;
}

}  // namespace polyroot
