// Acceptance suite: one PASS/FAIL line per criterion. Ground truth comes from
// constructed roots and the oracle library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "polyroot/counting.hpp"
#include "polyroot/deflation.hpp"
#include "polyroot/ehrlich.hpp"
#include "polyroot/oracles.hpp"
#include "polyroot/powersums.hpp"
#include "polyroot/radii.hpp"
#include "polyroot/realroots.hpp"
#include "polyroot/subdivision.hpp"

using namespace polyroot;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Real coeff_diff(const Poly& a, const Poly& b) {
  Real m = 0;
  for (int i = 0; i <= std::max(a.degree(), b.degree()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<Complex> expand(const RootReport& r) {
  std::vector<Complex> out;
  for (const auto& x : r.roots)
    for (int k = 0; k < x.multiplicity; ++k) out.push_back(x.approx);
  return out;
}

Verdict c1_counting() {
  oracle::CorpusParams cp;
  cp.kind = "annulus-free";
  cp.degree = 1000;
  cp.gap_inner = 0.5;
  cp.gap_outer = 2;
  cp.outer_max = 4;
  const auto corpus = oracle::make_corpus(cp, 100, 101, false);
  Stopwatch sw;
  int hits = 0, q = 0;
  for (const auto& e : corpus.entries) {
    int inside = 0;
    for (Complex r : e.roots) inside += std::abs(r) < 1;
    CountOptions co;
    co.theta = 2;
    co.q0 = 16;
    const RootCount c = count_roots(oracle::as_blackbox(e), Disc{0, 1}, co);
    q = std::max(q, c.q_used);
    hits += c.count == inside && c.certainty == Certainty::Certified;
  }
  const double t = sw.seconds();
  return {hits == 100 && q == 16 && t <= 10,
          fmt("%d/100 exact certified counts at d=1000, q=%d, %.2f s", hits, q, t)};
}

Verdict c2_decay() {
  // theta = 2: roots inside D(0, 1/2) or outside D(0, 2)
  oracle::CorpusParams cp;
  cp.kind = "annulus-free";
  cp.degree = 32;
  cp.gap_inner = 0.5;
  cp.gap_outer = 2;
  cp.outer_max = 4;
  const auto corpus = oracle::make_corpus(cp, 20, 102, false);
  Stopwatch sw;
  const int qs[] = {16, 32, 64};
  const Real abs_bound = 32 * std::exp2(-32.0) * 4;
  // errors under 1e-13 are rounding, not truncation; such steps are not scored
  const Real floor = 1e-13;
  // decay exponent per unit of q; [0] over h <= q/2 (the criterion), [1] over h <= q/4
  Real expo[2] = {kInf, kInf};
  Real abs32[2] = {0, 0};
  for (const auto& e : corpus.entries) {
    const BlackBoxPoly p = oracle::as_blackbox(e);
    Real err[2][3] = {};
    for (int i = 0; i < 3; ++i) {
      const int q = qs[i];
      const auto est = power_sums_disc(p, Disc{0, 1}, q);
      const auto exact = oracle::brute_power_sums(e.roots, Disc{0, 1}, q);
      for (int h = 0; h <= q / 2; ++h) {
        const Real d = std::abs(est.values[h] - exact[h]);
        err[0][i] = std::max(err[0][i], d);
        if (h <= q / 4) err[1][i] = std::max(err[1][i], d);
      }
    }
    for (int r = 0; r < 2; ++r) {
      abs32[r] = std::max(abs32[r], err[r][1]);
      for (int i = 0; i + 1 < 3; ++i)
        if (err[r][i + 1] > floor)
          expo[r] = std::min(expo[r], std::log2(err[r][i] / err[r][i + 1]) / (qs[i + 1] - qs[i]));
    }
  }
  const double t = sw.seconds();
  return {expo[0] >= 0.75 && abs32[0] <= abs_bound && t <= 5,
          fmt("over h<=q/2: worst decay 2^(%.3f dq) (need 2^(0.75 dq)), q=32 error %.1e "
              "(bound d 2^-32 4 = %.1e); over h<=q/4: 2^(%.3f dq), %.1e; %.2f s",
              expo[0], abs32[0], abs_bound, expo[1], abs32[1], t)};
}

Verdict c3_closed_form() {
  const Real a = std::abs(power_sums_disc(Poly{-0.5, 1}, Disc{0, 1}, 4).values[0] - 16.0 / 15);
  const Real b = std::abs(power_sums_disc(Poly{-3, 1}, Disc{0, 1}, 4).values[0] + 1.0 / 80);
  return {a <= 1e-12 && b <= 1e-12, fmt("|s0*-16/15| = %.1e, |s0*+1/80| = %.1e", a, b)};
}

Verdict c4_turan() {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<Real> u(-1.5, 1.5);
  int ok = 0;
  Real width = 0;
  for (int t = 0; t < 50; ++t) {
    const int d = 2 + static_cast<int>(rng() % 15);
    std::vector<Complex> roots;
    Real r1 = 0;
    for (int i = 0; i < d; ++i) {
      roots.emplace_back(u(rng), u(rng));
      r1 = std::max(r1, std::abs(roots.back()));
    }
    bool good = true;
    for (int K : {4, 8, 32}) {
      std::vector<Complex> s;
      for (int g = 1; g <= d; ++g) {
        Complex acc{0};
        for (Complex z : roots) acc += std::pow(z, g * K);
        s.push_back(acc);
      }
      const TuranBracket b = turan_r1(s, d, K);
      good = good && b.r_star <= r1 * (1 + 1e-12) && r1 <= b.upper * (1 + 1e-12);
      if (K == 32) width = std::max(width, std::abs(b.upper / b.r_star - std::pow(5.0, 1.0 / 32)));
    }
    ok += good;
  }
  return {ok == 50 && width <= 1e-4,
          fmt("%d/50 brackets contain r1 for K in {4,8,32}; |width - 5^(1/32)| <= %.1e", ok, width)};
}

Verdict c5_deflation() {
  std::mt19937_64 rng(105);
  Stopwatch sw;
  int ok = 0;
  Real worst_ps = 0, worst_ei = 0;
  for (int t = 0; t < 50; ++t) {
    const int w = 1 + static_cast<int>(rng() % 8);
    const int d = w + 1 + static_cast<int>(rng() % (50 - w));
    oracle::CorpusParams cp;
    cp.kind = "split";
    cp.degree = d;
    cp.inner_count = w;
    cp.gap_inner = 0.5;
    cp.gap_outer = 2;
    cp.outer_max = 4;
    const auto c = oracle::make_corpus(cp, 1, rng(), true);
    const auto& e = c.entries[0];
    const Poly& p = *e.poly;
    const Poly f = oracle::build_from_roots({e.roots.begin(), e.roots.begin() + w});
    // the tame roots of the stored (rounded) p
    const auto tame = oracle::polish_roots(p, {e.roots.begin() + w, e.roots.end()});
    const Deflation a = deflate_powersum(p, tame, w);
    const Deflation b = deflate_evalinterp(p, tame, w);
    const Real ea = coeff_diff(a.factor, f), eb = coeff_diff(b.factor, f);
    worst_ps = std::max(worst_ps, ea);
    worst_ei = std::max(worst_ei, eb);
    Poly bad = f + Poly{1e-3};
    const bool good = ea <= 1e-8 && eb <= 1e-8 &&
                      verify_modular(p, a.factor, {}, 1e-6).passed &&
                      verify_modular(p, b.factor, {}, 1e-6).passed &&
                      !verify_modular(p, bad, {}, 1e-6).passed && !verify_by_roots(p, bad, 1e-6);
    ok += good;
  }
  const double t = sw.seconds();
  return {ok == 50 && t <= 5,
          fmt("%d/50 trials; max coefficient error powersum %.1e, evalinterp %.1e; %.2f s", ok,
              worst_ps, worst_ei, t)};
}

Verdict c6_laser() {
  const Real rho = 1e-3;
  const int w = 3, d = 10;
  Poly f = Poly::constant(1);
  for (int i = 0; i < w; ++i) f = f * Poly{rho, 1};
  const Poly p = f * Poly(std::vector<Complex>(d - w + 1, Complex{1}));
  const Deflation l = deflate_laser(p, 0, w);
  if (!l.section) return {false, "no section returned"};
  const Poly diff = *l.section - f;
  Real n1 = 0;
  for (int i = 0; i <= diff.degree(); ++i) n1 += std::abs(diff[i]);
  const Real lead = std::abs(diff[w]);
  const Real want = std::pow(1 + rho, w) - 1;
  return {n1 >= w * rho && std::abs(lead - want) <= 1e-9,
          fmt("|f~-f|_1 = %.6e >= %.1e; x^w coefficient gap %.12f vs (1+rho)^w-1 = %.12f", n1,
              w * rho, lead, want)};
}

struct SubdivisionRun {
  bool roots_ok = true;
  bool population_ok = true;
  bool skip_ok = true;
  Real worst = 0;
  std::vector<std::pair<NewtonTrace, std::vector<Complex>>> traces;
};

SubdivisionRun run_subdivision(double& seconds) {
  std::mt19937_64 rng(107);
  SubdivisionRun out;
  Stopwatch sw;
  for (int t = 0; t < 20; ++t) {
    const auto roots = oracle::random_roots_in_disc(rng, 16, 0, 0.8, 0.05);
    const BlackBoxPoly p = BlackBoxPoly::factored(roots);
    SubdivisionConfig on, off;
    on.epsilon = off.epsilon = std::ldexp(1.0, -40);
    off.annuli_skip = off.cauchy_skip = false;
    const RootReport a = solve(p, std::nullopt, on);
    const RootReport b = solve(p, std::nullopt, off);
    const Real da = oracle::match_distance(expand(a), roots);
    const Real db = oracle::match_distance(expand(b), roots);
    out.worst = std::max({out.worst, da, db});
    out.roots_ok = out.roots_ok && da <= on.epsilon && db <= on.epsilon;
    for (int pop : a.population) out.population_ok = out.population_ok && pop <= 8 * 16;
    for (int pop : b.population) out.population_ok = out.population_ok && pop <= 8 * 16;
    out.skip_ok = out.skip_ok && a.stats.exclusions_run < b.stats.exclusions_run &&
                  oracle::match_distance(expand(a), expand(b)) <= 2 * on.epsilon;
    for (const auto& tr : a.newton_traces) out.traces.push_back({tr, roots});
  }
  seconds = sw.seconds();
  return out;
}

Verdict c7_subdivision(const SubdivisionRun& r, double seconds) {
  return {r.roots_ok && r.population_ok && r.skip_ok && seconds <= 30,
          fmt("roots within 2^-40: %s (worst %.1e); population <= 8d: %s; skips save tests with "
              "the same roots: %s; %.2f s",
              r.roots_ok ? "yes" : "no", r.worst, r.population_ok ? "yes" : "no",
              r.skip_ok ? "yes" : "no", seconds)};
}

Verdict c8_newton_order(const SubdivisionRun& r) {
  int fits = 0, total = 0, unmeasured = 0;
  for (const auto& [tr, roots] : r.traces) {
    if (!tr.converged) continue;
    Complex root{};
    Real best = kInf;
    for (Complex z : roots)
      if (std::abs(z - tr.iterates.back()) < best) best = std::abs(z - tr.iterates.back()), root = z;
    // least-squares slope of log e_{k+1} against log e_k above rounding
    std::vector<Real> e;
    for (Complex x : tr.iterates) e.push_back(std::abs(x - root));
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
      if (e[k + 1] < 1e-14 || e[k] > 0.1) continue;
      const Real x = std::log(e[k]), y = std::log(e[k + 1]);
      sx += x, sy += y, sxx += x * x, sxy += x * y, ++n;
    }
    if (n < 2) {
      ++unmeasured;
      continue;
    }
    const Real slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    ++total;
    fits += slope >= 1.8;
  }
  return {total > 0 && fits >= 0.9 * total,
          fmt("%d/%d converged Newton traces fit order >= 1.8 (%d too short to fit)", fits, total,
              unmeasured)};
}

Verdict c9_segment() {
  oracle::CorpusParams cp;
  cp.kind = "segment";
  cp.degree = 12;
  cp.inner_count = 5;
  cp.lo = -0.9;
  cp.hi = 0.9;
  cp.gap_outer = 3;
  cp.outer_max = 5;
  cp.separation = 0.05;
  const auto corpus = oracle::make_corpus(cp, 20, 109, true);
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<Real> phi(-std::numbers::pi, std::numbers::pi);
  int ok = 0;
  Real worst = 0, worst_id = 0;
  for (const auto& e : corpus.entries) {
    const Poly& p = *e.poly;
    const std::vector<Complex> want(e.roots.begin(), e.roots.begin() + 5);
    const RootReport rep = solve_segment(p, -1, 1);
    const Real dist = oracle::match_distance(expand(rep), want);
    worst = std::max(worst, dist);
    ok += dist <= 1e-8;
    const Poly s = lift_to_circle(p);
    for (int k = 0; k < 20; ++k) {
      const Real f = phi(rng);
      const Complex lhs = s(std::polar(1.0, f));
      const Complex rhs = std::polar(1.0, 12 * f) * p(std::cos(f));
      worst_id = std::max(worst_id, std::abs(lhs - rhs) / std::max<Real>(1, std::abs(rhs)));
    }
  }
  return {ok == 20 && worst_id <= 1e-9,
          fmt("%d/20 exact real root sets (worst %.1e); transplantation identity to %.1e", ok,
              worst, worst_id)};
}

Verdict c10_ehrlich() {
  std::mt19937_64 rng(110);
  const auto roots = oracle::random_roots_in_disc(rng, 64, 0, 1, 0.05);
  const BlackBoxPoly p = BlackBoxPoly::factored(roots);
  Stopwatch sw;
  EhrlichConfig ce, cs;
  cs.method = SimMethod::Secular;
  const RootReport e = solve_all(p, ce);
  const RootReport s = solve_all(p, cs);
  const double t = sw.seconds();
  const Real de = oracle::match_distance(expand(e), roots);
  const Real ds = oracle::match_distance(expand(s), roots);
  const Real dx = oracle::match_distance(expand(e), expand(s));
  return {de <= 1e-10 && ds <= 1e-10 && dx <= 1e-8 && e.stats.sweeps <= 100 &&
              s.stats.sweeps <= 100 && t <= 5,
          fmt("ehrlich %.1e in %d sweeps, secular %.1e in %d sweeps, agreement %.1e, %.2f s", de,
              e.stats.sweeps, ds, s.stats.sweeps, dx, t)};
}

Verdict c11_sparse() {
  std::string detail;
  bool ok = true;
  double per_eval[2] = {0, 0};
  const int ks[2] = {12, 13};
  for (int i = 0; i < 2; ++i) {
    const BlackBoxPoly p = BlackBoxPoly::mandelbrot(ks[i]);
    ExclusionMode mode;
    mode.q = 32;
    p.reset_evaluations();
    Stopwatch sw;
    const ExclusionVerdict v = exclusion_test(p, Disc{Complex(0.5, 0.5), 0.1}, mode);
    const double t = sw.seconds();
    const auto evals = p.evaluations();
    // cost per evaluation from a longer batch
    Stopwatch sw2;
    Complex acc{0};
    for (int j = 0; j < 2000; ++j) acc += p.eval(std::polar(0.7, 0.001 * j)).derivative;
    per_eval[i] = sw2.seconds() / 2000;
    volatile Real sink = acc.real();
    (void)sink;
    ok = ok && evals <= 32 && t <= 0.1 && v.q == 32;
    detail += fmt("k=%d (degree %d): %llu evaluations, %.4f s, %s; ", ks[i], p.degree(),
                  static_cast<unsigned long long>(evals), t,
                  v.excluded ? "excluded" : "not excluded");
  }
  // doubling the degree should cost about (k+1)/k, not 2, per evaluation
  const double growth = per_eval[1] / per_eval[0];
  ok = ok && growth < 1.6;
  detail += fmt("per-evaluation time ratio k=13/k=12 = %.2f", growth);
  return {ok, detail};
}

Verdict c12_refinement() {
  std::mt19937_64 rng(112);
  std::uniform_real_distribution<Real> u(-1, 1);
  int violations = 0, checked = 0;
  for (int t = 0; t < 20; ++t) {
    std::vector<Complex> r{1, 2, 3};
    for (auto& z : r) z += Complex(0.2 * u(rng), 0.2 * u(rng));
    const Poly p = oracle::build_from_roots(r);
    RefinementState st;
    for (Complex z : r) st.factors.push_back(Poly{-(z + Complex(1e-3 * u(rng), 1e-3 * u(rng))), 1});
    const auto out = refine_factorization(p, st, 6);
    for (std::size_t k = 0; k + 1 < out.delta.size(); ++k) {
      if (out.delta[k] > 1e-3 || out.delta[k] < 1e-13) continue;
      ++checked;
      violations += out.delta[k + 1] > 1e4 * out.delta[k] * out.delta[k] + 1e-14;
    }
  }
  // exact splits
  Real fixed = 0;
  for (int t = 0; t < 10; ++t) {
    std::vector<Complex> r{1, 2, 3};
    for (auto& z : r) z += Complex(0.2 * u(rng), 0.2 * u(rng));
    RefinementState st;
    for (Complex z : r) st.factors.push_back(Poly{-z, 1});
    const auto out = refine_factorization(oracle::build_from_roots(r), st, 3);
    for (Real dl : out.delta) fixed = std::max(fixed, dl);
    for (std::size_t j = 0; j < 3; ++j) fixed = std::max(fixed, coeff_diff(out.factors[j], st.factors[j]));
  }
  return {violations == 0 && checked > 0 && fixed <= 1e-12,
          fmt("%d/%d steps with delta <= 1e-3 contract quadratically; exact splits move %.1e",
              checked - violations, checked, fixed)};
}

Verdict c13_round_trip() {
  std::mt19937_64 rng(113);
  Real worst = 0;
  for (int t = 0; t < 64; ++t) {
    const int d_f = 1 + t % 32;
    const auto roots = oracle::random_roots_in_disc(rng, d_f, 0, 0.5);
    const Poly f = oracle::build_from_roots(roots);
    const auto s = coeffs_to_power_sums(f, 2 * d_f);
    worst = std::max(worst, coeff_diff(power_sums_to_coeffs_newton(s, d_f), f));
    worst = std::max(worst, coeff_diff(power_sums_to_coeffs_schonhage(s, d_f, d_f), f));
  }
  return {worst <= 1e-9, fmt("max coefficient error over d_f <= 32, both recoveries: %.1e", worst)};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const char* name, const std::function<Verdict()>& f) {
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("C%-2d %s %s: %s\n", n, v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  };
  report(1, "root counting", c1_counting);
  report(2, "power-sum error decay", c2_decay);
  report(3, "closed-form spot checks", c3_closed_form);
  report(4, "Turan bracket", c4_turan);
  report(5, "deflation", c5_deflation);
  report(6, "laser lower bound", c6_laser);
  double sub_seconds = 0;
  SubdivisionRun sub;
  bool sub_ran = true;
  std::string sub_error;
  try {
    sub = run_subdivision(sub_seconds);
  } catch (const std::exception& e) {
    sub_ran = false;
    sub_error = e.what();
  }
  report(7, "subdivision end to end", [&] {
    return sub_ran ? c7_subdivision(sub, sub_seconds) : Verdict{false, "threw: " + sub_error};
  });
  report(8, "Newton order", [&] {
    return sub_ran ? c8_newton_order(sub) : Verdict{false, "threw: " + sub_error};
  });
  report(9, "real segment", c9_segment);
  report(10, "Ehrlich and secular", c10_ehrlich);
  report(11, "sparse black box", c11_sparse);
  report(12, "factorization refinement", c12_refinement);
  report(13, "power-sum round trips", c13_round_trip);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
