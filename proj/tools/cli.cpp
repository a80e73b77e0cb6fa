#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyroot/counting.hpp"
#include "polyroot/deflation.hpp"
#include "polyroot/ehrlich.hpp"
#include "polyroot/error.hpp"
#include "polyroot/oracles.hpp"
#include "polyroot/powersums.hpp"
#include "polyroot/realroots.hpp"
#include "polyroot/subdivision.hpp"

namespace polyroot::cli {

using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
    case Command::Solve: return "solve";
    case Command::SolveDisc: return "solve-disc";
    case Command::SolveReal: return "solve-real";
    case Command::Count: return "count";
    case Command::Exclude: return "exclude";
    case Command::Deflate: return "deflate";
    case Command::Bench: return "bench";
  }
  return "?";
}

namespace {

Complex parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  std::size_t used = 0;
  try {
    if (comma == std::string::npos) {
      const Real re = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {re, 0};
    }
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const Real re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const Real im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::exception&) {
    throw CLI::ValidationError("complex value", "expected re or re,im: " + s);
  }
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace

ParseResult parse_args(int argc, const char* const* argv) {
  JobSpec job;
  if (const char* env = std::getenv("POLYROOT_SEED")) {
    try {
      job.seed = std::stoull(env);
    } catch (const std::exception&) {
      return {std::nullopt, 2, "POLYROOT_SEED is not an unsigned integer"};
    }
  }
  CLI::App app{"Univariate polynomial root finder"};
  app.require_subcommand(1);

  std::string center;
  std::string poly, roots, family;
  std::optional<int> k;
  const std::pair<Command, const char*> cmds[] = {
      {Command::Solve, "roots in the complex plane"},
      {Command::SolveDisc, "roots in the disc --center/--radius"},
      {Command::SolveReal, "real roots in [--lo, --hi]"},
      {Command::Count, "number of roots in a disc"},
      {Command::Exclude, "exclusion test on a disc"},
      {Command::Deflate, "factor whose roots lie in a disc"},
      {Command::Bench, "compare solvers, or false rates with --false-rates"}};
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, help] : cmds) {
    CLI::App* s = app.add_subcommand(to_string(cmd), help);
    subs.emplace_back(cmd, s);
    s->add_option("--poly", poly, "coefficient file");
    s->add_option("--from-roots", roots, "file with one root per line");
    s->add_option("--family", family, "mandelbrot | mandelbrot-map | iterated-square")
        ->check(CLI::IsMember({"mandelbrot", "mandelbrot-map", "iterated-square"}));
    s->add_option("--k", k, "family index")->check(CLI::Range(0, 31));
    s->add_option("--center", center, "disc center re,im");
    s->add_option("--radius", job.radius, "disc radius")->check(CLI::PositiveNumber);
    s->add_option("--lo", job.lo);
    s->add_option("--hi", job.hi);
    s->add_option("--eps", job.epsilon, "output accuracy")->check(CLI::PositiveNumber);
    s->add_option("--q0", job.q0, "samples on the contour")->check(CLI::Range(1, 1 << 24));
    s->add_option("--theta", job.theta, "assumed isolation ratio");
    s->add_option("--method", job.method,
                  "subdivision | ehrlich | secular; deflate: powersum | evalinterp | laser");
    s->add_option("--seed", job.seed);
    s->add_option("--threads", job.threads, "0: all cores")->check(CLI::NonNegativeNumber);
    s->add_option("--trace", job.trace, "JSON lines trace of subdivision levels");
    s->add_option("--out", job.out, "report file, - for stdout");
    s->add_option("--format", job.format)->check(CLI::IsMember({"json", "csv"}));
    if (cmd == Command::Bench) {
      s->add_flag("--false-rates", job.false_rates, "exclusion and counting false rates");
      s->add_option("--trials", job.trials)->check(CLI::PositiveNumber);
      s->add_option("--degree", job.degree)->check(CLI::PositiveNumber);
    }
  }

  try {
    app.parse(argc, argv);
    for (const auto& [cmd, s] : subs)
      if (s->parsed()) job.command = cmd;
    if (!center.empty()) job.center = parse_complex(center);

    const int sources = !poly.empty() + !roots.empty() + !family.empty();
    const bool needs_input = !(job.command == Command::Bench && job.false_rates);
    if (needs_input && sources != 1)
      throw UsageError("exactly one of --poly, --from-roots, --family is required");
    if (!needs_input && sources != 0)
      throw UsageError("--false-rates builds its own corpus; drop the input");
    if (!family.empty() && !k) throw UsageError("--family needs --k");
    if (family.empty() && k) throw UsageError("--k is only used with --family");
    if (!poly.empty()) job.input = {InputSource::CoeffFile, poly, "", 0};
    if (!roots.empty()) job.input = {InputSource::FromRoots, roots, "", 0};
    if (!family.empty()) job.input = {InputSource::Family, "", family, *k};
    if (job.theta && *job.theta <= 1) throw UsageError("--theta must exceed 1");
    if (job.command == Command::SolveReal && !(job.lo < job.hi))
      throw UsageError("--lo must be below --hi");

    const std::string& m = job.method;
    if (job.command == Command::Deflate) {
      if (!m.empty() && m != "powersum" && m != "evalinterp" && m != "laser")
        throw UsageError("deflate --method must be powersum, evalinterp or laser");
    } else if (!m.empty() && m != "subdivision" && m != "ehrlich" && m != "secular") {
      throw UsageError("--method must be subdivision, ehrlich or secular");
    }
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, 0, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return {std::nullopt, 0, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    return {std::nullopt, 2, e.what()};
  } catch (const UsageError& e) {
    return {std::nullopt, 2, e.what()};
  }
  return {job, 0, ""};
}

std::vector<Complex> read_complex_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<Complex> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<Real> v;
    std::string tok;
    while (ls >> tok) {
      for (char& ch : tok)
        if (ch == ',') ch = ' ';
      std::istringstream ts(tok);
      Real x;
      while (ts >> x) v.push_back(x);
      if (!ts.eof()) throw IoError(path + ":" + std::to_string(lineno) + ": not a number");
    }
    if (v.empty()) continue;
    if (v.size() > 2) throw IoError(path + ":" + std::to_string(lineno) + ": expected re [im]");
    out.emplace_back(v[0], v.size() == 2 ? v[1] : 0);
  }
  return out;
}

BlackBoxPoly load_input(const InputSource& in) {
  switch (in.kind) {
    case InputSource::CoeffFile: {
      auto c = read_complex_lines(in.path);
      if (c.empty()) throw IoError(in.path + ": no coefficients");
      return Poly(std::move(c));
    }
    case InputSource::FromRoots: {
      auto r = read_complex_lines(in.path);
      if (r.empty()) return Poly::constant(1);
      return oracle::build_from_roots(std::move(r));
    }
    case InputSource::Family:
      if (in.family == "mandelbrot") return BlackBoxPoly::mandelbrot(in.k);
      if (in.family == "mandelbrot-map") return BlackBoxPoly::mandelbrot_map(in.k);
      return BlackBoxPoly::iterated_square(in.k);
    case InputSource::None:
      break;
  }
  fail(ErrorCode::InvalidArgument, "no input");
}

namespace {

json cj(Complex z) { return json::array({z.real(), z.imag()}); }

json finite_or_null(Real x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json input_echo(const JobSpec& job, const BlackBoxPoly& p) {
  json j;
  switch (job.input.kind) {
    case InputSource::CoeffFile: j["poly"] = job.input.path; break;
    case InputSource::FromRoots: j["from_roots"] = job.input.path; break;
    case InputSource::Family:
      j["family"] = job.input.family;
      j["k"] = job.input.k;
      break;
    case InputSource::None: break;
  }
  j["degree"] = p.degree();
  j["kind"] = to_string(p.kind());
  return j;
}

json config_echo(const JobSpec& job, const std::string& method) {
  json j{{"command", to_string(job.command)},
         {"epsilon", job.epsilon},
         {"method", method},
         {"threads", job.threads}};
  if (job.q0) j["q0"] = *job.q0;
  if (job.theta) j["theta"] = *job.theta;
  if (job.command == Command::SolveDisc || job.command == Command::Count ||
      job.command == Command::Exclude || job.command == Command::Deflate) {
    j["center"] = cj(job.center);
    j["radius"] = job.radius;
  }
  if (job.command == Command::SolveReal) {
    j["lo"] = job.lo;
    j["hi"] = job.hi;
  }
  return j;
}

json stats_json(const SolveStats& s) {
  return {{"evaluations", s.evaluations},
          {"exclusions_run", s.exclusions_run},
          {"exclusions_skipped", s.exclusions_skipped},
          {"wall_ms", s.wall_ms},
          {"levels", s.levels},
          {"sweeps", s.sweeps},
          {"max_population", s.max_population}};
}

json roots_json(const BlackBoxPoly& p, const RootReport& r) {
  json arr = json::array();
  for (const auto& a : r.roots) {
    const Evaluation e = p.eval(a.approx);
    arr.push_back({{"re", a.approx.real()},
                   {"im", a.approx.imag()},
                   {"radius", a.radius},
                   {"multiplicity", a.multiplicity},
                   {"method", to_string(a.method)},
                   {"residual", finite_or_null(std::abs(e.value))}});
  }
  return arr;
}

std::string roots_csv(const RootReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "re,im,radius,multiplicity,method\n";
  for (const auto& a : r.roots)
    os << a.approx.real() << ',' << a.approx.imag() << ',' << a.radius << ','
       << a.multiplicity << ',' << to_string(a.method) << '\n';
  return os.str();
}

RootReport run_solver(const BlackBoxPoly& p, const JobSpec& job, const std::string& method,
                      std::optional<Disc> region, std::ostream* trace) {
  if (method == "subdivision") {
    SubdivisionConfig sc;
    sc.epsilon = job.epsilon;
    if (job.q0) sc.q0 = *job.q0;
    sc.seed = job.seed;
    sc.threads = job.threads;
    sc.trace = trace;
    return solve(p, region, sc);
  }
  EhrlichConfig ec;
  ec.method = method == "secular" ? SimMethod::Secular : SimMethod::Ehrlich;
  ec.epsilon = job.epsilon;
  ec.seed = job.seed;
  return solve_all(p, ec);
}

// The factor with the roots in the disc, in x.
Deflation deflate_disc(const BlackBoxPoly& p, const JobSpec& job, const std::string& method,
                       int w) {
  const Disc disc{job.center, job.radius};
  if (method == "laser") return deflate_laser(p, job.center, w);
  if (method == "evalinterp") {
    SubdivisionConfig sc;
    sc.epsilon = job.epsilon;
    sc.seed = job.seed;
    sc.threads = job.threads;
    const RootReport all = solve(p, std::nullopt, sc);
    std::vector<Complex> tame;
    for (const auto& r : all.roots)
      if (!disc.contains(r.approx))
        for (int i = 0; i < r.multiplicity; ++i) tame.push_back(r.approx);
    require(static_cast<int>(tame.size()) == p.degree() - w,
            "deflate: roots outside the disc were not all found");
    return deflate_evalinterp(p, tame, w, std::max<Real>(1, std::abs(job.center) + job.radius));
  }
  const int q = static_cast<int>(next_pow2(std::max(4 * w + 4, job.q0.value_or(64))));
  const PowerSumEstimate est = power_sums_disc(p, disc, q, true, job.seed);
  std::vector<Complex> s(est.values.begin() + 1, est.values.begin() + 1 + w);
  const Poly local = power_sums_to_coeffs_schonhage(s, w, w);
  Deflation out;
  out.method = DeflationMethod::PowerSum;
  out.factor = shift_scale(local, -job.center, 1);
  return out;
}

void write_output(const JobSpec& job, const std::string& text) {
  if (job.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(job.out);
  if (!f) throw IoError("cannot write " + job.out);
  f << text;
  if (!f) throw IoError("write failed: " + job.out);
}

int run_inner(const JobSpec& job) {
  if (job.command == Command::Bench && job.false_rates) {
    FalseRateParams fp;
    fp.degree = job.degree;
    fp.trials = job.trials;
    if (job.q0) fp.qs = {*job.q0};
    write_output(job, to_csv(bench_false_rates(fp, job.seed)));
    return 0;
  }

  const BlackBoxPoly p = load_input(job.input);
  std::unique_ptr<std::ofstream> trace;
  if (!job.trace.empty()) {
    trace = std::make_unique<std::ofstream>(job.trace);
    if (!*trace) throw IoError("cannot write " + job.trace);
  }
  json rep;
  rep["input"] = input_echo(job, p);
  rep["seed"] = job.seed;
  int code = 0;
  std::string method = job.method;

  switch (job.command) {
    case Command::Solve:
    case Command::SolveDisc:
    case Command::SolveReal: {
      RootReport r;
      if (job.command == Command::SolveReal) {
        method = "segment";
        SegmentConfig sc;
        sc.epsilon = job.epsilon;
        sc.seed = job.seed;
        r = solve_segment(p, job.lo, job.hi, sc);
      } else {
        if (method.empty()) method = "subdivision";
        std::optional<Disc> region;
        if (job.command == Command::SolveDisc) {
          region = Disc{job.center, job.radius};
          if (method != "subdivision") throw UsageError("solve-disc runs subdivision only");
        }
        r = run_solver(p, job, method, region, trace.get());
      }
      if (job.format == "csv") {
        write_output(job, roots_csv(r));
        return r.partial ? 3 : 0;
      }
      rep["roots"] = roots_json(p, r);
      rep["counts"] = {{"expected", r.expected_count}, {"found", r.found()}};
      rep["stats"] = stats_json(r.stats);
      rep["partial"] = r.partial;
      code = r.partial ? 3 : 0;
      break;
    }
    case Command::Count: {
      CountOptions co;
      co.theta = job.theta;
      if (job.q0) co.q0 = *job.q0;
      co.rotate = true;
      co.seed = job.seed;
      const std::uint64_t ev0 = p.evaluations();
      const RootCount c = count_roots(p, Disc{job.center, job.radius}, co);
      rep["counts"] = {{"count", c.count},
                       {"certainty", c.certainty == Certainty::Certified ? "certified" : "heuristic"},
                       {"q", c.q_used},
                       {"error_bound", finite_or_null(c.error_bound)},
                       {"s0", cj(c.s0)}};
      rep["stats"] = {{"evaluations", p.evaluations() - ev0}};
      break;
    }
    case Command::Exclude: {
      ExclusionMode mode;
      if (job.q0) mode.q = *job.q0;
      const std::uint64_t ev0 = p.evaluations();
      const ExclusionVerdict v = exclusion_test(p, Disc{job.center, job.radius}, mode, 0.25,
                                                true, job.seed);
      rep["exclusion"] = {{"excluded", v.excluded},
                          {"q", v.q},
                          {"h", v.tested_h},
                          {"max_abs_s", v.max_abs_s},
                          {"root_on_contour", v.root_on_contour}};
      rep["stats"] = {{"evaluations", p.evaluations() - ev0}};
      break;
    }
    case Command::Deflate: {
      if (method.empty()) method = "powersum";
      CountOptions co;
      co.theta = job.theta;
      co.rotate = true;
      co.seed = job.seed;
      const int w = count_roots(p, Disc{job.center, job.radius}, co).count;
      json dj{{"w", w}};
      if (w > 0) {
        const Deflation f = deflate_disc(p, job, method, w);
        json coeffs = json::array();
        for (Complex c : f.factor.coeffs()) coeffs.push_back(cj(c));
        dj["factor"] = coeffs;
        if (p.dense()) {
          const ModularCheck mc = verify_modular(*p.dense(), f.factor, {}, job.epsilon);
          dj["verify_modular"] = {{"passed", mc.passed},
                                  {"inconclusive", mc.inconclusive},
                                  {"residual", finite_or_null(mc.residual)},
                                  {"threshold", mc.threshold}};
        }
        if (f.needs_strong_isolation) dj["needs_strong_isolation"] = true;
      }
      rep["deflation"] = dj;
      break;
    }
    case Command::Bench: {
      json blocks = json::array();
      RootReport reports[2];
      const char* names[2] = {"subdivision", "ehrlich"};
      for (int i = 0; i < 2; ++i) {
        reports[i] = run_solver(p, job, names[i], std::nullopt, trace.get());
        blocks.push_back({{"method", names[i]},
                          {"found", reports[i].found()},
                          {"partial", reports[i].partial},
                          {"stats", stats_json(reports[i].stats)}});
      }
      std::vector<Complex> a, b;
      for (const auto& r : reports[0].roots)
        for (int m = 0; m < r.multiplicity; ++m) a.push_back(r.approx);
      for (const auto& r : reports[1].roots)
        for (int m = 0; m < r.multiplicity; ++m) b.push_back(r.approx);
      const Real dist = oracle::match_distance(a, b);
      rep["bench"] = blocks;
      rep["agreement"] = {{"max_distance", finite_or_null(dist)},
                          {"within_eps", dist <= std::max<Real>(job.epsilon, 1e-10) * 2}};
      code = reports[0].partial || reports[1].partial ? 3 : 0;
      break;
    }
  }
  rep["config"] = config_echo(job, method);
  write_output(job, rep.dump(2) + "\n");
  return code;
}

}  // namespace

int run(const JobSpec& job, std::ostream& err) {
  try {
    return run_inner(job);
  } catch (const IoError& e) {
    err << "polyroot: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    err << "polyroot: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "polyroot: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::Io ? 1 : 4;
  } catch (const std::exception& e) {
    err << "polyroot: " << e.what() << '\n';
    return 4;
  }
}

std::vector<FalseRateRow> bench_false_rates(const FalseRateParams& params,
                                            std::uint64_t seed) {
  require(params.trials >= 1, "bench_false_rates: trials must be positive");
  require(params.degree >= 1, "bench_false_rates: degree must be positive");
  const int d = params.degree;
  const Disc unit{0, 1};
  std::vector<FalseRateRow> rows;
  for (int q : params.qs)
    for (const auto& hl : params.h_lists) {
      FalseRateRow row;
      row.d = d;
      row.q = q;
      for (std::size_t i = 0; i < hl.size(); ++i)
        row.h_list += (i ? " " : "") + std::to_string(hl[i]);
      row.trials = params.trials;
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<Real> u(0, 1);
      for (int t = 0; t < params.trials; ++t) {
        std::vector<Complex> roots;
        int inside = 0;
        if (params.trivial) {
          roots.assign(d, Complex{0});
          inside = d;
        } else {
          for (int j = 0; j < d; ++j) {
            Real r;
            do r = 2 * std::sqrt(u(rng));
            while (std::abs(r - 1) < params.band);
            roots.push_back(std::polar(r, 2 * kPi * u(rng)));
            inside += r < 1;
          }
        }
        const BlackBoxPoly p = BlackBoxPoly::factored(roots);
        ExclusionMode mode{ExclusionMode::Probabilistic, hl, q};
        const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
        const ExclusionVerdict v = exclusion_test(p, unit, mode, 0.25, true, s);
        if (v.excluded && inside > 0) ++row.false_exclusions;
        const PowerSumEstimate est = power_sums_disc(p, unit, q, true, s);
        if (std::llround(est.values[0].real()) != inside) ++row.false_counts;
      }
      rows.push_back(row);
    }
  return rows;
}

std::string to_csv(const std::vector<FalseRateRow>& rows) {
  std::ostringstream os;
  os << "d,q,h_list,trials,false_exclusions,false_counts\n";
  for (const auto& r : rows)
    os << r.d << ',' << r.q << ',' << r.h_list << ',' << r.trials << ','
       << r.false_exclusions << ',' << r.false_counts << '\n';
  return os.str();
}

}  // namespace polyroot::cli
