#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyroot/blackbox.hpp"

namespace polyroot::cli {

enum class Command { Solve, SolveDisc, SolveReal, Count, Exclude, Deflate, Bench };

std::string to_string(Command c);

struct InputSource {
  enum Kind { None, CoeffFile, Family, FromRoots } kind = None;
  std::string path;
  std::string family;
  int k = 0;
};

struct JobSpec {
  Command command = Command::Solve;
  InputSource input;
  Complex center{0};
  Real radius = 1;
  Real lo = -1;
  Real hi = 1;
  Real epsilon = 1e-12;
  std::optional<int> q0;
  std::optional<Real> theta;
  std::string method;  // empty: the command's default
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  std::string trace;
  std::string out = "-";
  std::string format = "json";
  // bench
  bool false_rates = false;
  int trials = 1000;
  int degree = 16;
};

struct ParseResult {
  std::optional<JobSpec> job;
  int exit_code = 0;     // meaningful when job is empty
  std::string message;   // help text or the usage error
};

// Exit code 2 on usage errors. POLYROOT_SEED sets the seed unless --seed is
// given.
ParseResult parse_args(int argc, const char* const* argv);

// Exit codes: 0 success, 1 I/O error, 3 partial result, 4 solver failure.
int run(const JobSpec& job, std::ostream& err);

// The polynomial a job reads.
BlackBoxPoly load_input(const InputSource& in);

// Coefficient file: one coefficient per line, lowest degree first, as `re`
// or `re im`. Roots file: one root per line, `re im` or `re`. '#' starts a
// comment.
std::vector<Complex> read_complex_lines(const std::string& path);

struct FalseRateParams {
  int degree = 16;
  std::vector<int> qs{4, 8, 16, 32};
  std::vector<std::vector<int>> h_lists{{0}, {0, 1}, {0, 1, 2, 3}};
  int trials = 1000;
  Real band = 0.1;       // roots keep this far from the unit circle
  bool trivial = false;  // every polynomial is x^d
};

struct FalseRateRow {
  int d = 0;
  int q = 0;
  std::string h_list;
  int trials = 0;
  int false_exclusions = 0;
  int false_counts = 0;
};

// Exclusion and counting on D(0, 1) at fixed q against constructed roots.
std::vector<FalseRateRow> bench_false_rates(const FalseRateParams& params,
                                            std::uint64_t seed);

std::string to_csv(const std::vector<FalseRateRow>& rows);

}  // namespace polyroot::cli
