#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const auto parsed = polyroot::cli::parse_args(argc, argv);
  if (!parsed.job) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << '\n';
    return parsed.exit_code;
  }
  return polyroot::cli::run(*parsed.job, std::cerr);
}
