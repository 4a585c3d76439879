#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wignerlab/tolerances.hpp"

namespace wignerlab::cli {

struct RunConfig {
  double hbar = 1.0;
  std::size_t grid_n = 1024;
  double grid_l = 16.0;
  int dim = 32;
  unsigned threads = 0;
  Tolerances tol;
  std::filesystem::path output_dir;
};

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wignerlab::cli
