#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wignerlab/grid.hpp"

namespace wignerlab {

namespace descriptor {

/// (pi*sigma^2)^(-1/4) exp(-x^2 / (2 sigma^2)).
struct Gaussian {
  double sigma;
};

/// k-th Hermite function with width sqrt(hbar).
struct Hermite {
  unsigned k;
};

/// Normalized linear combination sum_k c_k h_k of Hermite functions.
struct HermiteCombination {
  std::vector<Complex> coefficients;
};

/// Indicator of [a, b], normalized.
struct Box {
  double a;
  double b;
};

/// Samples read from a CSV file with header x,re,im.
struct Samples {
  std::filesystem::path path;
  bool renormalize = false;
};

}  // namespace descriptor

using StateDescriptor = std::variant<descriptor::Gaussian, descriptor::Hermite,
                                     descriptor::HermiteCombination, descriptor::Box,
                                     descriptor::Samples>;

/// Parses the colon-separated forms
///   gaussian:SIGMA   hermite:K   box:A:B   file:PATH   combo:C0:C1:...
/// (file+norm:PATH requests renormalization of the samples).
StateDescriptor parse_state_descriptor(std::string_view text);
std::string to_string(const StateDescriptor& d);

/// Samples the descriptor on `grid`. Analytic states are renormalized by
/// trapezoid quadrature; file samples only when requested.
SampledState catalog_state(const StateDescriptor& d, const PositionGrid& grid, double hbar);

/// Hermite functions h_0..h_{count-1} (width sqrt(hbar)) evaluated at the grid
/// points by the three-term recurrence, without renormalization.
std::vector<std::vector<double>> hermite_functions(unsigned count, const PositionGrid& grid, double hbar);

/// Reads a CSV `x,re,im` state. The x column must be strictly increasing,
/// uniformly spaced within 1e-9 relative, and coincide with `grid`.
SampledState read_state_csv(const std::filesystem::path& path, const PositionGrid& grid);
void write_state_csv(const SampledState& psi, const std::filesystem::path& path);

}  // namespace wignerlab
