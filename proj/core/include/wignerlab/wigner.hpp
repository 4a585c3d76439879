#pragma once

#include <string>
#include <utility>
#include <variant>

#include "wignerlab/grid.hpp"

namespace wignerlab {

struct WignerOptions {
  /// Worker threads for the per-x slices; 0 selects hardware concurrency.
  /// The result does not depend on this value.
  unsigned threads = 0;
};

struct WignerResult {
  PhaseSpaceField field;
  std::pair<std::string, std::string> source_labels;
  double hbar;
  /// max|Im W| / max|W| before the imaginary part was discarded (diagonal
  /// transforms only; 0 for cross transforms).
  double imag_ratio = 0.0;
};

/// W(psi, phi)(x, p) = (1/2 pi hbar) int e^{-i p y / hbar} psi(x + y/2) conj(phi(x - y/2)) dy
/// on the lattice (grid.x, grid.p). Both states are band-limited upsampled by
/// two so that x +- y/2 falls on lattice points for y = m*dx; samples outside
/// the grid count as zero.
WignerResult cross_wigner(const SampledState& psi, const SampledState& phi, const PhaseSpaceGrid& grid,
                          const WignerOptions& options = {});

/// Diagonal transform W(psi) = W(psi, psi); the imaginary part is dropped.
WignerResult wigner(const SampledState& psi, const PhaseSpaceGrid& grid, const WignerOptions& options = {});

/// |int W(psi,phi) dz - (psi|phi)|, both sides by trapezoid quadrature.
double overlap_identity_check(const SampledState& psi, const SampledState& phi, const PhaseSpaceGrid& grid);

/// Integral of a field over the whole lattice (2-D trapezoid).
Complex integrate(const PhaseSpaceField& field);

/// (F psi)(p) = (2 pi hbar)^(-1/2) int e^{-i x p / hbar} psi(x) dx sampled on grid.p.
std::vector<Complex> momentum_representation(const SampledState& psi, const PhaseSpaceGrid& grid);

namespace metaplectic {
/// Fourier transform; on phase space (x, p) -> (p, -x).
struct Fourier {};
/// psi(x) -> |lambda|^(-1/2) psi(x / lambda); on phase space diag(lambda, 1/lambda).
struct Scale {
  double lambda;
};
}  // namespace metaplectic

using MetaplecticOp = std::variant<metaplectic::Fourier, metaplectic::Scale>;

/// Applies a metaplectic generator. Fourier requires a self-reciprocal grid;
/// Scale uses band-limited interpolation and treats points outside the grid as 0.
SampledState apply_metaplectic(const SampledState& psi, const MetaplecticOp& op, const PhaseSpaceGrid& grid);

/// S^{-1} z for the symplectic matrix covering `op`.
std::pair<double, double> inverse_symplectic(const MetaplecticOp& op, double x, double p);

/// Bilinear interpolation of a field at (x, p); zero outside the lattice.
Complex sample_bilinear(const PhaseSpaceField& field, double x, double p);

}  // namespace wignerlab
