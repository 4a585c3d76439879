#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace wignerlab {

using Complex = std::complex<double>;

/// Uniform, left-inclusive position lattice x_k = -L + k*dx, k = 0..N-1,
/// with dx = 2L/N. N is a power of two, N >= 8.
class PositionGrid {
 public:
  PositionGrid(std::size_t n_points, double half_width);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] double half_width() const { return half_width_; }
  [[nodiscard]] double spacing() const { return dx_; }
  [[nodiscard]] double point(std::size_t k) const { return -half_width_ + static_cast<double>(k) * dx_; }
  [[nodiscard]] std::vector<double> points() const;

  friend bool operator==(const PositionGrid&, const PositionGrid&) = default;

 private:
  std::size_t n_;
  double half_width_;
  double dx_;
};

/// Momentum lattice conjugate to a PositionGrid: p_j = (j - N/2)*dp with
/// dp = 2*pi*hbar/(N*dx).
class MomentumAxis {
 public:
  MomentumAxis(const PositionGrid& x_grid, double hbar);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] double spacing() const { return dp_; }
  /// Largest representable |p|, i.e. N*dp/2.
  [[nodiscard]] double half_width() const { return 0.5 * static_cast<double>(n_) * dp_; }
  [[nodiscard]] double point(std::size_t j) const {
    return (static_cast<double>(j) - 0.5 * static_cast<double>(n_)) * dp_;
  }
  [[nodiscard]] std::vector<double> points() const;

  friend bool operator==(const MomentumAxis&, const MomentumAxis&) = default;

 private:
  std::size_t n_;
  double dp_;
};

struct PhaseSpaceGrid {
  PositionGrid x;
  MomentumAxis p;
  double hbar;

  /// dx == dp, so a momentum lattice can be read as a position lattice.
  [[nodiscard]] bool self_reciprocal(double rel_tol = 1e-12) const;

  friend bool operator==(const PhaseSpaceGrid&, const PhaseSpaceGrid&) = default;
};

/// Validates its arguments and builds the phase-space lattice; throws
/// InvalidArgument for non-power-of-two or too small n_points and for
/// non-positive half_width / hbar.
PhaseSpaceGrid make_grid(std::size_t n_points, double half_width, double hbar);

/// Grid with dx == dp, i.e. half_width = sqrt(pi*hbar*N/2). Needed by the
/// Fourier metaplectic generator.
PhaseSpaceGrid make_self_reciprocal_grid(std::size_t n_points, double hbar);

/// Wave function samples on a position grid.
struct SampledState {
  PositionGrid grid;
  std::vector<Complex> values;
  std::string label;

  SampledState(PositionGrid g, std::vector<Complex> v, std::string l = {});
};

/// Function on the (x, p) lattice stored row-major: index = ix * n_p + ip.
class PhaseSpaceField {
 public:
  explicit PhaseSpaceField(PhaseSpaceGrid grid);
  PhaseSpaceField(PhaseSpaceGrid grid, std::vector<Complex> values);

  [[nodiscard]] const PhaseSpaceGrid& grid() const { return grid_; }
  [[nodiscard]] std::size_t nx() const { return grid_.x.size(); }
  [[nodiscard]] std::size_t np() const { return grid_.p.size(); }

  [[nodiscard]] Complex& at(std::size_t ix, std::size_t ip) { return values_[ix * np() + ip]; }
  [[nodiscard]] const Complex& at(std::size_t ix, std::size_t ip) const { return values_[ix * np() + ip]; }

  [[nodiscard]] std::span<Complex> row(std::size_t ix) { return {values_.data() + ix * np(), np()}; }
  [[nodiscard]] std::span<const Complex> row(std::size_t ix) const { return {values_.data() + ix * np(), np()}; }

  [[nodiscard]] std::span<const Complex> values() const { return values_; }
  [[nodiscard]] std::span<Complex> values() { return values_; }

  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double max_abs_imag() const;

 private:
  PhaseSpaceGrid grid_;
  std::vector<Complex> values_;
};

// Trapezoid quadrature on a uniform lattice.
double trapezoid(std::span<const double> f, double h);
Complex trapezoid(std::span<const Complex> f, double h);

/// (psi|phi) = integral of psi * conj(phi).
Complex inner_product(const SampledState& psi, const SampledState& phi);
double norm(const SampledState& psi);

/// Returns psi scaled to unit norm; throws InvalidArgument for a zero state.
SampledState normalized(SampledState psi);

/// max_{x,p} |a - b|; throws InvalidArgument if the grids differ.
double max_abs_difference(const PhaseSpaceField& a, const PhaseSpaceField& b);

}  // namespace wignerlab
