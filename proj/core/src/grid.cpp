#include "wignerlab/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "wignerlab/error.hpp"

namespace wignerlab {

PositionGrid::PositionGrid(std::size_t n_points, double half_width)
    : n_(n_points), half_width_(half_width), dx_(2.0 * half_width / static_cast<double>(n_points)) {
  if (n_points < 8 || !std::has_single_bit(n_points))
    throw InvalidArgument("grid size must be a power of two >= 8, got " + std::to_string(n_points));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw InvalidArgument("grid half-width must be positive");
}

std::vector<double> PositionGrid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t k = 0; k < n_; ++k) xs[k] = point(k);
  return xs;
}

MomentumAxis::MomentumAxis(const PositionGrid& x_grid, double hbar)
    : n_(x_grid.size()), dp_(2.0 * std::numbers::pi * hbar / (static_cast<double>(x_grid.size()) * x_grid.spacing())) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument("hbar must be positive");
}

std::vector<double> MomentumAxis::points() const {
  std::vector<double> ps(n_);
  for (std::size_t j = 0; j < n_; ++j) ps[j] = point(j);
  return ps;
}

bool PhaseSpaceGrid::self_reciprocal(double rel_tol) const {
  return std::abs(x.spacing() - p.spacing()) <= rel_tol * x.spacing();
}

PhaseSpaceGrid make_grid(std::size_t n_points, double half_width, double hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument("hbar must be positive");
  PositionGrid x(n_points, half_width);
  MomentumAxis p(x, hbar);
  return PhaseSpaceGrid{x, p, hbar};
}

PhaseSpaceGrid make_self_reciprocal_grid(std::size_t n_points, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  return make_grid(n_points, std::sqrt(std::numbers::pi * hbar * static_cast<double>(n_points) / 2.0), hbar);
}

SampledState::SampledState(PositionGrid g, std::vector<Complex> v, std::string l)
    : grid(g), values(std::move(v)), label(std::move(l)) {
  if (values.size() != grid.size())
    throw InvalidArgument("state has " + std::to_string(values.size()) + " samples, grid has " +
                          std::to_string(grid.size()));
}

PhaseSpaceField::PhaseSpaceField(PhaseSpaceGrid grid)
    : grid_(grid), values_(grid.x.size() * grid.p.size()) {}

PhaseSpaceField::PhaseSpaceField(PhaseSpaceGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.x.size() * grid_.p.size()) throw InvalidArgument("field size does not match its grid");
}

double PhaseSpaceField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double PhaseSpaceField::max_abs_imag() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
  return m;
}

double trapezoid(std::span<const double> f, double h) {
  if (f.empty()) return 0.0;
  double sum = 0.0;
  for (double v : f) sum += v;
  return h * (sum - 0.5 * (f.front() + f.back()));
}

Complex trapezoid(std::span<const Complex> f, double h) {
  if (f.empty()) return {};
  Complex sum{};
  for (const auto& v : f) sum += v;
  return h * (sum - 0.5 * (f.front() + f.back()));
}

Complex inner_product(const SampledState& psi, const SampledState& phi) {
  if (!(psi.grid == phi.grid)) throw InvalidArgument("states live on different grids");
  std::vector<Complex> integrand(psi.values.size());
  for (std::size_t k = 0; k < integrand.size(); ++k) integrand[k] = psi.values[k] * std::conj(phi.values[k]);
  return trapezoid(integrand, psi.grid.spacing());
}

double norm(const SampledState& psi) {
  std::vector<double> density(psi.values.size());
  for (std::size_t k = 0; k < density.size(); ++k) density[k] = std::norm(psi.values[k]);
  return std::sqrt(trapezoid(density, psi.grid.spacing()));
}

SampledState normalized(SampledState psi) {
  const double n = norm(psi);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize a zero or non-finite state");
  for (auto& v : psi.values) v /= n;
  return psi;
}

double max_abs_difference(const PhaseSpaceField& a, const PhaseSpaceField& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("fields live on different grids");
  double m = 0.0;
  auto va = a.values();
  auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
  return m;
}

}  // namespace wignerlab
