#include "wignerlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "wignerlab/ensemble.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

namespace {

double edge_weight(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }

struct RawMoments {
  double mass = 0.0;
  std::array<double, 2> first{};
  Matrix2 second{};
};

RawMoments quadrature_moments(const PhaseSpaceField& rho) {
  const auto& g = rho.grid();
  RawMoments m;
  for (std::size_t i = 0; i < rho.nx(); ++i) {
    const double x = g.x.point(i);
    const double wx = edge_weight(i, rho.nx());
    const auto row = rho.row(i);
    for (std::size_t j = 0; j < rho.np(); ++j) {
      const double p = g.p.point(j);
      const double w = wx * edge_weight(j, rho.np()) * row[j].real();
      m.mass += w;
      m.first[0] += w * x;
      m.first[1] += w * p;
      m.second[0][0] += w * x * x;
      m.second[0][1] += w * x * p;
      m.second[1][1] += w * p * p;
    }
  }
  const double cell = g.x.spacing() * g.p.spacing();
  m.mass *= cell;
  for (auto& v : m.first) v *= cell;
  m.second[0][0] *= cell;
  m.second[0][1] *= cell;
  m.second[1][1] *= cell;
  m.second[1][0] = m.second[0][1];
  return m;
}

Matrix2 centred(const Matrix2& raw, const std::array<double, 2>& mean, double mass) {
  Matrix2 out{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out[a][b] = raw[a][b] - (2.0 - mass) * mean[a] * mean[b];
  return out;
}

// Second derivatives (and the gradient) of F rho at the origin by central
// differences with step h.
struct Derivatives {
  Complex value;
  std::array<Complex, 2> gradient;
  std::array<std::array<Complex, 2>, 2> hessian;
};

Derivatives central_differences(const PhaseSpaceField& rho, double h) {
  auto f = [&](double a, double b) { return characteristic_function_at(rho, a, b); };
  const Complex f00 = f(0, 0);
  const Complex fp0 = f(h, 0), fm0 = f(-h, 0), f0p = f(0, h), f0m = f(0, -h);
  const Complex fpp = f(h, h), fpm = f(h, -h), fmp = f(-h, h), fmm = f(-h, -h);
  Derivatives d;
  d.value = f00;
  d.gradient = {(fp0 - fm0) / (2 * h), (f0p - f0m) / (2 * h)};
  d.hessian[0][0] = (fp0 - 2.0 * f00 + fm0) / (h * h);
  d.hessian[1][1] = (f0p - 2.0 * f00 + f0m) / (h * h);
  d.hessian[0][1] = d.hessian[1][0] = (fpp - fpm - fmp + fmm) / (4 * h * h);
  return d;
}

Derivatives richardson(const Derivatives& coarse, const Derivatives& fine) {
  Derivatives r;
  r.value = fine.value;
  for (int a = 0; a < 2; ++a) {
    r.gradient[a] = (4.0 * fine.gradient[a] - coarse.gradient[a]) / 3.0;
    for (int b = 0; b < 2; ++b) r.hessian[a][b] = (4.0 * fine.hessian[a][b] - coarse.hessian[a][b]) / 3.0;
  }
  return r;
}

// d_a F rho(0) = (-i/hbar) (2 pi hbar)^-1 int z_a rho, d_a d_b F rho(0) = -(1/hbar^2) (2 pi hbar)^-1 int z_a z_b rho.
RawMoments moments_from_derivatives(const Derivatives& d, double hbar) {
  const double norm = 2.0 * std::numbers::pi * hbar;
  RawMoments m;
  m.mass = norm * d.value.real();
  for (int a = 0; a < 2; ++a) {
    m.first[a] = (Complex(0.0, 1.0) * hbar * norm * d.gradient[a]).real();
    for (int b = 0; b < 2; ++b) m.second[a][b] = -(hbar * hbar * norm * d.hessian[a][b]).real();
  }
  return m;
}

double max_entry_difference(const Matrix2& a, const Matrix2& b) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

}  // namespace

MarginalReport marginals(const PhaseSpaceField& rho, const Ensemble& reference, const Tolerances& tol) {
  const auto& g = rho.grid();
  for (const auto& member : reference.members) {
    const auto verdict = feichtinger_diagnostic(member.state, g, tol);
    if (verdict.verdict != Verdict::convergent)
      throw Refused("member '" + member.state.label + "' has a " + std::string(to_string(verdict.verdict)) +
                    " Feichtinger diagnostic; the marginal identities are not established for it");
  }

  MarginalReport report;
  const std::size_t nx = rho.nx();
  const std::size_t np = rho.np();
  report.x_marginal.assign(nx, 0.0);
  report.p_marginal.assign(np, 0.0);

  std::vector<double> buf(np);
  for (std::size_t i = 0; i < nx; ++i) {
    const auto row = rho.row(i);
    for (std::size_t j = 0; j < np; ++j) buf[j] = row[j].real();
    report.x_marginal[i] = trapezoid(buf, g.p.spacing());
  }
  buf.assign(nx, 0.0);
  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t i = 0; i < nx; ++i) buf[i] = rho.at(i, j).real();
    report.p_marginal[j] = trapezoid(buf, g.x.spacing());
  }

  std::vector<double> x_expected(nx, 0.0), p_expected(np, 0.0);
  for (const auto& member : reference.members) {
    const auto momentum = momentum_representation(member.state, g);
    for (std::size_t i = 0; i < nx; ++i) x_expected[i] += member.weight * std::norm(member.state.values[i]);
    for (std::size_t j = 0; j < np; ++j) p_expected[j] += member.weight * std::norm(momentum[j]);
  }
  for (std::size_t i = 0; i < nx; ++i)
    report.x_residual = std::max(report.x_residual, std::abs(report.x_marginal[i] - x_expected[i]));
  for (std::size_t j = 0; j < np; ++j)
    report.p_residual = std::max(report.p_residual, std::abs(report.p_marginal[j] - p_expected[j]));
  report.norm_residual = std::abs(integrate(rho).real() - 1.0);
  return report;
}

CovarianceReport covariance(const PhaseSpaceField& rho, const WeightedNormReport& s2_verdict, const Tolerances& tol) {
  if (s2_verdict.s < 2.0)
    throw Refused("covariances need an s >= 2 modulation-norm report, got s = " + std::to_string(s2_verdict.s));
  if (s2_verdict.verdict != Verdict::convergent)
    throw Refused("covariances need a convergent s = 2 modulation norm; verdict was " +
                  std::string(to_string(s2_verdict.verdict)));

  const double hbar = rho.grid().hbar;
  CovarianceReport report;
  const auto quad = quadrature_moments(rho);
  report.mean = quad.first;
  report.sigma = centred(quad.second, quad.first, quad.mass);

  const double h = rho.grid().p.spacing();
  const auto d1 = central_differences(rho, h);
  const auto d2 = central_differences(rho, h / 2);
  const auto d4 = central_differences(rho, h / 4);
  const auto fd = moments_from_derivatives(richardson(d1, d2), hbar);
  const auto fd_fine = moments_from_derivatives(richardson(d2, d4), hbar);
  report.second_moments_fd = centred(fd.second, fd.first, fd.mass);
  report.fd_halving_change = max_entry_difference(report.second_moments_fd,
                                                  centred(fd_fine.second, fd_fine.first, fd_fine.mass));
  report.residual = max_entry_difference(report.sigma, report.second_moments_fd);
  report.reliable = report.residual <= tol.moment_routes;
  return report;
}

Complex characteristic_function_at(const PhaseSpaceField& rho, double zeta_x, double zeta_p) {
  const auto& g = rho.grid();
  const std::size_t nx = rho.nx();
  const std::size_t np = rho.np();
  std::vector<Complex> phase_p(np);
  for (std::size_t j = 0; j < np; ++j)
    phase_p[j] = edge_weight(j, np) * std::polar(1.0, -zeta_p * g.p.point(j) / g.hbar);
  Complex total{};
  for (std::size_t i = 0; i < nx; ++i) {
    const auto row = rho.row(i);
    Complex acc{};
    for (std::size_t j = 0; j < np; ++j) acc += row[j] * phase_p[j];
    total += edge_weight(i, nx) * std::polar(1.0, -zeta_x * g.x.point(i) / g.hbar) * acc;
  }
  return total * g.x.spacing() * g.p.spacing() / (2.0 * std::numbers::pi * g.hbar);
}

Matrix2 characteristic_second_derivatives(const PhaseSpaceField& rho, double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  const auto d = central_differences(rho, h);
  Matrix2 out{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out[a][b] = d.hessian[a][b].real();
  return out;
}

PhaseSpaceField characteristic_function(const PhaseSpaceField& rho) {
  using detail::AlignedBuffer;
  const auto& g = rho.grid();
  const std::size_t nx = rho.nx();
  const std::size_t np = rho.np();

  // Both lattices are centred as (k - N/2) * spacing with reciprocal spacings,
  // so the centred 2-D transform is a plain DFT between (-1)^(i+j) factors.
  AlignedBuffer in(nx * np), out(nx * np);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < np; ++j) {
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      in[i * np + j] = sign * edge_weight(i, nx) * edge_weight(j, np) * rho.at(i, j);
    }
  detail::FftPlan plan(nx, np, detail::Direction::forward);
  plan.execute(in, out);

  const auto conjugate = make_grid(nx, g.p.half_width(), g.hbar);
  PhaseSpaceField result(conjugate);
  const double scale = g.x.spacing() * g.p.spacing() / (2.0 * std::numbers::pi * g.hbar);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < np; ++b) {
      const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
      result.at(a, b) = sign * scale * out[a * np + b];
    }
  return result;
}

}  // namespace wignerlab
