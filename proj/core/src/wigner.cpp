#include "wignerlab/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "fft.hpp"
#include "wignerlab/error.hpp"

namespace wignerlab {

using detail::AlignedBuffer;
using detail::Direction;
using detail::FftPlan;

namespace {

void require_on_grid(const SampledState& psi, const PhaseSpaceGrid& grid, const char* which) {
  if (!(psi.grid == grid.x))
    throw InvalidArgument(std::string(which) + " is not sampled on the phase-space grid's position lattice");
}

// Band-limited (trigonometric) interpolation onto the lattice with spacing
// dx/2: out[2k] = psi[k], odd entries are midpoints.
std::vector<Complex> upsample_by_two(const SampledState& psi) {
  const std::size_t n = psi.values.size();
  FftPlan fwd(n, Direction::forward);
  FftPlan bwd(2 * n, Direction::backward);
  AlignedBuffer in(n), spec(n), padded(2 * n), out(2 * n);
  std::copy(psi.values.begin(), psi.values.end(), in.data());
  fwd.execute(in, spec);

  const std::size_t half = n / 2;
  for (std::size_t j = 0; j < half; ++j) padded[j] = spec[j];
  for (std::size_t j = half + 1; j < n; ++j) padded[n + j] = spec[j];
  // Nyquist bin split evenly between +N/2 and -N/2.
  padded[half] = 0.5 * spec[half];
  padded[2 * n - half] = 0.5 * spec[half];
  bwd.execute(padded, out);

  std::vector<Complex> result(2 * n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < 2 * n; ++i) result[i] = out[i] * scale;
  // Keep the original samples exact.
  for (std::size_t k = 0; k < n; ++k) result[2 * k] = psi.values[k];
  return result;
}

unsigned resolve_threads(unsigned requested, std::size_t work_items) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(1, work_items)));
}

}  // namespace

WignerResult cross_wigner(const SampledState& psi, const SampledState& phi, const PhaseSpaceGrid& grid,
                          const WignerOptions& options) {
  require_on_grid(psi, grid, "psi");
  require_on_grid(phi, grid, "phi");

  const std::size_t n = grid.x.size();
  const std::size_t fine = 2 * n;
  const auto u = upsample_by_two(psi);
  const auto v = &psi == &phi ? u : upsample_by_two(phi);

  // With y = m*dx the kernel e^{-i p y / hbar} at p_l = l*dp is e^{-2 pi i l m / N},
  // so after folding m and m - N together a single N-point DFT per slice
  // yields every p on the canonical momentum axis.
  const double prefactor = grid.x.spacing() / (2.0 * std::numbers::pi * grid.hbar);
  const std::size_t half = n / 2;

  PhaseSpaceField field(grid);
  FftPlan plan(n, Direction::forward);

  auto slice_range = [&](std::size_t begin, std::size_t end) {
    AlignedBuffer folded(n), spectrum(n);
    for (std::size_t k = begin; k < end; ++k) {
      const auto centre = static_cast<std::ptrdiff_t>(2 * k);
      for (std::size_t r = 0; r < n; ++r) {
        Complex acc{};
        for (std::ptrdiff_t m : {static_cast<std::ptrdiff_t>(r), static_cast<std::ptrdiff_t>(r) - static_cast<std::ptrdiff_t>(n)}) {
          const std::ptrdiff_t a = centre + m;
          const std::ptrdiff_t b = centre - m;
          if (a >= 0 && b >= 0 && a < static_cast<std::ptrdiff_t>(fine) && b < static_cast<std::ptrdiff_t>(fine))
            acc += u[static_cast<std::size_t>(a)] * std::conj(v[static_cast<std::size_t>(b)]);
        }
        folded[r] = acc;
      }
      plan.execute(folded, spectrum);
      auto row = field.row(k);
      // column j <-> l = j - N/2, DFT bin l mod N
      for (std::size_t j = 0; j < n; ++j) row[j] = prefactor * spectrum[(j + half) % n];
    }
  };

  const unsigned threads = resolve_threads(options.threads, n / 64);
  if (threads <= 1) {
    slice_range(0, n);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(n, t * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) workers.emplace_back(slice_range, begin, end);
    }
  }

  return WignerResult{std::move(field), {psi.label, phi.label}, grid.hbar, 0.0};
}

WignerResult wigner(const SampledState& psi, const PhaseSpaceGrid& grid, const WignerOptions& options) {
  auto result = cross_wigner(psi, psi, grid, options);
  const double scale = result.field.max_abs();
  result.imag_ratio = scale > 0.0 ? result.field.max_abs_imag() / scale : 0.0;
  for (auto& z : result.field.values()) z = Complex(z.real(), 0.0);
  return result;
}

Complex integrate(const PhaseSpaceField& field) {
  const std::size_t nx = field.nx();
  const std::size_t np = field.np();
  Complex total{};
  for (std::size_t i = 0; i < nx; ++i) {
    const double wx = (i == 0 || i + 1 == nx) ? 0.5 : 1.0;
    Complex row{};
    auto r = field.row(i);
    for (std::size_t j = 0; j < np; ++j) {
      const double wp = (j == 0 || j + 1 == np) ? 0.5 : 1.0;
      row += wp * r[j];
    }
    total += wx * row;
  }
  return total * field.grid().x.spacing() * field.grid().p.spacing();
}

double overlap_identity_check(const SampledState& psi, const SampledState& phi, const PhaseSpaceGrid& grid) {
  const auto w = cross_wigner(psi, phi, grid);
  return std::abs(integrate(w.field) - inner_product(psi, phi));
}

std::vector<Complex> momentum_representation(const SampledState& psi, const PhaseSpaceGrid& grid) {
  require_on_grid(psi, grid, "psi");
  const std::size_t n = grid.x.size();
  // x_k = (k - N/2) dx and p_j = (j - N/2) dp with dx dp N = 2 pi hbar, so the
  // centred kernel factorizes into (-1)^(j+k) times a plain DFT (N/2 is even).
  FftPlan plan(n, Direction::forward);
  AlignedBuffer in(n), out(n);
  for (std::size_t k = 0; k < n; ++k) in[k] = (k % 2 == 0 ? 1.0 : -1.0) * psi.values[k];
  plan.execute(in, out);
  const double c = grid.x.spacing() / std::sqrt(2.0 * std::numbers::pi * grid.hbar);
  std::vector<Complex> result(n);
  for (std::size_t j = 0; j < n; ++j) result[j] = (j % 2 == 0 ? c : -c) * out[j];
  return result;
}

namespace {

// Trigonometric interpolant of the samples evaluated at arbitrary x; zero
// outside [-L, L).
std::vector<Complex> evaluate_interpolant(const SampledState& psi, std::span<const double> xs) {
  const std::size_t n = psi.values.size();
  FftPlan plan(n, Direction::forward);
  AlignedBuffer in(n), spec(n);
  std::copy(psi.values.begin(), psi.values.end(), in.data());
  plan.execute(in, spec);

  const double x0 = psi.grid.point(0);
  const double dx = psi.grid.spacing();
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<Complex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double t = (xs[i] - x0) / dx;
    if (t < 0.0 || t > static_cast<double>(n - 1)) continue;
    const double theta = 2.0 * std::numbers::pi * t * inv_n;
    Complex acc = spec[n / 2] * std::cos(std::numbers::pi * t);  // Nyquist
    for (std::ptrdiff_t j = -half + 1; j < half; ++j) {
      const auto bin = static_cast<std::size_t>((j + static_cast<std::ptrdiff_t>(n)) % static_cast<std::ptrdiff_t>(n));
      acc += spec[bin] * std::polar(1.0, theta * static_cast<double>(j));
    }
    out[i] = acc * inv_n;
  }
  return out;
}

}  // namespace

SampledState apply_metaplectic(const SampledState& psi, const MetaplecticOp& op, const PhaseSpaceGrid& grid) {
  require_on_grid(psi, grid, "psi");
  if (const auto* scale = std::get_if<metaplectic::Scale>(&op)) {
    const double lambda = scale->lambda;
    if (lambda == 0.0 || !std::isfinite(lambda)) throw InvalidArgument("scale factor must be non-zero");
    std::vector<double> xs = grid.x.points();
    for (auto& x : xs) x /= lambda;
    auto values = evaluate_interpolant(psi, xs);
    const double amp = 1.0 / std::sqrt(std::abs(lambda));
    for (auto& z : values) z *= amp;
    return SampledState(psi.grid, std::move(values), "scale(" + std::to_string(lambda) + ")[" + psi.label + "]");
  }
  if (!grid.self_reciprocal())
    throw InvalidArgument("the Fourier generator needs a self-reciprocal grid (dx == dp); use make_self_reciprocal_grid");
  return SampledState(psi.grid, momentum_representation(psi, grid), "fourier[" + psi.label + "]");
}

std::pair<double, double> inverse_symplectic(const MetaplecticOp& op, double x, double p) {
  if (const auto* scale = std::get_if<metaplectic::Scale>(&op)) return {x / scale->lambda, p * scale->lambda};
  return {-p, x};
}

Complex sample_bilinear(const PhaseSpaceField& field, double x, double p) {
  const auto& g = field.grid();
  const double tx = (x - g.x.point(0)) / g.x.spacing();
  const double tp = (p - g.p.point(0)) / g.p.spacing();
  const double max_x = static_cast<double>(field.nx() - 1);
  const double max_p = static_cast<double>(field.np() - 1);
  constexpr double slack = 1e-9;
  if (tx < -slack || tp < -slack || tx > max_x + slack || tp > max_p + slack) return {};
  const double cx = std::clamp(tx, 0.0, max_x);
  const double cp = std::clamp(tp, 0.0, max_p);
  auto i0 = static_cast<std::size_t>(std::floor(cx));
  auto j0 = static_cast<std::size_t>(std::floor(cp));
  i0 = std::min(i0, field.nx() - 2);
  j0 = std::min(j0, field.np() - 2);
  const double fx = cx - static_cast<double>(i0);
  const double fp = cp - static_cast<double>(j0);
  return (1 - fx) * (1 - fp) * field.at(i0, j0) + fx * (1 - fp) * field.at(i0 + 1, j0) +
         (1 - fx) * fp * field.at(i0, j0 + 1) + fx * fp * field.at(i0 + 1, j0 + 1);
}

}  // namespace wignerlab
