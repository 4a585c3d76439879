#include "wignerlab/modspace.hpp"

#include <cmath>
#include <numbers>

#include "wignerlab/error.hpp"
#include "wignerlab/states.hpp"

namespace wignerlab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::convergent:
      return "convergent";
    case Verdict::diverging:
      return "diverging";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

double japanese_bracket_weight(double x, double p, double s) {
  if (s == 0.0) return 1.0;
  return std::pow(1.0 + x * x + p * p, 0.5 * s);
}

namespace {

struct IndexRange {
  std::size_t first;
  std::size_t last;  // inclusive
  bool empty;
};

// Indices whose coordinate lies in [-cutoff, cutoff]; lattices are symmetric
// up to the one extra negative point, so the selection is contiguous.
template <typename Axis>
IndexRange select(const Axis& axis, double cutoff) {
  const double slack = 1e-12 * axis.spacing();
  std::size_t first = axis.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (std::abs(axis.point(i)) <= cutoff + slack) {
      first = std::min(first, i);
      last = i;
    }
  }
  return {first, last, first > last};
}

double trapezoid_weight(std::size_t i, const IndexRange& r) { return (i == r.first || i == r.last) ? 0.5 : 1.0; }

}  // namespace

double weighted_l1_norm(const PhaseSpaceField& field, double s, const PhaseSpaceRegion& region) {
  if (!(s >= 0.0)) throw InvalidArgument("weight exponent s must be non-negative");
  const auto& g = field.grid();
  if (region.p_cutoff > g.p.half_width() * (1.0 + 1e-12))
    throw InvalidArgument("momentum cutoff exceeds the grid's momentum half-width");
  if (region.x_cutoff > g.x.half_width() * (1.0 + 1e-12))
    throw InvalidArgument("position cutoff exceeds the grid half-width");
  if (region.p_cutoff < 0.0 || region.x_cutoff < 0.0) throw InvalidArgument("cutoffs must be non-negative");

  const auto xr = select(g.x, region.x_cutoff);
  const auto pr = select(g.p, region.p_cutoff);
  if (xr.empty || pr.empty) return 0.0;

  std::vector<double> p_weight(field.np(), 0.0);
  for (std::size_t j = pr.first; j <= pr.last; ++j) p_weight[j] = trapezoid_weight(j, pr);

  double total = 0.0;
  for (std::size_t i = xr.first; i <= xr.last; ++i) {
    const double x = g.x.point(i);
    const auto row = field.row(i);
    double acc = 0.0;
    for (std::size_t j = pr.first; j <= pr.last; ++j)
      acc += p_weight[j] * std::abs(row[j]) * japanese_bracket_weight(x, g.p.point(j), s);
    total += trapezoid_weight(i, xr) * acc;
  }
  return total * g.x.spacing() * g.p.spacing();
}

double weighted_l1_norm(const PhaseSpaceField& field, double s, double cutoff) {
  return weighted_l1_norm(field, s, PhaseSpaceRegion{field.grid().x.half_width(), cutoff});
}

std::vector<PhaseSpaceRegion> cutoff_ladder(const PhaseSpaceGrid& grid) {
  std::vector<PhaseSpaceRegion> ladder;
  // At momentum p a lattice-resolved Wigner function oscillates in x with
  // wavenumber up to 2 (P_max - |p|) / hbar, so interference fringes are only
  // carried for |p| <= P_max / 2 (and likewise |x| <= L / 2). The ladder stops
  // there; beyond it partial norms are damped by the lattice, not the state.
  const double x_top = 0.5 * grid.x.half_width();
  const double p_top = 0.5 * grid.p.half_width();
  for (double t : {0.125, 0.25, 0.5, 1.0}) ladder.push_back({t * x_top, t * p_top});
  return ladder;
}

WeightedNormReport classify_ladder(const PhaseSpaceField& field, double s, std::string window_label,
                                   const Tolerances& tol) {
  WeightedNormReport report;
  report.s = s;
  report.window_label = std::move(window_label);
  for (const auto& region : cutoff_ladder(field.grid()))
    report.partial_norms.push_back({region.p_cutoff, weighted_l1_norm(field, s, region)});

  const auto& pn = report.partial_norms;
  const std::size_t k = pn.size();

  double mean_t = 0.0, mean_v = 0.0;
  for (const auto& e : pn) {
    mean_t += std::log10(e.cutoff);
    mean_v += e.value;
  }
  mean_t /= static_cast<double>(k);
  mean_v /= static_cast<double>(k);
  double sxy = 0.0, sxx = 0.0;
  for (const auto& e : pn) {
    const double dt = std::log10(e.cutoff) - mean_t;
    sxy += dt * (e.value - mean_v);
    sxx += dt * dt;
  }
  report.growth_exponent = sxx > 0.0 ? sxy / sxx : 0.0;

  const double last = pn[k - 1].value;
  const double prev = pn[k - 2].value;
  bool increasing = true;
  for (std::size_t i = 1; i < k; ++i) increasing = increasing && pn[i].value > pn[i - 1].value;

  if (last == 0.0 || (last - prev) < tol.convergence_rel * last) {
    report.verdict = Verdict::convergent;
  } else if (increasing && report.growth_exponent >= tol.diverging_slope) {
    report.verdict = Verdict::diverging;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  return report;
}

WeightedNormReport modulation_norm(const SampledState& psi, double s, const PhaseSpaceGrid& grid,
                                   const ModulationOptions& options) {
  if (!(s >= 0.0)) throw InvalidArgument("weight exponent s must be non-negative");
  const SampledState window = options.window ? *options.window
                                             : catalog_state(descriptor::Hermite{0}, grid.x, grid.hbar);
  const auto w = cross_wigner(psi, window, grid, options.wigner);
  return classify_ladder(w.field, s, window.label, options.tol);
}

WeightedNormReport feichtinger_diagnostic(const SampledState& psi, const PhaseSpaceGrid& grid, const Tolerances& tol,
                                          const WignerOptions& wigner_options) {
  const double n = norm(psi);
  if (std::abs(n - 1.0) > tol.unit_norm)
    throw InvalidArgument("feichtinger diagnostic needs a unit-norm state (norm = " + std::to_string(n) + ")");
  const auto w = wigner(psi, grid, wigner_options);
  return classify_ladder(w.field, 0.0, "self", tol);
}

bool resolves_support(const PhaseSpaceGrid& grid, double support_width) {
  if (!(support_width > 0.0)) return false;
  return grid.p.half_width() >= 32.0 * 2.0 * std::numbers::pi * grid.hbar / support_width;
}

}  // namespace wignerlab
