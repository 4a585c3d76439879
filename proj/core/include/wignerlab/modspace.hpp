#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wignerlab/grid.hpp"
#include "wignerlab/tolerances.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

enum class Verdict { convergent, diverging, inconclusive };

std::string_view to_string(Verdict v);

struct PartialNorm {
  double cutoff;  // momentum cutoff P
  double value;
};

/// Evidence for (non-)membership of a state in M^1_s. A verdict is a
/// numerical classification of the cutoff ladder, not a proof.
struct WeightedNormReport {
  double s = 0.0;
  std::string window_label;
  std::vector<PartialNorm> partial_norms;  // ascending cutoff
  Verdict verdict = Verdict::inconclusive;
  /// Least-squares slope of the partial norms against log10 of the cutoff.
  double growth_exponent = 0.0;
};

/// Rectangle |x| <= x_cutoff, |p| <= p_cutoff.
struct PhaseSpaceRegion {
  double x_cutoff;
  double p_cutoff;
};

/// <z>^s = (1 + x^2 + p^2)^(s/2).
double japanese_bracket_weight(double x, double p, double s);

/// Trapezoid quadrature of |field| <z>^s over |p| <= cutoff (all x).
/// Throws InvalidArgument for s < 0 or a cutoff beyond the momentum axis.
double weighted_l1_norm(const PhaseSpaceField& field, double s, double cutoff);
double weighted_l1_norm(const PhaseSpaceField& field, double s, const PhaseSpaceRegion& region);

/// Cutoff ladder t * (L/2, P_max/2) for t = 1/8, 1/4, 1/2, 1.
std::vector<PhaseSpaceRegion> cutoff_ladder(const PhaseSpaceGrid& grid);

/// Partial norms of `field` on the ladder, classified with `tol`.
WeightedNormReport classify_ladder(const PhaseSpaceField& field, double s, std::string window_label,
                                   const Tolerances& tol = {});

struct ModulationOptions {
  /// Window for the cross transform; hermite(0) when empty.
  std::optional<SampledState> window;
  Tolerances tol;
  WignerOptions wigner;
};

/// ||psi||_{phi, M^1_s} = || W(psi, phi) ||_{L^1_s} on the cutoff ladder.
WeightedNormReport modulation_norm(const SampledState& psi, double s, const PhaseSpaceGrid& grid,
                                   const ModulationOptions& options = {});

/// S_0 membership evidence: s = 0 ladder of W(psi) itself.
WeightedNormReport feichtinger_diagnostic(const SampledState& psi, const PhaseSpaceGrid& grid,
                                          const Tolerances& tol = {}, const WignerOptions& wigner_options = {});

/// Heuristic resolution requirement for divergence detection:
/// P_max >= 32 * 2 pi hbar / support_width.
bool resolves_support(const PhaseSpaceGrid& grid, double support_width);

}  // namespace wignerlab
