#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wignerlab/grid.hpp"
#include "wignerlab/modspace.hpp"
#include "wignerlab/tolerances.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct EnsembleMember {
  SampledState state;
  double weight;
};

/// Mixed state {(psi_j, alpha_j)}: unit-norm members, positive weights summing
/// to one. Validated on construction.
struct Ensemble {
  std::vector<EnsembleMember> members;
  std::string label;

  Ensemble(std::vector<EnsembleMember> m, std::string l = {}, const Tolerances& tol = {});
};

/// Matrix of A in the truncated Hermite basis: column j is
/// sqrt(lambda_j) * (coefficients of psi_j).
struct EnsembleOperator {
  ComplexMatrix matrix;
  std::string basis_label = "hermite";
  double truncation_residual = 0.0;
};

struct DensityMatrix {
  ComplexMatrix matrix;
  double trace_residual = 0.0;
};

struct PartialIsometry {
  ComplexMatrix matrix;
  Eigen::Index rank = 0;
  /// ||U*U - P|| with P the orthogonal projection onto range(A*).
  double defect = 0.0;
  /// ||A - A'U||.
  double factorization_residual = 0.0;
};

struct BasisProjection {
  ComplexVector coefficients;
  double residual;  // 1 - sum |a_k|^2
};

inline constexpr int kDefaultBasisDim = 32;
inline constexpr int kMaxBasisDim = 128;

/// a_k = (psi | h_k) by trapezoid quadrature. Throws InvalidArgument when
/// the grid cannot resolve hermite(dim-1).
BasisProjection project_to_basis(const SampledState& psi, int dim, double hbar, const Tolerances& tol = {});

/// sum_k c_k h_k sampled on `grid`, renormalized.
SampledState synthesize_from_basis(const ComplexVector& coefficients, const PositionGrid& grid, double hbar,
                                   std::string label = {});

EnsembleOperator build_A(const Ensemble& ensemble, int dim, double hbar, const Tolerances& tol = {});

/// rho = A A*.
DensityMatrix density_matrix(const EnsembleOperator& op);

/// rho = sum_j alpha_j c_j c_j*, computed without A.
DensityMatrix density_matrix_direct(const Ensemble& ensemble, int dim, double hbar, const Tolerances& tol = {});

/// Spectral decomposition of rho as an ensemble of eigenvectors synthesized on
/// `grid`; eigenvalues below tol.eigen_floor are dropped, eigenvalues below
/// -tol.psd raise InvalidArgument.
Ensemble spectral_ensemble(const DensityMatrix& rho, const PositionGrid& grid, double hbar,
                           const Tolerances& tol = {});

/// U = pinv(A') A, so that A = A' U. Throws NotEquivalent when AA* and A'A'*
/// differ by more than tol.equivalence.
PartialIsometry find_partial_isometry(const EnsembleOperator& a, const EnsembleOperator& a_prime,
                                      const Tolerances& tol = {});

/// rho(z) = sum_j alpha_j W psi_j(z).
PhaseSpaceField mixed_wigner(const Ensemble& ensemble, const PhaseSpaceGrid& grid, const WignerOptions& options = {});

enum class ClosureOutcome { consistent, violated, inconclusive };
std::string_view to_string(ClosureOutcome o);

struct ClosureReport {
  double density_residual = 0.0;  // ||rho1 - rho2|| in the Hermite basis
  double wigner_residual = 0.0;   // max |rho1(z) - rho2(z)|
  std::vector<WeightedNormReport> first;
  std::vector<WeightedNormReport> second;
  ClosureOutcome outcome = ClosureOutcome::inconclusive;
};

/// Checks that two finite ensembles with the same density operator are both
/// Feichtinger states at order s whenever the first one is.
ClosureReport feichtinger_closure_check(const Ensemble& e1, const Ensemble& e2, const PhaseSpaceGrid& grid, double s,
                                        int dim = kDefaultBasisDim, const Tolerances& tol = {});

}  // namespace wignerlab
