#include "wignerlab/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "wignerlab/error.hpp"
#include "wignerlab/states.hpp"

namespace wignerlab {

Ensemble::Ensemble(std::vector<EnsembleMember> m, std::string l, const Tolerances& tol)
    : members(std::move(m)), label(std::move(l)) {
  if (members.empty()) throw InvalidArgument("an ensemble needs at least one member");
  double total = 0.0;
  for (const auto& member : members) {
    if (!(member.weight > 0.0)) throw InvalidArgument("ensemble weights must be positive");
    if (!(member.state.grid == members.front().state.grid))
      throw InvalidArgument("ensemble members live on different grids");
    const double n = norm(member.state);
    if (std::abs(n - 1.0) > tol.unit_norm)
      throw InvalidArgument("ensemble member '" + member.state.label + "' is not unit norm (" + std::to_string(n) +
                            ")");
    total += member.weight;
  }
  if (std::abs(total - 1.0) > tol.weight_sum)
    throw InvalidArgument("ensemble weights sum to " + std::to_string(total) + ", not 1");
}

BasisProjection project_to_basis(const SampledState& psi, int dim, double hbar, const Tolerances& tol) {
  if (dim < 1 || dim > kMaxBasisDim)
    throw InvalidArgument("basis dimension must lie in [1, " + std::to_string(kMaxBasisDim) + "]");
  const auto basis = hermite_functions(static_cast<unsigned>(dim), psi.grid, hbar);
  const double dx = psi.grid.spacing();

  std::vector<double> sq(psi.grid.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = basis.back()[i] * basis.back()[i];
  const double loss = std::abs(1.0 - trapezoid(sq, dx));
  if (loss > tol.basis_loss)
    throw InvalidArgument("grid too coarse or too narrow for hermite(" + std::to_string(dim - 1) +
                          "): norm loss " + std::to_string(loss));

  BasisProjection out{ComplexVector::Zero(dim), 0.0};
  std::vector<Complex> integrand(psi.grid.size());
  double captured = 0.0;
  for (int k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i < integrand.size(); ++i) integrand[i] = psi.values[i] * basis[k][i];
    out.coefficients(k) = trapezoid(integrand, dx);
    captured += std::norm(out.coefficients(k));
  }
  out.residual = 1.0 - captured;
  return out;
}

SampledState synthesize_from_basis(const ComplexVector& coefficients, const PositionGrid& grid, double hbar,
                                   std::string label) {
  const auto basis = hermite_functions(static_cast<unsigned>(coefficients.size()), grid, hbar);
  std::vector<Complex> values(grid.size());
  for (Eigen::Index k = 0; k < coefficients.size(); ++k)
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += coefficients(k) * basis[k][i];
  return normalized(SampledState(grid, std::move(values), std::move(label)));
}

EnsembleOperator build_A(const Ensemble& ensemble, int dim, double hbar, const Tolerances& tol) {
  if (static_cast<int>(ensemble.members.size()) > dim)
    throw InvalidArgument("ensemble has more members than the basis dimension");
  double total = 0.0;
  for (const auto& m : ensemble.members) total += m.weight;
  if (std::abs(total - 1.0) > tol.weight_sum) throw InvalidArgument("ensemble weights do not sum to 1");

  EnsembleOperator op;
  op.matrix = ComplexMatrix::Zero(dim, dim);
  for (std::size_t j = 0; j < ensemble.members.size(); ++j) {
    const auto& member = ensemble.members[j];
    const auto proj = project_to_basis(member.state, dim, hbar, tol);
    op.matrix.col(static_cast<Eigen::Index>(j)) = std::sqrt(member.weight) * proj.coefficients;
    op.truncation_residual += member.weight * std::max(0.0, proj.residual);
  }
  return op;
}

DensityMatrix density_matrix(const EnsembleOperator& op) {
  DensityMatrix rho;
  rho.matrix = op.matrix * op.matrix.adjoint();
  rho.trace_residual = op.truncation_residual;
  return rho;
}

DensityMatrix density_matrix_direct(const Ensemble& ensemble, int dim, double hbar, const Tolerances& tol) {
  DensityMatrix rho;
  rho.matrix = ComplexMatrix::Zero(dim, dim);
  for (const auto& member : ensemble.members) {
    const auto proj = project_to_basis(member.state, dim, hbar, tol);
    rho.matrix += member.weight * proj.coefficients * proj.coefficients.adjoint();
    rho.trace_residual += member.weight * std::max(0.0, proj.residual);
  }
  return rho;
}

Ensemble spectral_ensemble(const DensityMatrix& rho, const PositionGrid& grid, double hbar, const Tolerances& tol) {
  const ComplexMatrix hermitian = 0.5 * (rho.matrix + rho.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) throw InvalidArgument("eigendecomposition of the density matrix failed");

  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  std::vector<EnsembleMember> members;
  double total = 0.0;
  for (Eigen::Index i = values.size() - 1; i >= 0; --i) {
    const double lambda = values(i);
    if (lambda < -tol.psd)
      throw InvalidArgument("density matrix is not positive semidefinite (eigenvalue " + std::to_string(lambda) + ")");
    if (lambda < tol.eigen_floor) continue;
    ComplexVector v = vectors.col(i);
    // Fix the phase: largest component real and positive.
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    v *= std::conj(v(pivot)) / std::abs(v(pivot));
    members.push_back({synthesize_from_basis(v, grid, hbar, "eigen" + std::to_string(members.size())), lambda});
    total += lambda;
  }
  if (members.empty()) throw InvalidArgument("density matrix has no eigenvalue above the floor");

  // A truncated operator has trace below one; the eigenvalues are returned
  // unchanged, so the weight check is relaxed by exactly that deficit.
  Tolerances relaxed = tol;
  relaxed.weight_sum = std::abs(total - 1.0) + tol.weight_sum;
  return Ensemble(std::move(members), "spectral", relaxed);
}

PartialIsometry find_partial_isometry(const EnsembleOperator& a, const EnsembleOperator& a_prime,
                                      const Tolerances& tol) {
  const auto& A = a.matrix;
  const auto& Ap = a_prime.matrix;
  if (A.rows() != Ap.rows() || A.cols() != Ap.cols()) throw InvalidArgument("operators have different shapes");

  const double mismatch = (A * A.adjoint() - Ap * Ap.adjoint()).norm();
  if (mismatch > tol.equivalence)
    throw NotEquivalent("density matrices differ by " + std::to_string(mismatch) +
                        "; no partial isometry relates the two ensembles");

  Eigen::JacobiSVD<ComplexMatrix> svd_p(Ap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sp = svd_p.singularValues();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sp.size());
  for (Eigen::Index i = 0; i < sp.size(); ++i)
    if (sp(i) > tol.pinv_cutoff) inv(i) = 1.0 / sp(i);
  const ComplexMatrix pinv = svd_p.matrixV() * inv.asDiagonal() * svd_p.matrixU().adjoint();

  PartialIsometry out;
  out.matrix = pinv * A;
  out.factorization_residual = (A - Ap * out.matrix).norm();
  if (out.factorization_residual > tol.factorization)
    throw NotEquivalent("A = A'U could not be satisfied (residual " + std::to_string(out.factorization_residual) + ")");

  Eigen::JacobiSVD<ComplexMatrix> svd_a(A, Eigen::ComputeFullV);
  const auto& sa = svd_a.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sa.size(); ++i)
    if (sa(i) > tol.pinv_cutoff) ++rank;
  const ComplexMatrix vr = svd_a.matrixV().leftCols(rank);
  const ComplexMatrix projection = vr * vr.adjoint();
  out.rank = rank;
  out.defect = (out.matrix.adjoint() * out.matrix - projection).norm();
  return out;
}

PhaseSpaceField mixed_wigner(const Ensemble& ensemble, const PhaseSpaceGrid& grid, const WignerOptions& options) {
  PhaseSpaceField rho(grid);
  for (const auto& member : ensemble.members) {
    const auto w = wigner(member.state, grid, options);
    auto out = rho.values();
    auto in = w.field.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += member.weight * in[i];
  }
  return rho;
}

std::string_view to_string(ClosureOutcome o) {
  switch (o) {
    case ClosureOutcome::consistent:
      return "consistent";
    case ClosureOutcome::violated:
      return "violated";
    case ClosureOutcome::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

ClosureReport feichtinger_closure_check(const Ensemble& e1, const Ensemble& e2, const PhaseSpaceGrid& grid, double s,
                                        int dim, const Tolerances& tol) {
  ClosureReport report;
  const int needed = static_cast<int>(std::max(e1.members.size(), e2.members.size()));
  const int basis_dim = std::max(dim, needed);
  const auto rho1 = density_matrix(build_A(e1, basis_dim, grid.hbar, tol));
  const auto rho2 = density_matrix(build_A(e2, basis_dim, grid.hbar, tol));
  report.density_residual = (rho1.matrix - rho2.matrix).norm();
  if (report.density_residual > tol.equivalence)
    throw NotEquivalent("the two ensembles generate different density matrices (difference " +
                        std::to_string(report.density_residual) + ")");

  report.wigner_residual = max_abs_difference(mixed_wigner(e1, grid), mixed_wigner(e2, grid));
  if (report.wigner_residual > tol.wigner_agreement)
    throw NotEquivalent("the mixed Wigner distributions differ by " + std::to_string(report.wigner_residual));

  ModulationOptions options;
  options.tol = tol;
  for (const auto& m : e1.members) report.first.push_back(modulation_norm(m.state, s, grid, options));
  for (const auto& m : e2.members) report.second.push_back(modulation_norm(m.state, s, grid, options));

  auto all = [](const std::vector<WeightedNormReport>& rs, Verdict v) {
    return std::all_of(rs.begin(), rs.end(), [v](const auto& r) { return r.verdict == v; });
  };
  auto any = [](const std::vector<WeightedNormReport>& rs, Verdict v) {
    return std::any_of(rs.begin(), rs.end(), [v](const auto& r) { return r.verdict == v; });
  };

  if (any(report.first, Verdict::inconclusive) || any(report.second, Verdict::inconclusive)) {
    report.outcome = ClosureOutcome::inconclusive;
  } else if (all(report.first, Verdict::convergent) && !all(report.second, Verdict::convergent)) {
    report.outcome = ClosureOutcome::violated;
  } else {
    report.outcome = ClosureOutcome::consistent;
  }
  return report;
}

}  // namespace wignerlab
