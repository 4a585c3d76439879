#include "wignerlab/moments.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wignerlab/ensemble.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/states.hpp"

using namespace wignerlab;

namespace {

const auto kGrid = make_grid(512, 16.0, 1.0);

SampledState state(const char* text, const PhaseSpaceGrid& g = kGrid) {
  return catalog_state(parse_state_descriptor(text), g.x, g.hbar);
}

Ensemble ensemble(std::initializer_list<std::pair<const char*, double>> members, const PhaseSpaceGrid& g = kGrid) {
  std::vector<EnsembleMember> m;
  for (const auto& [text, weight] : members) m.push_back({state(text, g), weight});
  return Ensemble(std::move(m));
}

CovarianceReport covariance_of(const Ensemble& e, const PhaseSpaceGrid& g = kGrid) {
  const auto rho = mixed_wigner(e, g);
  const auto verdict = classify_ladder(rho, 2.0, "self");
  return covariance(rho, verdict);
}

void expect_matrix_near(const Matrix2& m, double xx, double xp, double pp, double tol) {
  EXPECT_NEAR(m[0][0], xx, tol);
  EXPECT_NEAR(m[0][1], xp, tol);
  EXPECT_NEAR(m[1][0], xp, tol);
  EXPECT_NEAR(m[1][1], pp, tol);
}

}  // namespace

TEST(Marginals, PureGroundState) {
  const auto e = ensemble({{"hermite:0", 1.0}});
  const auto r = marginals(mixed_wigner(e, kGrid), e);
  EXPECT_LE(r.x_residual, 1e-6);
  EXPECT_LE(r.p_residual, 1e-6);
  EXPECT_LE(r.norm_residual, 1e-6);
  for (std::size_t j = 0; j < kGrid.p.size(); ++j) {
    const double p = kGrid.p.point(j);
    EXPECT_NEAR(r.p_marginal[j], std::exp(-p * p) / std::sqrt(std::numbers::pi), 1e-6);
  }
}

TEST(Marginals, EqualMixtureMatchesHermiteDensities) {
  const auto e = ensemble({{"hermite:0", 0.5}, {"hermite:1", 0.5}});
  const auto r = marginals(mixed_wigner(e, kGrid), e);
  EXPECT_LE(r.x_residual, 1e-6);
  EXPECT_LE(r.p_residual, 1e-6);
  EXPECT_LE(r.norm_residual, 1e-6);
  for (std::size_t i = 0; i < kGrid.x.size(); ++i) {
    const auto h = oracle::hermite_values(2, kGrid.x.point(i));
    EXPECT_NEAR(r.x_marginal[i], 0.5 * h[0] * h[0] + 0.5 * h[1] * h[1], 1e-6);
  }
}

TEST(Marginals, EvenMembersHaveZeroMeanPosition) {
  const auto e = ensemble({{"hermite:0", 0.25}, {"hermite:2", 0.5}, {"combo:1:0:1", 0.25}});
  const auto r = marginals(mixed_wigner(e, kGrid), e);
  std::vector<double> f(kGrid.x.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = kGrid.x.point(i) * r.x_marginal[i];
  EXPECT_NEAR(trapezoid(f, kGrid.x.spacing()), 0.0, 1e-8);
}

TEST(Marginals, AreNonNegativeWhereWignerIsNegative) {
  const auto e = ensemble({{"hermite:1", 0.3}, {"hermite:3", 0.7}});
  const auto rho = mixed_wigner(e, kGrid);
  double min_rho = 0.0;
  for (const auto& v : rho.values()) min_rho = std::min(min_rho, v.real());
  ASSERT_LT(min_rho, -0.05);
  const auto r = marginals(rho, e);
  for (double v : r.x_marginal) EXPECT_GE(v, -1e-8);
  for (double v : r.p_marginal) EXPECT_GE(v, -1e-8);
}

TEST(Marginals, RefusedForBoxMember) {
  const auto g = make_grid(1024, 8.0, 1.0);
  const auto e = ensemble({{"box:-0.5:0.5", 1.0}}, g);
  EXPECT_THROW(marginals(mixed_wigner(e, g), e), Refused);
}

TEST(Covariance, GroundState) {
  const auto r = covariance_of(ensemble({{"hermite:0", 1.0}}));
  EXPECT_NEAR(r.mean[0], 0.0, 1e-6);
  EXPECT_NEAR(r.mean[1], 0.0, 1e-6);
  expect_matrix_near(r.sigma, 0.5, 0.0, 0.5, 1e-6);
  EXPECT_TRUE(r.reliable);
}

TEST(Covariance, FirstExcitedState) {
  const auto r = covariance_of(ensemble({{"hermite:1", 1.0}}));
  expect_matrix_near(r.sigma, 1.5, 0.0, 1.5, 1e-5);
}

TEST(Covariance, EqualMixtureIsIdentity) {
  const auto r = covariance_of(ensemble({{"hermite:0", 0.5}, {"hermite:1", 0.5}}));
  expect_matrix_near(r.sigma, 1.0, 0.0, 1.0, 1e-5);
  EXPECT_EQ(r.sigma[0][1], r.sigma[1][0]);
}

TEST(Covariance, RoutesAgreeForCatalogEnsembles) {
  for (const auto& e : {ensemble({{"hermite:0", 1.0}}), ensemble({{"hermite:2", 0.6}, {"combo:1:0,1", 0.4}}),
                        ensemble({{"gaussian:0.8", 0.5}, {"hermite:3", 0.5}})}) {
    const auto r = covariance_of(e);
    EXPECT_LE(r.residual, 1e-3);
    EXPECT_TRUE(r.reliable);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) EXPECT_NEAR(r.sigma[a][b], r.second_moments_fd[a][b], 1e-3);
  }
}

TEST(Covariance, ShiftedMean) {
  // (h0 + h1)/sqrt2: <x> = 1/sqrt2, <x^2> = <p^2> = 1, real so <p> = 0.
  const auto e = ensemble({{"combo:1:1", 1.0}});
  const auto rho = mixed_wigner(e, kGrid);
  const auto r = covariance(rho, classify_ladder(rho, 2.0, "self"));
  EXPECT_NEAR(r.mean[0], std::numbers::sqrt2 / 2, 1e-6);
  EXPECT_NEAR(r.mean[1], 0.0, 1e-6);
  EXPECT_NEAR(r.sigma[0][0], 0.5, 1e-6);
  EXPECT_NEAR(r.sigma[1][1], 1.0, 1e-6);
  EXPECT_LE(r.residual, 1e-3);
}

TEST(Covariance, RefusesWithoutConvergentOrderTwoVerdict) {
  const auto rho = mixed_wigner(ensemble({{"hermite:0", 1.0}}), kGrid);
  auto low = classify_ladder(rho, 1.0, "self");
  EXPECT_THROW(covariance(rho, low), Refused);
  auto bad = classify_ladder(rho, 2.0, "self");
  bad.verdict = Verdict::diverging;
  EXPECT_THROW(covariance(rho, bad), Refused);
  bad.verdict = Verdict::inconclusive;
  EXPECT_THROW(covariance(rho, bad), Refused);
}

TEST(Covariance, ScalingMapsVariances) {
  // Wide enough that the doubled state still converges at order two.
  const auto g = make_grid(2048, 32.0, 1.0);
  for (const auto* text : {"hermite:0", "hermite:1"}) {
    const auto psi = state(text, g);
    const auto before = covariance_of(Ensemble({{psi, 1.0}}), g);
    const auto scaled = apply_metaplectic(psi, metaplectic::Scale{2.0}, g);
    const auto after = covariance_of(Ensemble({{scaled, 1.0}}), g);
    EXPECT_NEAR(after.sigma[0][0], 4.0 * before.sigma[0][0], 1e-5) << text;
    EXPECT_NEAR(after.sigma[1][1], before.sigma[1][1] / 4.0, 1e-5) << text;
  }
}

TEST(CharacteristicFunction, GroundStateMatchesGaussianOracle) {
  const auto rho = mixed_wigner(ensemble({{"hermite:0", 1.0}}), kGrid);
  const auto f = characteristic_function(rho);
  const auto& cg = f.grid();
  EXPECT_NEAR(cg.x.spacing(), kGrid.p.spacing(), 1e-14);
  EXPECT_NEAR(cg.p.spacing(), kGrid.x.spacing(), 1e-14);
  double err = 0.0;
  for (std::size_t a = 0; a < f.nx(); ++a)
    for (std::size_t b = 0; b < f.np(); ++b)
      err = std::max(err, std::abs(f.at(a, b) - Complex(oracle::h0_characteristic(cg.x.point(a), cg.p.point(b)))));
  EXPECT_LE(err, 1e-6);
}

TEST(CharacteristicFunction, ZeroFrequencyIsMassOverTwoPiHbar) {
  for (const auto& e : {ensemble({{"hermite:0", 1.0}}), ensemble({{"hermite:1", 0.5}, {"gaussian:0.7", 0.5}})}) {
    const auto rho = mixed_wigner(e, kGrid);
    const auto f = characteristic_function(rho);
    const double expected = 1.0 / (2.0 * std::numbers::pi);
    EXPECT_NEAR(f.at(f.nx() / 2, f.np() / 2).real(), expected, 1e-6);
    EXPECT_NEAR(characteristic_function_at(rho, 0.0, 0.0).real(), expected, 1e-6);
  }
}

TEST(CharacteristicFunction, DirectSumAgreesWithFftLattice) {
  const auto rho = mixed_wigner(ensemble({{"combo:1:0,1:0.5", 1.0}}), kGrid);
  const auto f = characteristic_function(rho);
  const auto& cg = f.grid();
  for (auto [a, b] : {std::pair{256u, 256u}, {250u, 260u}, {270u, 245u}})
    EXPECT_NEAR(std::abs(f.at(a, b) - characteristic_function_at(rho, cg.x.point(a), cg.p.point(b))), 0.0, 1e-12);
}

TEST(CharacteristicFunction, SecondDifferencesStableUnderHalving) {
  const auto rho = mixed_wigner(ensemble({{"hermite:0", 1.0}}), kGrid);
  const double h = kGrid.p.spacing() / 8;
  const auto d1 = characteristic_second_derivatives(rho, h);
  const auto d2 = characteristic_second_derivatives(rho, h / 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) EXPECT_LT(std::abs(d1[a][b] - d2[a][b]), 1e-4);
  // d^2/dzeta^2 of (1/2pi) e^{-|zeta|^2/4} at 0 is -1/(4 pi).
  EXPECT_NEAR(d2[0][0], -1.0 / (4 * std::numbers::pi), 1e-4);
  EXPECT_THROW(characteristic_second_derivatives(rho, 0.0), InvalidArgument);
}
