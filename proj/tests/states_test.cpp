#include "wignerlab/states.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wignerlab/error.hpp"

using namespace wignerlab;

namespace {
const auto kGrid = make_grid(1024, 12.0, 1.0);
}

TEST(Catalog, GroundStateMatchesClosedForm) {
  const auto h0 = catalog_state(descriptor::Hermite{0}, kGrid.x, 1.0);
  double err = 0.0;
  for (std::size_t i = 0; i < h0.values.size(); ++i) {
    const double x = kGrid.x.point(i);
    err = std::max(err, std::abs(h0.values[i] - Complex(std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2))));
  }
  EXPECT_LE(err, 1e-12);
}

TEST(Catalog, HermiteMatchesIndependentPolynomialRecurrence) {
  const auto h5 = catalog_state(descriptor::Hermite{5}, kGrid.x, 1.0);
  double err = 0.0;
  for (std::size_t i = 0; i < h5.values.size(); i += 7)
    err = std::max(err, std::abs(h5.values[i].real() - oracle::hermite_values(6, kGrid.x.point(i))[5]));
  EXPECT_LE(err, 1e-12);
}

TEST(Catalog, GaussianWithUnitWidthIsGroundState) {
  const auto g = catalog_state(descriptor::Gaussian{1.0}, kGrid.x, 1.0);
  const auto h0 = catalog_state(descriptor::Hermite{0}, kGrid.x, 1.0);
  for (std::size_t i = 0; i < g.values.size(); ++i) EXPECT_NEAR(std::abs(g.values[i] - h0.values[i]), 0.0, 1e-14);
}

TEST(Catalog, BoxIsPiecewiseConstantUnitNorm) {
  const auto box = catalog_state(descriptor::Box{-0.5, 0.5}, kGrid.x, 1.0);
  EXPECT_NEAR(norm(box), 1.0, 1e-8);
  const double height = box.values[kGrid.x.size() / 2].real();
  const double half_cell = 0.5 * kGrid.x.spacing();
  for (std::size_t i = 0; i < box.values.size(); ++i) {
    const double x = kGrid.x.point(i);
    EXPECT_EQ(box.values[i].imag(), 0.0);
    if (x - half_cell >= -0.5 && x + half_cell <= 0.5) {
      EXPECT_DOUBLE_EQ(box.values[i].real(), height);
    } else if (x + half_cell <= -0.5 || x - half_cell >= 0.5) {
      EXPECT_EQ(box.values[i].real(), 0.0);
    } else {
      // Cells cut by an edge carry the covered fraction.
      const double covered = std::min(0.5, x + half_cell) - std::max(-0.5, x - half_cell);
      EXPECT_NEAR(box.values[i].real(), height * covered / kGrid.x.spacing(), 1e-14);
    }
  }
}

TEST(Catalog, BoxEdgeOnLatticePointTakesMidpointValue) {
  const auto g = make_grid(256, 8.0, 1.0);  // dx = 1/16
  const auto box = catalog_state(descriptor::Box{-0.5, 0.5}, g.x, 1.0);
  const double height = box.values[128].real();
  EXPECT_DOUBLE_EQ(box.values[128 - 8].real(), 0.5 * height);
  EXPECT_DOUBLE_EQ(box.values[128 + 8].real(), 0.5 * height);
  EXPECT_DOUBLE_EQ(box.values[128 + 7].real(), height);
  EXPECT_EQ(box.values[128 + 9].real(), 0.0);
}

TEST(Catalog, EveryCatalogStateHasUnitNorm) {
  for (const auto* text : {"gaussian:0.7", "gaussian:2", "hermite:0", "hermite:3", "hermite:20", "box:-0.5:0.5",
                           "box:-2:1", "combo:1:1", "combo:1:0:0:1", "combo:1,1:0,-2"})
    EXPECT_NEAR(norm(catalog_state(parse_state_descriptor(text), kGrid.x, 1.0)), 1.0, 1e-8) << text;
}

TEST(Catalog, HermiteStatesAreOrthonormalAgainstGaussHermiteOracle) {
  // Frozen oracle values: unit norm and exact orthogonality.
  EXPECT_NEAR(oracle::hermite_overlap(3, 3), 1.0, 1e-12);
  EXPECT_NEAR(oracle::hermite_overlap(3, 1), 0.0, 1e-12);

  const auto h1 = catalog_state(descriptor::Hermite{1}, kGrid.x, 1.0);
  const auto h3 = catalog_state(descriptor::Hermite{3}, kGrid.x, 1.0);
  EXPECT_NEAR(norm(h3), oracle::hermite_overlap(3, 3), 1e-8);
  EXPECT_NEAR(std::abs(inner_product(h3, h1)), oracle::hermite_overlap(3, 1), 1e-8);

  for (unsigned j = 0; j < 12; ++j)
    for (unsigned k = j + 1; k < 12; ++k) {
      const auto a = catalog_state(descriptor::Hermite{j}, kGrid.x, 1.0);
      const auto b = catalog_state(descriptor::Hermite{k}, kGrid.x, 1.0);
      EXPECT_LE(std::abs(inner_product(a, b)), 1e-6) << j << "," << k;
    }
}

TEST(Catalog, HbarScalesTheHermiteWidth) {
  const double hbar = 0.5;
  const auto h0 = catalog_state(descriptor::Hermite{0}, kGrid.x, hbar);
  for (std::size_t i = 0; i < h0.values.size(); i += 13) {
    const double x = kGrid.x.point(i);
    EXPECT_NEAR(h0.values[i].real(), std::pow(std::numbers::pi * hbar, -0.25) * std::exp(-x * x / (2 * hbar)), 1e-12);
  }
}

TEST(Catalog, RejectsOutOfSupportParameters) {
  EXPECT_THROW(catalog_state(descriptor::Box{-13, 0}, kGrid.x, 1.0), InvalidArgument);
  EXPECT_THROW(catalog_state(descriptor::Box{1, -1}, kGrid.x, 1.0), InvalidArgument);
  EXPECT_THROW(catalog_state(descriptor::Gaussian{3.5}, kGrid.x, 1.0), InvalidArgument);
  EXPECT_THROW(catalog_state(descriptor::Hermite{80}, kGrid.x, 1.0), InvalidArgument);
}

TEST(Descriptor, ParsesAndPrintsEveryKind) {
  for (const auto* text : {"gaussian:0.5", "hermite:3", "box:-0.5:0.5", "file:/tmp/x.csv", "file+norm:a.csv",
                           "combo:1:-1", "combo:1,0.5:2"})
    EXPECT_EQ(to_string(parse_state_descriptor(text)), text);
  EXPECT_THROW(parse_state_descriptor("laguerre:2"), InvalidArgument);
  EXPECT_THROW(parse_state_descriptor("hermite"), InvalidArgument);
  EXPECT_THROW(parse_state_descriptor("hermite:x"), InvalidArgument);
  EXPECT_THROW(parse_state_descriptor("box:1"), InvalidArgument);
}

class StateCsv : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("wignerlab_states_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(StateCsv, RoundTripsExactly) {
  const auto g = make_grid(64, 6.0, 1.0);
  const auto psi = catalog_state(parse_state_descriptor("combo:1,0.5:0:-2"), g.x, 1.0);
  write_state_csv(psi, dir_ / "s.csv");
  const auto back = catalog_state(parse_state_descriptor("file:" + (dir_ / "s.csv").string()), g.x, 1.0);
  for (std::size_t i = 0; i < psi.values.size(); ++i) EXPECT_EQ(back.values[i], psi.values[i]);
}

TEST_F(StateCsv, RawSamplesAreNotRenormalizedUnlessAsked) {
  const auto g = make_grid(64, 6.0, 1.0);
  auto psi = catalog_state(descriptor::Hermite{0}, g.x, 1.0);
  for (auto& v : psi.values) v *= 3.0;
  write_state_csv(psi, dir_ / "raw.csv");
  EXPECT_NEAR(norm(catalog_state(parse_state_descriptor("file:" + (dir_ / "raw.csv").string()), g.x, 1.0)), 3.0, 1e-12);
  EXPECT_NEAR(norm(catalog_state(parse_state_descriptor("file+norm:" + (dir_ / "raw.csv").string()), g.x, 1.0)), 1.0,
              1e-12);
}

TEST_F(StateCsv, RejectsMalformedFiles) {
  const auto g = make_grid(8, 1.0, 1.0);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream(dir_ / name) << body;
    return dir_ / name;
  };
  EXPECT_THROW(read_state_csv(dir_ / "missing.csv", g.x), IoError);
  EXPECT_THROW(read_state_csv(write("hdr.csv", "x,y\n0,0\n"), g.x), IoError);
  EXPECT_THROW(read_state_csv(write("cols.csv", "x,re,im\n0,1\n"), g.x), IoError);
  EXPECT_THROW(read_state_csv(write("dec.csv", "x,re,im\n0,1,0\n-1,1,0\n"), g.x), IoError);
  EXPECT_THROW(read_state_csv(write("gap.csv", "x,re,im\n0,1,0\n1,1,0\n3,1,0\n"), g.x), IoError);
  EXPECT_THROW(read_state_csv(write("num.csv", "x,re,im\n0,abc,0\n1,1,0\n"), g.x), IoError);
  // Uniform but on a different lattice.
  std::string body = "x,re,im\n";
  for (int i = 0; i < 8; ++i) body += std::to_string(i * 0.5) + ",1,0\n";
  EXPECT_THROW(read_state_csv(write("off.csv", body), g.x), IoError);
}
