#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "spin_epsilon/errors.hpp"
#include "spin_epsilon/ising.hpp"
#include "spin_epsilon/oracle.hpp"
#include "test_support.hpp"

namespace se = spin_epsilon;
namespace golden = spin_epsilon::testing::golden;

TEST(IsingParams, RejectsNonFiniteAndNonPositiveTemperature) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(se::IsingParams::make(nan, 0.0, 1.0), se::InvalidInput);
  EXPECT_THROW(se::IsingParams::make(1.0, inf, 1.0), se::InvalidInput);
  EXPECT_THROW(se::IsingParams::make(1.0, 0.0, nan), se::InvalidInput);
  EXPECT_THROW(se::IsingParams::make(1.0, 0.0, inf), se::InvalidInput);
  EXPECT_THROW(se::IsingParams::make(1.0, 0.0, 0.0), se::DomainError);
  EXPECT_THROW(se::IsingParams::make(1.0, 0.0, -2.0), se::DomainError);
}

TEST(IsingParams, BetaIsInverseTemperature) {
  for (double T : {0.05, 0.3, 1.0, 7.0, 1e4}) {
    const auto p = se::IsingParams::make(1.0, 0.0, T);
    EXPECT_NEAR(p.beta() * p.T(), 1.0, 1e-15);
    EXPECT_FALSE(p.is_infinite_temperature());
  }
  const auto hot = se::IsingParams::infinite_temperature(1.0, 0.3);
  EXPECT_EQ(hot.beta(), 0.0);
  EXPECT_TRUE(hot.is_infinite_temperature());
}

TEST(TransitionMatrix, NearInfiniteTemperatureIsUniform) {
  const auto tm = se::transition_matrix(se::IsingParams::make(1.0, 0.0, 1e6));
  for (const auto& row : tm.t) {
    for (double v : row) EXPECT_NEAR(v, 0.5, 1e-5);
  }
  EXPECT_NEAR(tm.p[0], 0.5, 1e-5);
  EXPECT_NEAR(tm.p[1], 0.5, 1e-5);
}

TEST(TransitionMatrix, InfiniteTemperatureFlagIsExactlyUniform) {
  const auto tm = se::transition_matrix(se::IsingParams::infinite_temperature(2.0, -1.0));
  EXPECT_EQ(tm.t[0][0], 0.5);
  EXPECT_EQ(tm.t[1][1], 0.5);
  EXPECT_EQ(tm.p[0], 0.5);
  EXPECT_TRUE(tm.rows_coincide(0.0));
}

TEST(TransitionMatrix, ZeroFieldUnitTemperatureMatchesClosedForm) {
  const auto tm = se::transition_matrix(se::IsingParams::make(1.0, 0.0, 1.0));
  EXPECT_EQ(tm.p[0], 0.5);
  EXPECT_EQ(tm.p[1], 0.5);
  EXPECT_DOUBLE_EQ(tm.t[0][0], tm.t[1][1]);
  EXPECT_DOUBLE_EQ(tm.t[0][1], tm.t[1][0]);
  EXPECT_NEAR(tm.t[0][0], golden::kSymT00, 1e-14);
}

TEST(TransitionMatrix, MatchesRingGolden) {
  const auto tm = se::transition_matrix(se::IsingParams::make(1.0, 0.3, 2.0));
  EXPECT_NEAR(tm.t[0][0], golden::kT00, 1e-10);
  EXPECT_NEAR(tm.t[0][1], golden::kT01, 1e-10);
  EXPECT_NEAR(tm.t[1][0], golden::kT10, 1e-10);
  EXPECT_NEAR(tm.t[1][1], golden::kT11, 1e-10);
  EXPECT_NEAR(tm.p[0], golden::kP0, 1e-10);
  EXPECT_NEAR(tm.p[1], golden::kP1, 1e-10);
}

TEST(TransitionMatrix, StochasticAndStationaryOnRandomDraws) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coupling(-3.0, 3.0);
  std::uniform_real_distribution<double> temp(0.05, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const auto params = se::IsingParams::make(coupling(rng), coupling(rng), temp(rng));
    const auto tm = se::transition_matrix(params);
    ASSERT_NO_THROW(tm.validate(1e-10)) << "J=" << params.J() << " B=" << params.B() << " T=" << params.T();
  }
}

TEST(TransitionMatrix, SpinFlipSymmetry) {
  spin_epsilon::testing::RandomParams draw(11);
  for (int i = 0; i < 200; ++i) {
    const auto params = draw();
    const auto tm = se::transition_matrix(params);
    const auto flipped = se::transition_matrix(se::IsingParams::make(params.J(), -params.B(), params.T()));
    const auto expected = tm.spin_flipped();
    for (std::size_t a = 0; a < 2; ++a) {
      EXPECT_NEAR(flipped.p[a], expected.p[a], 1e-12);
      for (std::size_t b = 0; b < 2; ++b) EXPECT_NEAR(flipped.t[a][b], expected.t[a][b], 1e-12);
    }
  }
}

TEST(TransitionMatrix, ZeroFieldIsSymmetric) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coupling(-3.0, 3.0);
  std::uniform_real_distribution<double> logt(std::log(0.05), std::log(100.0));
  for (int i = 0; i < 200; ++i) {
    const auto tm = se::transition_matrix(se::IsingParams::make(coupling(rng), 0.0, std::exp(logt(rng))));
    EXPECT_NEAR(tm.p[0], 0.5, 1e-12);
    EXPECT_NEAR(tm.t[0][0], tm.t[1][1], 1e-12);
    EXPECT_NEAR(tm.t[0][1], tm.t[1][0], 1e-12);
  }
}

TEST(TransitionMatrix, ExtremeCouplingStaysFinite) {
  const auto tm = se::transition_matrix(se::IsingParams::make(3.0, -3.0, 0.05));
  EXPECT_NO_THROW(tm.validate());
  EXPECT_GT(tm.t[0][1], 0.0);
}

TEST(TransitionMatrix, RingOracleErrorShrinksWithRingSize) {
  const auto params = se::IsingParams::make(1.0, 0.3, 2.0);
  const auto tm = se::transition_matrix(params);
  double previous = 1.0;
  for (std::size_t n : {4, 6, 8, 10}) {
    const auto ens = se::enumerate_ring(params, n);
    double err = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const auto cond = se::conditional_from_ring(ens, static_cast<se::Symbol>(se::spin_of_index(i)), 1);
      err = std::max({err, std::abs(cond.probs[0] - tm.t[i][0]), std::abs(cond.probs[1] - tm.t[i][1])});
    }
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-6);
}
