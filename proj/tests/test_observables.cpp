#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qumpi/circuit.hpp"
#include "qumpi/error.hpp"
#include "qumpi/observables.hpp"
#include "qumpi/symplectic.hpp"

using namespace qumpi;

TEST(Moments, Vacuum) {
  const auto m = modeMoments(GaussianState::vacuum(1), 0);
  EXPECT_EQ(m.alpha, Complex(0.0));
  EXPECT_NEAR(m.n_fluct, 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.m_fluct), 0.0, 1e-15);
}

TEST(Moments, SqueezedVacuum) {
  const double r = 0.6;
  const auto s = applySymplectic(GaussianState::vacuum(1), symplecticOf(Squeeze{r, 0.0}), {0});
  const auto m = modeMoments(s, 0);
  EXPECT_NEAR(m.n_fluct, std::pow(std::sinh(r), 2), 1e-12);
  EXPECT_NEAR(m.m_fluct.real(), std::cosh(r) * std::sinh(r), 1e-12);
  EXPECT_NEAR(m.m_fluct.imag(), 0.0, 1e-12);
}

TEST(Moments, ThermalAndPair) {
  const auto m = modeMoments(oracle::thermal(0.4), 0);
  EXPECT_NEAR(m.n_fluct, 0.4, 1e-14);
  EXPECT_NEAR(std::abs(m.m_fluct), 0.0, 1e-14);
  const double r = 0.5;
  const auto p = modeMoments(oracle::tmsv(r), 0, 1);
  EXPECT_NEAR(p.c_dd.real(), std::sinh(r) * std::cosh(r), 1e-12);
  EXPECT_NEAR(std::abs(p.c_nd), 0.0, 1e-12);
}

TEST(Moments, PhysicalityBoundHoldsOnRandomStates) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto s = oracle::randomState(rng, 1, 1.0, 1.0);
    const auto m = modeMoments(s, 0);
    EXPECT_GE(m.n_fluct, -1e-12);
    EXPECT_LE(std::norm(m.m_fluct), m.n_fluct * (m.n_fluct + 1) + 1e-10);
  }
}

TEST(G2, AnalyticAnchors) {
  EXPECT_NEAR(g2Auto(oracle::coherent(Complex(0.3, 1.1)), 0), 1.0, 1e-12);
  EXPECT_NEAR(g2Auto(oracle::thermal(0.238), 0), 2.0, 1e-12);
  const double r = 0.7, n = std::pow(std::sinh(r), 2);
  EXPECT_NEAR(g2Auto(oracle::squeezedVacuum(r, 0.4), 0), 3.0 + 1.0 / n, 1e-9);
  const auto mix = mixerReference(2.2);
  const double nm = photonNumber(mix, 0);
  EXPECT_NEAR(g2Cross(mix), 2.0 + 1.0 / (2.0 * nm), 1e-9);
  EXPECT_NEAR(g2Cross(oracle::product(oracle::thermal(0.6), oracle::thermal(0.6))), 1.5, 1e-12);
  EXPECT_NEAR(g2Cross(oracle::product(oracle::coherent(0.5), oracle::coherent(Complex(0, 2)))), 1.0, 1e-12);
}

TEST(G2, UndefinedWithoutPhotons) {
  try {
    g2Auto(GaussianState::vacuum(1), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::UndefinedRatio);
  }
  EXPECT_THROW(g2Cross(GaussianState::vacuum(2)), Error);
}

TEST(G2, ClassicalProductsAreNotAntibunched) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<ModeSpec> modes;
    for (int k = 0; k < 2; ++k) {
      if (u(rng) < 0.5) modes.push_back(ThermalMode{2.0 * u(rng) + 1e-3});
      else modes.push_back(CoherentMode{std::polar(2.0 * u(rng) + 1e-3, 6.0 * u(rng))});
    }
    // thermal noise on top keeps the marginals classical
    auto s = addNoise(addNoise(makeState(modes), 0, u(rng)), 1, u(rng));
    EXPECT_GE(g2Cross(s), 1.0 - 1e-12);
  }
}

TEST(Balancing, MixerIsBalanced) {
  EXPECT_NEAR(balancing(mixerReference(3.7)), 1.0, 1e-12);
  EXPECT_THROW(balancing(GaussianState::vacuum(1)), Error);
}

TEST(Balancing, GainImbalanceLowersB) {
  double previous = 1.0 + 1e-12;
  for (double db : {7.73, 7.5, 7.0, 6.0}) {
    CircuitConfig c;
    c.jpa1 = {7.73, 0.0, 0.0, 1.0};
    c.jpa2 = {db, kPi / 2, 0.0, 1.0};
    const double b = balancing(runQumpi(c));
    EXPECT_LT(b, previous);
    previous = b;
  }
  EXPECT_LT(previous, 1.0);
}

TEST(Qfi, VacuumNumberGeneratorIsZero) {
  EXPECT_NEAR(gaussianQFI(GaussianState::vacuum(1), PhaseGenerator{}), 0.0, 1e-7);
}

TEST(Qfi, CoherentState) {
  const Complex alpha(0.7, -0.4);
  EXPECT_NEAR(gaussianQFI(oracle::coherent(alpha), PhaseGenerator{}), 4 * std::norm(alpha), 1e-6);
}

TEST(Qfi, TmsvMarginalVariance) {
  const double r = 0.6, n = std::pow(std::sinh(r), 2);
  EXPECT_NEAR(gaussianQFI(oracle::tmsv(r), PhaseGenerator{0}), 4 * n * (n + 1), 1e-6);
}

TEST(Qfi, MatchesPureStateVarianceOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const int modes = 1 + i % 2;
    const auto s = oracle::randomPureState(rng, modes);
    const auto gen = PhaseGenerator::harmonic(modes - 1, 1.0 + 3.0 * u(rng), kPi * u(rng));
    const double expected = oracle::pureStateQfi(s, gen.mode, gen.g);
    EXPECT_NEAR(gaussianQFI(s, gen), expected, 1e-6 * std::max(1.0, expected));
  }
}

TEST(Qfi, RejectsUnnormalizedGenerator) {
  PhaseGenerator g;
  g.g = 2.0 * Matrix2::Identity();
  EXPECT_THROW(gaussianQFI(GaussianState::vacuum(1), g), Error);
}

TEST(Qfi, FormSplitsIntoCovarianceAndDisplacement) {
  std::mt19937_64 rng(4);
  const auto s = oracle::randomState(rng, 2);
  const auto gen = PhaseGenerator::harmonic(0, 2.0, 0.3);
  const QfiForm form(s, 0);
  EXPECT_NEAR(form.covariancePart(gen.g) + form.displacementPart(gen.g), gaussianQFI(s, gen), 1e-8);
}

TEST(InterferometricPower, ProductVacuumIsZero) {
  EXPECT_NEAR(interferometricPower(GaussianState::vacuum(2)).value, 0.0, 1e-6);
}

TEST(InterferometricPower, TmsvReachesHeisenbergLimit) {
  for (double n : {0.5, 1.0, 2.0}) {
    const auto mix = mixerReference(n + 1.0);
    EXPECT_NEAR(interferometricPower(mix).value, n * (n + 1), 1e-3 * n * (n + 1));
  }
}

TEST(InterferometricPower, ParallelAnglesGiveZero) {
  CircuitConfig c;
  c.jpa1 = {7.73, 0.4, 0.0, 1.0};
  c.jpa2 = {7.73, 0.4, 0.0, 1.0};
  EXPECT_LT(interferometricPower(runQumpi(c)).value, 1e-6);
}

TEST(InterferometricPower, PhaseOnlyIsAnUpperBound) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 5; ++i) {
    const auto s = oracle::randomState(rng, 2);
    IpOptions phase;
    phase.phase_only = true;
    EXPECT_GE(interferometricPower(s, 0, phase).value, interferometricPower(s).value - 1e-9);
  }
}

TEST(Limits, SqlHl) {
  EXPECT_EQ(sqlHlBounds(0).sql, 0.0);
  EXPECT_EQ(sqlHlBounds(0).hl, 0.0);
  EXPECT_EQ(sqlHlBounds(1).hl, 2.0);
  EXPECT_NEAR(sqlHlBounds(0.69).hl, 1.1661, 1e-12);
  EXPECT_THROW(sqlHlBounds(-0.1), Error);
}
