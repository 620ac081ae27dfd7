#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qumpi/circuit.hpp"
#include "qumpi/config_io.hpp"
#include "qumpi/error.hpp"
#include "qumpi/symplectic.hpp"

using namespace qumpi;

namespace {

CircuitConfig mixerConfig(double r) {
  CircuitConfig c;
  const double db = 10.0 * std::log10(std::exp(2 * r));
  c.jpa1 = {db, 0.0, 0.0, 1.0};
  c.jpa2 = {db, kPi / 2, 0.0, 1.0};
  return c;
}

}  // namespace

TEST(Jpa, TrivialJpaIsIdentity) {
  std::mt19937_64 rng(3);
  const auto in = oracle::randomState(rng, 1);
  const auto out = applyJpa(in, 0, JpaParams{});
  EXPECT_TRUE(out.cov().isApprox(in.cov(), 1e-14));
  EXPECT_TRUE(out.mean().isApprox(in.mean(), 1e-14));
}

TEST(Jpa, AmplifiedQuadratureVariance) {
  const auto out = applyJpa(GaussianState::vacuum(1), 0, JpaParams{7.73, 0.0, 0.0, 1.0});
  EXPECT_NEAR(out.cov()(0, 0), std::pow(10.0, 0.773) / 2, 1e-12);
  EXPECT_NEAR(out.cov()(0, 0), 2.962, 5e-3);
}

TEST(Jpa, NoiseOnlyGivesThermal) {
  const auto out = applyJpa(GaussianState::vacuum(1), 0, JpaParams{0.0, 0.0, 0.238, 1.0});
  EXPECT_TRUE(out.cov().isApprox(oracle::thermal(0.238).cov(), 1e-14));
}

TEST(Jpa, RejectsInvalidParameters) {
  EXPECT_THROW(validate(JpaParams{-1.0, 0.0, 0.0, 1.0}, "jpa1"), Error);
  EXPECT_THROW(validate(JpaParams{1.0, 0.0, -0.1, 1.0}, "jpa1"), Error);
  EXPECT_THROW(validate(JpaParams{1.0, 0.0, 0.0, 1.5}, "jpa1"), Error);
}

TEST(Qumpi, ZeroGainRoutesInputsBackToTheirPorts) {
  CircuitConfig c;
  c.input1 = InputSpec::thermal(0.8);
  const auto out = runQumpi(c);
  EXPECT_TRUE(marginalOf(out, {0}).cov().isApprox(oracle::thermal(0.8).cov(), 1e-12));
  EXPECT_TRUE(marginalOf(out, {1}).cov().isApprox(0.5 * Matrix::Identity(2, 2), 1e-12));
}

TEST(Qumpi, OrthogonalEqualGainMatchesMixer) {
  for (double r : {0.0, 0.3, 0.8899, 1.4}) {
    const auto out = runQumpi(mixerConfig(r));
    const auto ref = mixerReference(effectiveGain(r));
    EXPECT_LT((out.cov() - ref.cov()).cwiseAbs().maxCoeff(), 1e-10) << "r = " << r;
  }
}

TEST(Qumpi, MixerMatchesTmsvOracle) {
  const double r = 0.75;
  const auto ref = mixerReference(std::pow(std::cosh(r), 2));
  EXPECT_LT((ref.cov() - oracle::tmsv(r).cov()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Mixer, ReferenceExamples) {
  EXPECT_TRUE(mixerReference(1.0).cov().isApprox(0.5 * Matrix::Identity(4, 4)));
  const auto m = mixerReference(std::pow(std::cosh(1.0), 2));
  EXPECT_NEAR(photonNumber(m, 0), 1.3811, 1e-4);
  EXPECT_NEAR(photonNumber(m, 1), 1.3811, 1e-4);
  const auto g = mixerReference(2.5);
  EXPECT_NEAR(photonNumber(g, 0), 1.5, 1e-12);
  EXPECT_NEAR(photonNumber(g, 1), 1.5, 1e-12);
  EXPECT_THROW(mixerReference(0.9), Error);
}

TEST(Qumpi, NetlistSkipsTrivialOps) {
  const Netlist n = qumpiNetlist(CircuitConfig{});
  for (const auto& op : n.ops) EXPECT_TRUE(std::holds_alternative<HybridOp>(op));
}

TEST(Qumpi, RunGaussianEqualsRunQumpi) {
  CircuitConfig c = mixerConfig(0.5);
  c.jpa1.n_added = 0.238;
  c.eta_hr2 = 0.9;
  c.path_phase = 0.4;
  c.input1 = InputSpec::coherent(0.83, 0.64 * kPi);
  const auto a = runQumpi(c);
  const auto b = runGaussian(qumpiNetlist(c));
  EXPECT_TRUE(a.cov().isApprox(b.cov(), 1e-14));
  EXPECT_TRUE(a.mean().isApprox(b.mean(), 1e-14));
}

TEST(Qumpi, PathPhaseActsOnlyThroughTheSignal) {
  CircuitConfig c = mixerConfig(0.4);
  c.path_phase = 1.1;
  // Vacuum in the arm is rotation invariant.
  EXPECT_TRUE(runQumpi(c).cov().isApprox(runQumpi(mixerConfig(0.4)).cov(), 1e-12));
  c.input1 = InputSpec::coherent(1.0, 0.0);
  CircuitConfig d = c;
  d.path_phase = 0.0;
  EXPECT_GT((runQumpi(c).mean() - runQumpi(d).mean()).norm(), 1e-3);
}

TEST(ConfigIo, MinimalConfigGetsDefaults) {
  const auto c = parseCircuitConfig(R"({"jpa1": {"gain_db": 3, "gamma": 0}, "jpa2": {"gain_db": 3, "gamma": 1}})");
  EXPECT_EQ(c.eta_hr1, 1.0);
  EXPECT_EQ(c.eta_hr2, 1.0);
  EXPECT_EQ(c.jpa1.eta_in, 1.0);
  EXPECT_EQ(c.input1.kind, InputSpec::Kind::Vacuum);
}

TEST(ConfigIo, SemanticErrorNamesField) {
  try {
    parseCircuitConfig(R"({"jpa1": {"gain_db": 3, "gamma": 0, "eta_in": 1.2}, "jpa2": {"gain_db": 3, "gamma": 1}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Parse);
    EXPECT_NE(std::string(e.what()).find("transmissivity out of range"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("jpa1.eta_in"), std::string::npos);
  }
}

TEST(ConfigIo, SyntaxErrorReportsLineAndColumn) {
  try {
    parseCircuitConfig("{\n  \"jpa1\": {\"gain_db\": 3,,}\n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Parse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(ConfigIo, RejectsUnknownKeysAndMissingBlocks) {
  EXPECT_THROW(parseCircuitConfig(R"({"jpa1": {"gain_db": 3, "gamma": 0}})"), Error);
  EXPECT_THROW(parseCircuitConfig(R"({"jpa1": {"gain_db": 3, "gamma": 0}, "jpa2": {"gain_db": 3, "gamma": 1},
                                     "eta_hr3": 1})"),
               Error);
}

TEST(ConfigIo, MissingFileIsIoError) {
  try {
    loadCircuitConfig("/nonexistent/cfg.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Io);
  }
}

TEST(ConfigIo, HashIsStableAndSensitive) {
  CircuitConfig a = mixerConfig(0.5), b = mixerConfig(0.5);
  EXPECT_EQ(configHash(a), configHash(b));
  b.eta_hr2 = 0.99;
  EXPECT_NE(configHash(a), configHash(b));
}
