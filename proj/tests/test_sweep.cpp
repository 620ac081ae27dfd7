#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qumpi/config_io.hpp"
#include "qumpi/error.hpp"
#include "qumpi/sweep.hpp"

using namespace qumpi;

namespace {

CircuitConfig operatingPoint() {
  CircuitConfig c;
  c.jpa1 = {7.73, 0.0, 0.238, 1.0};
  c.jpa2 = {7.73, 0.0, 0.238, 1.0};
  c.input1 = InputSpec::coherent(0.83, 0.64 * kPi);
  c.input2 = InputSpec::coherent(0.83, 0.0);
  return c;
}

CircuitConfig antibunching(double gain_db) {
  CircuitConfig c;
  c.jpa1 = {gain_db, 1.31 * kPi, 0.238, 1.0};
  c.jpa2 = {gain_db, 0.81 * kPi, 0.238, 1.0};
  c.input1 = InputSpec::coherent(1.0, 0.81 * kPi);
  c.input2 = InputSpec::coherent(1.0, 0.81 * kPi);
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Axis, ParsesSpec) {
  const auto a = parseAxisSpec("theta2=0:6.2832:64");
  EXPECT_EQ(a.name, "theta2");
  EXPECT_EQ(a.count, 64);
  EXPECT_DOUBLE_EQ(a.stop, 6.2832);
  EXPECT_EQ(a.values().size(), 64u);
}

TEST(Axis, RejectsBadSpecs) {
  try {
    parseAxisSpec("theta3=0:1:4");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::InvalidArgument);
  }
  EXPECT_THROW(parseAxisSpec("theta2=0:1"), Error);
  EXPECT_THROW(parseAxisSpec("theta2=a:1:3"), Error);
  EXPECT_THROW(parseAxisSpec("theta2=0:1:0"), Error);
  EXPECT_THROW(sweep(operatingPoint(), {AxisSpec{"bogus", 0, 1, 2}}), Error);
}

TEST(Sweep, SinglePointEqualsDirectEvaluation) {
  const auto r = sweep(operatingPoint(), {AxisSpec{"gamma1", 0.3, 0.3, 1}});
  ASSERT_EQ(r.records.size(), 1u);
  CircuitConfig c = operatingPoint();
  c.jpa1.gamma = 0.3;
  SweepRecord direct = evaluatePoint(c);
  direct.point = {0.3};
  EXPECT_EQ(r.records[0], direct);
}

TEST(Sweep, RowCountAndOrdering) {
  const auto r = sweep(operatingPoint(), {AxisSpec{"theta2", 0, 1, 3}, AxisSpec{"gamma1", 0, 2, 4}});
  ASSERT_EQ(r.records.size(), 12u);
  EXPECT_EQ(r.records[1].point, (std::vector<double>{0.0, 2.0 / 3.0}));
  EXPECT_EQ(r.records[4].point, (std::vector<double>{0.5, 0.0}));
  EXPECT_EQ(r.metadata.config_hash, configHash(operatingPoint()));
}

TEST(Sweep, SerialAndParallelAreIdentical) {
  const std::vector<AxisSpec> axes{{"theta2", 0, 2 * kPi, 9}, {"gamma1", 0, 2 * kPi, 9}};
  SweepOptions s, p;
  s.execution = Execution::Serial;
  p.execution = Execution::Parallel;
  EXPECT_EQ(sweep(operatingPoint(), axes, s), sweep(operatingPoint(), axes, p));
}

TEST(Sweep, PowerIndependentOfTheta2) {
  const auto r = sweep(operatingPoint(), {AxisSpec{"gamma1", 0.4, 0.4, 1}, AxisSpec{"theta2", 0, 2 * kPi, 16}});
  const double p0 = *r.records.front().p;
  for (const auto& rec : r.records) EXPECT_NEAR(*rec.p, p0, 1e-3 * p0);
}

TEST(Sweep, PeriodicInGamma1AndAsymmetric) {
  const auto r = sweep(operatingPoint(), {AxisSpec{"theta2", 1.0, 1.0, 1}, AxisSpec{"gamma1", 0, 2 * kPi, 33}});
  EXPECT_NEAR(*r.records.front().n1, *r.records.back().n1, 1e-9);
  double asym = 0.0;
  for (const auto& rec : r.records) asym = std::max(asym, std::abs(*rec.n1 - *rec.n2));
  EXPECT_GT(asym, 1e-2);
}

TEST(Sweep, UndefinedValuesBecomeNulls) {
  CircuitConfig c;
  c.jpa1 = {0.0, 0.0, 0.0, 1.0};
  c.jpa2 = {0.0, 0.0, 0.0, 1.0};
  const auto r = sweep(c, {AxisSpec{"gain_db", 0.0, 1.0, 2}});
  EXPECT_FALSE(r.records[0].g2_1.has_value());
  EXPECT_FALSE(r.records[0].g2_c.has_value());
  EXPECT_TRUE(r.records[0].n1.has_value());
  EXPECT_TRUE(r.records[1].g2_1.has_value());
  const std::string csv = datasetToString(r, DatasetFormat::Csv);
  EXPECT_NE(csv.find("null"), std::string::npos);
}

TEST(Threshold, ReferenceGainIsInRange) {
  const auto t = findAntibunchingThreshold(antibunching(4.06));
  EXPECT_GT(t.alpha_sq, 3.5);
  EXPECT_LT(t.alpha_sq, 7.0);
  EXPECT_EQ(t.scan.size(), 81u);
}

TEST(Threshold, GrowsWithGain) {
  ThresholdOptions wide;
  wide.alpha_sq_max = 100.0;
  const double low = findAntibunchingThreshold(antibunching(4.06), wide).alpha_sq;
  const double high = findAntibunchingThreshold(antibunching(7.73), wide).alpha_sq;
  EXPECT_GT(high, low);
}

TEST(Threshold, ZeroGainHasNoCrossing) {
  try {
    findAntibunchingThreshold(antibunching(0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::NoCrossing);
  }
  EXPECT_THROW(findAntibunchingThreshold(operatingPoint()), Error);  // no crossing below 12 at 7.73 dB
  CircuitConfig vac;
  EXPECT_THROW(findAntibunchingThreshold(vac), Error);
}

TEST(Dataset, EmptyResultIsHeaderOnlyCsv) {
  EXPECT_EQ(datasetToString(SweepResult{}, DatasetFormat::Csv), "N1,N2,P,g2_1,g2_2,g2_C,B\n");
}

TEST(Dataset, EmissionIsByteStable) {
  const auto r = sweep(operatingPoint(), {AxisSpec{"theta2", 0, 1, 3}, AxisSpec{"gamma1", 0, 1, 3}});
  const auto r2 = sweep(operatingPoint(), {AxisSpec{"theta2", 0, 1, 3}, AxisSpec{"gamma1", 0, 1, 3}});
  for (auto fmt : {DatasetFormat::Csv, DatasetFormat::Json}) {
    const std::string a = ::testing::TempDir() + "a.out", b = ::testing::TempDir() + "b.out";
    emitDataset(r, fmt, a);
    emitDataset(r2, fmt, b);
    EXPECT_EQ(slurp(a), slurp(b));
  }
  EXPECT_EQ(datasetToString(r, DatasetFormat::Csv).substr(0, 41), "theta2,gamma1,N1,N2,P,g2_1,g2_2,g2_C,B\n0,");
}

TEST(Dataset, JsonRoundTrip) {
  CircuitConfig c = operatingPoint();
  c.jpa1.gain_db = 0.0;
  c.jpa2.gain_db = 0.0;
  c.jpa1.n_added = c.jpa2.n_added = 0.0;
  c.input1 = InputSpec::vacuum();
  SweepOptions o;
  o.timestamp = "2024-01-01T00:00:00Z";
  const auto r = sweep(c, {AxisSpec{"alpha1", 0, 1, 3}, AxisSpec{"gamma1", 0, 3, 2}}, o);
  EXPECT_EQ(parseDatasetJson(datasetToString(r, DatasetFormat::Json)), r);
  EXPECT_THROW(parseDatasetJson("{\"axes\": 3}"), Error);
}

TEST(Dataset, IoFailureNamesPath) {
  try {
    emitDataset(SweepResult{}, DatasetFormat::Csv, "/nonexistent/dir/out.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Io);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/out.csv"), std::string::npos);
  }
  EXPECT_THROW(parseFormat("xml"), Error);
}
