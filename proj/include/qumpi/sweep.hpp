#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qumpi/circuit.hpp"
#include "qumpi/observables.hpp"

namespace qumpi {

inline constexpr const char* kVersion = "0.1.0";

/// Inclusive grid "name=start:stop:count".
struct AxisSpec {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  std::vector<double> values() const;
  bool operator==(const AxisSpec&) const = default;
};

AxisSpec parseAxisSpec(std::string_view text);

/// Names accepted by setParameter and sweep axes.
const std::vector<std::string>& axisNames();

/// Writes one sweepable parameter. alpha1/alpha2 set coherent amplitudes,
/// alpha_sq sets both amplitudes to sqrt(value); gain_db, eta_in and n_added
/// act on both JPAs.
void setParameter(CircuitConfig& config, const std::string& name, double value);

/// Output observables of one grid point. Empty optionals mark quantities that
/// are undefined at that point (for example g2 without photons).
struct SweepRecord {
  std::vector<double> point;
  std::optional<double> n1, n2, p, g2_1, g2_2, g2_c, b;
  bool operator==(const SweepRecord&) const = default;
};

struct SweepMetadata {
  std::string config_hash;
  std::string version = kVersion;
  std::string timestamp;  ///< caller-supplied; empty keeps outputs reproducible
  bool operator==(const SweepMetadata&) const = default;
};

struct SweepResult {
  std::vector<AxisSpec> axes;
  std::vector<SweepRecord> records;
  SweepMetadata metadata;
  bool operator==(const SweepResult&) const = default;
};

/// Observable column names in record order.
const std::vector<std::string>& observableColumns();

struct SweepOptions {
  Execution execution = Execution::Parallel;
  IpOptions ip{};
  std::string timestamp;
};

/// Evaluates every point of the product grid; the last axis varies fastest.
SweepResult sweep(const CircuitConfig& config, const std::vector<AxisSpec>& axes, const SweepOptions& options = {});

/// Observables of a single configuration, as stored in a sweep row.
SweepRecord evaluatePoint(const CircuitConfig& config, const IpOptions& ip = {});

struct ThresholdOptions {
  double alpha_sq_min = 0.0;
  double alpha_sq_max = 12.0;
  int scan_points = 81;
  double tolerance = 1e-3;
};

struct ThresholdResult {
  double alpha_sq = 0.0;
  std::vector<std::pair<double, std::optional<double>>> scan;  ///< (|alpha|^2, g2_C)
};

/// Smallest |alpha|^2 of a symmetric coherent drive at which g2_C drops below 1.
/// The scan must show exactly one downward crossing, which is then bisected.
ThresholdResult findAntibunchingThreshold(const CircuitConfig& config, const ThresholdOptions& options = {});

enum class DatasetFormat { Csv, Json };

DatasetFormat parseFormat(std::string_view text);
std::string datasetToString(const SweepResult& result, DatasetFormat format);
void emitDataset(const SweepResult& result, DatasetFormat format, const std::string& path);
SweepResult parseDatasetJson(std::string_view text);

}  // namespace qumpi
