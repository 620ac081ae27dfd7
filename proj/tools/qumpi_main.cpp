// qumpi: sweeps, threshold search, Planck calibration and Fock cross-checks.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qumpi/config_io.hpp"
#include "qumpi/crosscheck.hpp"
#include "qumpi/error.hpp"
#include "qumpi/sweep.hpp"
#include "qumpi/tomography.hpp"

using namespace qumpi;

namespace {

int exitCode(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::InvalidArgument: return 2;
    case ErrorCategory::Unphysical: return 3;
    case ErrorCategory::UndefinedRatio: return 4;
    case ErrorCategory::Truncation: return 5;
    case ErrorCategory::Parse: return 6;
    case ErrorCategory::Io: return 7;
    case ErrorCategory::NoCrossing: return 8;
  }
  return 1;
}

constexpr int kMismatchExit = 9;

struct Range {
  double start, stop;
  int count;
};

// "start:stop" or "start:stop:count"
Range parseRange(const std::string& text, int default_count) {
  const AxisSpec a = parseAxisSpec("alpha_sq=" + (std::count(text.begin(), text.end(), ':') == 1
                                                      ? text + ":" + std::to_string(default_count)
                                                      : text));
  return {a.start, a.stop, a.count};
}

void writeOutput(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCategory::Io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) fail(ErrorCategory::Io, "write failed for '" + path + "'");
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUMPI Gaussian interferometer simulator"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::uint64_t seed = 1;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "Random seed for sampled quantities");

  std::string config_path, out_path;

  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate observables on a parameter grid");
  std::vector<std::string> axis_texts;
  std::string timestamp;
  bool serial = false;
  sweep_cmd->add_option("config", config_path, "Circuit config (JSON)")->required();
  sweep_cmd->add_option("--axis", axis_texts, "name=start:stop:count (repeatable)");
  sweep_cmd->add_option("--out", out_path, "Output file (default stdout)");
  sweep_cmd->add_option("--timestamp", timestamp, "Timestamp stored in dataset metadata");
  sweep_cmd->add_flag("--serial", serial, "Disable OpenMP over grid points");

  auto* thr_cmd = app.add_subcommand("threshold", "Find the anti-bunching threshold |alpha|^2");
  std::string alpha_range = "0:12";
  double tolerance = 1e-3;
  thr_cmd->add_option("config", config_path, "Circuit config (JSON)")->required();
  thr_cmd->add_option("--alpha2-range", alpha_range, "start:stop[:points] in |alpha|^2 (default 81 points)");
  thr_cmd->add_option("--tol", tolerance, "Bisection tolerance in |alpha|^2");
  thr_cmd->add_option("--out", out_path, "Write the scan to this file");

  auto* planck_cmd = app.add_subcommand("planck", "Synthetic Planck spectroscopy and calibration fit");
  std::string temps = "0.05:1.5:30";
  PlanckScenario scenario;
  planck_cmd->add_option("config", config_path, "Circuit config (JSON)")->required();
  planck_cmd->add_option("--temps", temps, "start:stop:count in kelvin");
  planck_cmd->add_option("--port", scenario.inject_port, "Thermal source port (1 or 2)");
  planck_cmd->add_option("--samples", scenario.samples, "Samples per temperature");
  planck_cmd->add_option("--chain-noise", scenario.chain_noise_photons, "Detection chain noise photons");
  planck_cmd->add_option("--k", scenario.k_gain, "Power units per photon");
  planck_cmd->add_option("--out", out_path, "Output file (default stdout)");

  auto* cc_cmd = app.add_subcommand("crosscheck", "Compare Gaussian and Fock-basis results");
  CrossCheckOptions cc;
  bool no_qfi = false;
  cc_cmd->add_option("config", config_path, "Circuit config (JSON)")->required();
  cc_cmd->add_option("--cutoff", cc.cutoff, "Fock dimension per mode");
  cc_cmd->add_option("--tail-budget", cc.tail_budget, "Allowed truncation tail");
  cc_cmd->add_flag("--no-qfi", no_qfi, "Skip the fidelity-based QFI row");

  auto* sample_cmd = app.add_subcommand("sample", "Dump simulated heterodyne samples of one output");
  int mode = 1, n_samples = 10000;
  double chain = 0.0;
  sample_cmd->add_option("config", config_path, "Circuit config (JSON)")->required();
  sample_cmd->add_option("--mode", mode, "Output port (1 or 2)");
  sample_cmd->add_option("--samples", n_samples, "Number of samples");
  sample_cmd->add_option("--chain-noise", chain, "Detection chain noise photons");
  sample_cmd->add_option("--out", out_path, "CSV file (columns q,p)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const DatasetFormat fmt = parseFormat(format);
    const CircuitConfig config = loadCircuitConfig(config_path);

    if (*sweep_cmd) {
      std::vector<AxisSpec> axes;
      for (const auto& t : axis_texts) axes.push_back(parseAxisSpec(t));
      SweepOptions opts;
      opts.timestamp = timestamp;
      opts.execution = serial ? Execution::Serial : Execution::Parallel;
      const SweepResult result = sweep(config, axes, opts);
      if (out_path.empty()) std::cout << datasetToString(result, fmt);
      else emitDataset(result, fmt, out_path);
    } else if (*thr_cmd) {
      const Range r = parseRange(alpha_range, 81);
      ThresholdOptions opts{r.start, r.stop, r.count, tolerance};
      const ThresholdResult result = findAntibunchingThreshold(config, opts);
      if (!out_path.empty()) {
        std::string text = "alpha_sq,g2_C\n";
        for (const auto& [x, g] : result.scan) text += num(x) + "," + (g ? num(*g) : "null") + "\n";
        writeOutput(text, out_path);
      }
      if (fmt == DatasetFormat::Json) {
        std::cout << nlohmann::json{{"threshold_alpha_sq", result.alpha_sq}, {"tolerance", tolerance}}.dump() << "\n";
      } else {
        std::cout << "threshold_alpha_sq," << num(result.alpha_sq) << "\n";
      }
    } else if (*planck_cmd) {
      const Range r = parseRange(temps, 30);
      scenario.circuit = config;
      scenario.temperatures = linspace(r.start, r.stop, r.count);
      scenario.seed = seed;
      const PlanckRun run = runPlanckSpectroscopy(scenario);
      std::string text;
      if (fmt == DatasetFormat::Json) {
        nlohmann::ordered_json j;
        j["fit"] = {{"k", run.fit.k}, {"c", run.fit.c}, {"omega", run.fit.omega}, {"residual", run.fit.residual}};
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : run.rows) {
          j["rows"].push_back({{"T", row.temperature}, {"P1", row.p1}, {"P1_err", row.p1_err}, {"P2", row.p2},
                               {"P2_err", row.p2_err}});
        }
        text = j.dump(2) + "\n";
      } else {
        text = "T,P1,P1_err,P2,P2_err\n";
        for (const auto& row : run.rows) {
          text += num(row.temperature) + "," + num(row.p1) + "," + num(row.p1_err) + "," + num(row.p2) + "," +
                  num(row.p2_err) + "\n";
        }
        std::cerr << fitToText(run.fit);
      }
      writeOutput(text, out_path);
    } else if (*cc_cmd) {
      cc.include_qfi = !no_qfi;
      const CrossCheckReport report = crossCheck(config, cc);
      std::cout << report.toText();
      if (!report.ok()) {
        std::cerr << "error: mismatch: Gaussian and Fock results disagree\n";
        return kMismatchExit;
      }
    } else if (*sample_cmd) {
      require(mode == 1 || mode == 2, "mode must be 1 or 2");
      writeSamplesCsv(sampleQuadratures(runQumpi(config), mode - 1, n_samples, chain, seed), out_path);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << categoryName(e.category()) << ": " << e.what() << "\n";
    return exitCode(e.category());
  }
  return 0;
}
