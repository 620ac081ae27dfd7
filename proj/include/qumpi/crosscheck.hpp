#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qumpi/circuit.hpp"
#include "qumpi/fock.hpp"
#include "qumpi/observables.hpp"

namespace qumpi {

/// Gaussian-side formulas used by the cross-check. Replaceable so tests can
/// confirm that a broken formula is detected.
struct GaussianFormulas {
  std::function<double(const GaussianState&, int)> photon_number = [](const GaussianState& s, int m) {
    return photonNumber(s, m);
  };
  std::function<double(const GaussianState&, int)> g2_auto = [](const GaussianState& s, int m) {
    return g2Auto(s, m);
  };
  std::function<double(const GaussianState&)> g2_cross = [](const GaussianState& s) { return g2Cross(s); };
  std::function<double(const GaussianState&, const PhaseGenerator&)> qfi = gaussianQFI;
};

struct CrossCheckOptions {
  int cutoff = kDefaultCutoff;
  double tail_budget = kDefaultTailBudget;
  double tolerance = 1e-5;      ///< relative, moments
  double qfi_tolerance = 1e-3;  ///< relative, finite-difference QFI
  bool include_qfi = true;
  PhaseGenerator generator{};   ///< QFI generator (phase on mode 0 by default)
  GaussianFormulas formulas{};
};

struct CrossCheckRow {
  std::string quantity;
  std::optional<double> gaussian;  ///< empty when undefined
  std::optional<double> fock;
  double rel_diff = 0.0;
  double tolerance = 0.0;
  bool flagged = false;
};

struct CrossCheckReport {
  int cutoff = 0;
  double tail = 0.0;
  std::vector<CrossCheckRow> rows;

  bool ok() const;
  std::string toText() const;
};

CrossCheckReport crossCheck(const Netlist& netlist, const CrossCheckOptions& options = {});
CrossCheckReport crossCheck(const CircuitConfig& config, const CrossCheckOptions& options = {});

}  // namespace qumpi
