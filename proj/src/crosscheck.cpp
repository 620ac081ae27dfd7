#include "qumpi/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qumpi/error.hpp"

namespace qumpi {

namespace {

// Rounding in 1 - sqrt(F) is amplified by 1/h^2 in the finite-difference QFI.
constexpr double kQfiFloor = 1e-5;

std::optional<double> attempt(const std::function<double()>& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::UndefinedRatio) throw;
    return std::nullopt;
  }
}

// `floor` keeps quantities that vanish on both sides from being compared on
// rounding noise.
CrossCheckRow compare(std::string name, std::optional<double> g, std::optional<double> f, double tol,
                      double floor = kMinPhotonNumber) {
  CrossCheckRow row{std::move(name), g, f, 0.0, tol, false};
  if (g && f) {
    const double scale = std::max({std::abs(*g), std::abs(*f), floor});
    row.rel_diff = std::abs(*g - *f) / scale;
    row.flagged = !(row.rel_diff <= tol);
  } else {
    row.flagged = g.has_value() != f.has_value();
  }
  return row;
}

}  // namespace

bool CrossCheckReport::ok() const {
  return std::none_of(rows.begin(), rows.end(), [](const CrossCheckRow& r) { return r.flagged; });
}

std::string CrossCheckReport::toText() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "cutoff %d, truncation tail %.3e\n", cutoff, tail);
  out += line;
  std::snprintf(line, sizeof(line), "%-10s %22s %22s %10s  %s\n", "quantity", "gaussian", "fock", "rel_diff", "status");
  out += line;
  auto fmt = [](const std::optional<double>& v) {
    char b[32];
    if (!v) return std::string("undefined");
    std::snprintf(b, sizeof(b), "%.15g", *v);
    return std::string(b);
  };
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%-10s %22s %22s %10.2e  %s\n", r.quantity.c_str(), fmt(r.gaussian).c_str(),
                  fmt(r.fock).c_str(), r.rel_diff, r.flagged ? "MISMATCH" : "ok");
    out += line;
  }
  out += ok() ? "all quantities agree\n" : "discrepancy detected\n";
  return out;
}

CrossCheckReport crossCheck(const Netlist& netlist, const CrossCheckOptions& options) {
  const GaussianState g = runGaussian(netlist);
  require(g.modes() <= 2, "the Fock oracle handles at most two modes");
  FockOptions fo;
  fo.cutoff = options.cutoff;
  fo.tail_budget = options.tail_budget;
  fo.execution = Execution::Serial;
  const FockDensity f = buildFock(netlist, fo);

  CrossCheckReport report;
  report.cutoff = options.cutoff;
  report.tail = f.tail();
  const auto& fm = options.formulas;
  for (int m = 0; m < g.modes(); ++m) {
    const std::string idx = std::to_string(m + 1);
    report.rows.push_back(compare("N" + idx, fm.photon_number(g, m), photonNumber(f, m), options.tolerance));
    report.rows.push_back(compare("g2_" + idx, attempt([&] { return fm.g2_auto(g, m); }),
                                  attempt([&] { return g2Auto(f, m); }), options.tolerance));
  }
  if (g.modes() == 2) {
    report.rows.push_back(compare("g2_C", attempt([&] { return fm.g2_cross(g); }), attempt([&] { return g2Cross(f); }),
                                  options.tolerance));
  }
  if (options.include_qfi) {
    report.rows.push_back(compare("QFI", fm.qfi(g, options.generator), fidelityQfi(f, options.generator),
                                  options.qfi_tolerance, kQfiFloor));
  }
  return report;
}

CrossCheckReport crossCheck(const CircuitConfig& config, const CrossCheckOptions& options) {
  validate(config);
  return crossCheck(qumpiNetlist(config), options);
}

}  // namespace qumpi
