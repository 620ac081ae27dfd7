#include "qumpi/tomography.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "qumpi/error.hpp"

namespace qumpi {

QuadratureSamples sampleQuadratures(const GaussianState& state, int mode, int n_samples, double chain_noise_photons,
                                    std::uint64_t seed) {
  require(mode >= 0 && mode < state.modes(), "mode index out of range");
  require(n_samples >= 1, "need at least one sample");
  require(chain_noise_photons >= 0.0, "chain noise must be non-negative");
  const Eigen::Vector2d mean = state.mean().segment<2>(2 * mode);
  const Matrix2 cov = state.localCov(mode) + (chain_noise_photons + 0.5) * Matrix2::Identity();
  const Matrix2 l = Eigen::LLT<Matrix2>(cov).matrixL();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  QuadratureSamples out(n_samples, 2);
  for (int i = 0; i < n_samples; ++i) {
    const double z0 = normal(rng);
    const double z1 = normal(rng);
    out.row(i) = (mean + l * Eigen::Vector2d(z0, z1)).transpose();
  }
  return out;
}

Reconstruction reconstructState(const QuadratureSamples& samples, double chain_noise_photons, double warn_threshold) {
  const Eigen::Index n = samples.rows();
  if (n < kMinReconstructionSamples) {
    fail(ErrorCategory::InvalidArgument, "reconstruction needs at least " + std::to_string(kMinReconstructionSamples) +
                                             " samples, got " + std::to_string(n));
  }
  require(chain_noise_photons >= 0.0, "chain noise must be non-negative");
  const Eigen::RowVector2d mean = samples.colwise().mean();
  const QuadratureSamples centered = samples.rowwise() - mean;
  Matrix2 cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  cov -= (chain_noise_photons + 0.5) * Matrix2::Identity();
  cov = 0.5 * (cov + cov.transpose());

  // Clamp: make the estimate positive definite, then floor nu at 1/2.
  Eigen::SelfAdjointEigenSolver<Matrix2> eig(cov);
  Eigen::Vector2d lam = eig.eigenvalues().cwiseMax(1e-9);
  Matrix2 pd = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
  const double nu = std::sqrt(pd.determinant());
  Matrix2 physical = pd;
  if (nu < 0.5) {
    // Single mode: cov = nu * S S^T with S symplectic, so scaling raises nu.
    physical = pd * (0.5 / nu);
  }
  Reconstruction rec{GaussianState(mean.transpose(), physical), (physical - cov).norm(), false};
  rec.calibration_mismatch = rec.correction > warn_threshold;
  return rec;
}

void writeSamplesCsv(const QuadratureSamples& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCategory::Io, "cannot write samples to '" + path + "'");
  out << "q,p\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < samples.rows(); ++i) out << samples(i, 0) << ',' << samples(i, 1) << '\n';
  if (!out) fail(ErrorCategory::Io, "write failed for '" + path + "'");
}

double boseOccupation(double temperature, double omega) {
  require(temperature > 0.0, "temperature must be positive");
  return 1.0 / std::expm1(kHbar * omega / (kBoltzmann * temperature));
}

double CalibrationFit::operator()(double temperature) const {
  return k * (0.5 + boseOccupation(temperature, omega)) + c;
}

CalibrationFit planckFit(const std::vector<PlanckPoint>& points, double omega) {
  require(points.size() >= 3, "Planck fit needs at least three points");
  require(omega > 0.0, "frequency must be positive");
  std::set<double> temps;
  for (const auto& p : points) {
    require(p.temperature > 0.0, "temperatures must be positive");
    temps.insert(p.temperature);
  }
  if (temps.size() < 2) fail(ErrorCategory::InvalidArgument, "degenerate design matrix: all temperatures are equal");

  const int m = static_cast<int>(points.size());
  Matrix design(m, 2);
  Vector rhs(m);
  for (int i = 0; i < m; ++i) {
    design(i, 0) = 0.5 + boseOccupation(points[i].temperature, omega);
    design(i, 1) = 1.0;
    rhs(i) = points[i].power;
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  if (qr.rank() < 2) fail(ErrorCategory::InvalidArgument, "degenerate design matrix");
  const Vector x = qr.solve(rhs);
  CalibrationFit fit;
  fit.k = x(0);
  fit.c = x(1);
  fit.omega = omega;
  fit.residual = std::sqrt((design * x - rhs).squaredNorm() / m);
  return fit;
}

std::string fitToText(const CalibrationFit& fit) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "k = " << fit.k << "\nc = " << fit.c << "\nomega = " << fit.omega << "\nresidual = " << fit.residual << "\n";
  return out.str();
}

namespace {

struct PowerEstimate {
  double value;
  double error;
};

PowerEstimate measurePower(const QuadratureSamples& s, double k_gain) {
  const Vector e = 0.5 * (s.col(0).array().square() + s.col(1).array().square()).matrix();
  const double mean = e.mean();
  const double var = (e.array() - mean).square().sum() / static_cast<double>(e.size() - 1);
  return {k_gain * mean, k_gain * std::sqrt(var / static_cast<double>(e.size()))};
}

}  // namespace

PlanckRun runPlanckSpectroscopy(const PlanckScenario& sc) {
  require(sc.inject_port == 1 || sc.inject_port == 2, "inject port must be 1 or 2");
  require(sc.temperatures.size() >= 3, "Planck spectroscopy needs at least three temperatures");
  require(sc.k_gain > 0.0, "gain scale must be positive");
  PlanckRun run;
  std::vector<PlanckPoint> fit_points;
  std::uint64_t seed = sc.seed;
  for (double t : sc.temperatures) {
    CircuitConfig cfg = sc.circuit;
    const InputSpec hot = InputSpec::thermal(boseOccupation(t, sc.omega));
    cfg.input1 = sc.inject_port == 1 ? hot : InputSpec::vacuum();
    cfg.input2 = sc.inject_port == 2 ? hot : InputSpec::vacuum();
    const GaussianState out = runQumpi(cfg);
    const PowerEstimate p1 = measurePower(sampleQuadratures(out, 0, sc.samples, sc.chain_noise_photons, seed++), sc.k_gain);
    const PowerEstimate p2 = measurePower(sampleQuadratures(out, 1, sc.samples, sc.chain_noise_photons, seed++), sc.k_gain);
    run.rows.push_back({t, p1.value, p1.error, p2.value, p2.error});
    fit_points.push_back({t, sc.inject_port == 1 ? p1.value : p2.value});
  }
  run.fit = planckFit(fit_points, sc.omega);
  return run;
}

}  // namespace qumpi
