#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qumpi/circuit.hpp"

namespace qumpi {

/// One row per shot: column 0 = q, column 1 = p.
using QuadratureSamples = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Draws simultaneous (q, p) records of one mode. The detection chain adds
/// `chain_noise_photons` plus the half photon of a joint quadrature measurement
/// to each quadrature variance.
QuadratureSamples sampleQuadratures(const GaussianState& state, int mode, int n_samples, double chain_noise_photons,
                                    std::uint64_t seed);

struct Reconstruction {
  GaussianState state;
  double correction = 0.0;           ///< Frobenius norm of the physicality clamp
  bool calibration_mismatch = false;  ///< correction exceeded the warning threshold
};

inline constexpr int kMinReconstructionSamples = 100;

/// Moment-based reconstruction. Estimated symplectic eigenvalues below 1/2 are
/// raised to 1/2.
Reconstruction reconstructState(const QuadratureSamples& samples, double chain_noise_photons,
                                double warn_threshold = 0.1);

void writeSamplesCsv(const QuadratureSamples& samples, const std::string& path);

inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kBoltzmann = 1.380649e-23;

/// Angular operating frequency of both JPAs (2 pi x 5.48 GHz).
inline constexpr double kOmega0 = 2.0 * kPi * 5.48e9;

/// Bose occupation 1/(exp(hbar omega / k_B T) - 1).
double boseOccupation(double temperature, double omega);

struct PlanckPoint {
  double temperature;
  double power;
};

struct CalibrationFit {
  double k = 0.0;         ///< power units per photon
  double c = 0.0;         ///< noise-floor offset
  double omega = kOmega0;
  double residual = 0.0;  ///< RMS fit error

  /// k (1/2 + n(T)) + c
  double operator()(double temperature) const;
};

CalibrationFit planckFit(const std::vector<PlanckPoint>& points, double omega = kOmega0);

std::string fitToText(const CalibrationFit& fit);

/// Linear-regime Planck spectroscopy: a thermal source at one input, vacuum at
/// the other, output powers estimated from sampled quadratures.
struct PlanckScenario {
  CircuitConfig circuit;  ///< inputs are overwritten per temperature
  int inject_port = 1;
  std::vector<double> temperatures;
  double k_gain = 2.0;
  double chain_noise_photons = 2.0;
  int samples = 100000;
  std::uint64_t seed = 1;
  double omega = kOmega0;
};

struct PlanckRow {
  double temperature;
  double p1, p1_err;
  double p2, p2_err;
};

struct PlanckRun {
  std::vector<PlanckRow> rows;
  CalibrationFit fit;  ///< fit of the injected port
};

PlanckRun runPlanckSpectroscopy(const PlanckScenario& scenario);

}  // namespace qumpi
