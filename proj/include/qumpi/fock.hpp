#pragma once

#include <vector>

#include "qumpi/circuit.hpp"
#include "qumpi/observables.hpp"

namespace qumpi {

/// Density matrix over a truncated multimode Fock basis. Basis index is
/// n_0 + cutoff * n_1 + ... (mode 0 fastest). Probability that leaked past
/// the cutoff is tracked in `tail()`; rho is not renormalized.
class FockDensity {
 public:
  FockDensity(int modes, int cutoff, CMatrix rho);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  const CMatrix& rho() const { return rho_; }
  CMatrix& rho() { return rho_; }

  /// 1 - Re tr(rho).
  double tail() const;

  /// Number of photons in `mode` for basis index `index`.
  int count(int index, int mode) const;
  int stride(int mode) const;

 private:
  int modes_;
  int cutoff_;
  CMatrix rho_;
};

inline constexpr int kDefaultCutoff = 40;
inline constexpr double kDefaultTailBudget = 1e-6;

struct FockOptions {
  int cutoff = kDefaultCutoff;
  double tail_budget = kDefaultTailBudget;
  Execution execution = Execution::Parallel;
};

/// Runs the netlist with truncated-basis matrices: unitaries from matrix
/// exponentials of the quadratic generators (built in a padded space, then
/// truncated), losses as beamsplitter coupling to a thermal ancilla followed by
/// a partial trace, additive noise as loss followed by a quantum-limited
/// amplifier. Throws a Truncation error if the tail exceeds the budget.
FockDensity buildFock(const Netlist& netlist, const FockOptions& options = {});

struct Ladder {
  int mode;
  bool dagger;
};

/// <word> for a word that is normal-ordered within each mode.
Complex expectationOf(const FockDensity& state, const std::vector<Ladder>& word);

double photonNumber(const FockDensity& state, int mode);
double g2Auto(const FockDensity& state, int mode);
double g2Cross(const FockDensity& state, int mode_a = 0, int mode_b = 1);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const FockDensity& a, const FockDensity& b);

/// QFI of exp(-i theta H) with H = xi_A^T G xi_A / 2, from the Bures fidelity
/// between rho(-h) and rho(+h).
double fidelityQfi(const FockDensity& state, const PhaseGenerator& generator, double h = 1e-3);

/// A single-mode Kraus operator supported on one diagonal:
/// K |n> = values[n] |n + shift>.
struct ShiftKraus {
  int shift = 0;
  std::vector<Complex> values;
};

/// rho -> sum_k K_k rho K_k^dag with each K_k acting on `mode`.
void applyKrausChannel(FockDensity& state, int mode, const std::vector<ShiftKraus>& kraus, Execution execution);

/// Kraus decomposition of a thermal attenuator (transmissivity eta, ancilla occupation n_env).
std::vector<ShiftKraus> attenuatorKraus(int cutoff, double eta, double n_env);

/// Kraus decomposition of the quantum-limited phase-insensitive amplifier with gain g.
std::vector<ShiftKraus> amplifierKraus(int cutoff, double gain);

}  // namespace qumpi
