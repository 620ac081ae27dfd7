#include "qumpi/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>


#include "qumpi/error.hpp"
#include "qumpi/symplectic.hpp"

namespace qumpi {

FockDensity::FockDensity(int modes, int cutoff, CMatrix rho) : modes_(modes), cutoff_(cutoff), rho_(std::move(rho)) {
  require(modes == 1 || modes == 2, "Fock oracle supports one or two modes");
  require(cutoff >= 2, "Fock cutoff must be at least 2");
  const int d = modes == 1 ? cutoff : cutoff * cutoff;
  require(rho_.rows() == d && rho_.cols() == d, "density matrix size does not match cutoff");
}

double FockDensity::tail() const { return 1.0 - rho_.trace().real(); }

int FockDensity::stride(int mode) const { return mode == 0 ? 1 : cutoff_; }

int FockDensity::count(int index, int mode) const { return mode == 0 ? index % cutoff_ : index / cutoff_; }

namespace {

constexpr Complex kI(0.0, 1.0);

CMatrix annihilator(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// exp(-i H) for Hermitian H.
CMatrix expMinusI(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (h + h.adjoint()));
  Eigen::VectorXcd phases = (-kI * eig.eigenvalues().cast<Complex>()).array().exp();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

int paddedDim(int cutoff) { return 3 * cutoff + 20; }

// Single-mode gate exp(-i H) built in a padded space and truncated to the cutoff.
template <typename HamiltonianBuilder>
CMatrix paddedGate(int cutoff, HamiltonianBuilder build) {
  const int dim = paddedDim(cutoff);
  CMatrix a = annihilator(dim);
  CMatrix h = build(a);
  return expMinusI(h).topLeftCorner(cutoff, cutoff);
}

CMatrix squeezeGate(int cutoff, double r, double gamma) {
  // S(zeta) = exp((zeta* a^2 - zeta a^dag^2)/2) with zeta = -r e^{2 i gamma}
  // maps a -> cosh r a + e^{2 i gamma} sinh r a^dag.
  const Complex zeta = -r * std::exp(2.0 * kI * gamma);
  return paddedGate(cutoff, [&](const CMatrix& a) {
    CMatrix ad = a.adjoint();
    CMatrix k = 0.5 * (std::conj(zeta) * a * a - zeta * ad * ad);
    return CMatrix(kI * k);
  });
}

CMatrix displacementGate(int cutoff, Complex alpha) {
  return paddedGate(cutoff, [&](const CMatrix& a) {
    CMatrix k = alpha * a.adjoint() - std::conj(alpha) * a;
    return CMatrix(kI * k);
  });
}

CMatrix generatorGate(int cutoff, const Matrix2& g, double theta) {
  return paddedGate(cutoff, [&](const CMatrix& a) {
    CMatrix ad = a.adjoint();
    CMatrix q = (a + ad) / std::sqrt(2.0);
    CMatrix p = -kI * (a - ad) / std::sqrt(2.0);
    CMatrix h = 0.5 * (g(0, 0) * q * q + g(0, 1) * (q * p + p * q) + g(1, 1) * p * p);
    return CMatrix(theta * h);
  });
}

// Left-multiplies the density matrix rows by a single-mode operator.
void applyLeft(CMatrix& m, const CMatrix& u, int mode, int modes, int c) {
  if (modes == 1) {
    m = (u * m).eval();
    return;
  }
  const Eigen::Index cols = m.cols();
  if (mode == 0) {
    Eigen::Map<CMatrix> view(m.data(), c, c * cols);
    CMatrix out = u * view;
    view = out;
  } else {
    const CMatrix ut = u.transpose();
    for (Eigen::Index j = 0; j < cols; ++j) {
      Eigen::Map<CMatrix> x(m.col(j).data(), c, c);
      CMatrix out = x * ut;
      x = out;
    }
  }
}

// m <- m (U^dag on `mode`), column-major layout.
void applyRight(CMatrix& m, const CMatrix& u, int mode, int modes, int c) {
  const CMatrix ud = u.adjoint();
  if (modes == 1) {
    m = (m * ud).eval();
    return;
  }
  const Eigen::Index rows = m.rows();
  if (mode == 0) {
    for (int block = 0; block < c; ++block) {
      auto cols = m.middleCols(static_cast<Eigen::Index>(block) * c, c);
      CMatrix out = cols * ud;
      cols = out;
    }
  } else {
    Eigen::Map<CMatrix> view(m.data(), rows * c, c);
    CMatrix out = view * ud;
    view = out;
  }
}

void applyUnitary(FockDensity& s, const CMatrix& u, int mode) {
  applyLeft(s.rho(), u, mode, s.modes(), s.cutoff());
  applyRight(s.rho(), u, mode, s.modes(), s.cutoff());
}

void applyRotation(FockDensity& s, int mode, double phi) {
  CMatrix& rho = s.rho();
  Eigen::VectorXcd phase(s.dim());
  for (int i = 0; i < s.dim(); ++i) phase(i) = std::exp(kI * (phi * s.count(i, mode)));
  rho = (phase.asDiagonal() * rho * phase.conjugate().asDiagonal()).eval();
}

// Beamsplitter exp(theta (a0^dag a1 - a0 a1^dag)) restricted to the sector with
// N total photons, in the basis |k, N-k>.
CMatrix beamsplitterSector(int total, double theta) {
  const int dim = total + 1;
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int k = 0; k < total; ++k) {
    const double v = std::sqrt(static_cast<double>((k + 1) * (total - k)));
    a(k + 1, k) = v;
    a(k, k + 1) = -v;
  }
  return expMinusI(kI * theta * a);
}

void applyHybrid(FockDensity& s, int mode_a, int mode_b) {
  require(s.modes() == 2 && mode_a != mode_b, "hybrid ring needs two distinct modes of a two-mode state");
  const int c = s.cutoff();
  const int d = s.dim();
  auto index = [&](int na, int nb) { return mode_a == 0 ? na + c * nb : nb + c * na; };

  // The beamsplitter conserves the total photon number, so in sector order the
  // unitary is block diagonal.
  std::vector<int> order;
  std::vector<std::pair<int, int>> blocks;  // (offset, size)
  std::vector<CMatrix> unitaries;
  order.reserve(d);
  for (int total = 0; total <= 2 * (c - 1); ++total) {
    const int lo = std::max(0, total - (c - 1));
    const int hi = std::min(total, c - 1);
    const CMatrix v = beamsplitterSector(total, kPi / 4.0);
    CMatrix block(hi - lo + 1, hi - lo + 1);
    for (int kout = lo; kout <= hi; ++kout) {
      // Phase pi on the second output port.
      const double sign = ((total - kout) % 2 == 0) ? 1.0 : -1.0;
      for (int kin = lo; kin <= hi; ++kin) block(kout - lo, kin - lo) = sign * v(kout, kin);
    }
    blocks.emplace_back(static_cast<int>(order.size()), hi - lo + 1);
    unitaries.push_back(std::move(block));
    for (int k = lo; k <= hi; ++k) order.push_back(index(k, total - k));
  }

  CMatrix& rho = s.rho();
  CMatrix perm(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) perm(i, j) = rho(order[i], order[j]);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto [off, len] = blocks[b];
    auto rows = perm.middleRows(off, len);
    CMatrix out = unitaries[b] * rows;
    rows = out;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto [off, len] = blocks[b];
    auto cols = perm.middleCols(off, len);
    CMatrix out = cols * unitaries[b].adjoint();
    cols = out;
  }
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) rho(order[i], order[j]) = perm(i, j);
}

CMatrix singleModeDensity(const ModeSpec& spec, int c) {
  CMatrix rho = CMatrix::Zero(c, c);
  if (const auto* th = std::get_if<ThermalMode>(&spec)) {
    require(th->n_mean >= 0.0, "thermal occupation must be non-negative");
    const double n = th->n_mean;
    double p = 1.0 / (n + 1.0);
    const double ratio = n / (n + 1.0);
    for (int k = 0; k < c; ++k) {
      rho(k, k) = p;
      p *= ratio;
    }
  } else if (const auto* coh = std::get_if<CoherentMode>(&spec)) {
    Eigen::VectorXcd amp(c);
    amp(0) = std::exp(-0.5 * std::norm(coh->alpha));
    for (int k = 1; k < c; ++k) amp(k) = amp(k - 1) * coh->alpha / std::sqrt(static_cast<double>(k));
    rho = amp * amp.adjoint();
  } else {
    rho(0, 0) = 1.0;
  }
  return rho;
}

FockDensity prepare(const std::vector<ModeSpec>& inputs, int c) {
  const int modes = static_cast<int>(inputs.size());
  require(modes == 1 || modes == 2, "Fock oracle supports one or two modes");
  if (modes == 1) return FockDensity(1, c, singleModeDensity(inputs[0], c));
  CMatrix r0 = singleModeDensity(inputs[0], c);
  CMatrix r1 = singleModeDensity(inputs[1], c);
  CMatrix rho(c * c, c * c);
  for (int n1 = 0; n1 < c; ++n1) {
    for (int m1 = 0; m1 < c; ++m1) rho.block(c * n1, c * m1, c, c) = r1(n1, m1) * r0;
  }
  return FockDensity(2, c, rho);
}

void checkMode(const FockDensity& s, int mode) {
  require(mode >= 0 && mode < s.modes(), "mode index " + std::to_string(mode) + " out of range");
}

struct FockOp {
  FockDensity& s;
  Execution exec;

  void operator()(const SqueezeOp& op) const {
    checkMode(s, op.mode);
    require(op.r >= 0.0, "squeezing parameter must be non-negative");
    applyUnitary(s, squeezeGate(s.cutoff(), op.r, op.gamma), op.mode);
  }
  void operator()(const RotateOp& op) const {
    checkMode(s, op.mode);
    applyRotation(s, op.mode, op.phi);
  }
  void operator()(const DisplaceOp& op) const {
    checkMode(s, op.mode);
    applyUnitary(s, displacementGate(s.cutoff(), op.alpha), op.mode);
  }
  void operator()(const HybridOp& op) const { applyHybrid(s, op.mode_a, op.mode_b); }
  void operator()(const LossOp& op) const {
    checkMode(s, op.mode);
    applyKrausChannel(s, op.mode, attenuatorKraus(s.cutoff(), op.eta, op.n_env), exec);
  }
  void operator()(const NoiseOp& op) const {
    checkMode(s, op.mode);
    require(op.n_added >= 0.0, "added noise must be non-negative");
    if (op.n_added == 0.0) return;
    const double g = 1.0 + op.n_added;
    applyKrausChannel(s, op.mode, attenuatorKraus(s.cutoff(), 1.0 / g, 0.0), exec);
    applyKrausChannel(s, op.mode, amplifierKraus(s.cutoff(), g), exec);
  }
};

CMatrix sqrtPsd(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (rho + rho.adjoint()));
  const double floor = 1e-14 * std::max(1e-300, eig.eigenvalues().cwiseAbs().maxCoeff());
  Vector roots = eig.eigenvalues().unaryExpr([&](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  return eig.eigenvectors() * roots.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

double nuclearNorm(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

}  // namespace

std::vector<ShiftKraus> attenuatorKraus(int cutoff, double eta, double n_env) {
  require(eta >= 0.0 && eta <= 1.0, "transmissivity out of range");
  require(n_env >= 0.0, "environment occupation must be non-negative");
  // Thermal ancilla weights, truncated once the remaining mass is negligible.
  std::vector<double> weights;
  {
    double p = 1.0 / (n_env + 1.0);
    const double ratio = n_env / (n_env + 1.0);
    double remaining = 1.0;
    while (remaining > 1e-16 && static_cast<int>(weights.size()) < 4 * cutoff) {
      weights.push_back(p);
      remaining -= p;
      p *= ratio;
    }
  }
  const double theta = std::acos(std::sqrt(eta));
  std::map<int, CMatrix> sectors;
  auto sector = [&](int total) -> const CMatrix& {
    auto it = sectors.find(total);
    if (it == sectors.end()) it = sectors.emplace(total, beamsplitterSector(total, theta)).first;
    return it->second;
  };
  std::vector<ShiftKraus> out;
  const int jmax = static_cast<int>(weights.size());
  for (int j = 0; j < jmax; ++j) {
    const double amp = std::sqrt(weights[j]);
    for (int k = 0; k <= cutoff - 1 + j; ++k) {
      ShiftKraus kr;
      kr.shift = j - k;
      kr.values.assign(cutoff, Complex(0.0));
      double peak = 0.0;
      for (int n = 0; n < cutoff; ++n) {
        const int m = n + j - k;
        if (m < 0 || m >= cutoff) continue;
        // <m, k| U |n, j> lives in the sector with n + j photons.
        kr.values[n] = amp * sector(n + j)(m, n);
        peak = std::max(peak, std::abs(kr.values[n]));
      }
      if (peak > 1e-12) out.push_back(std::move(kr));
    }
  }
  return out;
}

std::vector<ShiftKraus> amplifierKraus(int cutoff, double gain) {
  require(gain >= 1.0, "amplifier gain must be >= 1");
  const double r = std::acosh(std::sqrt(gain));
  const double t = std::tanh(r);
  const double ch = std::cosh(r);
  std::vector<ShiftKraus> out;
  for (int k = 0; k < cutoff; ++k) {
    ShiftKraus kr;
    kr.shift = k;
    kr.values.assign(cutoff, Complex(0.0));
    double peak = 0.0;
    for (int n = 0; n + k < cutoff; ++n) {
      // sqrt(C(n+k, k)) tanh^k r / cosh^{n+1} r, evaluated in log space.
      const double logv = 0.5 * (std::lgamma(n + k + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n + 1.0)) +
                          (k > 0 ? k * std::log(t) : 0.0) - (n + 1) * std::log(ch);
      kr.values[n] = std::exp(logv);
      peak = std::max(peak, std::exp(logv));
    }
    if (peak > 1e-12) out.push_back(std::move(kr));
  }
  return out;
}

void applyKrausChannel(FockDensity& state, int mode, const std::vector<ShiftKraus>& kraus, Execution execution) {
  checkMode(state, mode);
  const int d = state.dim();
  const int c = state.cutoff();
  const int stride = state.stride(mode);

  // Operators sharing a shift s combine into one weight matrix
  // W_s(n, m) = sum_k v_k[n] conj(v_k[m]).
  std::map<int, CMatrix> weights;
  for (const ShiftKraus& k : kraus) {
    require(static_cast<int>(k.values.size()) == c, "Kraus operator size does not match cutoff");
    Eigen::Map<const Eigen::VectorXcd> v(k.values.data(), c);
    auto [it, inserted] = weights.try_emplace(k.shift, CMatrix::Zero(c, c));
    it->second.noalias() += v * v.adjoint();
  }

  const CMatrix& in = state.rho();
  CMatrix out = CMatrix::Zero(d, d);
  const int blocks = d / c;  // 1 for single-mode states

  auto column = [&](int jo) {
    const int mo = state.count(jo, mode);
    for (const auto& [shift, w] : weights) {
      const int mj = mo - shift;
      if (mj < 0 || mj >= c) continue;
      const int ji = jo - shift * stride;
      const int lo = std::max(0, shift);
      const int hi = std::min(c, c + shift);  // rows with n - shift in [0, c)
      if (mode == 0) {
        for (int b = 0; b < blocks; ++b) {
          const int base = b * c;
          out.col(jo).segment(base + lo, hi - lo) +=
              w.col(mj).segment(lo - shift, hi - lo).cwiseProduct(in.col(ji).segment(base + lo - shift, hi - lo));
        }
      } else {
        for (int n = lo; n < hi; ++n) {
          out.col(jo).segment(n * c, c) += w(n - shift, mj) * in.col(ji).segment((n - shift) * c, c);
        }
      }
    }
  };
  if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (int jo = 0; jo < d; ++jo) column(jo);
  } else {
    for (int jo = 0; jo < d; ++jo) column(jo);
  }
  state.rho() = std::move(out);
}

FockDensity buildFock(const Netlist& netlist, const FockOptions& options) {
  require(options.cutoff >= 2, "Fock cutoff must be at least 2");
  FockDensity state = prepare(netlist.inputs, options.cutoff);
  for (const auto& op : netlist.ops) std::visit(FockOp{state, options.execution}, op);
  if (state.tail() > options.tail_budget) {
    fail(ErrorCategory::Truncation, "Fock truncation tail " + std::to_string(state.tail()) + " exceeds budget " +
                                        std::to_string(options.tail_budget) + "; increase the cutoff");
  }
  return state;
}

Complex expectationOf(const FockDensity& state, const std::vector<Ladder>& word) {
  std::vector<int> creators;
  std::vector<int> annihilators;
  std::vector<bool> seen_annihilator(state.modes(), false);
  for (const Ladder& l : word) {
    checkMode(state, l.mode);
    if (l.dagger) {
      require(!seen_annihilator[l.mode], "word must be normal-ordered within each mode");
      creators.push_back(l.mode);
    } else {
      seen_annihilator[l.mode] = true;
      annihilators.push_back(l.mode);
    }
  }
  // <C^dag A> = tr(A rho C^dag). A and C map basis states to single basis
  // states, so only the entries rho(i, j) with A|i> ~ C|j> contribute.
  std::vector<int> lower(state.modes(), 0), raise(state.modes(), 0);
  for (int mode : annihilators) ++lower[mode];
  for (int mode : creators) ++raise[mode];
  auto falling = [](int n, int k) {
    double f = 1.0;
    for (int j = 0; j < k; ++j) f *= n - j;
    return std::sqrt(f);
  };
  Complex sum = 0.0;
  for (int i = 0; i < state.dim(); ++i) {
    double amp = 1.0;
    int j = i;
    bool valid = true;
    for (int mode = 0; mode < state.modes() && valid; ++mode) {
      const int n = state.count(i, mode);
      const int target = n - lower[mode] + raise[mode];
      if (n < lower[mode] || target >= state.cutoff()) {
        valid = false;
        break;
      }
      amp *= falling(n, lower[mode]) * falling(target, raise[mode]);
      j += (target - n) * state.stride(mode);
    }
    if (valid) sum += amp * state.rho()(i, j);
  }
  return sum;
}

double photonNumber(const FockDensity& state, int mode) {
  return expectationOf(state, {{mode, true}, {mode, false}}).real();
}

double g2Auto(const FockDensity& state, int mode) {
  const double n = photonNumber(state, mode);
  if (n <= kMinPhotonNumber) fail(ErrorCategory::UndefinedRatio, "g2 undefined: mode has no photons");
  return expectationOf(state, {{mode, true}, {mode, true}, {mode, false}, {mode, false}}).real() / (n * n);
}

double g2Cross(const FockDensity& state, int a, int b) {
  const double na = photonNumber(state, a);
  const double nb = photonNumber(state, b);
  if (na + nb <= kMinPhotonNumber) fail(ErrorCategory::UndefinedRatio, "cross g2 undefined: no photons");
  const double num = expectationOf(state, {{a, true}, {a, true}, {a, false}, {a, false}}).real() +
                     expectationOf(state, {{b, true}, {b, true}, {b, false}, {b, false}}).real() +
                     2.0 * expectationOf(state, {{a, true}, {a, false}, {b, true}, {b, false}}).real();
  return num / ((na + nb) * (na + nb));
}

double fidelity(const FockDensity& a, const FockDensity& b) {
  require(a.dim() == b.dim(), "fidelity needs states of equal dimension");
  const double root = nuclearNorm(sqrtPsd(a.rho()) * sqrtPsd(b.rho()));
  return root * root;
}

double fidelityQfi(const FockDensity& state, const PhaseGenerator& generator, double h) {
  checkMode(state, generator.mode);
  require(h > 0.0, "finite-difference step must be positive");
  // sqrt F(rho(-h), rho(h)) = || sqrt(rho) U(2h) sqrt(rho) ||_1
  CMatrix root = sqrtPsd(state.rho());
  FockDensity rotated(state.modes(), state.cutoff(), root);
  applyLeft(rotated.rho(), generatorGate(state.cutoff(), generator.g, 2.0 * h), generator.mode, state.modes(),
            state.cutoff());
  const double sqrt_fid = nuclearNorm(root * rotated.rho()) / state.rho().trace().real();
  return 8.0 * (1.0 - sqrt_fid) / (4.0 * h * h);
}

}  // namespace qumpi
