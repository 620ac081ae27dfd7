#include "qumpi/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qumpi/error.hpp"

namespace qumpi {

ModeMoments modeMoments(const GaussianState& state, int mode) {
  require(mode >= 0 && mode < state.modes(), "mode index out of range");
  const int q = 2 * mode;
  const int p = q + 1;
  const Vector& d = state.mean();
  const Matrix& s = state.cov();
  ModeMoments m;
  m.alpha = Complex(d(q), d(p)) / std::sqrt(2.0);
  m.n_fluct = 0.5 * (s(q, q) + s(p, p) - 1.0);
  m.m_fluct = 0.5 * Complex(s(q, q) - s(p, p), 2.0 * s(q, p));
  return m;
}

PairMoments modeMoments(const GaussianState& state, int mode_a, int mode_b) {
  require(mode_a != mode_b, "pair moments need two distinct modes");
  PairMoments pm;
  pm.first = modeMoments(state, mode_a);
  pm.second = modeMoments(state, mode_b);
  const Matrix& s = state.cov();
  const int q1 = 2 * mode_a, p1 = q1 + 1;
  const int q2 = 2 * mode_b, p2 = q2 + 1;
  pm.c_nd = 0.5 * Complex(s(q1, q2) + s(p1, p2), s(q1, p2) - s(p1, q2));
  pm.c_dd = 0.5 * Complex(s(q1, q2) - s(p1, p2), s(q1, p2) + s(p1, q2));
  return pm;
}

double factorialMoment2(const ModeMoments& m) {
  const double a2 = std::norm(m.alpha);
  const double n = m.n_fluct;
  return a2 * a2 + 4.0 * a2 * n + 2.0 * std::real(std::conj(m.alpha * m.alpha) * m.m_fluct) + 2.0 * n * n +
         std::norm(m.m_fluct);
}

double numberCorrelation(const PairMoments& m) {
  const Complex a1 = m.first.alpha;
  const Complex a2 = m.second.alpha;
  const double n1 = m.first.n_fluct;
  const double n2 = m.second.n_fluct;
  const double p1 = std::norm(a1);
  const double p2 = std::norm(a2);
  // Zero-mean third moments vanish; the fourth moment splits into pairings.
  return p1 * p2 + p1 * n2 + p2 * n1 + 2.0 * std::real(std::conj(a1 * a2) * m.c_dd) +
         2.0 * std::real(a1 * std::conj(a2) * m.c_nd) + n1 * n2 + std::norm(m.c_dd) + std::norm(m.c_nd);
}

double g2Auto(const GaussianState& state, int mode) {
  const double n = photonNumber(state, mode);
  if (n <= kMinPhotonNumber) {
    fail(ErrorCategory::UndefinedRatio, "g2 undefined: mode " + std::to_string(mode) + " has no photons");
  }
  return factorialMoment2(modeMoments(state, mode)) / (n * n);
}

double g2Cross(const GaussianState& state, int mode_a, int mode_b) {
  PairMoments pm = modeMoments(state, mode_a, mode_b);
  const double total = photonNumber(state, mode_a) + photonNumber(state, mode_b);
  if (total <= kMinPhotonNumber) fail(ErrorCategory::UndefinedRatio, "cross g2 undefined: no photons in either mode");
  const double num = factorialMoment2(pm.first) + factorialMoment2(pm.second) + 2.0 * numberCorrelation(pm);
  return num / (total * total);
}

double balancing(const GaussianState& state) {
  require(state.modes() == 2, "balancing criterion needs a two-mode state");
  double b = 1.0;
  for (int mode = 0; mode < 2; ++mode) {
    Eigen::SelfAdjointEigenSolver<Matrix2> eig(state.localCov(mode), Eigen::EigenvaluesOnly);
    b *= eig.eigenvalues()(0) / eig.eigenvalues()(1);
  }
  return b;
}

PhaseGenerator PhaseGenerator::harmonic(int mode, double w, double psi) {
  require(w > 0.0, "generator spectrum ratio must be positive");
  Matrix2 r = rotation2(psi);
  PhaseGenerator gen;
  gen.mode = mode;
  gen.g = r * Eigen::Vector2d(w, 1.0 / w).asDiagonal() * r.transpose();
  return gen;
}

namespace {

// vec() is column-major: index i + j * dim.
Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

QfiForm::QfiForm(const GaussianState& state, int mode) {
  const int n = state.modes();
  require(mode >= 0 && mode < n, "probe mode out of range");
  const int dim = 2 * n;

  // Shift every symplectic eigenvalue by the regularization before inverting.
  Williamson w = williamson(state.cov());
  Vector shifted(dim);
  for (int k = 0; k < n; ++k) shifted(2 * k) = shifted(2 * k + 1) = w.nu(k) + kPurityRegularization;
  const Matrix v = 2.0 * w.symplectic * shifted.asDiagonal() * w.symplectic.transpose();
  const Matrix omega = symplecticForm(n);

  Matrix big(dim * dim, dim * dim);
  for (int l = 0; l < dim; ++l) {
    for (int k = 0; k < dim; ++k) {
      Matrix col = v.col(k) * v.col(l).transpose() - omega.col(k) * omega.col(l).transpose();
      big.col(k + l * dim) = vec(col);
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (big + big.transpose()));
  const double cutoff = 1e-14 * eig.eigenvalues().cwiseAbs().maxCoeff();

  std::array<Matrix2, 3> basis;
  basis[0] << 1, 0, 0, 0;
  basis[1] << 0, 1, 1, 0;
  basis[2] << 0, 0, 0, 1;
  Matrix projected(dim * dim, 3);
  for (int b = 0; b < 3; ++b) {
    Matrix k = Matrix::Zero(dim, dim);
    k.block<2, 2>(2 * mode, 2 * mode) = omega.block<2, 2>(0, 0) * basis[b];
    Matrix dv = k * v + v * k.transpose();
    projected.col(b) = eig.eigenvectors().transpose() * vec(dv);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int e = 0; e < dim * dim; ++e) {
        const double lam = eig.eigenvalues()(e);
        if (lam > cutoff) acc += projected(e, i) * projected(e, j) / lam;
      }
      quad_(i, j) = 0.5 * acc;
    }
  }

  mean_ = state.mean().segment<2>(2 * mode);
  const Matrix2 om = omega.block<2, 2>(0, 0);
  const Matrix vinv = v.inverse();
  disp_metric_ = 2.0 * om.transpose() * vinv.block<2, 2>(2 * mode, 2 * mode) * om;
}

double QfiForm::covariancePart(const Matrix2& g) const {
  const Eigen::Vector3d coeffs(g(0, 0), 0.5 * (g(0, 1) + g(1, 0)), g(1, 1));
  return std::max(0.0, coeffs.dot(quad_ * coeffs));
}

double QfiForm::displacementPart(const Matrix2& g) const {
  const Eigen::Vector2d gd = g * mean_;
  return std::max(0.0, gd.dot(disp_metric_ * gd));
}

double gaussianQFI(const GaussianState& state, const PhaseGenerator& generator) {
  const Matrix2& g = generator.g;
  require(std::abs(g(0, 1) - g(1, 0)) < 1e-12, "generator matrix must be symmetric");
  if (std::abs(g.determinant() - 1.0) > 1e-9) fail(ErrorCategory::InvalidArgument, "generator must satisfy det G = 1");
  QfiForm form(state, generator.mode);
  return form.covariancePart(g) + form.displacementPart(g);
}

namespace {

// Generator R(psi) diag(e^u, e^-u) R(psi)^T written in the smooth chart
// (x, y) = u (cos 2psi, sin 2psi).
Matrix2 chartGenerator(double x, double y) {
  const double u = std::hypot(x, y);
  Matrix2 g = std::cosh(u) * Matrix2::Identity();
  if (u > 0.0) {
    const double f = std::sinh(u) / u;
    g(0, 0) += f * x;
    g(1, 1) -= f * x;
    g(0, 1) = g(1, 0) = f * y;
  }
  return g;
}

struct ChartPoint {
  double x;
  double y;
};

ChartPoint clampToDisk(ChartPoint p, double u_max) {
  const double u = std::hypot(p.x, p.y);
  if (u > u_max) {
    p.x *= u_max / u;
    p.y *= u_max / u;
  }
  return p;
}

double gridU(const IpOptions& o, int i) {
  return o.grid_w > 1 ? std::log(o.w_max) * i / (o.grid_w - 1) : 0.0;
}

double gridPsi(const IpOptions& o, int j) { return kPi * j / o.grid_psi; }

// Per-axis tables so the grid loop does no transcendental calls.
struct GridTables {
  std::vector<double> ch, sh, c2, s2;
  GridTables(const IpOptions& o) : ch(o.grid_w), sh(o.grid_w), c2(o.grid_psi), s2(o.grid_psi) {
    for (int i = 0; i < o.grid_w; ++i) {
      ch[i] = std::cosh(gridU(o, i));
      sh[i] = std::sinh(gridU(o, i));
    }
    for (int j = 0; j < o.grid_psi; ++j) {
      c2[j] = std::cos(2 * gridPsi(o, j));
      s2[j] = std::sin(2 * gridPsi(o, j));
    }
  }
};

double gridValue(const QfiForm& form, const GridTables& t, int i, int j) {
  Matrix2 g;
  g(0, 0) = t.ch[i] + t.sh[i] * t.c2[j];
  g(1, 1) = t.ch[i] - t.sh[i] * t.c2[j];
  g(0, 1) = g(1, 0) = t.sh[i] * t.s2[j];
  return form.covariancePart(g);
}

// Nelder-Mead on the (x, y) chart, restricted to the disk u <= u_max.
std::pair<ChartPoint, double> refine(const QfiForm& form, ChartPoint start, double step, double u_max,
                                     double rel_tol) {
  auto f = [&](ChartPoint p) {
    p = clampToDisk(p, u_max);
    return form.covariancePart(chartGenerator(p.x, p.y));
  };
  std::array<ChartPoint, 3> pts = {start, ChartPoint{start.x + step, start.y}, ChartPoint{start.x, start.y + step}};
  std::array<double, 3> val;
  for (int k = 0; k < 3; ++k) {
    pts[k] = clampToDisk(pts[k], u_max);
    val[k] = f(pts[k]);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return val[a] < val[b]; });
    const int best = idx[0], mid = idx[1], worst = idx[2];
    const double spread = val[worst] - val[best];
    const double size = std::max(std::hypot(pts[worst].x - pts[best].x, pts[worst].y - pts[best].y),
                                 std::hypot(pts[mid].x - pts[best].x, pts[mid].y - pts[best].y));
    if (spread <= 1e-3 * rel_tol * std::abs(val[best]) + 1e-15 && size < 1e-6) break;
    if (size < 1e-12) break;

    const ChartPoint c{0.5 * (pts[best].x + pts[mid].x), 0.5 * (pts[best].y + pts[mid].y)};
    auto along = [&](double t) {
      return clampToDisk(ChartPoint{c.x + t * (pts[worst].x - c.x), c.y + t * (pts[worst].y - c.y)}, u_max);
    };
    const ChartPoint refl = along(-1.0);
    const double fr = f(refl);
    if (fr < val[best]) {
      const ChartPoint exp = along(-2.0);
      const double fe = f(exp);
      if (fe < fr) {
        pts[worst] = exp;
        val[worst] = fe;
      } else {
        pts[worst] = refl;
        val[worst] = fr;
      }
    } else if (fr < val[mid]) {
      pts[worst] = refl;
      val[worst] = fr;
    } else {
      const ChartPoint con = fr < val[worst] ? along(-0.5) : along(0.5);
      const double fc = f(con);
      if (fc < std::min(fr, val[worst])) {
        pts[worst] = con;
        val[worst] = fc;
      } else {
        for (int k : {mid, worst}) {
          pts[k] = ChartPoint{0.5 * (pts[k].x + pts[best].x), 0.5 * (pts[k].y + pts[best].y)};
          val[k] = f(pts[k]);
        }
      }
    }
  }
  const int best = static_cast<int>(std::min_element(val.begin(), val.end()) - val.begin());
  return {clampToDisk(pts[best], u_max), val[best]};
}

}  // namespace

std::vector<double> ipGridValues(const QfiForm& form, const IpOptions& o, Execution execution) {
  std::vector<double> values(static_cast<std::size_t>(o.grid_w) * o.grid_psi);
  const int total = o.grid_w * o.grid_psi;
  const GridTables tables(o);
  if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (int t = 0; t < total; ++t) values[t] = gridValue(form, tables, t / o.grid_psi, t % o.grid_psi);
  } else {
    for (int t = 0; t < total; ++t) values[t] = gridValue(form, tables, t / o.grid_psi, t % o.grid_psi);
  }
  return values;
}

IpResult interferometricPower(const GaussianState& state, int probe_mode, const IpOptions& o) {
  require(state.modes() == 2, "interferometric power needs a two-mode state");
  require(o.w_max >= 1.0 && o.grid_w >= 1 && o.grid_psi >= 1 && o.rel_tol > 0.0, "invalid minimizer options");
  QfiForm form(state, probe_mode);
  if (o.phase_only) return IpResult{0.25 * form.covariancePart(Matrix2::Identity()), 1.0, 0.0};

  const std::vector<double> values = ipGridValues(form, o, o.execution);
  const auto best = std::min_element(values.begin(), values.end()) - values.begin();
  const double u0 = gridU(o, static_cast<int>(best) / o.grid_psi);
  const double psi0 = gridPsi(o, static_cast<int>(best) % o.grid_psi);
  const double u_max = std::log(o.w_max);
  const double step = std::max(u_max / std::max(1, o.grid_w - 1), 1e-3);
  auto [pt, fmin] = refine(form, ChartPoint{u0 * std::cos(2 * psi0), u0 * std::sin(2 * psi0)}, step, u_max, o.rel_tol);
  fmin = std::min(fmin, values[best]);

  IpResult result;
  result.value = 0.25 * fmin;
  const double u = std::hypot(pt.x, pt.y);
  result.w = std::exp(u);
  double psi = 0.5 * std::atan2(pt.y, pt.x);
  if (psi < 0.0) psi += kPi;
  result.psi = psi;
  return result;
}

QuantumLimits sqlHlBounds(double n_probe) {
  require(n_probe >= 0.0, "probe photon number must be non-negative");
  return QuantumLimits{n_probe, n_probe * (n_probe + 1.0)};
}

}  // namespace qumpi
