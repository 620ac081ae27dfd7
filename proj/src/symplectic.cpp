#include "qumpi/symplectic.hpp"

#include <cmath>

#include "qumpi/error.hpp"

namespace qumpi {

SymplecticMatrix::SymplecticMatrix(Matrix s) : s_(std::move(s)) {
  require(s_.rows() == s_.cols() && s_.rows() > 0 && s_.rows() % 2 == 0, "symplectic matrix must be 2k x 2k");
  if (symplecticDefect(s_) > 1e-10) fail(ErrorCategory::InvalidArgument, "matrix is not symplectic");
}

namespace {

struct ComponentMatrix {
  Matrix operator()(const Rotation& rot) const { return rotation2(rot.phi); }

  Matrix operator()(const Squeeze& sq) const {
    require(sq.r >= 0.0, "squeezing parameter must be non-negative");
    Matrix2 r = rotation2(sq.gamma);
    Matrix2 scale = Eigen::Vector2d(std::exp(sq.r), std::exp(-sq.r)).asDiagonal();
    return r * scale * r.transpose();
  }

  Matrix operator()(const HybridRing&) const {
    const double h = 1.0 / std::sqrt(2.0);
    Matrix s = Matrix::Zero(4, 4);
    s.block<2, 2>(0, 0) = h * Matrix2::Identity();
    s.block<2, 2>(0, 2) = h * Matrix2::Identity();
    s.block<2, 2>(2, 0) = h * Matrix2::Identity();
    s.block<2, 2>(2, 2) = -h * Matrix2::Identity();
    return s;
  }
};

}  // namespace

SymplecticMatrix symplecticOf(const Component& component) {
  return SymplecticMatrix(std::visit(ComponentMatrix{}, component));
}

GaussianState applySymplectic(const GaussianState& state, const SymplecticMatrix& s, const std::vector<int>& modes) {
  return applySymplectic(state, s.matrix(), modes);
}

double squeezeFromGainDb(double gain_db) {
  require(gain_db >= 0.0, "gain in dB must be non-negative");
  return 0.5 * std::log(std::pow(10.0, gain_db / 10.0));
}

}  // namespace qumpi
