#pragma once

#include <variant>
#include <vector>

#include "qumpi/gaussian_state.hpp"

namespace qumpi {

/// A real 2k x 2k matrix verified to satisfy S Omega S^T = Omega.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix s);

  const Matrix& matrix() const { return s_; }
  int modes() const { return static_cast<int>(s_.rows()) / 2; }

 private:
  Matrix s_;
};

struct Rotation {
  double phi = 0.0;
};

/// Single-mode squeezer amplifying the quadrature at angle `gamma` by e^r.
struct Squeeze {
  double r = 0.0;
  double gamma = 0.0;
};

/// 180-degree hybrid: b1 = (a1 + a2)/sqrt2, b2 = (a1 - a2)/sqrt2.
struct HybridRing {};

using Component = std::variant<Rotation, Squeeze, HybridRing>;

SymplecticMatrix symplecticOf(const Component& component);

GaussianState applySymplectic(const GaussianState& state, const SymplecticMatrix& s, const std::vector<int>& modes);

/// Squeezing parameter r for a power gain given in dB (G = e^{2r}).
double squeezeFromGainDb(double gain_db);

}  // namespace qumpi
