#pragma once

#include <cmath>

#include "weightlab/common.hpp"

namespace weightlab {

/// phi(t) = (1 + t)^alpha0. alpha0 = 0 gives phi == 1, which is how the
/// classical (undeflated) quantities are computed with the same code.
class GrowthFunction {
 public:
  explicit GrowthFunction(double alpha0 = 1.0) : alpha0_(alpha0) {
    require(alpha0 >= 0.0 && std::isfinite(alpha0), "alpha0 must be finite and >= 0");
  }

  double alpha0() const { return alpha0_; }

  double operator()(double t) const {
    require(t >= 0.0, "phi is defined for t >= 0");
    return std::pow(1.0 + t, alpha0_);
  }

  // phi(t)^eta without the intermediate power.
  double pow(double t, double eta) const {
    require(t >= 0.0, "phi is defined for t >= 0");
    return std::pow(1.0 + t, alpha0_ * eta);
  }

 private:
  double alpha0_;
};

inline double phi_eval(const GrowthFunction& gf, double t) { return gf(t); }

}  // namespace weightlab
