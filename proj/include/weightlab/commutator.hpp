#pragma once

#include <functional>
#include <string>
#include <vector>

#include "weightlab/grid.hpp"
#include "weightlab/pdo.hpp"

namespace weightlab {

class BmoFunction {
 public:
  enum class Kind { constant, sign, log_abs, custom };

  static BmoFunction constant(double c);
  static BmoFunction sign();  // sign of the first coordinate
  static BmoFunction log_abs();
  static BmoFunction custom(std::string name, std::function<double(const Vec&)> fn);
  static BmoFunction from_name(const std::string& name, double c = 0.0);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double operator()(const Vec& x) const { return fn_(x); }
  std::vector<double> sample(const GridSpec& grid) const;

  BmoFunction plus(double c) const;
  BmoFunction times(double c) const;

 private:
  Kind kind_ = Kind::constant;
  std::string name_;
  std::function<double(const Vec&)> fn_;
};

struct BmoReport {
  double norm = 0.0;
  Cube witness;
  CubeFamily family = CubeFamily::aligned;
  std::size_t cubes = 0;
};

// sup over family cubes of (1/|Q|) int_Q |b - b_Q|.
BmoReport bmo_norm(std::span<const double> b, const GridSpec& grid, CubeFamily family);
BmoReport bmo_norm(const BmoFunction& b, const GridSpec& grid, CubeFamily family);

// b T f - T(b f)
SampledFunction commutator_apply(std::span<const double> b, const Symbol& symbol, const SampledFunction& f);
SampledFunction commutator_apply(const BmoFunction& b, const Symbol& symbol, const SampledFunction& f);

// h^n sum (|f|/lambda)(1 + log+(|f|/lambda)) w
double llogl_functional(const SampledFunction& f, double lambda, std::span<const double> weight);

struct PhiYoung {
  double operator()(double t) const;  // t log(e + t)
};

}  // namespace weightlab
