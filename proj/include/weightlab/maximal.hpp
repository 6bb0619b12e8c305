#pragma once

#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab {

/// Selects one member of the maximal-operator family.
///
/// eta = 0, delta_power = 1, family = aligned is the Hardy-Littlewood operator
/// over cell-aligned intervals. eta > 0 deflates each cube average by
/// phi(|Q|)^eta; delta_power applies the operator to |f|^delta and takes the
/// 1/delta root. With sharp = true the sharp operator is used instead (mean
/// oscillation on cubes of side < 1 plus the deflated average on side >= 1).
struct MaximalParams {
  double eta = 0.0;
  double delta_power = 1.0;
  CubeFamily family = CubeFamily::aligned;
  bool sharp = false;
};

SampledFunction maximal(const SampledFunction& f, const GrowthFunction& gf, const MaximalParams& params);

// Core routine on nonnegative samples: sup over family cubes containing each
// sample of integral / (phi(|Q|)^eta |Q|). No delta power is applied.
std::vector<double> maximal_values(const GridSpec& grid, std::span<const double> nonneg, const GrowthFunction& gf,
                                   double eta, CubeFamily family);

SampledFunction sharp_maximal(const SampledFunction& f, double eta, const GrowthFunction& gf,
                              CubeFamily family = CubeFamily::dyadic);

double mean_oscillation(const SampledFunction& f, const Cube& cube);
// inf over constants C of the mean of |f - C| on the cube (real part of f; the
// minimiser is a median).
double min_mean_oscillation(const SampledFunction& f, const Cube& cube);

struct WeightedMaximalResult {
  SampledFunction values;
  std::size_t cubes_used = 0;
  std::size_t cubes_excluded = 0;  // 5Q left the domain
};

/// sup over cubes Q containing x with 5Q inside the domain of
/// (1 / w(5Q)) * integral_Q |f| w.
WeightedMaximalResult weighted_maximal_5Q(const SampledFunction& f, std::span<const double> weight,
                                          CubeFamily family = CubeFamily::aligned);

class YoungFunction {
 public:
  enum class Name { llogl, exp_complement };

  static YoungFunction llogl() { return YoungFunction(Name::llogl); }
  static YoungFunction exp_complement() { return YoungFunction(Name::exp_complement); }

  Name name() const { return name_; }
  double operator()(double t) const;
  YoungFunction complement() const;
  double inverse_at_one() const;  // B^{-1}(1)

 private:
  explicit YoungFunction(Name name) : name_(name) {}
  Name name_;
};

// Luxemburg norm of the given absolute values (uniform cells).
double luxemburg_from_samples(std::span<const double> abs_values, const YoungFunction& young,
                              double rel_tol = 1e-10);

double luxemburg_norm(const SampledFunction& f, const YoungFunction& young, const Cube& cube,
                      double rel_tol = 1e-10);

SampledFunction orlicz_maximal(const SampledFunction& f, const YoungFunction& young, double eta,
                               const GrowthFunction& gf, CubeFamily family);

struct CZResult {
  double lambda = 0.0;
  double eta = 0.0;
  std::vector<Cube> cubes;
  std::vector<CellBox> boxes;
  std::vector<double> averages;         // phi^eta-deflated averages of |f|
  std::vector<double> parent_bounds;    // 2^n (phi(|parent|)/phi(|Q|))^eta lambda
  bool root_selected = false;

  bool disjoint = true;
  bool property_i = true;               // lambda < average
  bool property_ii_unscaled = true;        // average <= 2^n lambda
  bool property_ii_bound = true;        // average <= parent bound
  double residual_max = 0.0;            // max |f| off the union
  double residual_bound = 0.0;          // lambda * phi(h^n)^eta
  bool property_iii = true;
  double omega_measure = 0.0;           // |union Q_j|
  double l1_over_lambda = 0.0;          // integral |f| / lambda
  bool property_iv = true;
};

CZResult cz_decompose(const SampledFunction& f, double lambda, double eta, const GrowthFunction& gf);

/// Radial bump profile c exp(-1/(1 - |x|^2)) on |x| < 1 with unit integral.
struct MollifierFamily {
  int n = 1;
  double normalization = 1.0;
  std::vector<double> scales;

  double profile(double r) const;
  static MollifierFamily make(int n, std::vector<double> scales);
};

struct MollifierReport {
  double ratio = 0.0;
  std::size_t witness_index = 0;
  double witness_scale = 0.0;
  std::vector<double> mass_by_scale;  // h^n sum of Psi_t, ~ 1
  bool vacuous = false;
};

MollifierReport mollifier_bound_check(const SampledFunction& f, const MollifierFamily& family, double eta,
                                      const GrowthFunction& gf);

}  // namespace weightlab
