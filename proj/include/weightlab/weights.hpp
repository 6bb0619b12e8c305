#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <optional>
#include <string>
#include <vector>

#include "weightlab/grid.hpp"
#include "weightlab/growth.hpp"

namespace weightlab {

/// Positive weight built from power weights (1+|x|)^g1 |x|^g2, duals
/// w^{-1/(p-1)} and geometric interpolations w1^a w2^{1-a}.
class Weight {
 public:
  enum class Kind { power, dual, product };

  static Weight power(double gamma1, double gamma2, double scale = 1.0);
  static Weight constant(double value) { return power(0.0, 0.0, value); }
  static Weight dual(const Weight& base, double p);
  static Weight product(const Weight& first, const Weight& second, double alpha);

  Kind kind() const { return kind_; }
  double gamma1() const { return gamma1_; }
  double gamma2() const { return gamma2_; }
  double scale() const { return scale_; }
  std::string describe() const;

  double log_value(const Vec& x, int n) const;
  double operator()(const Vec& x, int n) const;

  // Grid sample; throws NumericalError naming the first sample that is not a
  // finite positive number.
  std::vector<double> sample(const GridSpec& grid) const;

 private:
  Kind kind_ = Kind::power;
  double gamma1_ = 0.0;
  double gamma2_ = 0.0;
  double scale_ = 1.0;
  double exponent_ = 1.0;  // dual: -1/(p-1); product: alpha
  std::shared_ptr<const Weight> first_;
  std::shared_ptr<const Weight> second_;
};

inline Weight dual_weight(const Weight& w, double p) { return Weight::dual(w, p); }

struct PowerWeightValidation {
  bool accepted = false;
  bool gamma1_certified = false;  // |gamma1| < n alpha0
  std::string reason;
};

PowerWeightValidation validate_power_weight(int n, double p, double gamma1, double gamma2, double alpha0);

enum class RefineMode { none, refine, widen };

std::string to_string(RefineMode mode);

struct Trend {
  RefineMode mode = RefineMode::none;
  std::size_t base_points = 0;
  std::size_t next_points = 0;
  double base_half_width = 0.0;
  double next_half_width = 0.0;
  double base = 0.0;
  double next = 0.0;
  double relative_change() const { return base == 0.0 ? 0.0 : std::abs(next - base) / std::abs(base); }
  double growth() const { return base == 0.0 ? 0.0 : next / base; }
};

struct ApReport {
  double p = 2.0;
  double eta = 1.0;
  double alpha0 = 1.0;
  double constant = 0.0;
  Cube witness;
  CubeFamily family = CubeFamily::aligned;
  std::size_t family_size = 0;
  std::optional<Trend> trend;
};

// Per-cube factor [phi-avg w] [phi-avg w^{-1/(p-1)}]^{p-1}.
double ap_phi_factor(const Weight& w, const GridSpec& grid, double p, const GrowthFunction& gf, const Cube& cube);

ApReport ap_phi_constant(const Weight& w, const GridSpec& grid, double p, const GrowthFunction& gf,
                         CubeFamily family, RefineMode refine = RefineMode::none);

ApReport a1_phi_constant(const Weight& w, const GridSpec& grid, const GrowthFunction& gf,
                         CubeFamily family, RefineMode refine = RefineMode::none);

double weight_measure(std::span<const double> weight_sample, const GridSpec& grid, const Cube& cube);
double weight_measure(std::span<const double> weight_sample, const GridSpec& grid,
                      std::span<const std::size_t> samples);

struct RatioReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool vacuous = false;
};

/// (1/(phi(|Q|)|Q|)) int_Q |f|  against  ((1/w(5Q)) int_Q |f|^p w)^{1/p}.
RatioReport check_lemma21_iv(const Weight& w, double p, const SampledFunction& f, const Cube& cube,
                             const GrowthFunction& gf);

struct ReverseHolderReport {
  double constant = 0.0;
  Cube witness;
  std::size_t cubes = 0;
};

ReverseHolderReport reverse_holder_check(const Weight& w, const GridSpec& grid, double delta,
                                         const std::vector<Cube>& cubes);

// Dyadic cubes of side < 1 (the small-cube family the reverse Holder bound is stated for).
std::vector<Cube> small_cube_family(const GridSpec& grid);

struct Delta1Report {
  double delta1 = 0.0;
  bool feasible = true;  // false when some w(E)/w(Q) exceeds C outright
  std::size_t witness = 0;
  std::size_t subsets = 0;
};

Delta1Report measure_comparison_delta1(const Weight& w, const GridSpec& grid, const Cube& cube,
                                       const std::vector<std::vector<std::size_t>>& subsets, double constant);

// Dyadic sub-cubes of the cube (all levels down to single cells) plus
// `random_count` random sample subsets.
std::vector<std::vector<std::size_t>> comparison_subsets(const GridSpec& grid, const Cube& cube,
                                                         std::size_t random_count, std::uint64_t seed);

}  // namespace weightlab
