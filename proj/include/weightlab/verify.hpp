#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weightlab/commutator.hpp"
#include "weightlab/grid.hpp"
#include "weightlab/growth.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/pdo.hpp"
#include "weightlab/weights.hpp"

namespace weightlab {

struct WeightSpec {
  std::string kind = "power";
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double scale = 1.0;
  Weight make() const;
  bool is_constant() const { return gamma1 == 0.0 && gamma2 == 0.0; }
};

struct SymbolSpec {
  std::string id = "identity";
  double s = 0.0;
  Symbol make() const { return make_symbol(id, s); }
};

struct BmoSpec {
  std::string id = "sign";
  double c = 0.0;
  BmoFunction make() const { return BmoFunction::from_name(id, c); }
};

struct ExponentSpec {
  double p = 2.0;
  double eta = 1.0;
  double delta = 0.5;
  double epsilon = 0.75;
};

struct LambdaGridSpec {
  std::size_t count = 64;
  double lo_pct = 1.0;
  double hi_pct = 99.9;
};

struct TestSetSpec {
  std::size_t count = 8;
  std::vector<std::string> kinds{"gaussian", "spike", "trig", "bump"};
  std::uint64_t seed = 7;
  // Lower bound on Gaussian widths and bump radii (physical units, so the
  // set is unchanged under refinement); 0 means the spacing of the grid the
  // set is generated on. Spikes are always a single cell of that grid.
  double min_scale = 0.0;
};

struct CheckConfig {
  std::string id;        // pin key; derived from the other fields when empty
  std::string check;     // strong, weak, goodlambda, pointwise, maximal, identity, ...
  std::string variant;   // per-check kind
  int n = 1;
  double L = 16.0;
  std::size_t N = 1024;
  double alpha0 = 1.0;
  WeightSpec weight;
  SymbolSpec symbol;
  BmoSpec bmo;
  ExponentSpec exponents;
  LambdaGridSpec lambda_grid;
  TestSetSpec test_set;
  std::string family;    // empty: aligned in 1D, shifted-dyadic in 2D
  double gamma = 0.05;   // good-lambda
  double b = 0.2;
  bool refine = true;
  double trend_limit = 0.2;

  GridSpec grid() const { return make_grid(n, L, N); }
  CubeFamily cube_family() const;
  std::string key() const;
};

struct ReportRow {
  std::string input;
  std::optional<double> lambda;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool vacuous = false;
};

struct Assertion {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct PlotSeries {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<std::array<double, 2>> points;
};

struct CheckReport {
  std::string id;
  std::string check;
  std::string variant;
  double constant = 0.0;
  std::string witness;
  std::vector<ReportRow> rows;
  std::size_t points = 0;
  std::optional<std::size_t> points_refined;
  std::optional<double> constant_refined;
  std::optional<double> relative_change;
  std::optional<double> pinned_bound;
  double slack = 1.05;
  std::string provenance;
  std::map<std::string, double> metrics;
  std::vector<Assertion> assertions;
  std::vector<PlotSeries> plots;
  std::vector<std::string> notes;
  bool pass = false;

  void require_that(const std::string& name, bool ok, const std::string& detail = "");
};

struct TestFunction {
  std::string label;
  SampledFunction f;
};

std::vector<TestFunction> test_function_set(const TestSetSpec& spec, const GridSpec& grid);

struct PowerIterationResult {
  SampledFunction f;
  double rayleigh = 0.0;  // |Tf|_2 / |f|_2 at the final iterate
  int iterations = 0;
};

PowerIterationResult power_iteration_input(const Symbol& symbol, const SampledFunction& start, int iterations);

// `count` log-spaced values between the lo/hi percentiles of the positive
// entries. Throws when the range is degenerate; empty when nothing is positive.
std::vector<double> lambda_grid(std::span<const double> values, const LambdaGridSpec& spec);

double weighted_norm(std::span<const double> abs_values, std::span<const double> weight, const GridSpec& grid, double p);
double level_set_measure(std::span<const double> values, std::span<const double> weight, const GridSpec& grid,
                         double lambda);

struct GoodLambdaParams {
  double gamma = 0.0;
  double b = 0.0;
  double b0 = 0.0;  // 1 / phi(2^n)^eta
  double a = 0.0;   // 2^n gamma / (1 - b / b0)
};

GoodLambdaParams make_good_lambda(int n, double alpha0, double eta, double gamma, double b);

CheckReport strong_bound_check(const CheckConfig& config);
CheckReport weak_type_check(const CheckConfig& config);
CheckReport good_lambda_check(const CheckConfig& config);
CheckReport pointwise_check(const CheckConfig& config);
CheckReport maximal_bound_check(const CheckConfig& config);

// Oracle / property checks used by the suites.
CheckReport identity_check(const CheckConfig& config);
CheckReport partition_suite_check(const CheckConfig& config);
CheckReport cz_check(const CheckConfig& config);
CheckReport lemma32_suite_check(const CheckConfig& config);
CheckReport duality_check(const CheckConfig& config);
CheckReport a1_example_check(const CheckConfig& config);
CheckReport kernel_decay_suite_check(const CheckConfig& config);
CheckReport luxemburg_check(const CheckConfig& config);
CheckReport symbol_class_suite_check(const CheckConfig& config);
CheckReport commutator_zero_check(const CheckConfig& config);

CheckReport run_check(const CheckConfig& config);

// Regression pins recorded from the first verified run.
struct Pin {
  double bound = 0.0;
  const char* provenance = "";
};
std::optional<Pin> find_pin(const std::string& key);

}  // namespace weightlab
