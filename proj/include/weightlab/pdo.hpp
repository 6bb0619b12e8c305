#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab {

/// sigma(x, xi) with declared order m and exponent delta.
struct Symbol {
  std::string name;
  double order = 0.0;
  double delta = 0.0;
  bool x_dependent = false;
  std::function<Complex(const Vec& x, const Vec& xi)> evaluate;
  // Set when sigma vanishes for |xi| > radius (smoothing pieces, band limits).
  std::optional<double> support_radius;

  Complex operator()(const Vec& x, const Vec& xi) const { return evaluate(x, xi); }
};

// Catalog: "identity", "riesz", "var", "bessel" (parameter s), "smoothing",
// "band" (indicator of |xi| <= R, parameter R), "shift" (e^{2 pi i a xi_1}, parameter a).
Symbol make_symbol(const std::string& id, double parameter = 0.0);
std::vector<std::string> builtin_symbol_ids();

/// Discrete dual of the grid: f^(xi_k) = h^n sum_j f(x_j) e^{-2 pi i x_j xi_k},
/// Tf(x_i) = (2L)^{-n} sum_k sigma(x_i, xi_k) f^(xi_k) e^{2 pi i x_i xi_k}.
SampledFunction apply_pdo(const Symbol& symbol, const SampledFunction& f);
SampledFunction apply_pdo_adjoint(const Symbol& symbol, const SampledFunction& f);

// max_k |sigma(xi_k)| for an x-independent symbol (the L^2 operator norm).
double multiplier_sup(const Symbol& symbol, const GridSpec& grid);

struct SymbolConstant {
  std::array<int, 2> alpha{0, 0};
  std::array<int, 2> beta{0, 0};
  double value = 0.0;       // sup over the full sampled (x, xi) set
  double half_band = 0.0;   // same sup restricted to |xi| <= max_frequency / 2
  bool out_of_class = false;
};

struct SymbolClassReport {
  std::vector<SymbolConstant> constants;
  bool in_class = true;
  const SymbolConstant& at(std::array<int, 2> alpha, std::array<int, 2> beta) const;
};

/// Estimates C_{alpha,beta} = sup |D_x^alpha D_xi^beta sigma| (1+|xi|)^{-m+|beta|-delta|alpha|}
/// by central differences for |alpha| + |beta| <= max_order.
SymbolClassReport symbol_class_check(const Symbol& symbol, const GridSpec& grid, double m, double delta,
                                     int max_order);

/// Smooth radial cutoff eta0 (1 on |xi| <= 1, 0 on |xi| >= 2) and psi(xi) = eta0(xi) - eta0(2 xi).
struct CutoffPair {
  double smooth_step(double t) const;
  double eta0(double r) const;
  double psi(double r) const;
};

CutoffPair build_cutoffs();

// max over grid frequencies |xi| <= 2^J of |1 - eta0(xi) - sum_{j<=J} psi(2^-j xi)|.
double partition_check(const GridSpec& grid, int J);

struct LPDecomposition {
  int J = 0;
  SampledFunction smoothing;            // A f
  std::vector<SampledFunction> bands;   // A_j f, j = 1..J
  double residual = 0.0;                // |Tf - Af - sum A_j f|_inf / |Tf|_inf
};

LPDecomposition lp_decompose(const Symbol& symbol, const SampledFunction& f, int J);

Symbol smoothing_piece(const Symbol& symbol);
Symbol band_piece(const Symbol& symbol, int j);

struct KernelSample {
  Vec x{0.0, 0.0};
  GridSpec grid;
  std::vector<double> z;        // displacement m h, m in [-N/2, N/2) (1D axis)
  std::vector<Complex> values;  // K(x, z), row-major over the displacement grid
};

// K(x, z) = (2L)^{-n} sum_k sigma(x, xi_k) e^{2 pi i z . xi_k}
KernelSample kernel(const Symbol& symbol, const GridSpec& grid, const Vec& x);

struct KernelDecayReport {
  double exponent = 0.0;
  double constant = 0.0;        // sup_z |K(x,z)| (1+|z|)^k over the x-set at the base grid
  double constant_wide = 0.0;   // same with L doubled at fixed h
  double z0_value = 0.0;
  double z0_bound = 0.0;        // (2L)^{-n} sum_k |sigma(x, xi_k)|
  bool stable = false;          // constant_wide < 1.1 constant
};

KernelDecayReport kernel_decay_check(const Symbol& symbol, const GridSpec& grid, double exponent,
                                     const std::vector<Vec>& xs);

struct SlopeFit {
  int power = 0;                // the |y|^N weight
  std::vector<int> js;
  std::vector<double> log2_values;
  double slope = 0.0;
  double target = 0.0;          // n + m - N
  bool pass = false;            // |slope - target| <= tolerance
};

struct Lemma32Report {
  std::vector<SlopeFit> fits;
  double tolerance = 0.6;
  bool pass = true;
};

Lemma32Report lemma32_check(const Symbol& symbol, const GridSpec& grid, int j_lo, int j_hi,
                            const std::vector<int>& powers, double tolerance = 0.6, Vec x0 = {0.0, 0.0});

}  // namespace weightlab
