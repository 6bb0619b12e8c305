#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weightlab/common.hpp"
#include "weightlab/growth.hpp"

namespace weightlab {

/// Uniform cell-centred grid over [-L, L)^n. Sample k sits at (k + 1/2)h - L,
/// so no coordinate is ever exactly zero.
class GridSpec {
 public:
  GridSpec() = default;

  int dim() const { return n_; }
  double half_width() const { return L_; }
  std::size_t points_per_axis() const { return N_; }
  double spacing() const { return h_; }
  double cell_volume() const { return n_ == 1 ? h_ : h_ * h_; }
  std::size_t size() const { return n_ == 1 ? N_ : N_ * N_; }
  int depth() const { return depth_; }  // log2(N)

  double coord(std::size_t k) const { return (static_cast<double>(k) + 0.5) * h_ - L_; }
  Vec point(std::size_t index) const;
  std::size_t index(std::size_t i0, std::size_t i1 = 0) const { return n_ == 1 ? i0 : i0 * N_ + i1; }

  // Signed frequency index for FFT slot m, and the frequency k / (2L).
  long frequency_index(std::size_t m) const {
    return m < N_ / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(N_);
  }
  double frequency(std::size_t m) const { return static_cast<double>(frequency_index(m)) / (2.0 * L_); }
  Vec frequency_point(std::size_t index) const;
  double max_frequency() const;  // largest |xi_k| on the frequency grid

  GridSpec refined() const;  // same L, 2N
  GridSpec widened() const;  // 2L, 2N (same h)

  bool operator==(const GridSpec&) const = default;

  friend GridSpec make_grid(int n, double L, std::size_t N);

 private:
  int n_ = 1;
  double L_ = 1.0;
  std::size_t N_ = 8;
  double h_ = 0.25;
  int depth_ = 3;
};

GridSpec make_grid(int n, double L, std::size_t N);

/// Complex samples in row-major order (axis 0 slowest).
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(GridSpec grid, std::vector<Complex> values);

  static SampledFunction from_real(const GridSpec& grid, std::span<const double> values);
  static SampledFunction constant(const GridSpec& grid, Complex value);
  static SampledFunction from_function(const GridSpec& grid, const std::function<Complex(const Vec&)>& f);

  const GridSpec& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  std::vector<double> abs() const;
  std::vector<double> real() const;
  double max_abs() const;

  SampledFunction operator+(const SampledFunction& other) const;
  SampledFunction operator-(const SampledFunction& other) const;
  SampledFunction operator*(Complex scale) const;
  SampledFunction pointwise_product(std::span<const double> factor) const;

 private:
  GridSpec grid_;
  std::vector<Complex> values_;
};

enum class CubeFamily { aligned, dyadic, shifted_dyadic };

std::string to_string(CubeFamily family);
CubeFamily cube_family_from_string(const std::string& name);

/// Axis-aligned cube Q(center, side).
struct Cube {
  Vec center{0.0, 0.0};
  double side = 1.0;
  CubeFamily family = CubeFamily::aligned;

  double volume(int n) const { return n == 1 ? side : side * side; }
  Cube dilate(double factor) const { return Cube{center, side * factor, family}; }
  bool contains(const Vec& x, int n) const;
};

/// A cube in cell units: cells lo[a] .. lo[a] + len - 1 along each axis.
struct CellBox {
  std::array<long, 2> lo{0, 0};
  long len = 1;

  bool operator==(const CellBox&) const = default;
  bool contains_cell(std::size_t i0, std::size_t i1, int n) const {
    const long a = static_cast<long>(i0), b = static_cast<long>(i1);
    return a >= lo[0] && a < lo[0] + len && (n == 1 || (b >= lo[1] && b < lo[1] + len));
  }
  CellBox dilate(long factor) const;  // centred dilation, factor odd
  bool inside(const GridSpec& grid) const;
};

CellBox to_cells(const GridSpec& grid, const Cube& cube);
Cube to_cube(const GridSpec& grid, const CellBox& box, CubeFamily family);

/// Complete dyadic tree over [-L, L)^n; level k has 2^{kn} cubes of side 2L 2^{-k}.
class DyadicTree {
 public:
  explicit DyadicTree(const GridSpec& grid) : grid_(grid) {}

  int levels() const { return grid_.depth() + 1; }
  std::size_t count(int level) const;
  CellBox box(int level, std::size_t index) const;
  std::size_t parent(int level, std::size_t index) const;  // index at level - 1
  std::vector<std::size_t> children(int level, std::size_t index) const;
  std::size_t index_of_cell(int level, std::size_t i0, std::size_t i1 = 0) const;

 private:
  GridSpec grid_;
};

struct CubeConstraints {
  std::optional<double> min_side;
  std::optional<double> max_side;  // inclusive
  std::optional<double> below_side;  // strict upper bound
  std::optional<Vec> containing;
  std::optional<int> level;  // dyadic / shifted-dyadic only
};

std::vector<CellBox> enumerate_boxes(const GridSpec& grid, CubeFamily family,
                                     const CubeConstraints& constraints = {});
std::vector<Cube> enumerate_cubes(const GridSpec& grid, CubeFamily family,
                                  const CubeConstraints& constraints = {});

// h^n times the sum of samples in the box. Summation is pairwise over the
// dyadic halving of the box, so a dyadic cube's integral equals the sum of
// its children's integrals bit for bit (children paired (00+01)+(10+11)).
double box_integral(const GridSpec& grid, std::span<const double> values, const CellBox& box);
Complex box_integral(const GridSpec& grid, std::span<const Complex> values, const CellBox& box);

Complex integrate_cube(const SampledFunction& f, const Cube& cube);
Complex average_cube(const SampledFunction& f, const Cube& cube);
double phi_average_cube(const SampledFunction& f, const Cube& cube, const GrowthFunction& gf, double eta);

/// Summed-area table of h^n * values for O(1) box integrals.
class PrefixSum {
 public:
  PrefixSum(const GridSpec& grid, std::span<const double> values);
  double sum(const CellBox& box) const;
  double sum1d(long lo, long hi) const { return table_[hi] - table_[lo]; }  // cells [lo, hi)

 private:
  int n_;
  std::size_t stride_;
  std::vector<double> table_;
};

class ComplexPrefixSum {
 public:
  ComplexPrefixSum(const GridSpec& grid, std::span<const Complex> values);
  Complex sum(const CellBox& box) const;

 private:
  int n_;
  std::size_t stride_;
  std::vector<Complex> table_;
};

}  // namespace weightlab
