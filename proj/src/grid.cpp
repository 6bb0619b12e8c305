#include "weightlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace weightlab {

GridSpec make_grid(int n, double L, std::size_t N) {
  require(n == 1 || n == 2, "dimension n must be 1 or 2");
  require(is_power_of_two(L), "half-width L must be a power of two (dyadic structure would break)");
  require(is_power_of_two(N), "points per axis N must be a power of two (dyadic structure would break)");
  require(N >= 8, "points per axis N must be at least 8");
  GridSpec g;
  g.n_ = n;
  g.L_ = L;
  g.N_ = N;
  g.h_ = 2.0 * L / static_cast<double>(N);
  g.depth_ = static_cast<int>(std::lround(std::log2(static_cast<double>(N))));
  return g;
}

Vec GridSpec::point(std::size_t index) const {
  if (n_ == 1) return {coord(index), 0.0};
  return {coord(index / N_), coord(index % N_)};
}

Vec GridSpec::frequency_point(std::size_t index) const {
  if (n_ == 1) return {frequency(index), 0.0};
  return {frequency(index / N_), frequency(index % N_)};
}

double GridSpec::max_frequency() const {
  const double axis = static_cast<double>(N_ / 2) / (2.0 * L_);
  return n_ == 1 ? axis : std::sqrt(2.0) * axis;
}

GridSpec GridSpec::refined() const { return make_grid(n_, L_, 2 * N_); }
GridSpec GridSpec::widened() const { return make_grid(n_, 2 * L_, 2 * N_); }

// --- SampledFunction -------------------------------------------------------

SampledFunction::SampledFunction(GridSpec grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.size(), "sample count must equal N^n");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag())) {
      throw NumericalError("non-finite sample at index " + std::to_string(i));
    }
  }
}

SampledFunction SampledFunction::from_real(const GridSpec& grid, std::span<const double> values) {
  return SampledFunction(grid, std::vector<Complex>(values.begin(), values.end()));
}

SampledFunction SampledFunction::constant(const GridSpec& grid, Complex value) {
  return SampledFunction(grid, std::vector<Complex>(grid.size(), value));
}

SampledFunction SampledFunction::from_function(const GridSpec& grid,
                                               const std::function<Complex(const Vec&)>& f) {
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.point(i));
  return SampledFunction(grid, std::move(v));
}

std::vector<double> SampledFunction::abs() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](Complex z) { return std::abs(z); });
  return out;
}

std::vector<double> SampledFunction::real() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](Complex z) { return z.real(); });
  return out;
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (const auto& z : values_) m = std::max(m, std::abs(z));
  return m;
}

SampledFunction SampledFunction::operator+(const SampledFunction& other) const {
  require(grid_ == other.grid_, "operands must share a grid");
  std::vector<Complex> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
  return SampledFunction(grid_, std::move(v));
}

SampledFunction SampledFunction::operator-(const SampledFunction& other) const {
  require(grid_ == other.grid_, "operands must share a grid");
  std::vector<Complex> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.values_[i];
  return SampledFunction(grid_, std::move(v));
}

SampledFunction SampledFunction::operator*(Complex scale) const {
  std::vector<Complex> v(values_);
  for (auto& z : v) z *= scale;
  return SampledFunction(grid_, std::move(v));
}

SampledFunction SampledFunction::pointwise_product(std::span<const double> factor) const {
  require(factor.size() == values_.size(), "factor length must match the grid");
  std::vector<Complex> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= factor[i];
  return SampledFunction(grid_, std::move(v));
}

// --- cubes -----------------------------------------------------------------

std::string to_string(CubeFamily family) {
  switch (family) {
    case CubeFamily::aligned: return "aligned";
    case CubeFamily::dyadic: return "dyadic";
    case CubeFamily::shifted_dyadic: return "shifted-dyadic";
  }
  return "?";
}

CubeFamily cube_family_from_string(const std::string& name) {
  if (name == "aligned") return CubeFamily::aligned;
  if (name == "dyadic") return CubeFamily::dyadic;
  if (name == "shifted-dyadic" || name == "shifted_dyadic") return CubeFamily::shifted_dyadic;
  throw PreconditionError("unknown cube family '" + name + "'");
}

bool Cube::contains(const Vec& x, int n) const {
  for (int a = 0; a < n; ++a) {
    const double lo = center[a] - side / 2;
    if (x[a] < lo || x[a] >= lo + side) return false;
  }
  return true;
}

CellBox CellBox::dilate(long factor) const {
  CellBox out = *this;
  out.len = len * factor;
  const long shift = len * (factor - 1) / 2;
  out.lo[0] = lo[0] - shift;
  out.lo[1] = lo[1] - shift;
  return out;
}

bool CellBox::inside(const GridSpec& grid) const {
  const long N = static_cast<long>(grid.points_per_axis());
  for (int a = 0; a < grid.dim(); ++a) {
    if (lo[a] < 0 || lo[a] + len > N) return false;
  }
  return len >= 1;
}

CellBox to_cells(const GridSpec& grid, const Cube& cube) {
  const double h = grid.spacing();
  const double len_real = cube.side / h;
  const long len = std::lround(len_real);
  require(len >= 1 && std::abs(len_real - static_cast<double>(len)) < 1e-9 * std::max(1.0, len_real),
          "cube side must be a whole number of cells");
  CellBox box;
  box.len = len;
  for (int a = 0; a < grid.dim(); ++a) {
    const double lo_real = (cube.center[a] - cube.side / 2 + grid.half_width()) / h;
    const long lo = std::lround(lo_real);
    require(std::abs(lo_real - static_cast<double>(lo)) < 1e-9 * std::max(1.0, std::abs(lo_real)),
            "cube faces must align with cell boundaries");
    box.lo[a] = lo;
  }
  require(box.inside(grid), "cube exits the domain [-L, L)^n (enlarge L)");
  return box;
}

Cube to_cube(const GridSpec& grid, const CellBox& box, CubeFamily family) {
  const double h = grid.spacing();
  Cube q;
  q.side = static_cast<double>(box.len) * h;
  q.family = family;
  for (int a = 0; a < grid.dim(); ++a) {
    q.center[a] = (static_cast<double>(box.lo[a]) + 0.5 * static_cast<double>(box.len)) * h - grid.half_width();
  }
  return q;
}

// --- dyadic tree -------------------------------------------------------------

std::size_t DyadicTree::count(int level) const {
  const std::size_t per_axis = std::size_t{1} << level;
  return grid_.dim() == 1 ? per_axis : per_axis * per_axis;
}

CellBox DyadicTree::box(int level, std::size_t index) const {
  const std::size_t per_axis = std::size_t{1} << level;
  const long len = static_cast<long>(grid_.points_per_axis() >> level);
  CellBox b;
  b.len = len;
  if (grid_.dim() == 1) {
    b.lo[0] = static_cast<long>(index) * len;
  } else {
    b.lo[0] = static_cast<long>(index / per_axis) * len;
    b.lo[1] = static_cast<long>(index % per_axis) * len;
  }
  return b;
}

std::size_t DyadicTree::parent(int level, std::size_t index) const {
  require(level > 0, "the root cube has no parent");
  if (grid_.dim() == 1) return index / 2;
  const std::size_t per_axis = std::size_t{1} << level;
  const std::size_t a = index / per_axis, b = index % per_axis;
  return (a / 2) * (per_axis / 2) + b / 2;
}

std::vector<std::size_t> DyadicTree::children(int level, std::size_t index) const {
  require(level + 1 < levels(), "leaf cubes have no children");
  if (grid_.dim() == 1) return {2 * index, 2 * index + 1};
  const std::size_t per_axis = std::size_t{1} << level;
  const std::size_t a = index / per_axis, b = index % per_axis;
  const std::size_t child_axis = 2 * per_axis;
  return {(2 * a) * child_axis + 2 * b, (2 * a) * child_axis + 2 * b + 1,
          (2 * a + 1) * child_axis + 2 * b, (2 * a + 1) * child_axis + 2 * b + 1};
}

std::size_t DyadicTree::index_of_cell(int level, std::size_t i0, std::size_t i1) const {
  const std::size_t shift = static_cast<std::size_t>(grid_.depth() - level);
  if (grid_.dim() == 1) return i0 >> shift;
  return (i0 >> shift) * (std::size_t{1} << level) + (i1 >> shift);
}

// --- enumeration -------------------------------------------------------------

namespace {

bool side_ok(const GridSpec& grid, long len, const CubeConstraints& c) {
  const double side = static_cast<double>(len) * grid.spacing();
  if (c.min_side && side < *c.min_side) return false;
  if (c.max_side && side > *c.max_side) return false;
  if (c.below_side && side >= *c.below_side) return false;
  return true;
}

// Cell index containing coordinate x, or -1 outside the domain.
long cell_of(const GridSpec& grid, double x) {
  const double t = std::floor((x + grid.half_width()) / grid.spacing());
  if (t < 0 || t >= static_cast<double>(grid.points_per_axis())) return -1;
  return static_cast<long>(t);
}

bool box_contains(const GridSpec& grid, const CellBox& box, const Vec& x) {
  for (int a = 0; a < grid.dim(); ++a) {
    const long c = cell_of(grid, x[a]);
    if (c < box.lo[a] || c >= box.lo[a] + box.len) return false;
  }
  return true;
}

}  // namespace

std::vector<CellBox> enumerate_boxes(const GridSpec& grid, CubeFamily family, const CubeConstraints& c) {
  const long N = static_cast<long>(grid.points_per_axis());
  const int n = grid.dim();
  std::vector<CellBox> out;

  if (family == CubeFamily::aligned) {
    require(n == 1, "aligned cube family is 1D only (use shifted-dyadic in 2D)");
    require(!c.level, "level constraint applies to dyadic families only");
    long first_lo = 0, last_lo = N - 1;
    long cell = -1;
    if (c.containing) {
      cell = cell_of(grid, (*c.containing)[0]);
      if (cell < 0) return out;
      last_lo = cell;
    }
    for (long lo = first_lo; lo <= last_lo; ++lo) {
      const long min_hi = cell >= 0 ? cell + 1 : lo + 1;
      for (long hi = std::max(min_hi, lo + 1); hi <= N; ++hi) {
        if (!side_ok(grid, hi - lo, c)) continue;
        CellBox b;
        b.lo[0] = lo;
        b.len = hi - lo;
        out.push_back(b);
      }
    }
    return out;
  }

  for (int level = 0; level <= grid.depth(); ++level) {
    if (c.level && *c.level != level) continue;
    const long len = N >> level;
    if (!side_ok(grid, len, c)) continue;
    std::vector<long> shifts{0};
    if (family == CubeFamily::shifted_dyadic) {
      // one-third trick: translate the level's partition by about +-len/3
      const long r = std::lround(static_cast<double>(len) / 3.0);
      std::set<long> unique{0};
      if (r > 0) {
        unique.insert(r % len);
        unique.insert((len - r) % len);
      }
      shifts.assign(unique.begin(), unique.end());
    }
    for (long shift : shifts) {
      std::vector<long> starts;
      for (long lo = shift; lo + len <= N; lo += len) starts.push_back(lo);
      const std::size_t per_axis = starts.size();
      const std::size_t total = n == 1 ? per_axis : per_axis * per_axis;
      for (std::size_t k = 0; k < total; ++k) {
        CellBox b;
        b.len = len;
        if (n == 1) {
          b.lo[0] = starts[k];
        } else {
          b.lo[0] = starts[k / per_axis];
          b.lo[1] = starts[k % per_axis];
        }
        if (c.containing && !box_contains(grid, b, *c.containing)) continue;
        out.push_back(b);
      }
    }
  }
  return out;
}

std::vector<Cube> enumerate_cubes(const GridSpec& grid, CubeFamily family, const CubeConstraints& constraints) {
  const auto boxes = enumerate_boxes(grid, family, constraints);
  std::vector<Cube> out;
  out.reserve(boxes.size());
  for (const auto& b : boxes) out.push_back(to_cube(grid, b, family));
  return out;
}

// --- quadrature --------------------------------------------------------------

namespace {

template <typename T>
T pairwise_sum(std::span<const T> values, std::size_t N, int n, long lo0, long hi0, long lo1, long hi1) {
  const long e0 = hi0 - lo0, e1 = hi1 - lo1;
  if (e0 == 1 && e1 == 1) {
    return n == 1 ? values[static_cast<std::size_t>(lo0)]
                  : values[static_cast<std::size_t>(lo0) * N + static_cast<std::size_t>(lo1)];
  }
  if (e0 >= e1) {
    const long mid = lo0 + e0 / 2;
    return pairwise_sum(values, N, n, lo0, mid, lo1, hi1) + pairwise_sum(values, N, n, mid, hi0, lo1, hi1);
  }
  const long mid = lo1 + e1 / 2;
  return pairwise_sum(values, N, n, lo0, hi0, lo1, mid) + pairwise_sum(values, N, n, lo0, hi0, mid, hi1);
}

template <typename T>
T box_integral_impl(const GridSpec& grid, std::span<const T> values, const CellBox& box) {
  require(values.size() == grid.size(), "sample count must equal N^n");
  require(box.inside(grid), "cube exits the domain [-L, L)^n (enlarge L)");
  const long hi1 = grid.dim() == 1 ? 1 : box.lo[1] + box.len;
  const long lo1 = grid.dim() == 1 ? 0 : box.lo[1];
  return pairwise_sum(values, grid.points_per_axis(), grid.dim(), box.lo[0], box.lo[0] + box.len, lo1, hi1) *
         grid.cell_volume();
}

}  // namespace

double box_integral(const GridSpec& grid, std::span<const double> values, const CellBox& box) {
  return box_integral_impl(grid, values, box);
}

Complex box_integral(const GridSpec& grid, std::span<const Complex> values, const CellBox& box) {
  return box_integral_impl(grid, values, box);
}

Complex integrate_cube(const SampledFunction& f, const Cube& cube) {
  return box_integral(f.grid(), f.values(), to_cells(f.grid(), cube));
}

Complex average_cube(const SampledFunction& f, const Cube& cube) {
  return integrate_cube(f, cube) / cube.volume(f.grid().dim());
}

double phi_average_cube(const SampledFunction& f, const Cube& cube, const GrowthFunction& gf, double eta) {
  const auto box = to_cells(f.grid(), cube);
  const auto abs_values = f.abs();
  const double volume = cube.volume(f.grid().dim());
  return box_integral(f.grid(), std::span<const double>(abs_values), box) / (gf.pow(volume, eta) * volume);
}

// --- prefix sums -------------------------------------------------------------

PrefixSum::PrefixSum(const GridSpec& grid, std::span<const double> values)
    : n_(grid.dim()), stride_(grid.points_per_axis() + 1) {
  require(values.size() == grid.size(), "sample count must equal N^n");
  const std::size_t N = grid.points_per_axis();
  const double dv = grid.cell_volume();
  if (n_ == 1) {
    table_.assign(N + 1, 0.0);
    for (std::size_t i = 0; i < N; ++i) table_[i + 1] = table_[i] + values[i] * dv;
    return;
  }
  table_.assign(stride_ * stride_, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      row += values[i * N + j] * dv;
      table_[(i + 1) * stride_ + j + 1] = table_[i * stride_ + j + 1] + row;
    }
  }
}

double PrefixSum::sum(const CellBox& b) const {
  if (n_ == 1) return table_[static_cast<std::size_t>(b.lo[0] + b.len)] - table_[static_cast<std::size_t>(b.lo[0])];
  const auto a0 = static_cast<std::size_t>(b.lo[0]), a1 = static_cast<std::size_t>(b.lo[0] + b.len);
  const auto c0 = static_cast<std::size_t>(b.lo[1]), c1 = static_cast<std::size_t>(b.lo[1] + b.len);
  return table_[a1 * stride_ + c1] - table_[a0 * stride_ + c1] - table_[a1 * stride_ + c0] + table_[a0 * stride_ + c0];
}

ComplexPrefixSum::ComplexPrefixSum(const GridSpec& grid, std::span<const Complex> values)
    : n_(grid.dim()), stride_(grid.points_per_axis() + 1) {
  const std::size_t N = grid.points_per_axis();
  const double dv = grid.cell_volume();
  if (n_ == 1) {
    table_.assign(N + 1, 0.0);
    for (std::size_t i = 0; i < N; ++i) table_[i + 1] = table_[i] + values[i] * dv;
    return;
  }
  table_.assign(stride_ * stride_, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      row += values[i * N + j] * dv;
      table_[(i + 1) * stride_ + j + 1] = table_[i * stride_ + j + 1] + row;
    }
  }
}

Complex ComplexPrefixSum::sum(const CellBox& b) const {
  if (n_ == 1) return table_[static_cast<std::size_t>(b.lo[0] + b.len)] - table_[static_cast<std::size_t>(b.lo[0])];
  const auto a0 = static_cast<std::size_t>(b.lo[0]), a1 = static_cast<std::size_t>(b.lo[0] + b.len);
  const auto c0 = static_cast<std::size_t>(b.lo[1]), c1 = static_cast<std::size_t>(b.lo[1] + b.len);
  return table_[a1 * stride_ + c1] - table_[a0 * stride_ + c1] - table_[a1 * stride_ + c0] + table_[a0 * stride_ + c0];
}

}  // namespace weightlab
