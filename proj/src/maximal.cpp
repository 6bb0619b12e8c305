#include "weightlab/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "sup_engine.hpp"

namespace weightlab {

using detail::kNoCube;

namespace {

double box_volume(const GridSpec& grid, long len) {
  const double side = static_cast<double>(len) * grid.spacing();
  return grid.dim() == 1 ? side : side * side;
}

std::vector<double> powered_abs(const SampledFunction& f, double delta) {
  std::vector<double> g = f.abs();
  if (delta != 1.0) {
    for (auto& v : g) v = std::pow(v, delta);
  }
  return g;
}

void root_in_place(std::vector<double>& v, double delta) {
  if (delta == 1.0) return;
  for (auto& x : v) x = std::pow(x, 1.0 / delta);
}

auto accept_all = [](long) { return true; };

// Cells of a box, visited row-major.
template <typename Fn>
void for_each_cell(const GridSpec& grid, const CellBox& box, Fn fn) {
  const std::size_t N = grid.points_per_axis();
  if (grid.dim() == 1) {
    for (long i = box.lo[0]; i < box.lo[0] + box.len; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
  for (long i = box.lo[0]; i < box.lo[0] + box.len; ++i) {
    for (long j = box.lo[1]; j < box.lo[1] + box.len; ++j) fn(static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j));
  }
}

}  // namespace

std::vector<double> maximal_values(const GridSpec& grid, std::span<const double> nonneg, const GrowthFunction& gf,
                                   double eta, CubeFamily family) {
  require(eta >= 0.0, "eta must be >= 0");
  const PrefixSum prefix(grid, nonneg);
  std::vector<double> denominators(grid.points_per_axis() + 1, 0.0);
  for (std::size_t len = 1; len < denominators.size(); ++len) {
    const double vol = box_volume(grid, static_cast<long>(len));
    denominators[len] = gf.pow(vol, eta) * vol;
  }
  auto out = detail::sup_over_family(grid, family, accept_all, [&](const CellBox& box) {
    return prefix.sum(box) / denominators[static_cast<std::size_t>(box.len)];
  });
  detail::replace_missing(out);
  return out;
}

SampledFunction maximal(const SampledFunction& f, const GrowthFunction& gf, const MaximalParams& params) {
  require(params.delta_power > 0.0, "delta_power must be > 0");
  const auto& grid = f.grid();
  if (params.sharp) {
    const auto g = powered_abs(f, params.delta_power);
    auto s = sharp_maximal(SampledFunction::from_real(grid, g), params.eta, gf, params.family).real();
    root_in_place(s, params.delta_power);
    return SampledFunction::from_real(grid, s);
  }
  const auto g = powered_abs(f, params.delta_power);
  auto v = maximal_values(grid, g, gf, params.eta, params.family);
  root_in_place(v, params.delta_power);
  return SampledFunction::from_real(grid, v);
}

SampledFunction sharp_maximal(const SampledFunction& f, double eta, const GrowthFunction& gf, CubeFamily family) {
  const auto& grid = f.grid();
  require(grid.spacing() < 1.0, "sharp maximal needs cubes of side < 1 (grid spacing h must be < 1)");
  require(2.0 * grid.half_width() >= 1.0, "sharp maximal needs cubes of side >= 1 (2L must be >= 1)");
  const double h = grid.spacing();
  const auto values = f.values();
  const ComplexPrefixSum prefix(grid, values);
  const auto small = [&](long len) { return static_cast<double>(len) * h < 1.0; };
  const auto large = [&](long len) { return static_cast<double>(len) * h >= 1.0; };

  auto osc = detail::sup_over_family(grid, family, small, [&](const CellBox& box) {
    const double vol = box_volume(grid, box.len);
    const Complex mean = prefix.sum(box) / vol;
    double acc = 0.0;
    std::size_t count = 0;
    for_each_cell(grid, box, [&](std::size_t i) {
      acc += std::abs(values[i] - mean);
      ++count;
    });
    return acc / static_cast<double>(count);
  });
  const auto abs_values = f.abs();
  const PrefixSum abs_prefix(grid, abs_values);
  auto big = detail::sup_over_family(grid, family, large, [&](const CellBox& box) {
    const double vol = box_volume(grid, box.len);
    return abs_prefix.sum(box) / (gf.pow(vol, eta) * vol);
  });
  detail::replace_missing(osc);
  detail::replace_missing(big);
  std::vector<double> out(osc.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = osc[i] + big[i];
  return SampledFunction::from_real(grid, out);
}

double mean_oscillation(const SampledFunction& f, const Cube& cube) {
  const auto& grid = f.grid();
  const auto box = to_cells(grid, cube);
  const Complex mean = box_integral(grid, f.values(), box) / cube.volume(grid.dim());
  double acc = 0.0;
  std::size_t count = 0;
  for_each_cell(grid, box, [&](std::size_t i) {
    acc += std::abs(f[i] - mean);
    ++count;
  });
  return acc / static_cast<double>(count);
}

double min_mean_oscillation(const SampledFunction& f, const Cube& cube) {
  const auto& grid = f.grid();
  const auto box = to_cells(grid, cube);
  std::vector<double> v;
  for_each_cell(grid, box, [&](std::size_t i) { v.push_back(f[i].real()); });
  std::vector<double> sorted = v;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
  const double median = sorted[sorted.size() / 2];
  double acc = 0.0;
  for (double x : v) acc += std::abs(x - median);
  return acc / static_cast<double>(v.size());
}

WeightedMaximalResult weighted_maximal_5Q(const SampledFunction& f, std::span<const double> weight,
                                          CubeFamily family) {
  const auto& grid = f.grid();
  require(weight.size() == grid.size(), "weight sample must match the grid");
  const auto abs_values = f.abs();
  std::vector<double> fw(abs_values.size());
  for (std::size_t i = 0; i < fw.size(); ++i) fw[i] = abs_values[i] * weight[i];
  const PrefixSum num(grid, fw);
  const PrefixSum den(grid, weight);
  WeightedMaximalResult result;
  auto out = detail::sup_over_family(grid, family, accept_all, [&](const CellBox& box) {
    const CellBox five = box.dilate(5);
    if (!five.inside(grid)) {
      ++result.cubes_excluded;
      return kNoCube;
    }
    ++result.cubes_used;
    return num.sum(box) / den.sum(five);
  });
  detail::replace_missing(out);
  result.values = SampledFunction::from_real(grid, out);
  return result;
}

// --- Orlicz ------------------------------------------------------------------

double YoungFunction::operator()(double t) const {
  if (name_ == Name::llogl) return t <= 1.0 ? t : t * (1.0 + std::log(t));
  return std::expm1(t);
}

YoungFunction YoungFunction::complement() const {
  return name_ == Name::llogl ? exp_complement() : llogl();
}

double YoungFunction::inverse_at_one() const { return name_ == Name::llogl ? 1.0 : std::log(2.0); }

namespace {

// Luxemburg norm by bisection on lambda. logs may be empty (computed on the fly).
double luxemburg_core(std::span<const double> a, std::span<const double> logs, const YoungFunction& young,
                      double rel_tol) {
  double sum = 0.0, mx = 0.0;
  for (double v : a) {
    if (!std::isfinite(v)) throw NumericalError("non-finite sample in Luxemburg norm");
    sum += v;
    mx = std::max(mx, v);
  }
  if (mx == 0.0) return 0.0;
  const double count = static_cast<double>(a.size());
  const double binv = young.inverse_at_one();
  double lo = sum / count / binv;
  double hi = mx / binv;
  if (hi <= lo) return hi;

  const bool llogl = young.name() == YoungFunction::Name::llogl;
  auto mean_b = [&](double lambda) {
    double acc = 0.0;
    if (llogl) {
      const double log_lambda = std::log(lambda);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] / lambda;
        if (t <= 1.0) {
          acc += t;
        } else {
          const double la = logs.empty() ? std::log(a[i]) : logs[i];
          acc += t * (1.0 + (la - log_lambda));
        }
      }
    } else {
      for (double v : a) acc += std::expm1(v / lambda);
    }
    return acc / count;
  };

  for (int iter = 0; iter < 200 && hi - lo > rel_tol * hi; ++iter) {
    const double mid = hi > 2.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mean_b(mid) <= 1.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double luxemburg_from_samples(std::span<const double> abs_values, const YoungFunction& young, double rel_tol) {
  return luxemburg_core(abs_values, {}, young, rel_tol);
}

double luxemburg_norm(const SampledFunction& f, const YoungFunction& young, const Cube& cube, double rel_tol) {
  const auto& grid = f.grid();
  const auto box = to_cells(grid, cube);
  std::vector<double> a;
  for_each_cell(grid, box, [&](std::size_t i) { a.push_back(std::abs(f[i])); });
  return luxemburg_core(a, {}, young, rel_tol);
}

SampledFunction orlicz_maximal(const SampledFunction& f, const YoungFunction& young, double eta,
                               const GrowthFunction& gf, CubeFamily family) {
  const auto& grid = f.grid();
  const auto a = f.abs();
  std::vector<double> logs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) logs[i] = a[i] > 0.0 ? std::log(a[i]) : 0.0;
  std::vector<double> ga, gl;
  auto out = detail::sup_over_family(grid, family, accept_all, [&](const CellBox& box) {
    const double vol = box_volume(grid, box.len);
    double norm = 0.0;
    if (grid.dim() == 1) {
      const auto lo = static_cast<std::size_t>(box.lo[0]);
      const auto len = static_cast<std::size_t>(box.len);
      norm = luxemburg_core(std::span<const double>(a).subspan(lo, len),
                            std::span<const double>(logs).subspan(lo, len), young, 1e-10);
    } else {
      ga.clear();
      gl.clear();
      for_each_cell(grid, box, [&](std::size_t i) {
        ga.push_back(a[i]);
        gl.push_back(logs[i]);
      });
      norm = luxemburg_core(ga, gl, young, 1e-10);
    }
    return norm / gf.pow(vol, eta);
  });
  detail::replace_missing(out);
  return SampledFunction::from_real(grid, out);
}

}  // namespace weightlab
