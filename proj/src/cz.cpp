#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "weightlab/maximal.hpp"

namespace weightlab {

namespace {

// Integrals of `values` over every dyadic cube, built bottom-up so each parent
// is exactly the pairwise sum of its children (matches box_integral).
std::vector<std::vector<double>> dyadic_integrals(const GridSpec& grid, std::span<const double> values) {
  const DyadicTree tree(grid);
  const int K = grid.depth();
  std::vector<std::vector<double>> sums(static_cast<std::size_t>(K) + 1);
  auto& leaves = sums[static_cast<std::size_t>(K)];
  leaves.resize(tree.count(K));
  const double dv = grid.cell_volume();
  for (std::size_t i = 0; i < leaves.size(); ++i) leaves[i] = values[i] * dv;
  for (int level = K - 1; level >= 0; --level) {
    auto& cur = sums[static_cast<std::size_t>(level)];
    const auto& below = sums[static_cast<std::size_t>(level) + 1];
    cur.resize(tree.count(level));
    for (std::size_t q = 0; q < cur.size(); ++q) {
      const auto kids = tree.children(level, q);
      if (kids.size() == 2) {
        cur[q] = below[kids[0]] + below[kids[1]];
      } else {
        cur[q] = (below[kids[0]] + below[kids[1]]) + (below[kids[2]] + below[kids[3]]);
      }
    }
  }
  return sums;
}

}  // namespace

CZResult cz_decompose(const SampledFunction& f, double lambda, double eta, const GrowthFunction& gf) {
  require(lambda > 0.0, "lambda must be > 0");
  require(eta >= 0.0, "eta must be >= 0");
  const auto& grid = f.grid();
  const int n = grid.dim();
  const DyadicTree tree(grid);
  const auto abs_values = f.abs();
  const auto sums = dyadic_integrals(grid, abs_values);

  auto volume_at = [&](int level) {
    const double side = 2.0 * grid.half_width() / static_cast<double>(std::size_t{1} << level);
    return n == 1 ? side : side * side;
  };
  auto average = [&](int level, std::size_t q) {
    const double vol = volume_at(level);
    return sums[static_cast<std::size_t>(level)][q] / (gf.pow(vol, eta) * vol);
  };

  CZResult result;
  result.lambda = lambda;
  result.eta = eta;
  const double two_n = n == 1 ? 2.0 : 4.0;

  // Stopping-time walk: descend while the average stays <= lambda.
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  std::vector<char> covered(grid.size(), 0);
  while (!stack.empty()) {
    const auto [level, q] = stack.back();
    stack.pop_back();
    const double avg = average(level, q);
    if (avg > lambda) {
      const CellBox box = tree.box(level, q);
      result.boxes.push_back(box);
      result.cubes.push_back(to_cube(grid, box, CubeFamily::dyadic));
      result.averages.push_back(avg);
      if (level == 0) {
        result.root_selected = true;
        result.parent_bounds.push_back(std::numeric_limits<double>::infinity());
      } else {
        const double ratio = gf.pow(volume_at(level - 1), eta) / gf.pow(volume_at(level), eta);
        result.parent_bounds.push_back(two_n * ratio * lambda);
      }
      continue;
    }
    if (level + 1 < tree.levels()) {
      auto kids = tree.children(level, q);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(level + 1, *it);
    }
  }

  // Order selected cubes by position for stable output.
  std::vector<std::size_t> order(result.boxes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(result.boxes[a].lo[0], result.boxes[a].lo[1]) < std::tie(result.boxes[b].lo[0], result.boxes[b].lo[1]);
  });
  auto permute = [&](auto& v) {
    auto copy = v;
    for (std::size_t i = 0; i < order.size(); ++i) v[i] = copy[order[i]];
  };
  permute(result.boxes);
  permute(result.cubes);
  permute(result.averages);
  permute(result.parent_bounds);

  const std::size_t N = grid.points_per_axis();
  for (std::size_t k = 0; k < result.boxes.size(); ++k) {
    const auto& box = result.boxes[k];
    for (long i = box.lo[0]; i < box.lo[0] + box.len; ++i) {
      const long j_lo = n == 1 ? 0 : box.lo[1];
      const long j_hi = n == 1 ? 1 : box.lo[1] + box.len;
      for (long j = j_lo; j < j_hi; ++j) {
        const std::size_t idx = n == 1 ? static_cast<std::size_t>(i) : static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j);
        if (covered[idx]) result.disjoint = false;
        covered[idx] = 1;
      }
    }
    const double avg = result.averages[k];
    result.property_i = result.property_i && lambda < avg;
    result.property_ii_unscaled = result.property_ii_unscaled && avg <= two_n * lambda;
    result.property_ii_bound = result.property_ii_bound && avg <= result.parent_bounds[k];
    result.omega_measure += result.cubes[k].volume(n);
  }

  result.residual_bound = lambda * gf.pow(grid.cell_volume(), eta);
  for (std::size_t i = 0; i < abs_values.size(); ++i) {
    if (!covered[i]) result.residual_max = std::max(result.residual_max, abs_values[i]);
  }
  result.property_iii = result.residual_max <= result.residual_bound;
  result.l1_over_lambda = sums[0][0] / lambda;
  result.property_iv = result.omega_measure <= result.l1_over_lambda;
  return result;
}

// --- mollifiers --------------------------------------------------------------

double MollifierFamily::profile(double r) const {
  if (r >= 1.0) return 0.0;
  return normalization * std::exp(-1.0 / (1.0 - r * r));
}

MollifierFamily MollifierFamily::make(int n, std::vector<double> scales) {
  require(n == 1 || n == 2, "dimension must be 1 or 2");
  MollifierFamily fam;
  fam.n = n;
  fam.scales = std::move(scales);
  // Unit integral of the radial bump by composite midpoint rule in r.
  const int steps = 200000;
  double acc = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double r = (k + 0.5) / steps;
    const double g = std::exp(-1.0 / (1.0 - r * r));
    acc += (n == 1 ? 2.0 * g : 2.0 * M_PI * r * g) / steps;
  }
  fam.normalization = 1.0 / acc;
  return fam;
}

MollifierReport mollifier_bound_check(const SampledFunction& f, const MollifierFamily& family, double eta,
                                      const GrowthFunction& gf) {
  const auto& grid = f.grid();
  require(family.n == grid.dim(), "mollifier dimension must match the grid");
  const double h = grid.spacing();
  for (double t : family.scales) {
    require(t > h, "mollifier scale t must exceed the grid spacing h (under-resolved mollifier)");
    require(t < 1.0, "mollifier scales must lie in (h, 1)");
  }
  const auto M = maximal_values(grid, f.abs(), gf, eta,
                                grid.dim() == 1 ? CubeFamily::aligned : CubeFamily::shifted_dyadic);
  const long N = static_cast<long>(grid.points_per_axis());
  const int n = grid.dim();
  MollifierReport report;
  bool any = false;
  for (double t : family.scales) {
    const long reach = static_cast<long>(std::ceil(t / h));
    // Kernel taps on offsets -reach..reach (per axis), periodic convolution.
    const long width = 2 * reach + 1;
    std::vector<double> taps(static_cast<std::size_t>(n == 1 ? width : width * width));
    double mass = 0.0;
    const double scale = std::pow(t, -n);
    for (long a = -reach; a <= reach; ++a) {
      for (long b = (n == 1 ? 0 : -reach); b <= (n == 1 ? 0 : reach); ++b) {
        const double r = std::hypot(static_cast<double>(a) * h, static_cast<double>(b) * h) / t;
        const double v = scale * family.profile(r);
        const std::size_t slot = n == 1 ? static_cast<std::size_t>(a + reach)
                                        : static_cast<std::size_t>((a + reach) * width + (b + reach));
        taps[slot] = v;
        mass += v * grid.cell_volume();
      }
    }
    report.mass_by_scale.push_back(mass);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const long i0 = n == 1 ? static_cast<long>(idx) : static_cast<long>(idx) / N;
      const long i1 = n == 1 ? 0 : static_cast<long>(idx) % N;
      Complex acc = 0.0;
      for (long a = -reach; a <= reach; ++a) {
        const long y0 = ((i0 - a) % N + N) % N;
        for (long b = (n == 1 ? 0 : -reach); b <= (n == 1 ? 0 : reach); ++b) {
          const std::size_t slot = n == 1 ? static_cast<std::size_t>(a + reach)
                                          : static_cast<std::size_t>((a + reach) * width + (b + reach));
          if (taps[slot] == 0.0) continue;
          const long y1 = n == 1 ? 0 : ((i1 - b) % N + N) % N;
          const std::size_t src = n == 1 ? static_cast<std::size_t>(y0) : static_cast<std::size_t>(y0 * N + y1);
          acc += f[src] * taps[slot];
        }
      }
      const double conv = std::abs(acc) * grid.cell_volume();
      if (M[idx] == 0.0) continue;  // 0/0 and x/0 rows are vacuous
      any = true;
      const double ratio = conv / M[idx];
      if (ratio > report.ratio) {
        report.ratio = ratio;
        report.witness_index = idx;
        report.witness_scale = t;
      }
    }
  }
  report.vacuous = !any;
  return report;
}

}  // namespace weightlab
