#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab::detail {

inline constexpr double kNoCube = -std::numeric_limits<double>::infinity();

// Sliding-window maximum over starts: out[x] = max(out[x], max v[i] for
// i in [x - len + 1, x] intersected with [0, v.size())).
inline void window_max_into(std::vector<double>& out, const std::vector<double>& v, long len,
                            std::vector<long>& queue) {
  const long N = static_cast<long>(out.size());
  const long m = static_cast<long>(v.size());
  queue.resize(static_cast<std::size_t>(m) + 1);
  long head = 0, tail = 0;
  for (long x = 0; x < N; ++x) {
    if (x < m) {
      while (tail > head && v[static_cast<std::size_t>(queue[tail - 1])] <= v[static_cast<std::size_t>(x)]) --tail;
      queue[tail++] = x;
    }
    while (tail > head && queue[head] < x - len + 1) ++head;
    if (tail > head) out[static_cast<std::size_t>(x)] = std::max(out[static_cast<std::size_t>(x)], v[static_cast<std::size_t>(queue[head])]);
  }
}

// sup over family boxes containing each sample of value(box). Boxes for which
// value returns kNoCube are skipped. Samples covered by no box get kNoCube.
template <typename ValueFn, typename SideFilter>
std::vector<double> sup_over_family(const GridSpec& grid, CubeFamily family, SideFilter accept_len, ValueFn value) {
  const std::size_t N = grid.points_per_axis();
  std::vector<double> out(grid.size(), kNoCube);
  if (family == CubeFamily::aligned) {
    require(grid.dim() == 1, "aligned cube family is 1D only (use shifted-dyadic in 2D)");
    std::vector<double> v;
    std::vector<long> queue;
    for (long len = 1; len <= static_cast<long>(N); ++len) {
      if (!accept_len(len)) continue;
      const long m = static_cast<long>(N) - len + 1;
      v.assign(static_cast<std::size_t>(m), kNoCube);
      CellBox box;
      box.len = len;
      for (long lo = 0; lo < m; ++lo) {
        box.lo[0] = lo;
        v[static_cast<std::size_t>(lo)] = value(box);
      }
      window_max_into(out, v, len, queue);
    }
    return out;
  }
  for (int level = 0; level <= grid.depth(); ++level) {
    const long len = static_cast<long>(N >> level);
    if (!accept_len(len)) continue;
    CubeConstraints c;
    c.level = level;
    for (const auto& box : enumerate_boxes(grid, family, c)) {
      const double val = value(box);
      if (val == kNoCube) continue;
      const long hi0 = box.lo[0] + box.len;
      if (grid.dim() == 1) {
        for (long i = box.lo[0]; i < hi0; ++i) out[static_cast<std::size_t>(i)] = std::max(out[static_cast<std::size_t>(i)], val);
      } else {
        const long hi1 = box.lo[1] + box.len;
        for (long i = box.lo[0]; i < hi0; ++i) {
          double* row = out.data() + static_cast<std::size_t>(i) * N;
          for (long j = box.lo[1]; j < hi1; ++j) row[j] = std::max(row[j], val);
        }
      }
    }
  }
  return out;
}

inline void replace_missing(std::vector<double>& v, double fill = 0.0) {
  for (auto& x : v) {
    if (x == kNoCube) x = fill;
  }
}

}  // namespace weightlab::detail
