#include "weightlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "weightlab/maximal.hpp"

namespace weightlab {

Weight Weight::power(double gamma1, double gamma2, double scale) {
  require(std::isfinite(gamma1) && std::isfinite(gamma2), "weight exponents must be finite");
  require(scale > 0.0 && std::isfinite(scale), "weight scale must be a finite positive number");
  Weight w;
  w.kind_ = Kind::power;
  w.gamma1_ = gamma1;
  w.gamma2_ = gamma2;
  w.scale_ = scale;
  return w;
}

Weight Weight::dual(const Weight& base, double p) {
  require(p > 1.0 && std::isfinite(p), "p must satisfy 1 < p < infinity");
  Weight w;
  w.kind_ = Kind::dual;
  w.exponent_ = -1.0 / (p - 1.0);
  w.first_ = std::make_shared<const Weight>(base);
  return w;
}

Weight Weight::product(const Weight& first, const Weight& second, double alpha) {
  require(alpha >= 0.0 && alpha <= 1.0, "interpolation exponent must lie in [0, 1]");
  Weight w;
  w.kind_ = Kind::product;
  w.exponent_ = alpha;
  w.first_ = std::make_shared<const Weight>(first);
  w.second_ = std::make_shared<const Weight>(second);
  return w;
}

std::string Weight::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::power:
      os << "power(" << gamma1_ << "," << gamma2_;
      if (scale_ != 1.0) os << ",scale=" << scale_;
      os << ")";
      break;
    case Kind::dual:
      os << "dual(" << first_->describe() << ",exp=" << exponent_ << ")";
      break;
    case Kind::product:
      os << "product(" << first_->describe() << "," << second_->describe() << ",alpha=" << exponent_ << ")";
      break;
  }
  return os.str();
}

double Weight::log_value(const Vec& x, int n) const {
  switch (kind_) {
    case Kind::power: {
      const double r = norm(x, n);
      double acc = std::log(scale_);
      if (gamma1_ != 0.0) acc += gamma1_ * std::log1p(r);
      if (gamma2_ != 0.0) acc += gamma2_ * std::log(r);
      return acc;
    }
    case Kind::dual:
      return exponent_ * first_->log_value(x, n);
    case Kind::product:
      return exponent_ * first_->log_value(x, n) + (1.0 - exponent_) * second_->log_value(x, n);
  }
  return 0.0;
}

double Weight::operator()(const Vec& x, int n) const {
  if (kind_ == Kind::power && std::abs(gamma1_) < 8.0 && std::abs(gamma2_) < 8.0) {
    const double r = norm(x, n);
    double v = scale_;
    if (gamma1_ != 0.0) v *= std::pow(1.0 + r, gamma1_);
    if (gamma2_ != 0.0) v *= std::pow(r, gamma2_);
    return v;
  }
  return std::exp(log_value(x, n));
}

std::vector<double> Weight::sample(const GridSpec& grid) const {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec x = grid.point(i);
    const double v = (*this)(x, grid.dim());
    if (!std::isfinite(v) || v <= 0.0) {
      std::ostringstream os;
      os.precision(17);
      os << "weight " << describe() << " is not a finite positive number at sample " << i << " (x = " << x[0];
      if (grid.dim() == 2) os << ", " << x[1];
      os << "): value " << v;
      throw NumericalError(os.str());
    }
    out[i] = v;
  }
  return out;
}

PowerWeightValidation validate_power_weight(int n, double p, double gamma1, double gamma2, double alpha0) {
  require(p > 1.0 && std::isfinite(p), "p must satisfy 1 < p < infinity");
  PowerWeightValidation v;
  const double dn = static_cast<double>(n);
  v.accepted = gamma2 > -dn && gamma2 < dn * (p - 1.0);
  v.gamma1_certified = std::abs(gamma1) < dn * alpha0;
  std::ostringstream os;
  if (!v.accepted) {
    os << "gamma2 = " << gamma2 << " outside the admissible range -n < gamma2 < n(p-1) = " << dn * (p - 1.0);
  } else {
    os << "accepted";
  }
  os << "; gamma1 = " << gamma1 << (v.gamma1_certified ? " within" : " outside")
     << " the range |gamma1| < n*alpha0 = " << dn * alpha0 << " certified at this alpha0";
  v.reason = os.str();
  return v;
}

std::string to_string(RefineMode mode) {
  switch (mode) {
    case RefineMode::none: return "none";
    case RefineMode::refine: return "refine";
    case RefineMode::widen: return "widen";
  }
  return "?";
}

namespace {

double volume_of(const GridSpec& grid, long len) {
  const double side = static_cast<double>(len) * grid.spacing();
  return grid.dim() == 1 ? side : side * side;
}

// Visit every family box. Aligned boxes are generated on the fly (there are
// O(N^2) of them in 1D).
template <typename Fn>
void for_each_box(const GridSpec& grid, CubeFamily family, Fn fn) {
  if (family == CubeFamily::aligned) {
    require(grid.dim() == 1, "aligned cube family is 1D only (use shifted-dyadic in 2D)");
    const long N = static_cast<long>(grid.points_per_axis());
    CellBox box;
    for (long len = 1; len <= N; ++len) {
      box.len = len;
      for (long lo = 0; lo + len <= N; ++lo) {
        box.lo[0] = lo;
        fn(box);
      }
    }
    return;
  }
  for (const auto& box : enumerate_boxes(grid, family)) fn(box);
}

struct ApCore {
  double constant = 0.0;
  CellBox witness;
  std::size_t count = 0;
};

ApCore ap_core(const Weight& w, const GridSpec& grid, double p, const GrowthFunction& gf, CubeFamily family) {
  const auto ws = w.sample(grid);
  const auto ds = Weight::dual(w, p).sample(grid);
  const PrefixSum pw(grid, ws), pd(grid, ds);
  ApCore core;
  core.constant = -1.0;
  for_each_box(grid, family, [&](const CellBox& box) {
    const double vol = volume_of(grid, box.len);
    const double denom = gf(vol) * vol;
    const double a = pw.sum(box) / denom;
    const double b = pd.sum(box) / denom;
    const double factor = a * std::pow(b, p - 1.0);
    ++core.count;
    if (factor > core.constant) {
      core.constant = factor;
      core.witness = box;
    }
  });
  if (!std::isfinite(core.constant)) throw NumericalError("A_p(phi) factor overflowed for weight " + w.describe());
  return core;
}

GridSpec next_grid(const GridSpec& grid, RefineMode mode) {
  return mode == RefineMode::refine ? grid.refined() : grid.widened();
}

Trend make_trend(RefineMode mode, const GridSpec& a, const GridSpec& b, double base, double next) {
  Trend t;
  t.mode = mode;
  t.base_points = a.points_per_axis();
  t.next_points = b.points_per_axis();
  t.base_half_width = a.half_width();
  t.next_half_width = b.half_width();
  t.base = base;
  t.next = next;
  return t;
}

double a1_core(const Weight& w, const GridSpec& grid, const GrowthFunction& gf, CubeFamily family,
               std::size_t* witness) {
  const auto ws = w.sample(grid);
  const auto M = maximal_values(grid, ws, gf, 1.0, family);
  double best = 0.0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const double r = M[i] / ws[i];
    if (r > best) {
      best = r;
      if (witness) *witness = i;
    }
  }
  return best;
}

}  // namespace

double ap_phi_factor(const Weight& w, const GridSpec& grid, double p, const GrowthFunction& gf, const Cube& cube) {
  require(p > 1.0 && std::isfinite(p), "p must satisfy 1 < p < infinity");
  const auto box = to_cells(grid, cube);
  const auto ws = w.sample(grid);
  const auto ds = Weight::dual(w, p).sample(grid);
  const double vol = cube.volume(grid.dim());
  const double denom = gf(vol) * vol;
  const double a = box_integral(grid, ws, box) / denom;
  const double b = box_integral(grid, ds, box) / denom;
  return a * std::pow(b, p - 1.0);
}

ApReport ap_phi_constant(const Weight& w, const GridSpec& grid, double p, const GrowthFunction& gf,
                         CubeFamily family, RefineMode refine) {
  require(p > 1.0 && std::isfinite(p), "p must satisfy 1 < p < infinity");
  const auto core = ap_core(w, grid, p, gf, family);
  ApReport r;
  r.p = p;
  r.eta = 1.0;
  r.alpha0 = gf.alpha0();
  r.constant = core.constant;
  r.witness = to_cube(grid, core.witness, family);
  r.family = family;
  r.family_size = core.count;
  if (refine != RefineMode::none) {
    const GridSpec g2 = next_grid(grid, refine);
    r.trend = make_trend(refine, grid, g2, core.constant, ap_core(w, g2, p, gf, family).constant);
  }
  return r;
}

ApReport a1_phi_constant(const Weight& w, const GridSpec& grid, const GrowthFunction& gf, CubeFamily family,
                         RefineMode refine) {
  std::size_t idx = 0;
  ApReport r;
  r.p = 1.0;
  r.eta = 1.0;
  r.alpha0 = gf.alpha0();
  r.constant = a1_core(w, grid, gf, family, &idx);
  r.witness = Cube{grid.point(idx), grid.spacing(), family};
  r.family = family;
  if (family == CubeFamily::aligned) {
    const std::size_t N = grid.points_per_axis();
    r.family_size = N * (N + 1) / 2;
  } else {
    r.family_size = enumerate_boxes(grid, family).size();
  }
  if (refine != RefineMode::none) {
    const GridSpec g2 = next_grid(grid, refine);
    r.trend = make_trend(refine, grid, g2, r.constant, a1_core(w, g2, gf, family, nullptr));
  }
  return r;
}

double weight_measure(std::span<const double> weight_sample, const GridSpec& grid, const Cube& cube) {
  require(weight_sample.size() == grid.size(), "weight sample must match the grid");
  return box_integral(grid, weight_sample, to_cells(grid, cube));
}

double weight_measure(std::span<const double> weight_sample, const GridSpec& grid,
                      std::span<const std::size_t> samples) {
  require(weight_sample.size() == grid.size(), "weight sample must match the grid");
  double acc = 0.0;
  for (std::size_t i : samples) {
    require(i < grid.size(), "sample index outside the grid");
    acc += weight_sample[i];
  }
  return acc * grid.cell_volume();
}

RatioReport check_lemma21_iv(const Weight& w, double p, const SampledFunction& f, const Cube& cube,
                             const GrowthFunction& gf) {
  require(p >= 1.0 && std::isfinite(p), "p must satisfy 1 <= p < infinity");
  const auto& grid = f.grid();
  const auto box = to_cells(grid, cube);
  const CellBox five = box.dilate(5);
  require(five.inside(grid), "5Q exits the domain (enlarge L)");
  const auto ws = w.sample(grid);
  const auto a = f.abs();
  std::vector<double> fpw(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) fpw[i] = std::pow(a[i], p) * ws[i];
  const double vol = cube.volume(grid.dim());
  RatioReport r;
  r.lhs = box_integral(grid, a, box) / (gf(vol) * vol);
  r.rhs = std::pow(box_integral(grid, fpw, box) / box_integral(grid, ws, five), 1.0 / p);
  if (r.lhs == 0.0 && r.rhs == 0.0) {
    r.vacuous = true;
    return r;
  }
  r.ratio = r.rhs == 0.0 ? std::numeric_limits<double>::infinity() : r.lhs / r.rhs;
  return r;
}

std::vector<Cube> small_cube_family(const GridSpec& grid) {
  CubeConstraints c;
  c.below_side = 1.0;
  return enumerate_cubes(grid, CubeFamily::dyadic, c);
}

ReverseHolderReport reverse_holder_check(const Weight& w, const GridSpec& grid, double delta,
                                         const std::vector<Cube>& cubes) {
  require(delta > 0.0, "delta must be > 0");
  const auto ws = w.sample(grid);
  std::vector<double> wp(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) wp[i] = std::pow(ws[i], 1.0 + delta);
  ReverseHolderReport r;
  for (const auto& q : cubes) {
    require(q.side < 1.0, "reverse Holder family must contain only cubes of side r < 1");
    const auto box = to_cells(grid, q);
    const double vol = q.volume(grid.dim());
    const double top = std::pow(box_integral(grid, wp, box) / vol, 1.0 / (1.0 + delta));
    const double bottom = box_integral(grid, ws, box) / vol;
    const double ratio = top / bottom;
    ++r.cubes;
    if (ratio > r.constant) {
      r.constant = ratio;
      r.witness = q;
    }
  }
  return r;
}

Delta1Report measure_comparison_delta1(const Weight& w, const GridSpec& grid, const Cube& cube,
                                       const std::vector<std::vector<std::size_t>>& subsets, double constant) {
  require(constant > 0.0, "comparison constant must be > 0");
  const auto ws = w.sample(grid);
  const auto box = to_cells(grid, cube);
  const double wq = box_integral(grid, ws, box);
  const double cells = static_cast<double>(grid.dim() == 1 ? box.len : box.len * box.len);
  Delta1Report r;
  r.delta1 = std::numeric_limits<double>::infinity();
  r.subsets = subsets.size();
  // Need w(E)/w(Q) <= C (|E|/|Q|)^d1 for every E; with s = |E|/|Q| < 1 this is
  // d1 <= log(C w(Q)/w(E)) / log(1/s).
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    const auto& e = subsets[k];
    if (e.empty()) continue;
    const double s = static_cast<double>(e.size()) / cells;
    const double ratio = weight_measure(ws, grid, e) / wq;
    if (ratio > constant) {
      r.feasible = false;
      r.delta1 = 0.0;
      r.witness = k;
      return r;
    }
    if (s >= 1.0) continue;
    const double bound = std::log(constant / ratio) / std::log(1.0 / s);
    if (bound < r.delta1) {
      r.delta1 = bound;
      r.witness = k;
    }
  }
  if (!std::isfinite(r.delta1)) r.delta1 = 1.0;
  return r;
}

std::vector<std::vector<std::size_t>> comparison_subsets(const GridSpec& grid, const Cube& cube,
                                                         std::size_t random_count, std::uint64_t seed) {
  const auto box = to_cells(grid, cube);
  const std::size_t N = grid.points_per_axis();
  const int n = grid.dim();
  std::vector<std::size_t> cells;
  for (long i = box.lo[0]; i < box.lo[0] + box.len; ++i) {
    if (n == 1) {
      cells.push_back(static_cast<std::size_t>(i));
      continue;
    }
    for (long j = box.lo[1]; j < box.lo[1] + box.len; ++j) cells.push_back(grid.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  }
  std::vector<std::vector<std::size_t>> out;
  // dyadic sub-cubes
  for (long len = box.len / 2; len >= 1; len /= 2) {
    for (long a = box.lo[0]; a < box.lo[0] + box.len; a += len) {
      for (long b = (n == 1 ? 0 : box.lo[1]); b < (n == 1 ? 1 : box.lo[1] + box.len); b += (n == 1 ? 1 : len)) {
        std::vector<std::size_t> e;
        for (long i = a; i < a + len; ++i) {
          if (n == 1) {
            e.push_back(static_cast<std::size_t>(i));
          } else {
            for (long j = b; j < b + len; ++j) e.push_back(static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j));
          }
        }
        out.push_back(std::move(e));
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < random_count; ++k) {
    const double keep = unit(rng);
    std::vector<std::size_t> e;
    for (std::size_t c : cells) {
      if (unit(rng) < keep) e.push_back(c);
    }
    if (!e.empty()) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace weightlab
