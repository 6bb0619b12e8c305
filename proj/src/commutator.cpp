#include "weightlab/commutator.hpp"

#include <cmath>

namespace weightlab {

BmoFunction BmoFunction::constant(double c) {
  BmoFunction b;
  b.kind_ = Kind::constant;
  b.name_ = "constant";
  b.fn_ = [c](const Vec&) { return c; };
  return b;
}

BmoFunction BmoFunction::sign() {
  BmoFunction b;
  b.kind_ = Kind::sign;
  b.name_ = "sign";
  b.fn_ = [](const Vec& x) { return x[0] > 0.0 ? 1.0 : (x[0] < 0.0 ? -1.0 : 0.0); };
  return b;
}

BmoFunction BmoFunction::log_abs() {
  BmoFunction b;
  b.kind_ = Kind::log_abs;
  b.name_ = "log-abs";
  // grid samples never sit at the origin
  b.fn_ = [](const Vec& x) { return std::log(std::hypot(x[0], x[1])); };
  return b;
}

BmoFunction BmoFunction::custom(std::string name, std::function<double(const Vec&)> fn) {
  BmoFunction b;
  b.kind_ = Kind::custom;
  b.name_ = std::move(name);
  b.fn_ = std::move(fn);
  return b;
}

BmoFunction BmoFunction::from_name(const std::string& name, double c) {
  if (name == "constant") return constant(c);
  if (name == "sign") return sign();
  if (name == "log-abs" || name == "log_abs") return log_abs();
  throw PreconditionError("unknown BMO function '" + name + "'");
}

std::vector<double> BmoFunction::sample(const GridSpec& grid) const {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Vec x = grid.point(i);
    if (grid.dim() == 1) x[1] = 0.0;
    out[i] = fn_(x);
    if (!std::isfinite(out[i])) throw NumericalError("BMO function " + name_ + " is not finite at sample " + std::to_string(i));
  }
  return out;
}

BmoFunction BmoFunction::plus(double c) const {
  BmoFunction b = *this;
  auto fn = fn_;
  b.kind_ = Kind::custom;
  b.name_ = name_ + "+c";
  b.fn_ = [fn, c](const Vec& x) { return fn(x) + c; };
  return b;
}

BmoFunction BmoFunction::times(double c) const {
  BmoFunction b = *this;
  auto fn = fn_;
  b.kind_ = Kind::custom;
  b.name_ = name_ + "*c";
  b.fn_ = [fn, c](const Vec& x) { return fn(x) * c; };
  return b;
}

BmoReport bmo_norm(std::span<const double> b, const GridSpec& grid, CubeFamily family) {
  require(b.size() == grid.size(), "BMO sample must match the grid");
  const PrefixSum prefix(grid, b);
  const std::size_t N = grid.points_per_axis();
  BmoReport r;
  r.family = family;
  CellBox best;
  auto visit = [&](const CellBox& box) {
    const double cells = static_cast<double>(grid.dim() == 1 ? box.len : box.len * box.len);
    const double mean = prefix.sum(box) / (cells * grid.cell_volume());
    double acc = 0.0;
    if (grid.dim() == 1) {
      for (long i = box.lo[0]; i < box.lo[0] + box.len; ++i) acc += std::abs(b[static_cast<std::size_t>(i)] - mean);
    } else {
      for (long i = box.lo[0]; i < box.lo[0] + box.len; ++i)
        for (long j = box.lo[1]; j < box.lo[1] + box.len; ++j)
          acc += std::abs(b[static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j)] - mean);
    }
    const double osc = acc / cells;
    ++r.cubes;
    if (osc > r.norm) {
      r.norm = osc;
      best = box;
    }
  };
  if (family == CubeFamily::aligned) {
    require(grid.dim() == 1, "aligned cube family is 1D only (use shifted-dyadic in 2D)");
    CellBox box;
    for (long len = 1; len <= static_cast<long>(N); ++len) {
      box.len = len;
      for (long lo = 0; lo + len <= static_cast<long>(N); ++lo) {
        box.lo[0] = lo;
        visit(box);
      }
    }
  } else {
    for (const auto& box : enumerate_boxes(grid, family)) visit(box);
  }
  r.witness = to_cube(grid, best, family);
  return r;
}

BmoReport bmo_norm(const BmoFunction& b, const GridSpec& grid, CubeFamily family) {
  return bmo_norm(b.sample(grid), grid, family);
}

SampledFunction commutator_apply(std::span<const double> b, const Symbol& symbol, const SampledFunction& f) {
  require(b.size() == f.size(), "b and f must share a grid");
  const auto Tf = apply_pdo(symbol, f);
  const auto Tbf = apply_pdo(symbol, f.pointwise_product(b));
  return Tf.pointwise_product(b) - Tbf;
}

SampledFunction commutator_apply(const BmoFunction& b, const Symbol& symbol, const SampledFunction& f) {
  return commutator_apply(b.sample(f.grid()), symbol, f);
}

double llogl_functional(const SampledFunction& f, double lambda, std::span<const double> weight) {
  require(lambda > 0.0, "lambda must be > 0");
  require(weight.size() == f.size(), "weight sample must match the grid");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double t = std::abs(f[i]) / lambda;
    if (t == 0.0) continue;
    acc += t * (1.0 + std::max(0.0, std::log(t))) * weight[i];
  }
  return acc * f.grid().cell_volume();
}

double PhiYoung::operator()(double t) const {
  require(t >= 0.0, "Phi is defined for t >= 0");
  return t * std::log(M_E + t);
}

}  // namespace weightlab
