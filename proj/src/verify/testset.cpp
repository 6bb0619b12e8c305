#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "internal.hpp"

namespace weightlab {

Weight WeightSpec::make() const {
  require(kind == "power", "unknown weight kind '" + kind + "' (only power weights are supported)");
  return Weight::power(gamma1, gamma2, scale);
}

CubeFamily CheckConfig::cube_family() const {
  if (family.empty()) return n == 1 ? CubeFamily::aligned : CubeFamily::shifted_dyadic;
  return cube_family_from_string(family);
}

std::string CheckConfig::key() const {
  if (!id.empty()) return id;
  std::ostringstream os;
  os.precision(6);
  os << check << "/" << variant << "/n=" << n << "/L=" << L << "/N=" << N << "/a0=" << alpha0 << "/w=" << weight.gamma1
     << ":" << weight.gamma2 << "/sym=" << symbol.id << ":" << symbol.s << "/p=" << exponents.p
     << "/eta=" << exponents.eta;
  return os.str();
}

void CheckReport::require_that(const std::string& name, bool ok, const std::string& detail) {
  assertions.push_back(Assertion{name, ok, detail});
}

namespace detail {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

TestSetSpec scaled_spec(const TestSetSpec& spec, const GridSpec& base) {
  TestSetSpec s = spec;
  if (s.min_scale <= 0.0) s.min_scale = base.spacing();
  return s;
}

CheckReport start_report(const CheckConfig& config) {
  CheckReport r;
  r.id = config.key();
  r.check = config.check;
  r.variant = config.variant;
  r.points = config.N;
  return r;
}

void finalize(CheckReport& report, const CheckConfig& config, bool pinned) {
  report.require_that("finite constant", std::isfinite(report.constant), fmt(report.constant));
  if (!report.rows.empty()) {
    const bool all_vacuous =
        std::all_of(report.rows.begin(), report.rows.end(), [](const ReportRow& r) { return r.vacuous; });
    report.require_that("non-vacuous", !all_vacuous, all_vacuous ? "every row was 0/0" : "");
  }
  if (report.relative_change) {
    report.require_that("refinement trend", *report.relative_change < config.trend_limit,
                        "relative change " + fmt(*report.relative_change) + " vs limit " + fmt(config.trend_limit));
  }
  if (pinned) {
    if (const auto pin = find_pin(report.id)) {
      report.pinned_bound = pin->bound;
      report.provenance = pin->provenance;
      report.require_that("regression pin", report.constant <= pin->bound * report.slack,
                          fmt(report.constant) + " <= " + fmt(pin->bound) + " x " + fmt(report.slack));
    } else {
      report.provenance = "unpinned: no regression bound recorded for this configuration";
    }
  } else if (report.provenance.empty()) {
    report.provenance = "oracle: bound fixed by an exact identity or closed form";
  }
  report.pass = std::all_of(report.assertions.begin(), report.assertions.end(), [](const Assertion& a) { return a.ok; });
}

}  // namespace detail

// --- test functions --------------------------------------------------------------

std::vector<TestFunction> test_function_set(const TestSetSpec& spec, const GridSpec& grid) {
  require(!spec.kinds.empty(), "test set needs at least one kind");
  const double L = grid.half_width();
  const int n = grid.dim();
  const double ms = spec.min_scale > 0.0 ? spec.min_scale : grid.spacing();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double a, double b) { return a + (b - a) * unit(rng); };
  auto log_uniform = [&](double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); };

  std::vector<TestFunction> out;
  std::size_t spikes = 0;
  for (std::size_t k = 0; k < spec.count; ++k) {
    const std::string& kind = spec.kinds[k % spec.kinds.size()];
    std::ostringstream label;
    label.precision(6);
    label << kind << "#" << k;
    std::function<Complex(const Vec&)> fn;
    if (kind == "gaussian") {
      const Vec c{uniform(-L / 4, L / 4), n == 2 ? uniform(-L / 4, L / 4) : 0.0};
      const double s = log_uniform(4.0 * ms, L / 8.0);
      label << "(c=" << c[0] << ",s=" << s << ")";
      fn = [=](const Vec& x) {
        const double d0 = x[0] - c[0], d1 = n == 2 ? x[1] - c[1] : 0.0;
        return Complex(std::exp(-(d0 * d0 + d1 * d1) / (2.0 * s * s)));
      };
    } else if (kind == "spike") {
      // Always exactly one cell of the grid being sampled: the first is the
      // cell [0, h)^n next to the origin, later ones step away by whole cells.
      const double h = grid.spacing();
      const long offset = spikes == 0 ? 0 : static_cast<long>(unit(rng) * 3.0);
      const double side = spikes == 0 ? 1.0 : (unit(rng) < 0.5 ? -1.0 : 1.0);
      ++spikes;
      const double lo = side > 0 ? offset * h : -(offset + 1) * h;
      const double hi = lo + h;
      label << "(cell=" << (side > 0 ? offset : -(offset + 1)) << ")";
      fn = [=](const Vec& x) {
        const bool in0 = x[0] >= lo && x[0] < hi;
        const bool in1 = n == 1 || (x[1] >= lo && x[1] < hi);
        return Complex(in0 && in1 ? 1.0 : 0.0);
      };
    } else if (kind == "trig") {
      const double nyquist = 1.0 / (2.0 * ms);
      const long kmax = std::max(1L, static_cast<long>(std::floor(2.0 * L * std::min(2.0, nyquist / 4.0))));
      struct Term {
        double a, phase;
        long k0, k1;
      };
      std::vector<Term> terms;
      for (int t = 0; t < 4; ++t) {
        Term term;
        term.a = uniform(0.5, 1.5);
        term.phase = uniform(0.0, 2.0 * M_PI);
        term.k0 = 1 + static_cast<long>(unit(rng) * static_cast<double>(kmax));
        term.k1 = n == 2 ? static_cast<long>(unit(rng) * static_cast<double>(kmax)) : 0;
        terms.push_back(term);
      }
      label << "(kmax=" << kmax << ")";
      fn = [=](const Vec& x) {
        double v = 0.0;
        for (const auto& t : terms) {
          const double arg = 2.0 * M_PI * (static_cast<double>(t.k0) * x[0] + static_cast<double>(t.k1) * x[1]) / (2.0 * L);
          v += t.a * std::cos(arg + t.phase);
        }
        return Complex(v);
      };
    } else if (kind == "bump") {
      const Vec c{uniform(-L / 4, L / 4), n == 2 ? uniform(-L / 4, L / 4) : 0.0};
      const double rho = log_uniform(4.0 * ms, L / 4.0);
      label << "(c=" << c[0] << ",r=" << rho << ")";
      fn = [=](const Vec& x) {
        const double d0 = x[0] - c[0], d1 = n == 2 ? x[1] - c[1] : 0.0;
        const double r2 = (d0 * d0 + d1 * d1) / (rho * rho);
        return Complex(r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0);
      };
    } else {
      throw PreconditionError("unknown test function kind '" + kind + "'");
    }
    out.push_back(TestFunction{label.str(), SampledFunction::from_function(grid, fn)});
  }
  return out;
}

PowerIterationResult power_iteration_input(const Symbol& symbol, const SampledFunction& start, int iterations) {
  require(iterations >= 1, "power iteration needs at least one step");
  auto l2 = [](const SampledFunction& g) {
    double s = 0.0;
    for (const auto& v : g.values()) s += std::norm(v);
    return std::sqrt(s);
  };
  PowerIterationResult r;
  r.f = start;
  double nf = l2(r.f);
  require(nf > 0.0, "power iteration needs a nonzero start");
  r.f = r.f * Complex(1.0 / nf);
  for (int it = 0; it < iterations; ++it) {
    auto next = apply_pdo_adjoint(symbol, apply_pdo(symbol, r.f));
    const double nn = l2(next);
    if (nn == 0.0) break;
    r.f = next * Complex(1.0 / nn);
    ++r.iterations;
  }
  r.rayleigh = l2(apply_pdo(symbol, r.f)) / l2(r.f);
  return r;
}

std::vector<double> lambda_grid(std::span<const double> values, const LambdaGridSpec& spec) {
  require(spec.count >= 2, "lambda grid needs at least two points");
  require(spec.lo_pct >= 0.0 && spec.lo_pct < spec.hi_pct && spec.hi_pct <= 100.0,
          "lambda grid percentiles must satisfy 0 <= lo < hi <= 100");
  std::vector<double> pos;
  for (double v : values) {
    if (v > 0.0 && std::isfinite(v)) pos.push_back(v);
  }
  if (pos.empty()) return {};
  std::sort(pos.begin(), pos.end());
  auto percentile = [&](double q) {
    const double idx = q / 100.0 * static_cast<double>(pos.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(idx));
    const std::size_t j = std::min(i + 1, pos.size() - 1);
    const double t = idx - static_cast<double>(i);
    return pos[i] + t * (pos[j] - pos[i]);
  };
  const double lo = percentile(spec.lo_pct), hi = percentile(spec.hi_pct);
  if (!(hi > lo)) throw PreconditionError("degenerate lambda grid: percentile range collapses to a single value");
  std::vector<double> out(spec.count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < spec.count; ++k) {
    out[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(spec.count - 1));
  }
  return out;
}

double weighted_norm(std::span<const double> abs_values, std::span<const double> weight, const GridSpec& grid,
                     double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < abs_values.size(); ++i) acc += std::pow(abs_values[i], p) * weight[i];
  return std::pow(acc * grid.cell_volume(), 1.0 / p);
}

double level_set_measure(std::span<const double> values, std::span<const double> weight, const GridSpec& grid,
                         double lambda) {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > lambda) acc += weight[i];
  }
  return acc * grid.cell_volume();
}

GoodLambdaParams make_good_lambda(int n, double alpha0, double eta, double gamma, double b) {
  const GrowthFunction gf(alpha0);
  GoodLambdaParams g;
  g.gamma = gamma;
  g.b = b;
  g.b0 = 1.0 / gf.pow(std::ldexp(1.0, n), eta);
  require(gamma > 0.0, "good-lambda needs gamma > 0");
  require(gamma < b && b < g.b0, "good-lambda parameters must satisfy gamma<b<b0 (b0 = 1/phi(2^n)^eta = " +
                                     detail::fmt(g.b0) + ")");
  g.a = std::ldexp(gamma, n) / (1.0 - b / g.b0);
  return g;
}

}  // namespace weightlab
