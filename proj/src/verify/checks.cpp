#include <algorithm>
#include <cmath>
#include <limits>

#include "internal.hpp"

namespace weightlab {

using detail::fmt;

namespace {

struct Sweep {
  double constant = 0.0;
  std::string witness;
  std::vector<ReportRow> rows;
  std::map<std::string, double> metrics;
  std::vector<PlotSeries> plots;
};

void keep_max(Sweep& s, double ratio, const std::string& witness) {
  if (ratio > s.constant || s.witness.empty()) {
    s.constant = ratio;
    s.witness = witness;
  }
}

// Lambda grids shared by both resolutions: each input's grid is the union of
// the percentile grids of its base and refined outputs, so the trend compares
// sups over one lambda set (a finer sample shifts the percentiles otherwise).
class LambdaCache {
 public:
  const std::vector<double>& get(std::size_t k, std::span<const double> values, const LambdaGridSpec& spec) {
    static const std::vector<double> none;
    if (collecting_) {
      if (grids_.size() <= k) grids_.resize(k + 1);
      auto& g = grids_[k];
      const auto add = lambda_grid(values, spec);
      g.insert(g.end(), add.begin(), add.end());
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
      return none;
    }
    require(k < grids_.size(), "lambda grid requested before collection");
    return grids_[k];
  }
  void set_collecting(bool on) { collecting_ = on; }

 private:
  bool collecting_ = false;
  std::vector<std::vector<double>> grids_;
};

// Runs `sweep` on the configured grid and, when refinement is on, on the
// grid with N doubled. Smooth test functions keep their physical parameters;
// spikes stay single cells of whichever grid they are sampled on.
template <typename Fn>
CheckReport run_with_trend(const CheckConfig& config, Fn sweep, LambdaCache* lambdas = nullptr) {
  CheckReport report = detail::start_report(config);
  const GridSpec base = config.grid();
  const TestSetSpec spec = detail::scaled_spec(config.test_set, base);
  if (lambdas) {
    lambdas->set_collecting(true);
    sweep(base, spec, false);
    if (config.refine) sweep(base.refined(), spec, false);
    lambdas->set_collecting(false);
  }
  Sweep s = sweep(base, spec, true);
  report.constant = s.constant;
  report.witness = s.witness;
  report.rows = std::move(s.rows);
  report.metrics = std::move(s.metrics);
  report.plots = std::move(s.plots);
  if (config.refine) {
    const GridSpec fine = base.refined();
    const Sweep t = sweep(fine, spec, false);
    report.points_refined = fine.points_per_axis();
    report.constant_refined = t.constant;
    report.relative_change = s.constant == 0.0 ? 0.0 : std::abs(t.constant - s.constant) / std::abs(s.constant);
  }
  return report;
}

std::vector<double> abs_of(const SampledFunction& f) { return f.abs(); }

void validate_weight_or_throw(const CheckConfig& c) {
  const auto v = validate_power_weight(c.n, c.exponents.p, c.weight.gamma1, c.weight.gamma2, c.alpha0);
  if (!v.accepted) {
    throw PreconditionError("weight rejected by the power-weight admissibility range -n<gamma2<n(p-1): " + v.reason);
  }
}

// Distribution sweep: rows over the lambda grid of num(lambda)/den(lambda).
template <typename Num, typename Den>
void distribution_rows(Sweep& s, const std::string& label, const std::vector<double>& lambdas, bool record, Num num,
                       Den den, PlotSeries* plot) {
  if (lambdas.empty()) {
    if (record) s.rows.push_back(ReportRow{label, std::nullopt, 0.0, 0.0, 0.0, true});
    return;
  }
  for (double lambda : lambdas) {
    const double lhs = num(lambda);
    const double rhs = den(lambda);
    ReportRow row{label, lambda, lhs, rhs, 0.0, false};
    if (lhs == 0.0 && rhs == 0.0) {
      row.vacuous = true;
    } else {
      row.ratio = rhs == 0.0 ? std::numeric_limits<double>::infinity() : lhs / rhs;
      keep_max(s, row.ratio, label + " @ lambda=" + fmt(lambda));
    }
    if (plot) plot->points.push_back({lambda, row.ratio});
    if (record) s.rows.push_back(row);
  }
}

}  // namespace

// --- strong bounds -------------------------------------------------------------

CheckReport strong_bound_check(const CheckConfig& config) {
  require(config.variant == "T" || config.variant == "commutator", "strong check variant must be T or commutator");
  const double p = config.exponents.p;
  require(p > 1.0 && std::isfinite(p), "p must satisfy 1 < p < infinity");
  validate_weight_or_throw(config);
  const Symbol symbol = config.symbol.make();
  const Weight weight = config.weight.make();
  const bool commutator = config.variant == "commutator";

  auto report = run_with_trend(config, [&](const GridSpec& grid, const TestSetSpec& spec, bool record) {
    Sweep s;
    const auto w = weight.sample(grid);
    std::vector<double> bs;
    double bmo = 1.0;
    if (commutator) {
      bs = config.bmo.make().sample(grid);
      bmo = bmo_norm(bs, grid, CubeFamily::shifted_dyadic).norm;
      require(bmo > 0.0, "BMO norm estimate is zero; the commutator ratio is undefined");
      s.metrics["bmo_norm"] = bmo;
    }
    auto ratio_of = [&](const SampledFunction& f) {
      const auto out = commutator ? commutator_apply(bs, symbol, f) : apply_pdo(symbol, f);
      const double num = weighted_norm(abs_of(out), w, grid, p);
      const double den = weighted_norm(abs_of(f), w, grid, p) * bmo;
      return std::pair{num, den};
    };
    const auto tests = test_function_set(spec, grid);
    std::size_t worst = 0;
    for (std::size_t k = 0; k < tests.size(); ++k) {
      const auto [num, den] = ratio_of(tests[k].f);
      ReportRow row{tests[k].label, std::nullopt, num, den, 0.0, false};
      if (num == 0.0 && den == 0.0) {
        row.vacuous = true;
      } else {
        row.ratio = num / den;
        if (row.ratio > s.constant) worst = k;
        keep_max(s, row.ratio, tests[k].label);
      }
      if (record) s.rows.push_back(row);
    }
    if (!commutator && p == 2.0 && config.weight.is_constant() && !tests.empty()) {
      const auto pi = power_iteration_input(symbol, tests[worst].f, 20);
      const auto [num, den] = ratio_of(pi.f);
      const std::string label = "power-iteration(" + tests[worst].label + ")";
      if (record) s.rows.push_back(ReportRow{label, std::nullopt, num, den, num / den, false});
      keep_max(s, num / den, label);
    }
    if (!symbol.x_dependent && p == 2.0 && config.weight.is_constant() && !commutator) {
      s.metrics["multiplier_sup"] = multiplier_sup(symbol, grid);
    }
    return s;
  });

  if (report.metrics.count("multiplier_sup")) {
    const double sup = report.metrics["multiplier_sup"];
    report.require_that("within 5% of the multiplier sup", report.constant >= 0.95 * sup,
                        fmt(report.constant) + " vs " + fmt(sup));
    report.require_that("never above the multiplier sup", report.constant <= sup * (1.0 + 1e-6),
                        fmt(report.constant) + " vs " + fmt(sup));
  }
  const auto v = validate_power_weight(config.n, p, config.weight.gamma1, config.weight.gamma2, config.alpha0);
  report.notes.push_back(v.reason);
  report.notes.push_back("periodic torus discretization: test functions are aliased across the boundary of [-L, L)^n");
  detail::finalize(report, config);
  return report;
}

// --- weak type -------------------------------------------------------------------

CheckReport weak_type_check(const CheckConfig& config) {
  const std::string& kind = config.variant;
  require(kind == "T" || kind == "M_omega" || kind == "M_phi" || kind == "commutator_llogl" || kind == "orlicz",
          "weak check variant must be one of T, M_omega, M_phi, commutator_llogl, orlicz");
  if (kind == "orlicz") require(config.exponents.eta >= 2.0, "the L log L maximal weak bound needs eta >= 2");
  const Weight weight = config.weight.make();
  const GrowthFunction gf(config.alpha0);
  const CubeFamily family = config.cube_family();
  const PhiYoung Phi;
  LambdaCache lambdas;

  auto report = run_with_trend(config, [&](const GridSpec& grid, const TestSetSpec& spec, bool record) {
    Sweep s;
    const auto w = weight.sample(grid);
    const auto tests = test_function_set(spec, grid);
    std::vector<double> bs;
    if (kind == "commutator_llogl") bs = config.bmo.make().sample(grid);
    PlotSeries plot;
    plot.x_label = "lambda";
    plot.y_label = "ratio";
    for (std::size_t k = 0; k < tests.size(); ++k) {
      const auto& f = tests[k].f;
      const auto af = f.abs();
      std::vector<double> g;
      if (kind == "T") {
        g = apply_pdo(config.symbol.make(), f).abs();
      } else if (kind == "M_omega") {
        g = weighted_maximal_5Q(f, w, family).values.real();
      } else if (kind == "M_phi") {
        g = maximal_values(grid, af, gf, 1.0, family);
      } else if (kind == "commutator_llogl") {
        g = commutator_apply(bs, config.symbol.make(), f).abs();
      } else {
        const CubeFamily of = grid.dim() == 1 ? CubeFamily::shifted_dyadic : family;
        g = orlicz_maximal(f, YoungFunction::llogl(), config.exponents.eta, gf, of).real();
      }
      const double l1w = weighted_norm(af, w, grid, 1.0);
      plot.name = tests[k].label;
      plot.points.clear();
      distribution_rows(
          s, tests[k].label, lambdas.get(k, g, config.lambda_grid), record,
          [&](double lambda) {
            const double m = level_set_measure(g, w, grid, lambda);
            return (kind == "commutator_llogl" || kind == "orlicz") ? m : lambda * m;
          },
          [&](double lambda) {
            if (kind == "commutator_llogl") return llogl_functional(f, lambda, w);
            if (kind == "orlicz") {
              double acc = 0.0;
              for (std::size_t i = 0; i < af.size(); ++i) acc += Phi(af[i] / lambda) * w[i];
              return acc * grid.cell_volume();
            }
            return l1w;
          },
          record ? &plot : nullptr);
      if (record) s.plots.push_back(plot);
    }
    return s;
  }, &lambdas);
  if (kind == "orlicz" && config.n == 1) report.notes.push_back("Orlicz maximal sup taken over the shifted-dyadic family");
  detail::finalize(report, config);
  return report;
}

// --- good lambda -------------------------------------------------------------------

CheckReport good_lambda_check(const CheckConfig& config) {
  const double eta = config.exponents.eta;
  const auto params = make_good_lambda(config.n, config.alpha0, eta, config.gamma, config.b);
  CheckReport report = detail::start_report(config);
  const GridSpec grid = config.grid();
  const GrowthFunction gf(config.alpha0);
  const auto w = config.weight.make().sample(grid);
  const auto tests = test_function_set(detail::scaled_spec(config.test_set, grid), grid);
  const double log_a = std::log(params.a);

  double delta1 = std::numeric_limits<double>::infinity();
  std::string witness;
  for (const auto& t : tests) {
    const auto MD = maximal_values(grid, t.f.abs(), gf, eta, CubeFamily::dyadic);
    const auto MS = sharp_maximal(t.f, eta, gf, CubeFamily::dyadic).real();
    const auto lambdas = lambda_grid(MD, config.lambda_grid);
    if (lambdas.empty()) {
      report.rows.push_back(ReportRow{t.label, std::nullopt, 0.0, 0.0, 0.0, true});
      continue;
    }
    PlotSeries plot{t.label, "lambda", "lhs/rhs", {}};
    for (double lambda : lambdas) {
      double lhs = 0.0, rhs = 0.0;
      for (std::size_t i = 0; i < MD.size(); ++i) {
        if (MD[i] > lambda && MS[i] <= params.gamma * lambda) lhs += w[i];
        if (MD[i] > params.b * lambda) rhs += w[i];
      }
      lhs *= grid.cell_volume();
      rhs *= grid.cell_volume();
      ReportRow row{t.label, lambda, lhs, rhs, 0.0, false};
      if (rhs == 0.0) {
        row.vacuous = true;
      } else {
        row.ratio = lhs / rhs;
        if (lhs > 0.0) {
          // largest d with lhs <= a^d rhs
          const double bound = log_a < 0.0 ? std::log(lhs / rhs) / log_a : std::numeric_limits<double>::infinity();
          if (bound < delta1) {
            delta1 = bound;
            witness = t.label + " @ lambda=" + fmt(lambda);
          }
        }
      }
      plot.points.push_back({lambda, row.ratio});
      report.rows.push_back(row);
    }
    report.plots.push_back(std::move(plot));
  }
  report.metrics["b0"] = params.b0;
  report.metrics["a"] = params.a;
  report.metrics["gamma"] = params.gamma;
  report.metrics["b"] = params.b;
  const bool unconstrained = std::isinf(delta1);
  report.metrics["delta1_unconstrained"] = unconstrained ? 1.0 : 0.0;
  // The reported constant is the empirical delta1 (capped for serialization
  // when no row constrains it).
  report.constant = unconstrained ? std::numeric_limits<double>::max() : delta1;
  report.witness = unconstrained ? "no lambda row with a nonempty left-hand set" : witness;
  if (unconstrained) {
    report.notes.push_back(
        "the left-hand set {M^D f > lambda, M^# f <= gamma lambda} was empty on every row, so every delta1 >= 0 "
        "satisfies the inequality; the constant is reported as the largest finite double");
  }
  report.require_that("empirical delta1 > 0", delta1 > 0.0, fmt(report.constant));
  detail::finalize(report, config, false);
  report.provenance = "assertion only: delta1 > 0 (existence claim, no numeric target)";
  return report;
}

// --- pointwise -------------------------------------------------------------------

CheckReport pointwise_check(const CheckConfig& config) {
  const std::string& kind = config.variant;
  require(kind == "lemma31" || kind == "eq31" || kind == "lemma41" || kind == "lemma42",
          "pointwise check variant must be one of lemma31, eq31, lemma41, lemma42");
  const auto& e = config.exponents;
  require(e.eta > 0.0, "pointwise checks need 0 < eta < infinity");
  if (kind == "eq31") {
    const double pp = e.p / (e.p - 1.0);
    require(e.p > 1.0 && e.eta > pp, "eq31 needs p' < eta < infinity");
    require(e.delta > 0.0 && e.delta < 1.0, "eq31 needs 0 < delta < 1");
  }
  if (kind == "lemma42") {
    require(0.0 < e.delta && e.delta < e.epsilon && e.epsilon < 1.0, "lemma42 needs 0 < delta < epsilon < 1");
    require(e.eta >= 1.0, "lemma42 needs eta >= 1");
  }
  const GrowthFunction gf(config.alpha0);
  const CubeFamily family = config.cube_family();
  const CubeFamily wide = CubeFamily::shifted_dyadic;
  const Symbol symbol = kind == "lemma31" ? make_symbol("smoothing") : config.symbol.make();

  auto M = [&](const GridSpec& grid, const std::vector<double>& v, double eta, CubeFamily fam) {
    return maximal_values(grid, v, gf, eta, fam);
  };

  double lower_constant = 0.0;
  auto report = run_with_trend(config, [&](const GridSpec& grid, const TestSetSpec& spec, bool record) {
    Sweep s;
    double lower = 0.0;
    const auto tests = test_function_set(spec, grid);
    std::vector<double> bs;
    double bmo = 1.0;
    if (kind == "lemma42") {
      bs = config.bmo.make().sample(grid);
      bmo = bmo_norm(bs, grid, wide).norm;
      s.metrics["bmo_norm"] = bmo;
    }
    for (const auto& t : tests) {
      const auto af = t.f.abs();
      std::vector<double> lhs, rhs, lhs2, rhs2;
      if (kind == "lemma31") {
        lhs = sharp_maximal(apply_pdo(symbol, t.f), e.eta, gf, wide).real();
        rhs = M(grid, af, e.eta, family);
      } else if (kind == "eq31") {
        MaximalParams mp;
        mp.eta = e.eta;
        mp.delta_power = e.delta;
        mp.family = wide;
        mp.sharp = true;
        lhs = maximal(apply_pdo(symbol, t.f), gf, mp).real();
        rhs = M(grid, af, e.eta, family);
      } else if (kind == "lemma41") {
        const auto ll = orlicz_maximal(t.f, YoungFunction::llogl(), e.eta, gf, wide).real();
        const auto half = M(grid, M(grid, af, e.eta / 2.0, wide), e.eta / 2.0, wide);
        const auto full = M(grid, M(grid, af, e.eta, wide), e.eta, wide);
        lhs = ll;
        rhs = half;
        lhs2 = full;
        rhs2 = ll;
      } else {
        MaximalParams sharp;
        sharp.eta = e.eta;
        sharp.delta_power = e.delta;
        sharp.family = wide;
        sharp.sharp = true;
        lhs = maximal(commutator_apply(bs, symbol, t.f), gf, sharp).real();
        MaximalParams eps;
        eps.eta = e.eta;
        eps.delta_power = e.epsilon;
        eps.family = wide;
        const auto mt = maximal(apply_pdo(symbol, t.f), gf, eps).real();
        const auto ll = orlicz_maximal(t.f, YoungFunction::llogl(), e.eta, gf, wide).real();
        rhs.resize(mt.size());
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = bmo * (mt[i] + ll[i]);
      }
      double best = 0.0, best_l = 0.0, best_r = 0.0;
      bool any = false;
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (lhs[i] == 0.0 && rhs[i] == 0.0) continue;
        any = true;
        const double r = rhs[i] == 0.0 ? std::numeric_limits<double>::infinity() : lhs[i] / rhs[i];
        if (r > best) {
          best = r;
          best_l = lhs[i];
          best_r = rhs[i];
        }
      }
      if (!lhs2.empty()) {
        for (std::size_t i = 0; i < lhs2.size(); ++i) {
          if (lhs2[i] == 0.0 && rhs2[i] == 0.0) continue;
          lower = std::max(lower, rhs2[i] == 0.0 ? std::numeric_limits<double>::infinity() : lhs2[i] / rhs2[i]);
        }
      }
      if (record) s.rows.push_back(ReportRow{t.label, std::nullopt, best_l, best_r, best, !any});
      if (any) keep_max(s, best, t.label);
    }
    if (kind == "lemma41") {
      s.metrics["lower_ratio"] = lower;
      if (record) lower_constant = lower;
    }
    return s;
  });
  if (kind == "lemma41") {
    report.require_that("lower ratio finite", std::isfinite(lower_constant), fmt(lower_constant));
    if (const auto pin = find_pin(report.id + "#lower")) {
      report.require_that("regression pin (lower ratio)", lower_constant <= pin->bound * report.slack,
                          fmt(lower_constant) + " <= " + fmt(pin->bound) + " x " + fmt(report.slack));
    }
  }
  report.notes.push_back("sharp and Orlicz operators use the shifted-dyadic family; M_{phi,eta} uses " +
                         to_string(family));
  detail::finalize(report, config);
  return report;
}

// --- maximal bounds ------------------------------------------------------------------

CheckReport maximal_bound_check(const CheckConfig& config) {
  const std::string& kind = config.variant;
  require(kind == "prop21" || kind == "lemma22-lp" || kind == "lemma23" || kind == "prop22" || kind == "prop23a",
          "maximal check variant must be one of prop21, lemma22-lp, lemma23, prop22, prop23a");
  const double p = config.exponents.p;
  require(p > 1.0 && std::isfinite(p), "p must satisfy 1 < p < infinity");
  const double eta = kind == "prop21" ? p / (p - 1.0) : config.exponents.eta;
  const GrowthFunction gf(config.alpha0);
  const CubeFamily family = config.cube_family();
  const Weight weight = config.weight.make();
  const PhiYoung Phi;
  if (kind == "prop22" || kind == "prop23a") {
    const auto g = config.grid();
    require(g.spacing() < 1.0 && 1.0 <= 2.0 * g.half_width(), "prop22/prop23a need h < 1 <= 2L");
  }

  bool lower_link = true;
  double lower_worst = 0.0;
  LambdaCache lambdas;
  auto report = run_with_trend(config, [&](const GridSpec& grid, const TestSetSpec& spec, bool record) {
    Sweep s;
    const auto w = weight.sample(grid);
    const auto tests = test_function_set(spec, grid);
    for (std::size_t k = 0; k < tests.size(); ++k) {
      const auto& t = tests[k];
      const auto af = t.f.abs();
      double num = 0.0, den = 0.0;
      if (kind == "prop21" || kind == "lemma23") {
        num = weighted_norm(maximal_values(grid, af, gf, kind == "prop21" ? eta : 1.0, family), w, grid, p);
        den = weighted_norm(af, w, grid, p);
      } else if (kind == "lemma22-lp") {
        num = weighted_norm(weighted_maximal_5Q(t.f, w, family).values.real(), w, grid, p);
        den = weighted_norm(af, w, grid, p);
      } else if (kind == "prop22") {
        const auto md = maximal_values(grid, af, gf, eta, CubeFamily::dyadic);
        const auto ms = sharp_maximal(t.f, eta, gf, CubeFamily::shifted_dyadic).real();
        num = weighted_norm(md, w, grid, p);
        den = weighted_norm(ms, w, grid, p);
        const double fn = weighted_norm(af, w, grid, p);
        const double link = num * gf.pow(grid.cell_volume(), eta);
        if (record) {
          lower_link = lower_link && fn <= link * (1.0 + 1e-12);
          lower_worst = std::max(lower_worst, link > 0.0 ? fn / link : 0.0);
        }
      } else {
        MaximalParams md;
        md.eta = eta;
        md.delta_power = config.exponents.delta;
        md.family = CubeFamily::dyadic;
        MaximalParams ms = md;
        ms.sharp = true;
        ms.family = CubeFamily::shifted_dyadic;
        const auto a = maximal(t.f, gf, md).real();
        const auto b = maximal(t.f, gf, ms).real();
        std::vector<double> both(a);
        both.insert(both.end(), b.begin(), b.end());
        for (double lambda : lambdas.get(k, both, config.lambda_grid)) {
          num = std::max(num, Phi(lambda) * level_set_measure(a, w, grid, lambda));
          den = std::max(den, Phi(lambda) * level_set_measure(b, w, grid, lambda));
        }
      }
      ReportRow row{t.label, std::nullopt, num, den, 0.0, false};
      if (num == 0.0 && den == 0.0) {
        row.vacuous = true;
      } else {
        row.ratio = den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
        keep_max(s, row.ratio, t.label);
      }
      if (record) s.rows.push_back(row);
    }
    return s;
  }, kind == "prop23a" ? &lambdas : nullptr);
  if (kind == "prop22") {
    report.metrics["lower_link_worst"] = lower_worst;
    report.require_that("lower link |f| <= |M^D f| (1+h^n)^{alpha0 eta}", lower_link, fmt(lower_worst));
  }
  detail::finalize(report, config);
  return report;
}

}  // namespace weightlab
