#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "weightlab/commutator.hpp"
#include "weightlab/io.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/suite.hpp"

namespace weightlab::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw PreconditionError("cannot parse '" + s + "' as a number in " + what);
  return v;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

json cube_json(const Cube& c) {
  return {{"center", {num(c.center[0]), num(c.center[1])}}, {"side", num(c.side)}, {"family", to_string(c.family)}};
}

struct GridOpts {
  int n = 1;
  double L = 16.0;
  std::size_t N = 1024;
  double alpha0 = 1.0;
  std::string out;
  void add(CLI::App* app) {
    app->add_option("--n", n, "dimension (1 or 2)");
    app->add_option("--L", L, "half-width of the domain [-L, L)^n");
    app->add_option("--N", N, "points per axis (power of two)");
    app->add_option("--alpha0", alpha0, "growth exponent of phi(t) = (1+t)^alpha0");
    app->add_option("--out", out, "write output to this file instead of stdout");
  }
  GridSpec grid() const { return make_grid(n, L, N); }
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + out);
  os << text;
}

std::string samples_csv(const GridSpec& grid, const std::vector<double>& values, const std::string& column) {
  std::string text = grid.dim() == 1 ? "x," + column + "\n" : "x0,x1," + column + "\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Vec x = grid.point(i);
    text += format_double(x[0]) + ",";
    if (grid.dim() == 2) text += format_double(x[1]) + ",";
    text += format_double(values[i]) + "\n";
  }
  return text;
}

json ap_json(const ApReport& r) {
  json j{{"p", num(r.p)},
         {"eta", num(r.eta)},
         {"alpha0", num(r.alpha0)},
         {"constant", num(r.constant)},
         {"witness", cube_json(r.witness)},
         {"family", to_string(r.family)},
         {"family_size", r.family_size}};
  if (r.trend) {
    j["trend"] = {{"mode", to_string(r.trend->mode)},
                  {"base_points", r.trend->base_points},
                  {"next_points", r.trend->next_points},
                  {"base_half_width", num(r.trend->base_half_width)},
                  {"next_half_width", num(r.trend->next_half_width)},
                  {"base", num(r.trend->base)},
                  {"next", num(r.trend->next)},
                  {"relative_change", num(r.trend->relative_change())}};
  }
  return j;
}

RefineMode parse_refine(const std::string& s) {
  if (s == "none") return RefineMode::none;
  if (s == "refine") return RefineMode::refine;
  if (s == "widen") return RefineMode::widen;
  throw PreconditionError("--refine must be none, refine or widen");
}

std::string default_family(const GridOpts& g, const std::string& family) {
  if (!family.empty()) return family;
  return g.n == 1 ? "aligned" : "shifted-dyadic";
}

std::string pins_source(const RunResult& r) {
  std::string text;
  for (const auto& rep : r.reports) {
    if (rep.provenance.rfind("oracle", 0) == 0 || rep.provenance.rfind("assertion", 0) == 0) continue;
    text += "    {\"" + rep.id + "\", " + format_double(rep.constant) + "},\n";
    if (rep.metrics.count("lower_ratio")) {
      text += "    {\"" + rep.id + "#lower\", " + format_double(rep.metrics.at("lower_ratio")) + "},\n";
    }
  }
  return text;
}

}  // namespace

Weight parse_weight(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw PreconditionError("empty weight spec");
  if (parts[0] == "power" && (parts.size() == 3 || parts.size() == 4)) {
    return Weight::power(to_double(parts[1], "--weight"), to_double(parts[2], "--weight"),
                         parts.size() == 4 ? to_double(parts[3], "--weight") : 1.0);
  }
  if (parts[0] == "const" && parts.size() == 2) return Weight::constant(to_double(parts[1], "--weight"));
  throw PreconditionError("weight spec must be power:g1:g2[:scale] or const:c, got '" + spec + "'");
}

Symbol parse_symbol(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty() || parts.size() > 2) throw PreconditionError("symbol spec must be id or id:parameter");
  return make_symbol(parts[0], parts.size() == 2 ? to_double(parts[1], "--symbol") : 0.0);
}

SampledFunction parse_function(const std::string& spec, const GridSpec& grid) {
  const auto parts = split(spec, ':');
  const std::string kind = parts.empty() ? "" : parts[0];
  auto arg = [&](std::size_t i) {
    if (i >= parts.size()) throw PreconditionError("function spec '" + spec + "' is missing parameters");
    return to_double(parts[i], "--f");
  };
  const int n = grid.dim();
  if (kind == "indicator") {
    const double a = arg(1), b = arg(2);
    return SampledFunction::from_function(grid, [=](const Vec& x) {
      const bool in = x[0] >= a && x[0] < b && (n == 1 || (x[1] >= a && x[1] < b));
      return Complex(in ? 1.0 : 0.0);
    });
  }
  if (kind == "gaussian") {
    const double c = arg(1), s = arg(2);
    return SampledFunction::from_function(grid, [=](const Vec& x) {
      const double d0 = x[0] - c, d1 = n == 2 ? x[1] - c : 0.0;
      return Complex(std::exp(-(d0 * d0 + d1 * d1) / (2.0 * s * s)));
    });
  }
  if (kind == "bump") {
    const double c = arg(1), r = arg(2);
    return SampledFunction::from_function(grid, [=](const Vec& x) {
      const double d0 = x[0] - c, d1 = n == 2 ? x[1] - c : 0.0;
      const double t = (d0 * d0 + d1 * d1) / (r * r);
      return Complex(t < 1.0 ? std::exp(-1.0 / (1.0 - t)) : 0.0);
    });
  }
  if (kind == "trig") {
    const double k = arg(1);
    const double L = grid.half_width();
    return SampledFunction::from_function(grid, [=](const Vec& x) { return Complex(std::cos(M_PI * k * x[0] / L)); });
  }
  if (kind == "const") return SampledFunction::constant(grid, Complex(arg(1)));
  throw PreconditionError("function spec must be indicator:a:b, gaussian:c:s, bump:c:r, trig:k or const:c");
}

int main(int argc, char** argv) {
  CLI::App app{"weightlab: growth-function weights, maximal operators and pseudo-differential inequalities"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");

  // weights -----------------------------------------------------------------
  auto* weights = app.add_subcommand("weights", "A_p(phi) machinery");
  weights->require_subcommand(1);
  GridOpts wg;
  std::string weight_spec = "power:-1.5:0", family, refine = "none";
  double p = 2.0;
  auto* ap = weights->add_subcommand("ap-constant", "estimate the A_p(phi) constant");
  auto* a1 = weights->add_subcommand("a1-constant", "estimate the A_1(phi) constant");
  auto* validate = weights->add_subcommand("validate", "check a power weight against the admissible ranges");
  for (auto* sub : {ap, a1, validate}) {
    wg.add(sub);
    sub->add_option("--weight", weight_spec, "power:g1:g2[:scale] or const:c");
    sub->add_option("--family", family, "aligned, dyadic or shifted-dyadic");
    sub->add_option("--refine", refine, "none, refine (2N) or widen (2L, 2N)");
  }
  ap->add_option("--p", p, "exponent 1 < p < infinity");
  validate->add_option("--p", p, "exponent 1 < p < infinity");

  // maximal -----------------------------------------------------------------
  auto* maximal_cmd = app.add_subcommand("maximal", "maximal operators and the CZ decomposition");
  maximal_cmd->require_subcommand(1);
  GridOpts mg;
  std::string f_spec = "indicator:0:1", kind = "phi";
  double eta = 1.0, lambda = 1.0, delta_power = 1.0;
  auto* compute = maximal_cmd->add_subcommand("compute", "evaluate a maximal operator at every sample");
  mg.add(compute);
  compute->add_option("--kind", kind, "phi, sharp, dyadic, orlicz or weighted");
  compute->add_option("--f", f_spec, "input function spec");
  compute->add_option("--eta", eta, "exponent of the growth deflation");
  compute->add_option("--delta", delta_power, "power variant M_delta (1 = plain)");
  compute->add_option("--family", family, "aligned, dyadic or shifted-dyadic");
  compute->add_option("--weight", weight_spec, "weight for --kind weighted");
  auto* cz = maximal_cmd->add_subcommand("cz", "dyadic Calderon-Zygmund decomposition");
  mg.add(cz);
  cz->add_option("--f", f_spec, "input function spec");
  cz->add_option("--lambda", lambda, "threshold")->required();
  cz->add_option("--eta", eta, "exponent of the growth deflation")->default_val(0.0);

  // pdo ---------------------------------------------------------------------
  auto* pdo = app.add_subcommand("pdo", "pseudo-differential operators");
  pdo->require_subcommand(1);
  GridOpts pg;
  std::string symbol_spec = "riesz";
  int J = 6, j_lo = 3, j_hi = 8;
  double k_exp = 2.0, m_order = 0.0;
  auto* apply = pdo->add_subcommand("apply", "apply T_sigma to a function");
  pg.add(apply);
  apply->add_option("--symbol", symbol_spec, "symbol id[:parameter]");
  apply->add_option("--f", f_spec, "input function spec");
  auto* partition = pdo->add_subcommand("partition-check", "residual of the smooth partition of unity");
  pg.add(partition);
  partition->add_option("--J", J, "number of dyadic bands");
  auto* kdecay = pdo->add_subcommand("kernel-decay", "kernel decay constant and its widening trend");
  pg.add(kdecay);
  kdecay->add_option("--symbol", symbol_spec, "symbol id[:parameter]");
  kdecay->add_option("--k", k_exp, "decay exponent");
  auto* l32 = pdo->add_subcommand("lemma32", "slope fit of the band-kernel decay");
  pg.add(l32);
  l32->add_option("--symbol", symbol_spec, "symbol id[:parameter]");
  l32->add_option("--j-lo", j_lo, "first band");
  l32->add_option("--j-hi", j_hi, "last band");
  auto* sclass = pdo->add_subcommand("symbol-class", "finite-difference symbol seminorms");
  pg.add(sclass);
  sclass->add_option("--symbol", symbol_spec, "symbol id[:parameter]");
  sclass->add_option("--m", m_order, "declared order");

  // commutator --------------------------------------------------------------
  auto* comm = app.add_subcommand("commutator", "commutators [b, T] and BMO norms");
  comm->require_subcommand(1);
  GridOpts cg;
  std::string bmo_spec = "sign";
  auto* capply = comm->add_subcommand("apply", "evaluate [b, T] f");
  cg.add(capply);
  capply->add_option("--bmo", bmo_spec, "sign, log-abs or constant:c");
  capply->add_option("--symbol", symbol_spec, "symbol id[:parameter]");
  capply->add_option("--f", f_spec, "input function spec");
  auto* bnorm = comm->add_subcommand("bmo-norm", "family-relative BMO seminorm estimate");
  cg.add(bnorm);
  bnorm->add_option("--bmo", bmo_spec, "sign, log-abs or constant:c");
  bnorm->add_option("--family", family, "aligned, dyadic or shifted-dyadic");

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "inequality harness");
  verify->require_subcommand(1);
  auto* run = verify->add_subcommand("run", "run a suite or a config file");
  std::string suite, out_root;
  std::optional<std::uint64_t> seed;
  bool print_pins = false, quiet = false;
  run->add_option("--suite", suite, "smoke, theorem1, theorem2, weak, goodlambda, pointwise, full, or a config .json")
      ->required();
  run->add_option("--seed", seed, "override the test-set seed of every check");
  run->add_option("--out", out_root, "report root (default $WEIGHTLAB_OUT or ./weightlab-out)");
  run->add_flag("--print-pins", print_pins, "print the measured constants as a pin table");
  run->add_flag("--quiet", quiet, "only print the summary");
  run->add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
  verify->add_subcommand("list", "list suites and their checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every bad flag is a usage error
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) set_thread_count(threads);
    auto bmo_of = [](const std::string& spec) {
      const auto parts = split(spec, ':');
      return BmoFunction::from_name(parts[0], parts.size() > 1 ? to_double(parts[1], "--bmo") : 0.0);
    };

    if (weights->parsed()) {
      const Weight w = parse_weight(weight_spec);
      const GrowthFunction gf(wg.alpha0);
      const GridSpec grid = wg.grid();
      const CubeFamily fam = cube_family_from_string(default_family(wg, family));
      if (ap->parsed()) {
        emit(ap_json(ap_phi_constant(w, grid, p, gf, fam, parse_refine(refine))).dump(2), wg.out);
      } else if (a1->parsed()) {
        emit(ap_json(a1_phi_constant(w, grid, gf, fam, parse_refine(refine))).dump(2), wg.out);
      } else {
        const auto v = validate_power_weight(wg.n, p, w.gamma1(), w.gamma2(), wg.alpha0);
        emit(json{{"accepted", v.accepted}, {"gamma1_certified", v.gamma1_certified}, {"reason", v.reason}}.dump(2),
             wg.out);
        return v.accepted ? 0 : 1;
      }
      return 0;
    }

    if (maximal_cmd->parsed()) {
      const GridSpec grid = mg.grid();
      const GrowthFunction gf(mg.alpha0);
      const auto f = parse_function(f_spec, grid);
      if (compute->parsed()) {
        const CubeFamily fam = cube_family_from_string(default_family(mg, family));
        std::vector<double> values;
        if (kind == "phi" || kind == "dyadic") {
          MaximalParams mp;
          mp.eta = eta;
          mp.delta_power = delta_power;
          mp.family = kind == "dyadic" ? CubeFamily::dyadic : fam;
          values = maximal(f, gf, mp).real();
        } else if (kind == "sharp") {
          MaximalParams mp;
          mp.eta = eta;
          mp.delta_power = delta_power;
          mp.family = family.empty() ? CubeFamily::dyadic : fam;
          mp.sharp = true;
          values = maximal(f, gf, mp).real();
        } else if (kind == "orlicz") {
          values = orlicz_maximal(f, YoungFunction::llogl(), eta, gf, fam).real();
        } else if (kind == "weighted") {
          values = weighted_maximal_5Q(f, parse_weight(weight_spec).sample(grid), fam).values.real();
        } else {
          throw PreconditionError("--kind must be phi, sharp, dyadic, orlicz or weighted");
        }
        emit(samples_csv(grid, values, kind), mg.out);
      } else {
        const auto res = cz_decompose(f, lambda, eta, gf);
        json cubes = json::array();
        for (std::size_t i = 0; i < res.cubes.size(); ++i) {
          auto c = cube_json(res.cubes[i]);
          c["average"] = num(res.averages[i]);
          c["interval"] = {num(res.cubes[i].center[0] - res.cubes[i].side / 2), num(res.cubes[i].center[0] + res.cubes[i].side / 2)};
          cubes.push_back(c);
        }
        emit(json{{"lambda", num(res.lambda)},
                  {"eta", num(res.eta)},
                  {"cubes", cubes},
                  {"disjoint", res.disjoint},
                  {"property_i", res.property_i},
                  {"property_ii", res.property_ii_bound},
                  {"property_iii", res.property_iii},
                  {"property_iv", res.property_iv},
                  {"omega_measure", num(res.omega_measure)},
                  {"l1_over_lambda", num(res.l1_over_lambda)}}
                 .dump(2),
             mg.out);
      }
      return 0;
    }

    if (pdo->parsed()) {
      const GridSpec grid = pg.grid();
      if (apply->parsed()) {
        const auto out = apply_pdo(parse_symbol(symbol_spec), parse_function(f_spec, grid));
        std::string text = grid.dim() == 1 ? "x,re,im\n" : "x0,x1,re,im\n";
        for (std::size_t i = 0; i < out.size(); ++i) {
          const Vec x = grid.point(i);
          text += format_double(x[0]) + ",";
          if (grid.dim() == 2) text += format_double(x[1]) + ",";
          text += format_double(out.values()[i].real()) + "," + format_double(out.values()[i].imag()) + "\n";
        }
        emit(text, pg.out);
      } else if (partition->parsed()) {
        const double r = partition_check(grid, J);
        emit(json{{"J", J}, {"residual", num(r)}, {"pass", r <= 1e-12}}.dump(2), pg.out);
        return r <= 1e-12 ? 0 : 1;
      } else if (kdecay->parsed()) {
        const auto r = kernel_decay_check(parse_symbol(symbol_spec), grid, k_exp, {Vec{0.0, 0.0}});
        emit(json{{"exponent", num(r.exponent)},
                  {"constant", num(r.constant)},
                  {"constant_wide", num(r.constant_wide)},
                  {"z0_value", num(r.z0_value)},
                  {"z0_bound", num(r.z0_bound)},
                  {"stable", r.stable}}
                 .dump(2),
             pg.out);
      } else if (l32->parsed()) {
        const auto r = lemma32_check(parse_symbol(symbol_spec), grid, j_lo, j_hi, {1, 2, 3});
        json fits = json::array();
        for (const auto& f : r.fits) {
          fits.push_back({{"power", f.power}, {"slope", num(f.slope)}, {"target", num(f.target)}, {"pass", f.pass}});
        }
        emit(json{{"fits", fits}, {"pass", r.pass}}.dump(2), pg.out);
        return r.pass ? 0 : 1;
      } else {
        const auto r = symbol_class_check(parse_symbol(symbol_spec), grid, m_order, 0.0, 2);
        json cs = json::array();
        for (const auto& c : r.constants) {
          cs.push_back({{"alpha", c.alpha},
                        {"beta", c.beta},
                        {"value", num(c.value)},
                        {"half_band", num(c.half_band)},
                        {"out_of_class", c.out_of_class}});
        }
        emit(json{{"constants", cs}, {"in_class", r.in_class}}.dump(2), pg.out);
      }
      return 0;
    }

    if (comm->parsed()) {
      const GridSpec grid = cg.grid();
      const BmoFunction b = bmo_of(bmo_spec);
      if (capply->parsed()) {
        const auto out = commutator_apply(b, parse_symbol(symbol_spec), parse_function(f_spec, grid));
        emit(samples_csv(grid, out.abs(), "abs"), cg.out);
      } else {
        const auto r = bmo_norm(b, grid, cube_family_from_string(family.empty() ? "shifted-dyadic" : family));
        emit(json{{"norm", num(r.norm)}, {"witness", cube_json(r.witness)}, {"family", to_string(r.family)},
                  {"cubes", r.cubes}}
                 .dump(2),
             cg.out);
      }
      return 0;
    }

    if (verify->parsed()) {
      if (!run->parsed()) {
        for (const auto& name : suite_names()) {
          std::cout << name << ":\n";
          for (const auto& c : suite_configs(name)) std::cout << "  " << c.key() << "\n";
        }
        return 0;
      }
      std::vector<CheckConfig> configs;
      if (suite.size() > 5 && suite.substr(suite.size() - 5) == ".json") {
        std::ifstream is(suite);
        if (!is) throw PreconditionError("cannot read config file " + suite);
        std::stringstream ss;
        ss << is.rdbuf();
        configs = configs_from_json_text(ss.str());
      } else {
        configs = suite_configs(suite);
      }
      RunOptions opts;
      opts.label = suite;
      opts.seed = seed;
      opts.threads = threads;
      if (out_root.empty()) {
        const char* env = std::getenv("WEIGHTLAB_OUT");
        out_root = env && *env ? env : "weightlab-out";
      }
      opts.out_root = out_root;
      opts.on_report = [&](const CheckReport& r, double seconds) {
        if (quiet) return;
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << "  C=" << format_double(r.constant) << "  ("
                  << std::fixed << std::setprecision(1) << seconds << std::defaultfloat << " s)\n";
        if (!r.pass) {
          for (const auto& a : r.assertions) {
            if (!a.ok) std::cout << "     failed: " << a.name << " [" << a.detail << "]\n";
          }
        }
        std::cout.flush();
      };
      const auto result = run_configs(configs, opts);
      std::size_t passed = 0;
      for (const auto& r : result.reports) passed += r.pass;
      std::cout << passed << "/" << result.reports.size() << " checks passed; reports in " << result.run_dir << "\n";
      if (print_pins) std::cout << pins_source(result);
      return result.all_pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace weightlab::cli
