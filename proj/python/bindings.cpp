#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weightlab/commutator.hpp"
#include "weightlab/io.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/pdo.hpp"
#include "weightlab/suite.hpp"
#include "weightlab/weights.hpp"

namespace py = pybind11;
using namespace weightlab;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> shape_of(const GridSpec& g) {
  const auto N = static_cast<py::ssize_t>(g.points_per_axis());
  if (g.dim() == 1) return {N};
  return {N, N};
}

void check_size(const GridSpec& g, py::ssize_t size) {
  require(static_cast<std::size_t>(size) == g.size(),
          "array has " + std::to_string(size) + " entries, grid needs " + std::to_string(g.size()));
}

SampledFunction to_sampled(const GridSpec& g, const ComplexArray& a) {
  check_size(g, a.size());
  return SampledFunction(g, std::vector<Complex>(a.data(), a.data() + a.size()));
}

std::vector<double> to_vector(const GridSpec& g, const RealArray& a) {
  check_size(g, a.size());
  return std::vector<double>(a.data(), a.data() + a.size());
}

RealArray real_out(const GridSpec& g, const std::vector<double>& v) {
  RealArray out(shape_of(g));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

ComplexArray complex_out(const SampledFunction& f) {
  ComplexArray out(shape_of(f.grid()));
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

py::dict cube_dict(const Cube& q, int n) {
  py::dict d;
  d["center"] = n == 1 ? py::cast(std::vector<double>{q.center[0]}) : py::cast(std::vector<double>{q.center[0], q.center[1]});
  d["side"] = q.side;
  d["family"] = to_string(q.family);
  return d;
}

py::dict ap_dict(const ApReport& r, int n) {
  py::dict d;
  d["constant"] = r.constant;
  d["p"] = r.p;
  d["alpha0"] = r.alpha0;
  d["witness"] = cube_dict(r.witness, n);
  d["family"] = to_string(r.family);
  d["family_size"] = r.family_size;
  if (r.trend) {
    py::dict t;
    t["mode"] = to_string(r.trend->mode);
    t["base"] = r.trend->base;
    t["next"] = r.trend->next;
    t["relative_change"] = r.trend->relative_change();
    t["growth"] = r.trend->growth();
    d["trend"] = t;
  } else {
    d["trend"] = py::none();
  }
  return d;
}

RefineMode refine_from(const std::string& s) {
  if (s == "none") return RefineMode::none;
  if (s == "refine") return RefineMode::refine;
  if (s == "widen") return RefineMode::widen;
  throw PreconditionError("refine must be none, refine or widen");
}

py::object parse_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

}  // namespace

PYBIND11_MODULE(_weightlab, m) {
  m.doc() = "growth-function weights, maximal operators and pseudo-differential inequalities";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<GridSpec>(m, "Grid")
      .def(py::init([](int n, double L, std::size_t N) { return make_grid(n, L, N); }), py::arg("n"), py::arg("L"),
           py::arg("N"))
      .def_property_readonly("n", &GridSpec::dim)
      .def_property_readonly("L", &GridSpec::half_width)
      .def_property_readonly("N", &GridSpec::points_per_axis)
      .def_property_readonly("h", &GridSpec::spacing)
      .def_property_readonly("size", &GridSpec::size)
      .def("coords", [](const GridSpec& g) {
        std::vector<double> c(g.points_per_axis());
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = g.coord(k);
        return RealArray(static_cast<py::ssize_t>(c.size()), c.data());
      }, "sample coordinates along one axis")
      .def("refined", &GridSpec::refined)
      .def("widened", &GridSpec::widened)
      .def("__repr__", [](const GridSpec& g) {
        return "Grid(n=" + std::to_string(g.dim()) + ", L=" + format_double(g.half_width()) +
               ", N=" + std::to_string(g.points_per_axis()) + ")";
      });

  m.def("phi", [](double alpha0, double t) { return phi_eval(GrowthFunction(alpha0), t); }, py::arg("alpha0"),
        py::arg("t"));

  m.def("validate_power_weight", [](int n, double p, double g1, double g2, double alpha0) {
    auto v = validate_power_weight(n, p, g1, g2, alpha0);
    py::dict d;
    d["accepted"] = v.accepted;
    d["gamma1_certified"] = v.gamma1_certified;
    d["reason"] = v.reason;
    return d;
  }, py::arg("n"), py::arg("p"), py::arg("gamma1"), py::arg("gamma2"), py::arg("alpha0"));

  m.def("power_weight", [](const GridSpec& g, double g1, double g2, double scale) {
    return real_out(g, Weight::power(g1, g2, scale).sample(g));
  }, py::arg("grid"), py::arg("gamma1"), py::arg("gamma2"), py::arg("scale") = 1.0);

  m.def("ap_phi_constant", [](const GridSpec& g, double g1, double g2, double p, double alpha0,
                              const std::string& family, const std::string& refine) {
    auto r = ap_phi_constant(Weight::power(g1, g2), g, p, GrowthFunction(alpha0), cube_family_from_string(family),
                             refine_from(refine));
    return ap_dict(r, g.dim());
  }, py::arg("grid"), py::arg("gamma1"), py::arg("gamma2"), py::arg("p"), py::arg("alpha0") = 1.0,
        py::arg("family") = "aligned", py::arg("refine") = "none");

  m.def("a1_phi_constant", [](const GridSpec& g, double g1, double g2, double alpha0, const std::string& family,
                              const std::string& refine) {
    auto r = a1_phi_constant(Weight::power(g1, g2), g, GrowthFunction(alpha0), cube_family_from_string(family),
                             refine_from(refine));
    return ap_dict(r, g.dim());
  }, py::arg("grid"), py::arg("gamma1"), py::arg("gamma2"), py::arg("alpha0") = 1.0, py::arg("family") = "aligned",
        py::arg("refine") = "none");

  m.def("maximal", [](const GridSpec& g, const ComplexArray& f, double alpha0, double eta, double delta,
                      const std::string& family, bool sharp) {
    MaximalParams params{eta, delta, cube_family_from_string(family), sharp};
    return real_out(g, maximal(to_sampled(g, f), GrowthFunction(alpha0), params).real());
  }, py::arg("grid"), py::arg("f"), py::arg("alpha0") = 1.0, py::arg("eta") = 0.0, py::arg("delta") = 1.0,
        py::arg("family") = "aligned", py::arg("sharp") = false);

  m.def("orlicz_maximal", [](const GridSpec& g, const ComplexArray& f, double alpha0, double eta,
                             const std::string& family) {
    return real_out(g, orlicz_maximal(to_sampled(g, f), YoungFunction::llogl(), eta, GrowthFunction(alpha0),
                                      cube_family_from_string(family)).real());
  }, py::arg("grid"), py::arg("f"), py::arg("alpha0") = 1.0, py::arg("eta") = 0.0, py::arg("family") = "dyadic");

  m.def("luxemburg_llogl", [](const RealArray& a) {
    return luxemburg_from_samples(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
                                  YoungFunction::llogl());
  }, py::arg("abs_values"), "Luxemburg norm for B(t) = t(1 + log+ t) with uniform cells");

  m.def("cz_decompose", [](const GridSpec& g, const ComplexArray& f, double lambda, double eta, double alpha0) {
    auto r = cz_decompose(to_sampled(g, f), lambda, eta, GrowthFunction(alpha0));
    py::list cubes;
    for (std::size_t i = 0; i < r.cubes.size(); ++i) {
      auto d = cube_dict(r.cubes[i], g.dim());
      d["average"] = r.averages[i];
      cubes.append(d);
    }
    py::dict d;
    d["cubes"] = cubes;
    d["disjoint"] = r.disjoint;
    d["property_i"] = r.property_i;
    d["property_ii"] = r.property_ii_bound;
    d["property_ii_unscaled"] = r.property_ii_unscaled;
    d["property_iii"] = r.property_iii;
    d["property_iv"] = r.property_iv;
    d["omega_measure"] = r.omega_measure;
    d["l1_over_lambda"] = r.l1_over_lambda;
    d["root_selected"] = r.root_selected;
    return d;
  }, py::arg("grid"), py::arg("f"), py::arg("lam"), py::arg("eta") = 0.0, py::arg("alpha0") = 1.0);

  m.def("symbol_ids", &builtin_symbol_ids);

  m.def("apply_pdo", [](const GridSpec& g, const std::string& symbol, const ComplexArray& f, double parameter) {
    return complex_out(apply_pdo(make_symbol(symbol, parameter), to_sampled(g, f)));
  }, py::arg("grid"), py::arg("symbol"), py::arg("f"), py::arg("parameter") = 0.0);

  m.def("partition_check", &partition_check, py::arg("grid"), py::arg("J"));

  m.def("bmo_norm", [](const GridSpec& g, const std::string& b, double c, const std::string& family) {
    auto r = bmo_norm(BmoFunction::from_name(b, c), g, cube_family_from_string(family));
    py::dict d;
    d["norm"] = r.norm;
    d["witness"] = cube_dict(r.witness, g.dim());
    d["cubes"] = r.cubes;
    return d;
  }, py::arg("grid"), py::arg("b"), py::arg("c") = 0.0, py::arg("family") = "aligned");

  m.def("commutator", [](const GridSpec& g, const std::string& b, const std::string& symbol, const ComplexArray& f,
                         double c, double parameter) {
    return complex_out(commutator_apply(BmoFunction::from_name(b, c), make_symbol(symbol, parameter), to_sampled(g, f)));
  }, py::arg("grid"), py::arg("b"), py::arg("symbol"), py::arg("f"), py::arg("c") = 0.0, py::arg("parameter") = 0.0);

  m.def("llogl_functional", [](const GridSpec& g, const ComplexArray& f, double lambda, const RealArray& w) {
    return llogl_functional(to_sampled(g, f), lambda, to_vector(g, w));
  }, py::arg("grid"), py::arg("f"), py::arg("lam"), py::arg("w"));

  m.def("suite_names", &suite_names);

  m.def("suite_configs", [](const std::string& name) {
    py::list out;
    for (const auto& c : suite_configs(name)) out.append(parse_json(config_to_json_text(c)));
    return out;
  }, py::arg("name"), "configs of a named suite, as dicts");

  m.def("run_check", [](const std::string& config_json) {
    CheckReport r;
    {
      auto config = config_from_json_text(config_json);
      py::gil_scoped_release release;
      r = run_check(config);
    }
    return parse_json(report_to_json_text(r, -1));
  }, py::arg("config_json"), "run one check from its JSON config; returns the report as a dict");

  m.def("run_suite", [](const std::string& name, const std::string& out_root, std::optional<std::uint64_t> seed,
                        unsigned threads) {
    std::vector<CheckConfig> configs;
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json") {
      py::object text = py::module_::import("pathlib").attr("Path")(name).attr("read_text")();
      configs = configs_from_json_text(text.cast<std::string>());
    } else {
      configs = suite_configs(name);
    }
    RunOptions opt;
    opt.out_root = out_root;
    opt.seed = seed;
    opt.threads = threads;
    opt.label = name;
    RunResult res;
    {
      py::gil_scoped_release release;
      res = run_configs(configs, opt);
    }
    py::list reports;
    for (const auto& r : res.reports) reports.append(parse_json(report_to_json_text(r, -1)));
    py::dict d;
    d["all_pass"] = res.all_pass;
    d["run_id"] = res.run_id;
    d["run_dir"] = res.run_dir;
    d["csv"] = res.csv;
    d["seconds"] = res.seconds;
    d["reports"] = reports;
    return d;
  }, py::arg("name"), py::arg("out") = "", py::arg("seed") = py::none(), py::arg("threads") = 0u);

  m.def("set_threads", &set_thread_count, py::arg("threads"));
}
