#include "weightlab/suite.hpp"

#include <fftw3.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "weightlab/io.hpp"

namespace weightlab {

namespace {

constexpr const char* kVersion = "0.1.0";

CheckConfig base(const std::string& check, const std::string& variant, const std::string& id) {
  CheckConfig c;
  c.id = id;
  c.check = check;
  c.variant = variant;
  return c;
}

WeightSpec power(double g1, double g2) {
  WeightSpec w;
  w.gamma1 = g1;
  w.gamma2 = g2;
  return w;
}

std::string num_tag(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Strong-type weight grid: gamma2 in {-0.5, 0, 0.4 (p-1)}, gamma1 in {-1, 0, 1}.
std::vector<CheckConfig> strong_grid(const std::string& variant, const std::string& symbol, const std::string& prefix) {
  std::vector<CheckConfig> out;
  for (double p : {1.5, 2.0, 3.0}) {
    for (double g2 : {-0.5, 0.0, 0.4 * (p - 1.0)}) {
      for (double g1 : {-1.0, 0.0, 1.0}) {
        auto c = base("strong", variant,
                      prefix + "/p=" + num_tag(p) + "/g1=" + num_tag(g1) + "/g2=" + num_tag(g2));
        c.alpha0 = 2.0;
        c.symbol.id = symbol;
        c.exponents.p = p;
        c.weight = power(g1, g2);
        out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<CheckConfig> smoke() {
  auto id = base("identity", "", "smoke/identity");
  id.test_set.count = 50;
  auto part = base("partition", "", "smoke/partition");
  part.L = 8.0;
  part.N = 512;
  auto cz = base("cz", "", "smoke/cz");
  cz.L = 8.0;
  cz.N = 256;
  cz.test_set.count = 100;
  return {id, part, cz};
}

std::vector<CheckConfig> theorem1() {
  auto out = strong_grid("T", "var", "theorem1/var");
  auto riesz = base("strong", "T", "theorem1/riesz-plancherel");
  riesz.symbol.id = "riesz";
  out.push_back(riesz);
  auto ident = base("strong", "T", "theorem1/identity");
  ident.weight = power(0.0, -0.5);
  ident.exponents.p = 3.0;
  out.push_back(ident);
  return out;
}

std::vector<CheckConfig> theorem2() {
  auto zero = base("commutator-zero", "", "theorem2/commutator-zero");
  zero.symbol.id = "riesz";
  std::vector<CheckConfig> out{zero};
  for (auto& c : strong_grid("commutator", "riesz", "theorem2/sign-riesz")) out.push_back(c);
  auto ll = base("weak", "commutator_llogl", "theorem2/llogl-sign-riesz");
  ll.symbol.id = "riesz";
  ll.weight = power(-1.5, 0.0);
  ll.trend_limit = 0.25;
  out.push_back(ll);
  return out;
}

std::vector<CheckConfig> weak() {
  std::vector<CheckConfig> out;
  const std::vector<std::pair<std::string, std::string>> kinds{
      {"T", "weak/T-var"}, {"M_omega", "weak/M_omega"}, {"M_phi", "weak/M_phi"}, {"orlicz", "weak/orlicz"}};
  for (const auto& [variant, id] : kinds) {
    auto c = base("weak", variant, id);
    c.symbol.id = "var";
    c.weight = power(-1.5, 0.0);
    c.trend_limit = 0.25;
    if (variant == "orlicz") c.exponents.eta = 2.0;
    out.push_back(c);
  }
  return out;
}

std::vector<CheckConfig> goodlambda() {
  std::vector<CheckConfig> out;
  for (double gamma : {0.01, 0.05}) {
    auto c = base("goodlambda", "", "goodlambda/gamma=" + num_tag(gamma) + "/b=0.2");
    c.weight = power(-1.5, 0.0);
    c.gamma = gamma;
    c.b = 0.2;
    c.test_set.count = 20;
    c.test_set.kinds = {"gaussian", "spike", "trig", "bump"};
    c.refine = false;
    out.push_back(c);
  }
  return out;
}

std::vector<CheckConfig> pointwise() {
  auto l31 = base("pointwise", "lemma31", "pointwise/lemma31");
  auto e31 = base("pointwise", "eq31", "pointwise/eq31-var");
  e31.symbol.id = "var";
  e31.exponents.eta = 3.0;
  auto l41 = base("pointwise", "lemma41", "pointwise/lemma41");
  l41.exponents.eta = 2.0;
  l41.test_set.count = 20;
  auto l42 = base("pointwise", "lemma42", "pointwise/lemma42-sign-riesz");
  l42.symbol.id = "riesz";
  l42.exponents.delta = 0.25;
  l42.exponents.epsilon = 0.5;
  return {l31, e31, l41, l42};
}

std::vector<CheckConfig> maximal_checks() {
  auto p21 = base("maximal", "prop21", "maximal/prop21");
  auto l22 = base("maximal", "lemma22-lp", "maximal/lemma22-lp");
  l22.weight = power(-1.5, 0.0);
  auto l23 = base("maximal", "lemma23", "maximal/lemma23");
  l23.weight = power(-1.5, 0.0);
  auto p22 = base("maximal", "prop22", "maximal/prop22");
  p22.weight = power(-1.5, 0.0);
  auto p23 = base("maximal", "prop23a", "maximal/prop23a");
  p23.weight = power(-1.5, 0.0);
  return {p21, l22, l23, p22, p23};
}

std::vector<CheckConfig> oracles() {
  auto l32 = base("lemma32", "", "oracle/lemma32");
  l32.L = 2.0;
  l32.N = 4096;
  auto dual = base("duality", "", "oracle/duality");
  dual.L = 8.0;
  dual.N = 256;
  auto a1 = base("a1-example", "", "oracle/a1-example");
  a1.N = 512;
  auto kd = base("kernel-decay", "", "oracle/kernel-decay");
  kd.L = 8.0;
  kd.N = 512;
  auto lux = base("luxemburg", "", "oracle/luxemburg");
  lux.L = 8.0;
  lux.N = 256;
  auto sc = base("symbol-class", "", "oracle/symbol-class");
  sc.L = 8.0;
  sc.N = 512;
  return {l32, dual, a1, kd, lux, sc};
}

std::vector<CheckConfig> two_d() {
  auto s = base("strong", "T", "2d/strong-var");
  s.n = 2;
  s.L = 4.0;
  s.N = 64;
  s.symbol.id = "var";
  s.weight = power(-1.0, 0.0);
  auto m = base("weak", "M_phi", "2d/weak-M_phi");
  m.n = 2;
  m.L = 4.0;
  m.N = 64;
  m.weight = power(-2.5, 0.0);
  m.trend_limit = 0.25;
  // single-cell spikes make the 2D distribution function too granular for a
  // 64-point lambda grid (the sup moves ~30% with the grid placement)
  m.test_set.kinds = {"gaussian", "trig", "bump"};
  return {s, m};
}

void append(std::vector<CheckConfig>& to, const std::vector<CheckConfig>& from) { to.insert(to.end(), from.begin(), from.end()); }

std::string utc_stamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

std::string slug(const std::string& s) {
  std::string out;
  for (char ch : s) out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-') ? ch : '_';
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

}  // namespace

std::vector<std::string> suite_names() { return {"smoke", "theorem1", "theorem2", "weak", "goodlambda", "pointwise", "full"}; }

std::vector<CheckConfig> suite_configs(const std::string& name) {
  if (name == "smoke") return smoke();
  if (name == "theorem1") return theorem1();
  if (name == "theorem2") return theorem2();
  if (name == "weak") return weak();
  if (name == "goodlambda") return goodlambda();
  if (name == "pointwise") return pointwise();
  if (name == "full") {
    std::vector<CheckConfig> all;
    for (const auto& s : {smoke(), theorem1(), theorem2(), weak(), goodlambda(), pointwise(), maximal_checks(),
                          oracles(), two_d()}) {
      append(all, s);
    }
    return all;
  }
  throw PreconditionError("unknown suite '" + name + "' (expected smoke, theorem1, theorem2, weak, goodlambda, pointwise or full)");
}

RunResult run_configs(const std::vector<CheckConfig>& input, const RunOptions& options) {
  using nlohmann::json;
  namespace fs = std::filesystem;
  if (options.threads > 0) set_thread_count(options.threads);
  std::vector<CheckConfig> configs = input;
  if (options.seed) {
    for (auto& c : configs) c.test_set.seed = *options.seed;
  }

  json snapshot = json::array();
  std::string canonical;
  for (const auto& c : configs) {
    const std::string text = config_to_json_text(c);
    canonical += text;
    canonical += '\n';
    snapshot.push_back(json::parse(text));
  }
  RunResult result;
  result.run_id = utc_stamp() + "-" + hex64(fnv1a(canonical)).substr(0, 12);
  result.csv = csv_header();

  const bool write = !options.out_root.empty();
  fs::path dir;
  json manifest{{"run_id", result.run_id},
                {"config_hash", hex64(fnv1a(canonical))},
                {"suite", options.label},
                {"configs", snapshot},
                {"versions",
                 {{"weightlab", kVersion}, {"fftw", std::string(fftw_version)}, {"compiler", std::string(__VERSION__)}, {"cxx", __cplusplus}}},
                {"threads", thread_count()},
                {"artifacts", {{"csv", "results.csv"}, {"reports", json::array()}, {"plots", json::array()}}},
                {"checks", json::array()}};
  auto flush_manifest = [&] {
    if (write) write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  };
  if (write) {
    dir = fs::path(options.out_root) / result.run_id;
    fs::create_directories(dir / "reports");
    fs::create_directories(dir / "plots");
    result.run_dir = dir.string();
    flush_manifest();
  }

  const auto t_start = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < configs.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckReport report;
    try {
      report = run_check(configs[k]);
    } catch (const std::exception& e) {
      manifest["status"] = "aborted";
      manifest["error"] = {{"check", configs[k].key()}, {"message", e.what()}};
      if (write) write_file(dir / "results.csv", result.csv);
      flush_manifest();
      throw;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.csv += csv_rows(report);
    result.all_pass = result.all_pass && report.pass;
    if (write) {
      char prefix[24];
      std::snprintf(prefix, sizeof prefix, "%03zu_", k);
      const std::string stem = prefix + slug(report.id);
      write_file(dir / "reports" / (stem + ".json"), report_to_json_text(report) + "\n");
      manifest["artifacts"]["reports"].push_back("reports/" + stem + ".json");
      for (std::size_t p = 0; p < report.plots.size(); ++p) {
        const auto& plot = report.plots[p];
        std::string text = "# " + plot.name + "\n" + plot.x_label + "," + plot.y_label + "\n";
        for (const auto& pt : plot.points) text += format_double(pt[0]) + "," + format_double(pt[1]) + "\n";
        const std::string name = "plots/" + stem + "__" + std::to_string(p) + ".csv";
        write_file(dir / name, text);
        manifest["artifacts"]["plots"].push_back(name);
      }
      write_file(dir / "results.csv", result.csv);
    }
    manifest["checks"].push_back({{"id", report.id}, {"pass", report.pass}, {"seconds", seconds}});
    flush_manifest();
    if (options.on_report) options.on_report(report, seconds);
    result.reports.push_back(std::move(report));
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  manifest["status"] = result.all_pass ? "pass" : "fail";
  manifest["seconds"] = result.seconds;
  flush_manifest();
  return result;
}

}  // namespace weightlab
