#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "json.hpp"
#include "weightlab/io.hpp"
#include "weightlab/suite.hpp"
#include "weightlab/verify.hpp"

using namespace weightlab;
namespace fs = std::filesystem;

TEST_SUITE("verify") {

TEST_CASE("config JSON round trip") {
  const std::string text = R"({"check":"strong","variant":"T","grid":{"n":1,"L":8,"N":256},"alpha0":2,
    "weight":{"kind":"power","gamma1":-1,"gamma2":0.2},"symbol":"var","bmo":{"id":"sign"},
    "exponents":{"p":1.5},"test_set":{"count":3,"seed":5}})";
  auto c = config_from_json_text(text);
  CHECK(c.check == "strong");
  CHECK(c.N == 256);
  CHECK(c.weight.gamma1 == -1);
  CHECK(c.symbol.id == "var");
  CHECK(c.exponents.p == 1.5);
  CHECK(c.test_set.count == 3);
  auto again = config_from_json_text(config_to_json_text(c));
  CHECK(config_to_json_text(again) == config_to_json_text(c));
  CHECK(again.key() == c.key());
}

TEST_CASE("config JSON rejects unknown keys and accepts lists") {
  CHECK_THROWS(config_from_json_text(R"({"check":"strong","bogus":1})"));
  CHECK_THROWS(config_from_json_text(R"({"check":"strong","grid":{"n":1,"M":3}})"));
  CHECK(configs_from_json_text(R"([{"check":"identity"},{"check":"cz"}])").size() == 2);
  CHECK(configs_from_json_text(R"({"checks":[{"check":"identity"}]})").size() == 1);
}

TEST_CASE("number formatting and hashing") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(format_double(NAN) == "nan");
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(255) == "00000000000000ff");
}

TEST_CASE("lambda grid") {
  std::vector<double> v;
  for (int i = 1; i <= 1000; ++i) v.push_back(i);
  auto l = lambda_grid(v, {});
  REQUIRE(l.size() == 64);
  for (std::size_t i = 1; i < l.size(); ++i) {
    CHECK(l[i] > l[i - 1]);
    CHECK(l[i] / l[i - 1] == doctest::Approx(l[1] / l[0]));
  }
  std::vector<double> zeros(10, 0.0);
  CHECK(lambda_grid(zeros, {}).empty());
}

TEST_CASE("good-lambda parameters") {
  auto p = make_good_lambda(1, 1.0, 1.0, 0.05, 0.2);
  CHECK(p.b0 == doctest::Approx(1.0 / 3.0));
  CHECK(p.a == doctest::Approx(2 * 0.05 / (1 - 0.2 * 3)));
  CHECK_THROWS(make_good_lambda(1, 1.0, 1.0, 0.3, 0.2));
  CHECK_THROWS(make_good_lambda(1, 1.0, 1.0, 0.05, 0.5));
}

TEST_CASE("test function sets are seeded and finite") {
  auto g = make_grid(1, 16, 512);
  TestSetSpec spec;
  spec.count = 8;
  auto a = test_function_set(spec, g);
  auto b = test_function_set(spec, g);
  REQUIRE(a.size() == b.size());
  std::set<std::string> kinds;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    CHECK((a[i].f - b[i].f).max_abs() == 0.0);
    CHECK(std::isfinite(a[i].f.max_abs()));
    kinds.insert(a[i].label.substr(0, a[i].label.find('#')));
  }
  CHECK(kinds.count("spike") == 1);
  spec.seed = 8;
  auto c = test_function_set(spec, g);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= (a[i].f - c[i].f).max_abs() > 0;
  CHECK(differs);
}

TEST_CASE("weighted norms and level sets") {
  auto g = make_grid(1, 4, 64);
  std::vector<double> one(g.size(), 1.0), two(g.size(), 2.0);
  CHECK(weighted_norm(one, two, g, 2) == doctest::Approx(std::sqrt(16.0)));
  std::vector<double> ramp(g.size());
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
  CHECK(level_set_measure(ramp, one, g, 31.5) == doctest::Approx(32 * g.spacing()));
}

TEST_CASE("suites") {
  auto names = suite_names();
  for (const char* want : {"smoke", "theorem1", "theorem2", "weak", "goodlambda", "pointwise", "full"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
  CHECK(suite_configs("theorem1").size() >= 27);
  CHECK_THROWS(suite_configs("nope"));
  std::set<std::string> keys;
  for (const auto& c : suite_configs("full")) CHECK(keys.insert(c.key()).second);
}

TEST_CASE("pins") {
  CHECK_FALSE(find_pin("no/such/key").has_value());
  std::size_t pinned = 0;
  for (const auto& c : suite_configs("theorem1"))
    if (auto p = find_pin(c.key())) {
      ++pinned;
      CHECK(p->bound > 0);
    }
  CHECK(pinned > 0);
}

TEST_CASE("identity check and run artifacts") {
  CheckConfig c;
  c.check = "identity";
  c.L = 8;
  c.N = 256;
  c.test_set.count = 5;
  auto r = run_check(c);
  CHECK(r.pass);
  CHECK(r.constant <= 1e-9);

  auto root = fs::temp_directory_path() / "weightlab_unit_run";
  fs::remove_all(root);
  RunOptions opt;
  opt.out_root = root.string();
  opt.label = "unit";
  auto res = run_configs({c}, opt);
  CHECK(res.all_pass);
  REQUIRE(fs::exists(res.run_dir));
  CHECK(fs::exists(fs::path(res.run_dir) / "manifest.json"));
  CHECK(fs::exists(fs::path(res.run_dir) / "results.csv"));
  std::ifstream in(fs::path(res.run_dir) / "manifest.json");
  auto manifest = nlohmann::json::parse(in);
  CHECK(manifest.contains("status"));
  CHECK(res.csv.rfind(csv_header(), 0) == 0);
  fs::remove_all(root);
}

TEST_CASE("unknown check name is an error") {
  CheckConfig c;
  c.check = "nonsense";
  CHECK_THROWS(run_check(c));
}

}  // TEST_SUITE
