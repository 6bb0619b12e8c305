// Runs the full suite and prints one PASS/FAIL line per acceptance criterion.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "weightlab/suite.hpp"

using namespace weightlab;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> prefixes;  // report ids that must all pass
};

bool has_prefix(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  unsigned threads = std::max(2u, std::thread::hardware_concurrency());
  std::string out;
  double budget = 600.0;
  app.add_option("--threads", threads, "worker count for the determinism rerun");
  app.add_option("--out", out, "write run artifacts under this directory");
  app.add_option("--budget", budget, "wall-clock limit in seconds for one full-suite run");
  CLI11_PARSE(app, argc, argv);

  const auto configs = suite_configs("full");

  RunOptions base;
  base.out_root = out;
  base.label = "full";
  base.threads = 1;
  std::fprintf(stderr, "running full suite (%zu checks, 1 thread)\n", configs.size());
  RunResult first = run_configs(configs, base);

  RunOptions again = base;
  again.threads = threads;
  again.out_root.clear();
  std::fprintf(stderr, "rerunning with %u threads\n", threads);
  RunResult second = run_configs(configs, again);

  const std::vector<Criterion> criteria = {
      {1, "identity operator round trip", {"smoke/identity"}},
      {2, "partition of unity and LP reconstruction", {"smoke/partition"}},
      {3, "multiplier norm against Plancherel", {"theorem1/riesz-plancherel"}},
      {4, "kernel decay slopes", {"oracle/lemma32"}},
      {5, "A_p(phi) duality identity", {"oracle/duality"}},
      {6, "A_1(phi) example weight vs classical A_1", {"oracle/a1-example"}},
      {7, "CZ decomposition", {"smoke/cz"}},
      {8, "good-lambda delta1 > 0", {"goodlambda/"}},
      {9, "strong bound stability, var symbol", {"theorem1/var/"}},
      {10, "weak-type sups", {"weak/"}},
      {11, "LlogL sandwich pins", {"pointwise/lemma41"}},
      {12, "commutator suite", {"theorem2/"}},
      {13, "Luxemburg norm and generalized Holder", {"oracle/luxemburg"}},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    std::size_t matched = 0;
    std::vector<std::string> why;
    for (const auto& r : first.reports) {
      if (std::none_of(c.prefixes.begin(), c.prefixes.end(), [&](const auto& p) { return has_prefix(r.id, p); }))
        continue;
      ++matched;
      if (r.pass) continue;
      for (const auto& a : r.assertions)
        if (!a.ok) why.push_back(r.id + ": " + a.name + (a.detail.empty() ? "" : " " + a.detail));
    }
    const bool ok = matched > 0 && why.empty();
    if (matched == 0) why.push_back("no matching checks ran");
    std::printf("criterion %2d %s: %s (%zu checks)\n", c.number, ok ? "PASS" : "FAIL", c.title.c_str(), matched);
    for (const auto& w : why) std::printf("    %s\n", w.c_str());
    if (!ok) ++failed;
  }

  const bool fast = first.seconds <= budget;
  const bool same = first.csv == second.csv;
  const bool ok14 = fast && same;
  std::printf("criterion 14 %s: full suite %.1f s on 1 thread (limit %.0f s); CSV %s across 1 vs %u threads\n",
              ok14 ? "PASS" : "FAIL", first.seconds, budget, same ? "byte-identical" : "DIFFERS", threads);
  if (!ok14) ++failed;

  std::printf("%d of 14 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
