#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "weightlab/maximal.hpp"

using namespace weightlab;

namespace {

SampledFunction random_fn(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(g.size());
  for (auto& x : v) x = u(rng);
  return SampledFunction::from_real(g, v);
}

// O(N^2) sup over aligned intervals containing each sample
std::vector<double> brute_aligned(const GridSpec& g, const std::vector<double>& a, double alpha0, double eta) {
  const long N = static_cast<long>(g.points_per_axis());
  const double h = g.spacing();
  std::vector<double> out(a.size(), 0.0);
  for (long i = 0; i < N; ++i)
    for (long j = i + 1; j <= N; ++j) {
      double s = 0;
      for (long k = i; k < j; ++k) s += a[k];
      double len = (j - i) * h;
      double avg = s * h / (len * std::pow(1 + len, alpha0 * eta));
      for (long k = i; k < j; ++k) out[k] = std::max(out[k], avg);
    }
  return out;
}

}  // namespace

TEST_SUITE("maximal") {

TEST_CASE("classical and phi maximal of constants") {
  auto g = make_grid(1, 4, 64);
  auto one = SampledFunction::constant(g, 1.0);
  auto m = maximal(one, GrowthFunction(1.0), {0.0, 1.0, CubeFamily::aligned, false});
  for (double v : m.real()) CHECK(v == doctest::Approx(1.0));
  auto mp = maximal(one, GrowthFunction(1.0), {1.0, 1.0, CubeFamily::aligned, false});
  for (double v : mp.real()) CHECK(v == doctest::Approx(1.0 / (1 + g.spacing())));
}

TEST_CASE("aligned prefix-sum maximal matches brute force") {
  auto g = make_grid(1, 2, 64);
  auto chi = SampledFunction::from_function(g, [](const Vec& x) { return Complex(x[0] >= 0 && x[0] < 1 ? 1.0 : 0.0); });
  for (double eta : {0.0, 1.0}) {
    auto fast = maximal_values(g, chi.abs(), GrowthFunction(1.0), eta, CubeFamily::aligned);
    auto slow = brute_aligned(g, chi.abs(), 1.0, eta);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
  }
  auto r = random_fn(g, 5);
  auto fast = maximal_values(g, r.abs(), GrowthFunction(2.0), 0.5, CubeFamily::aligned);
  auto slow = brute_aligned(g, r.abs(), 2.0, 0.5);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
}

TEST_CASE("2D aligned maximal is refused") {
  auto g = make_grid(2, 4, 16);
  CHECK_THROWS(maximal(SampledFunction::constant(g, 1.0), GrowthFunction(1.0), {0.0, 1.0, CubeFamily::aligned, false}));
}

TEST_CASE("pointwise sandwich and monotonicity") {
  auto g = make_grid(1, 4, 128);
  GrowthFunction gf(1.0);
  auto f = random_fn(g, 9);
  auto a = f.abs();
  auto M = maximal(f, gf, {0.0, 1.0, CubeFamily::aligned, false}).real();
  auto Mphi = maximal(f, gf, {1.0, 1.0, CubeFamily::aligned, false}).real();
  auto Mphi2 = maximal(f, gf, {2.0, 1.0, CubeFamily::aligned, false}).real();
  auto Md = maximal(f, gf, {1.0, 1.0, CubeFamily::dyadic, false}).real();
  auto Mhalf = maximal(f, gf, {1.0, 0.5, CubeFamily::aligned, false}).real();
  const double lower = 1.0 / (1 + g.spacing());
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(a[i] * lower <= Mphi[i] * (1 + 1e-12));
    CHECK(Mphi[i] <= M[i] * (1 + 1e-12));
    CHECK(Mphi2[i] <= Mphi[i] * (1 + 1e-12));
    CHECK(Md[i] <= Mphi[i] * (1 + 1e-12));
    CHECK(Mhalf[i] <= Mphi[i] * (1 + 1e-12));
  }
}

TEST_CASE("sharp maximal of a constant") {
  auto g = make_grid(1, 4, 64);
  for (double a0 : {0.5, 1.0, 2.0})
    for (double eta : {0.0, 1.0, 2.0}) {
      auto s = sharp_maximal(SampledFunction::constant(g, 3.0), eta, GrowthFunction(a0));
      for (double v : s.real()) CHECK(v == doctest::Approx(3.0 * std::pow(2.0, -a0 * eta)));
    }
  CHECK_THROWS(sharp_maximal(SampledFunction::constant(make_grid(1, 4, 8), 1.0), 1.0, GrowthFunction(1.0)));
}

TEST_CASE("sharp maximal bounded by oscillation plus average") {
  // brute force over the dyadic tree, both regimes
  auto g = make_grid(1, 4, 64);
  GrowthFunction gf(1.0);
  auto f = random_fn(g, 21);
  auto s = sharp_maximal(f, 1.0, gf).real();
  std::vector<double> osc(g.size(), 0), avg(g.size(), 0);
  for (const auto& q : enumerate_cubes(g, CubeFamily::dyadic)) {
    auto b = to_cells(g, q);
    double val = q.side < 1 ? mean_oscillation(f, q) : phi_average_cube(f, q, gf, 1.0);
    auto& tgt = q.side < 1 ? osc : avg;
    for (long i = b.lo[0]; i < b.lo[0] + b.len; ++i) tgt[i] = std::max(tgt[i], val);
  }
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(s[i] == doctest::Approx(osc[i] + avg[i]).epsilon(1e-12));
}

TEST_CASE("oscillation bridge inf_C <= f_Q form <= 2 inf_C") {
  auto g = make_grid(1, 4, 64);
  auto f = random_fn(g, 4);
  for (const auto& q : enumerate_cubes(g, CubeFamily::dyadic)) {
    double lo = min_mean_oscillation(f, q), mid = mean_oscillation(f, q);
    CHECK(lo <= mid * (1 + 1e-12) + 1e-15);
    CHECK(mid <= 2 * lo * (1 + 1e-12) + 1e-15);
  }
}

TEST_CASE("weighted 5Q maximal") {
  auto g = make_grid(1, 8, 64);
  auto one = SampledFunction::constant(g, 1.0);
  std::vector<double> w1(g.size(), 1.0), w2(g.size(), 2.0);
  auto a = weighted_maximal_5Q(one, w1);
  CHECK(a.cubes_excluded > 0);
  // samples with no admissible cube (5Q would leave the domain) stay 0
  auto av = a.values.real();
  for (std::size_t i = 0; i < av.size(); ++i) CHECK(av[i] == doctest::Approx(i >= 2 && i + 2 < av.size() ? 0.2 : 0.0));
  auto f = random_fn(g, 8);
  auto x = weighted_maximal_5Q(f, w1).values.real();
  auto y = weighted_maximal_5Q(f, w2).values.real();
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-13));
}

TEST_CASE("Young functions") {
  auto B = YoungFunction::llogl();
  CHECK(B(0) == 0);
  CHECK(B(1) == doctest::Approx(1));
  auto Bc = B.complement();
  CHECK(Bc(0) == 0);
  CHECK(Bc(1) == doctest::Approx(std::exp(1.0) - 1));
}

TEST_CASE("Luxemburg norm") {
  auto g = make_grid(1, 4, 64);
  auto B = YoungFunction::llogl();
  Cube q{{0.5, 0}, 1.0};
  for (double c : {0.1, 1.0, 10.0})
    CHECK(luxemburg_norm(SampledFunction::constant(g, c), B, q) == doctest::Approx(c).epsilon(1e-8));
  CHECK(luxemburg_norm(SampledFunction::constant(g, 0.0), B, q) == 0.0);

  // two levels: root of (B(c1/l) + B(c2/l))/2 = 1 by an independent secant solve
  double c1 = 0.5, c2 = 3.0;
  std::vector<double> vals;
  for (int i = 0; i < 8; ++i) vals.push_back(c1);
  for (int i = 0; i < 8; ++i) vals.push_back(c2);
  auto F = [&](double l) { return (B(c1 / l) + B(c2 / l)) / 2 - 1; };
  double x0 = 1.0, x1 = 3.0;
  for (int it = 0; it < 100 && std::abs(x1 - x0) > 1e-15; ++it) {
    double x2 = x1 - F(x1) * (x1 - x0) / (F(x1) - F(x0));
    x0 = x1;
    x1 = x2;
  }
  CHECK(luxemburg_from_samples(vals, B) == doctest::Approx(x1).epsilon(1e-7));

  auto f = random_fn(g, 3);
  double base = luxemburg_norm(f, B, q);
  CHECK(luxemburg_norm(f * Complex(-2.5), B, q) == doctest::Approx(2.5 * base).epsilon(1e-8));
}

TEST_CASE("generalized Holder with the exponential complement") {
  auto B = YoungFunction::llogl();
  auto Bc = B.complement();
  std::mt19937_64 rng(17);
  std::exponential_distribution<double> e(0.5);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> f(32), h(32);
    double prod = 0;
    for (int i = 0; i < 32; ++i) {
      f[i] = e(rng);
      h[i] = e(rng);
      prod += f[i] * h[i] / 32;
    }
    CHECK(prod <= luxemburg_from_samples(f, B) * luxemburg_from_samples(h, Bc) * (1 + 1e-9));
  }
}

TEST_CASE("Orlicz maximal of constants") {
  auto g = make_grid(1, 4, 32);
  auto c = SampledFunction::constant(g, 2.0);
  auto a = orlicz_maximal(c, YoungFunction::llogl(), 0.0, GrowthFunction(1.0), CubeFamily::dyadic).real();
  for (double v : a) CHECK(v == doctest::Approx(2.0).epsilon(1e-8));
  auto b = orlicz_maximal(c, YoungFunction::llogl(), 1.0, GrowthFunction(1.0), CubeFamily::dyadic).real();
  for (double v : b) CHECK(v == doctest::Approx(2.0 / (1 + g.spacing())).epsilon(1e-8));
}

TEST_CASE("Orlicz maximal matches a per-cube brute force") {
  auto g = make_grid(1, 4, 64);
  GrowthFunction gf(1.0);
  auto f = random_fn(g, 12);
  auto B = YoungFunction::llogl();
  auto fast = orlicz_maximal(f, B, 1.0, gf, CubeFamily::dyadic).real();
  std::vector<double> slow(g.size(), 0);
  for (const auto& q : enumerate_cubes(g, CubeFamily::dyadic)) {
    double v = luxemburg_norm(f, B, q) / gf.pow(q.side, 1.0);
    auto b = to_cells(g, q);
    for (long i = b.lo[0]; i < b.lo[0] + b.len; ++i) slow[i] = std::max(slow[i], v);
  }
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-9));
}

TEST_CASE("mollifier bound") {
  auto g = make_grid(1, 4, 1024);
  auto fam = MollifierFamily::make(1, {0.1, 0.25, 0.5});
  auto r = mollifier_bound_check(SampledFunction::constant(g, 1.0), fam, 1.0, GrowthFunction(1.0));
  for (double m : r.mass_by_scale) CHECK(m == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.ratio <= std::pow(2.0, 1.0) + 1e-9);
  CHECK_THROWS(mollifier_bound_check(SampledFunction::constant(g, 1.0), MollifierFamily::make(1, {g.spacing() / 2}),
                                     1.0, GrowthFunction(1.0)));
}

}  // TEST_SUITE

TEST_SUITE("cz") {

TEST_CASE("worked example on [-2,2)") {
  auto g = make_grid(1, 2, 256);
  auto chi = SampledFunction::from_function(g, [](const Vec& x) { return Complex(x[0] >= 0 && x[0] < 1 ? 1.0 : 0.0); });
  auto r = cz_decompose(chi, 0.3, 0.0, GrowthFunction(1.0));
  REQUIRE(r.cubes.size() == 1);
  CHECK(r.cubes[0].center[0] == doctest::Approx(1.0));
  CHECK(r.cubes[0].side == doctest::Approx(2.0));
  CHECK(r.averages[0] == doctest::Approx(0.5));
  CHECK(r.property_ii_unscaled);
  CHECK_FALSE(r.root_selected);
}

TEST_CASE("empty selections") {
  auto g = make_grid(1, 4, 64);
  CHECK(cz_decompose(SampledFunction::constant(g, 0.0), 1.0, 0.0, GrowthFunction(1.0)).cubes.empty());
  auto f = random_fn(g, 2);
  double top = f.max_abs();
  auto r = cz_decompose(f, top * 2, 1.0, GrowthFunction(1.0));
  CHECK(r.cubes.empty());
  CHECK(r.property_iii);
  CHECK(r.residual_max <= r.residual_bound);
  CHECK_THROWS_AS(cz_decompose(f, 0.0, 0.0, GrowthFunction(1.0)), PreconditionError);
}

TEST_CASE("selected cubes satisfy the stopping-time properties") {
  for (int n : {1, 2}) {
    auto g = n == 1 ? make_grid(1, 8, 256) : make_grid(2, 4, 32);
    for (std::uint64_t s = 0; s < 5; ++s) {
      auto f = random_fn(g, 100 + s);
      for (double eta : {0.0, 1.0}) {
        auto r = cz_decompose(f * Complex(3.0), 0.4, eta, GrowthFunction(1.0));
        CHECK(r.disjoint);
        CHECK(r.property_i);
        CHECK(r.property_ii_bound);
        CHECK(r.property_iv);
        CHECK(r.omega_measure <= r.l1_over_lambda * (1 + 1e-12));
      }
    }
  }
}

}  // TEST_SUITE
