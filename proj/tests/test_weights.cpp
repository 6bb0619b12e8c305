#include "doctest.h"

#include <cmath>
#include <random>

#include "weightlab/weights.hpp"

using namespace weightlab;

TEST_SUITE("weights") {

TEST_CASE("phi values") {
  CHECK(phi_eval(GrowthFunction(1), 0) == 1.0);
  CHECK(phi_eval(GrowthFunction(1), 1) == 2.0);
  CHECK(phi_eval(GrowthFunction(2), 3) == 16.0);
  CHECK_THROWS_AS(phi_eval(GrowthFunction(1), -0.5), PreconditionError);
}

TEST_CASE("power weight validation") {
  CHECK_FALSE(validate_power_weight(1, 2, 0, -1, 1).accepted);
  CHECK(validate_power_weight(1, 2, 0, 0, 1).accepted);
  auto v = validate_power_weight(1, 2, -3, 0.5, 4);
  CHECK(v.accepted);
  CHECK(v.gamma1_certified);
  auto outside = validate_power_weight(1, 2, 3, 0.0, 1);
  CHECK(outside.accepted);
  CHECK_FALSE(outside.gamma1_certified);
  CHECK_FALSE(validate_power_weight(1, 2, 0, 1.0, 1).accepted);
}

TEST_CASE("dual weights") {
  Vec x{2.5, 0};
  CHECK(dual_weight(Weight::constant(1), 2)(x, 1) == doctest::Approx(1));
  CHECK(dual_weight(Weight::power(0, 1), 2)(x, 1) == doctest::Approx(1 / 2.5));
  CHECK(dual_weight(Weight::power(0, 2), 3)(x, 1) == doctest::Approx(1 / 2.5));
}

TEST_CASE("large exponents evaluate through logarithms") {
  auto w = Weight::power(-40, 0);
  double v = w(Vec{1e3, 0}, 1);
  CHECK(std::isfinite(v));
  CHECK(v > 0);
  CHECK(std::log(v) == doctest::Approx(-40 * std::log1p(1e3)));
}

TEST_CASE("constant weight Ap(phi) constant sits at the smallest cube") {
  auto g = make_grid(1, 4, 64);
  GrowthFunction gf(1.0);
  for (double p : {1.5, 2.0, 3.0}) {
    auto r = ap_phi_constant(Weight::constant(1), g, p, gf, CubeFamily::aligned);
    CHECK(r.constant == doctest::Approx(std::pow(1 + g.spacing(), -p)));
    CHECK(r.witness.side == doctest::Approx(g.spacing()));
  }
  auto classical = ap_phi_constant(Weight::constant(1), g, 2, GrowthFunction(0.0), CubeFamily::aligned);
  CHECK(classical.constant == doctest::Approx(1.0));
}

TEST_CASE("Ap constant dominates every single cube factor") {
  auto g = make_grid(1, 8, 64);
  GrowthFunction gf(1.0);
  auto w = Weight::power(-1.5, 0);
  auto r = ap_phi_constant(w, g, 2, gf, CubeFamily::aligned);
  CHECK(std::isfinite(r.constant));
  for (const auto& q : enumerate_cubes(g, CubeFamily::dyadic))
    CHECK(ap_phi_factor(w, g, 2, gf, q) <= r.constant * (1 + 1e-12));
}

TEST_CASE("duality identity per cube and for the sup") {
  auto g = make_grid(1, 8, 128);
  GrowthFunction gf(1.0);
  auto w = Weight::power(-0.5, 0.3);
  for (double p : {1.5, 3.0}) {
    double pp = p / (p - 1);
    auto a = ap_phi_constant(w, g, p, gf, CubeFamily::aligned);
    auto b = ap_phi_constant(dual_weight(w, p), g, pp, gf, CubeFamily::aligned);
    CHECK(b.constant == doctest::Approx(std::pow(a.constant, pp - 1)).epsilon(1e-10));
  }
}

TEST_CASE("Ap factor decreases in p on every cube") {
  auto g = make_grid(1, 8, 64);
  GrowthFunction gf(1.0);
  auto w = Weight::power(1.0, -0.4);
  for (const auto& q : enumerate_cubes(g, CubeFamily::dyadic)) {
    double f2 = ap_phi_factor(w, g, 2, gf, q);
    double f3 = ap_phi_factor(w, g, 3, gf, q);
    CHECK(f3 <= f2 * (1 + 1e-12));
  }
}

TEST_CASE("interpolation of weights obeys Holder per cube") {
  auto g = make_grid(1, 8, 64);
  GrowthFunction gf(1.0);
  auto w1 = Weight::power(-1.0, 0.5);
  auto w2 = Weight::power(0.7, -0.3);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  auto cubes = enumerate_cubes(g, CubeFamily::dyadic);
  for (int t = 0; t < 20; ++t) {
    double a = u(rng);
    auto mix = Weight::product(w1, w2, a);
    for (const auto& q : cubes) {
      double lhs = ap_phi_factor(mix, g, 2, gf, q);
      double rhs = std::pow(ap_phi_factor(w1, g, 2, gf, q), a) * std::pow(ap_phi_factor(w2, g, 2, gf, q), 1 - a);
      CHECK(lhs <= rhs * (1 + 1e-12));
    }
  }
}

TEST_CASE("A1(phi) of constants and of the decaying example") {
  auto g = make_grid(1, 8, 128);
  GrowthFunction gf(1.0);
  CHECK(a1_phi_constant(Weight::constant(1), g, gf, CubeFamily::aligned).constant <= 1.0 + 1e-12);
  auto w = Weight::power(-1.5, 0);
  auto r = a1_phi_constant(w, g, gf, CubeFamily::aligned, RefineMode::widen);
  REQUIRE(r.trend.has_value());
  CHECK(std::isfinite(r.constant));
  CHECK(r.trend->relative_change() < 0.1);
  auto classical = a1_phi_constant(w, g, GrowthFunction(0.0), CubeFamily::aligned, RefineMode::widen);
  CHECK(classical.trend->growth() > 1.2);
}

TEST_CASE("weight measure") {
  auto g = make_grid(1, 8, 64);
  auto one = Weight::constant(1).sample(g);
  auto two = Weight::constant(2).sample(g);
  Cube q{{0.0, 0}, 4.0};
  CHECK(weight_measure(one, g, q) == doctest::Approx(4));
  auto box = to_cells(g, q);
  std::vector<std::size_t> left, right;
  for (long i = box.lo[0]; i < box.lo[0] + box.len; ++i)
    (i < box.lo[0] + box.len / 2 ? left : right).push_back(static_cast<std::size_t>(i));
  CHECK(weight_measure(two, g, left) == doctest::Approx(4));
  std::vector<std::size_t> empty;
  CHECK(weight_measure(two, g, empty) == 0.0);
  // additivity over disjoint sets
  CHECK(weight_measure(two, g, left) + weight_measure(two, g, right) == doctest::Approx(weight_measure(two, g, q)));

  // (1+|x|)^{-2} on [0, L): 1 - 1/(1+L)
  auto w = Weight::power(-2, 0).sample(g);
  double got = weight_measure(w, g, Cube{{4.0, 0}, 8.0});
  CHECK(std::abs(got - (1 - 1.0 / 9.0)) <= 2 * g.spacing());
}

TEST_CASE("5Q average comparison ratio") {
  auto g = make_grid(1, 16, 256);
  GrowthFunction gf(1.0);
  Cube q{{0.5, 0}, 1.0};
  auto zero = SampledFunction::constant(g, 0.0);
  CHECK(check_lemma21_iv(Weight::constant(1), 2, zero, q, gf).vacuous);

  auto chi = SampledFunction::from_function(g, [&](const Vec& x) { return Complex(q.contains(x, 1) ? 1.0 : 0.0); });
  auto r = check_lemma21_iv(Weight::constant(1), 2, chi, q, gf);
  CHECK(r.lhs == doctest::Approx(0.5));
  CHECK(r.rhs == doctest::Approx(std::sqrt(1.0 / 5.0)));

  CHECK_THROWS(check_lemma21_iv(Weight::constant(1), 2, chi, Cube{{14, 0}, 4.0}, gf));
}

TEST_CASE("reverse Holder and measure comparison for constant weight") {
  auto g = make_grid(1, 4, 64);
  auto fam = small_cube_family(g);
  REQUIRE(!fam.empty());
  for (const auto& q : fam) CHECK(q.side < 1.0);
  for (double d : {0.25, 0.5, 1.0})
    CHECK(reverse_holder_check(Weight::constant(1), g, d, fam).constant == doctest::Approx(1.0));
  Cube q{{0.25, 0}, 0.5};
  auto subsets = comparison_subsets(g, q, 10, 3);
  auto r = measure_comparison_delta1(Weight::constant(1), g, q, subsets, 1.0);
  CHECK(r.feasible);
  CHECK(r.delta1 >= 1.0);
  CHECK_THROWS(reverse_holder_check(Weight::constant(1), g, 0.5, {Cube{{0, 0}, 2.0}}));
}

}  // TEST_SUITE
