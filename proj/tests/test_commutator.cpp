#include "doctest.h"

#include <cmath>

#include "weightlab/commutator.hpp"

using namespace weightlab;

TEST_SUITE("commutator") {

TEST_CASE("BMO norms") {
  auto g = make_grid(1, 8, 128);
  CHECK(bmo_norm(BmoFunction::constant(2.0), g, CubeFamily::aligned).norm == 0.0);
  auto s = bmo_norm(BmoFunction::sign(), g, CubeFamily::aligned);
  CHECK(s.norm == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.witness.center[0] == doctest::Approx(0.0));

  auto narrow = bmo_norm(BmoFunction::log_abs(), make_grid(1, 8, 256), CubeFamily::aligned).norm;
  auto wide = bmo_norm(BmoFunction::log_abs(), make_grid(1, 16, 512), CubeFamily::aligned).norm;
  CHECK(std::isfinite(narrow));
  CHECK(std::abs(wide - narrow) / narrow < 0.1);
}

TEST_CASE("commutators that vanish") {
  auto g = make_grid(1, 8, 256);
  auto f = SampledFunction::from_function(g, [](const Vec& x) { return Complex(std::exp(-x[0] * x[0])); });
  auto a = commutator_apply(BmoFunction::sign(), make_symbol("identity"), f);
  CHECK(a.max_abs() <= 1e-12 * f.max_abs());
  auto b = commutator_apply(BmoFunction::constant(3.0), make_symbol("riesz"), f);
  CHECK(b.max_abs() <= 1e-12 * f.max_abs());
}

TEST_CASE("sign-riesz commutator on a bump is nonzero") {
  auto g = make_grid(1, 8, 512);
  auto f = SampledFunction::from_function(g, [](const Vec& x) { return Complex(std::exp(-16 * (x[0] - 0.5) * (x[0] - 0.5))); });
  auto c = commutator_apply(BmoFunction::sign(), make_symbol("riesz"), f);
  CHECK(c.max_abs() > 1e-3);
  // shifting b by a constant does not change [b,T]
  auto d = commutator_apply(BmoFunction::sign().plus(5.0), make_symbol("riesz"), f);
  CHECK((c - d).max_abs() <= 1e-12 * (1 + c.max_abs()) * 10);
}

TEST_CASE("L log L functional") {
  auto g = make_grid(1, 4, 64);
  std::vector<double> w(g.size(), 1.0);
  CHECK(llogl_functional(SampledFunction::constant(g, 0.0), 1.0, w) == 0.0);
  auto small = SampledFunction::from_function(g, [](const Vec& x) { return Complex(0.5 * std::cos(x[0])); });
  double l1 = 0;
  for (double v : small.abs()) l1 += v * g.spacing();
  CHECK(llogl_functional(small, 1.0, w) == doctest::Approx(l1));
  const double lambda = 0.7;
  auto unit = SampledFunction::from_function(g, [&](const Vec& x) { return Complex(x[0] >= 0 && x[0] < 1 ? 2 * lambda : 0.0); });
  CHECK(llogl_functional(unit, lambda, w) == doctest::Approx(2 * (1 + std::log(2.0))));
  CHECK_THROWS_AS(llogl_functional(unit, 0.0, w), PreconditionError);
}

TEST_CASE("Phi Young function") {
  PhiYoung phi;
  CHECK(phi(0) == 0);
  CHECK(phi(1) == doctest::Approx(std::log(std::exp(1.0) + 1)));
  for (double t = 0; t < 10; t += 0.5) CHECK(phi(t + 0.5) > phi(t));
}

}  // TEST_SUITE
