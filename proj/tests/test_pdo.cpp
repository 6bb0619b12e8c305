#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "weightlab/pdo.hpp"

using namespace weightlab;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_err(const SampledFunction& a, const SampledFunction& b) {
  return (a - b).max_abs() / std::max(b.max_abs(), 1e-300);
}

SampledFunction random_complex(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<Complex> v(g.size());
  for (auto& z : v) z = Complex(nd(rng), nd(rng));
  return SampledFunction(g, v);
}

SampledFunction mode(const GridSpec& g, long k) {
  const double xi = k / (2 * g.half_width());
  return SampledFunction::from_function(g, [&](const Vec& x) { return std::exp(Complex(0, 2 * kPi * x[0] * xi)); });
}

}  // namespace

TEST_SUITE("pdo") {

TEST_CASE("identity symbol reproduces the input") {
  for (int n : {1, 2}) {
    auto g = n == 1 ? make_grid(1, 8, 256) : make_grid(2, 4, 32);
    auto f = random_complex(g, 1);
    CHECK(rel_err(apply_pdo(make_symbol("identity"), f), f) <= 1e-9);
  }
}

TEST_CASE("shift symbol translates by a multiple of h") {
  auto g = make_grid(1, 8, 128);
  auto f = random_complex(g, 2);
  const long cells = 5;
  auto tf = apply_pdo(make_symbol("shift", cells * g.spacing()), f);
  // e^{2 pi i a xi}: Tf(x) = f(x + a) on the torus
  const std::size_t N = g.points_per_axis();
  for (std::size_t i = 0; i < N; ++i) CHECK(std::abs(tf[i] - f[(i + cells) % N]) < 1e-12);
}

TEST_CASE("Fourier modes are eigenfunctions of multipliers") {
  auto g = make_grid(1, 8, 128);
  auto riesz = make_symbol("riesz");
  for (long k : {1L, -7L, 30L}) {
    auto m = mode(g, k);
    const double xi = k / (2 * g.half_width());
    auto expect = m * Complex(xi / std::sqrt(1 + xi * xi));
    CHECK(rel_err(apply_pdo(riesz, m), expect) <= 1e-12);
  }
}

TEST_CASE("x-dependent symbol on a mode") {
  auto g = make_grid(1, 4, 64);
  auto var = make_symbol("var");
  REQUIRE(var.x_dependent);
  auto m = mode(g, 3);
  auto out = apply_pdo(var, m);
  const double xi = 3 / (2 * g.half_width());
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto x = g.point(i);
    Complex want = (1 + std::exp(-x[0] * x[0])) * xi / std::sqrt(1 + xi * xi) * m[i];
    CHECK(std::abs(out[i] - want) < 1e-12);
  }
}

TEST_CASE("linearity") {
  auto g = make_grid(1, 8, 128);
  auto f = random_complex(g, 3), h = random_complex(g, 4);
  Complex a(0.3, -1.2), b(2.0, 0.5);
  for (const char* id : {"riesz", "var"}) {
    auto s = make_symbol(id);
    auto lhs = apply_pdo(s, f * a + h * b);
    auto rhs = apply_pdo(s, f) * a + apply_pdo(s, h) * b;
    CHECK(rel_err(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("multiplier composition") {
  auto g = make_grid(1, 8, 256);
  auto f = random_complex(g, 5);
  auto s1 = make_symbol("riesz"), s2 = make_symbol("bessel", 1.0);
  Symbol prod{"prod", -1, 0, false, [&](const Vec& x, const Vec& xi) { return s1(x, xi) * s2(x, xi); }, {}};
  CHECK(rel_err(apply_pdo(s1, apply_pdo(s2, f)), apply_pdo(prod, f)) <= 1e-12);
}

TEST_CASE("Plancherel bound, attained by the argmax mode") {
  auto g = make_grid(1, 8, 128);
  auto s = make_symbol("riesz");
  double sup = multiplier_sup(s, g);
  auto f = random_complex(g, 6);
  auto l2 = [](const SampledFunction& u) {
    double t = 0;
    for (auto z : u.values()) t += std::norm(z);
    return std::sqrt(t);
  };
  CHECK(l2(apply_pdo(s, f)) <= sup * l2(f) * (1 + 1e-12));
  auto top = mode(g, -static_cast<long>(g.points_per_axis() / 2));
  CHECK(l2(apply_pdo(s, top)) == doctest::Approx(sup * l2(top)).epsilon(1e-12));
}

TEST_CASE("adjoint pairing") {
  auto g = make_grid(1, 4, 64);
  auto s = make_symbol("var");
  auto f = random_complex(g, 7), h = random_complex(g, 8);
  auto tf = apply_pdo(s, f), tsh = apply_pdo_adjoint(s, h);
  Complex a = 0, b = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    a += tf[i] * std::conj(h[i]);
    b += f[i] * std::conj(tsh[i]);
  }
  CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
}

TEST_CASE("cutoffs") {
  auto c = build_cutoffs();
  CHECK(c.eta0(0) == 1);
  CHECK(c.eta0(1) == 1);
  CHECK(c.eta0(2) == 0);
  CHECK(c.psi(0) == 0);
  CHECK(c.eta0(3) == 0);
  CHECK(c.psi(3 / 2.0) + c.psi(3 / 4.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double r = 0; r < 40; r += 0.37) {
    CHECK(c.eta0(r) >= 0);
    CHECK(c.eta0(r) <= 1);
    if (r < 0.5 || r > 2) CHECK(c.psi(r) == 0);
    // telescoping: eta0 + sum_{j<=J} psi(2^-j r) = eta0(2^-J r)
    double s = c.eta0(r);
    for (int j = 1; j <= 4; ++j) s += c.psi(std::ldexp(r, -j));
    CHECK(s == doctest::Approx(c.eta0(std::ldexp(r, -4))).epsilon(1e-14));
  }
}

TEST_CASE("partition residual") {
  auto g = make_grid(1, 8, 512);
  int J = static_cast<int>(std::ceil(std::log2(g.max_frequency()))) + 1;
  CHECK(partition_check(g, J) <= 1e-12);
  CHECK(partition_check(make_grid(2, 4, 64), 4) <= 1e-12);
}

TEST_CASE("Littlewood-Paley reconstruction") {
  auto g = make_grid(1, 8, 512);
  int J = static_cast<int>(std::ceil(std::log2(g.max_frequency()))) + 1;
  auto f = random_complex(g, 9);
  CHECK(lp_decompose(make_symbol("identity"), f, J).residual <= 1e-12);
  CHECK(lp_decompose(make_symbol("riesz"), f, J).residual <= 1e-10);
  CHECK_THROWS(lp_decompose(make_symbol("riesz"), f, 1));

  auto m = mode(g, 8);  // |xi| = 0.5
  auto lp = lp_decompose(make_symbol("riesz"), m, J);
  CHECK(rel_err(lp.smoothing, apply_pdo(make_symbol("riesz"), m)) <= 1e-12);
}

TEST_CASE("symbol class constants") {
  auto g = make_grid(1, 8, 256);
  auto id = symbol_class_check(make_symbol("identity"), g, 0, 0, 2);
  CHECK(id.at({0, 0}, {0, 0}).value == doctest::Approx(1.0));
  CHECK(id.at({0, 0}, {1, 0}).value < 1e-6);
  CHECK(id.in_class);
  auto up = make_symbol("bessel", -1.0);  // (1+xi^2)^{1/2}
  auto ok = symbol_class_check(up, g, 1, 0, 2);
  CHECK(ok.at({0, 0}, {0, 0}).value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::isfinite(ok.at({0, 0}, {1, 0}).value));
  CHECK(ok.in_class);
  auto bad = symbol_class_check(up, g, 0, 0, 2);
  CHECK_FALSE(bad.in_class);
  CHECK(bad.at({0, 0}, {0, 0}).value > bad.at({0, 0}, {0, 0}).half_band * 1.5);
}

TEST_CASE("riesz symbol is bounded by one") {
  auto g = make_grid(2, 4, 32);
  auto s = make_symbol("riesz");
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(s({0, 0}, g.frequency_point(k))) <= 1.0);
}

TEST_CASE("kernel decay") {
  auto g = make_grid(1, 16, 512);
  auto smooth = kernel_decay_check(make_symbol("smoothing"), g, 2, {{0, 0}});
  CHECK(smooth.stable);
  CHECK(smooth.z0_value <= smooth.z0_bound * (1 + 1e-12));
  auto band = kernel_decay_check(make_symbol("band", 4), g, 2, {{0, 0}});
  CHECK_FALSE(band.stable);
  CHECK_THROWS(kernel_decay_check(make_symbol("riesz"), g, 2, {{0, 0}}));
}

TEST_CASE("band kernel decay slopes") {
  auto g = make_grid(1, 2, 4096);
  auto r = lemma32_check(make_symbol("identity"), g, 3, 8, {0, 2});
  CHECK(r.pass);
  CHECK(r.fits[0].target == 1);
  CHECK(r.fits[1].target == -1);
  auto up = lemma32_check(make_symbol("bessel", -1.0), g, 3, 8, {3});
  CHECK(up.fits[0].target == -1);
  CHECK(up.pass);
  CHECK_THROWS(lemma32_check(make_symbol("identity"), g, 3, 12, {2}));
}

}  // TEST_SUITE
