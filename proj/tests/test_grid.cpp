#include "doctest.h"

#include <cmath>

#include "weightlab/grid.hpp"

using namespace weightlab;

TEST_SUITE("grid") {

TEST_CASE("make_grid 1D samples are cell centres") {
  auto g = make_grid(1, 8, 16);
  CHECK(g.spacing() == 1.0);
  CHECK(g.size() == 16);
  CHECK(g.point(0)[0] == -7.5);
  CHECK(g.point(15)[0] == 7.5);
  CHECK(g.points_per_axis() * g.spacing() == 2 * g.half_width());
}

TEST_CASE("make_grid 2D has no zero coordinate") {
  auto g = make_grid(2, 4, 8);
  CHECK(g.spacing() == 1.0);
  REQUIRE(g.size() == 64);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto p = g.point(i);
    CHECK(p[0] != 0.0);
    CHECK(p[1] != 0.0);
  }
}

TEST_CASE("make_grid rejects bad sizes") {
  CHECK_THROWS_AS(make_grid(1, 8, 15), PreconditionError);
  CHECK_THROWS_AS(make_grid(1, 6, 16), PreconditionError);
  CHECK_THROWS_AS(make_grid(3, 8, 16), PreconditionError);
  CHECK_THROWS_AS(make_grid(1, 8, 4), PreconditionError);
}

TEST_CASE("integrate_cube on constants and odd functions") {
  auto g = make_grid(1, 8, 64);
  auto c = SampledFunction::constant(g, 3.0);
  Cube q{{1.0, 0.0}, 4.0};
  CHECK(std::abs(integrate_cube(c, q) - Complex(12.0)) < 1e-12);
  CHECK(std::abs(average_cube(c, q) - Complex(3.0)) < 1e-12);

  auto x = SampledFunction::from_function(g, [](const Vec& v) { return Complex(v[0]); });
  CHECK(std::abs(integrate_cube(x, Cube{{0.0, 0.0}, 4.0})) < 1e-12);
}

TEST_CASE("midpoint rule error for x^2 on [0,1)") {
  auto g = make_grid(1, 1, 16);  // h = 1/8
  auto f = SampledFunction::from_function(g, [](const Vec& v) { return Complex(v[0] * v[0]); });
  double got = integrate_cube(f, Cube{{0.5, 0.0}, 1.0}).real();
  double h = g.spacing();
  // midpoint error (b - a) h^2 f'' / 24 with f'' = 2
  CHECK(got == doctest::Approx(1.0 / 3.0 - h * h / 12.0).epsilon(1e-14));
}

TEST_CASE("phi averages") {
  auto g = make_grid(1, 4, 32);
  auto one = SampledFunction::constant(g, 1.0);
  Cube q{{0.5, 0.0}, 1.0};
  CHECK(phi_average_cube(one, q, GrowthFunction(1.0), 1.0) == doctest::Approx(0.5));
  CHECK(phi_average_cube(one, q, GrowthFunction(1.0), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("cube leaving the domain is an error") {
  auto g = make_grid(1, 4, 32);
  auto one = SampledFunction::constant(g, 1.0);
  CHECK_THROWS(integrate_cube(one, Cube{{3.5, 0.0}, 2.0}));
}

TEST_CASE("dyadic enumeration counts") {
  CHECK(enumerate_cubes(make_grid(1, 4, 8), CubeFamily::dyadic).size() == 15);
  CHECK(enumerate_cubes(make_grid(2, 4, 8), CubeFamily::dyadic).size() == 1 + 4 + 16 + 64);
}

TEST_CASE("aligned intervals containing a sample") {
  auto g = make_grid(1, 4, 8);
  CubeConstraints c;
  c.containing = g.point(3);
  auto boxes = enumerate_boxes(g, CubeFamily::aligned, c);
  // i <= 3 < j with 0 <= i, j <= 8
  CHECK(boxes.size() == 4 * 5);
  for (const auto& b : boxes) CHECK(b.contains_cell(3, 0, 1));
}

TEST_CASE("aligned family in 2D is refused") {
  CHECK_THROWS(enumerate_cubes(make_grid(2, 4, 8), CubeFamily::aligned));
}

TEST_CASE("shifted-dyadic level 2 in 2D stays in the domain") {
  auto g = make_grid(2, 4, 8);
  CubeConstraints c;
  c.level = 2;
  auto boxes = enumerate_boxes(g, CubeFamily::shifted_dyadic, c);
  CHECK(boxes.size() >= 16);
  CHECK(boxes.size() <= 48);
  for (const auto& b : boxes) CHECK(b.inside(g));
}

TEST_CASE("dyadic levels tile the domain") {
  auto g = make_grid(2, 4, 16);
  DyadicTree tree(g);
  for (int level = 0; level < tree.levels(); ++level) {
    std::vector<int> hits(g.size(), 0);
    for (std::size_t k = 0; k < tree.count(level); ++k) {
      auto b = tree.box(level, k);
      for (long i = b.lo[0]; i < b.lo[0] + b.len; ++i)
        for (long j = b.lo[1]; j < b.lo[1] + b.len; ++j) hits[g.index(i, j)]++;
    }
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("integral is additive over dyadic children bit for bit") {
  auto g = make_grid(2, 4, 16);
  auto f = SampledFunction::from_function(g, [](const Vec& v) { return Complex(std::sin(3 * v[0]) + v[1] * v[1]); });
  auto vals = f.real();
  DyadicTree tree(g);
  for (int level = 0; level + 1 < tree.levels(); ++level) {
    for (std::size_t k = 0; k < tree.count(level); ++k) {
      auto kids = tree.children(level, k);
      REQUIRE(kids.size() == 4);
      double pair0 = box_integral(g, vals, tree.box(level + 1, kids[0])) + box_integral(g, vals, tree.box(level + 1, kids[1]));
      double pair1 = box_integral(g, vals, tree.box(level + 1, kids[2])) + box_integral(g, vals, tree.box(level + 1, kids[3]));
      double parent = box_integral(g, vals, tree.box(level, k));
      // children paired as the header documents
      CHECK(parent == pair0 + pair1);
    }
  }
}

TEST_CASE("prefix sums agree with direct box integrals") {
  auto g = make_grid(1, 4, 64);
  auto f = SampledFunction::from_function(g, [](const Vec& v) { return Complex(std::exp(-v[0] * v[0])); });
  auto vals = f.real();
  PrefixSum ps(g, vals);
  for (long lo = 0; lo < 64; lo += 7)
    for (long len = 1; lo + len <= 64; len += 5) {
      CellBox b{{lo, 0}, len};
      CHECK(ps.sum(b) == doctest::Approx(box_integral(g, vals, b)).epsilon(1e-12));
    }
}

}  // TEST_SUITE
