// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mqsobolev/corpus.hpp"
#include "mqsobolev/error.hpp"
#include "mqsobolev/grid.hpp"
#include "mqsobolev/shells.hpp"
#include "support.hpp"

using namespace mqs;

TEST_CASE("grid construction") {
  const Grid g = Grid::make(1, {0}, {1}, 0.5);
  CHECK(g.count(0) == 3);
  CHECK(g.size() == 3);
  CHECK(g.coord(1, 0) == 0.5);
  CHECK(g.coord(2, 0) == 1.0);

  const Grid s = Grid::make(2, {0, 0}, {1, 1}, 1);
  CHECK(s.size() == 4);
  CHECK(s.point(3)[0] == 1.0);
  CHECK(s.point(3)[1] == 1.0);

  CHECK_THROWS_AS(Grid::make(1, {0}, {1}, 0), Error);
  CHECK_THROWS_AS(Grid::make(1, {0}, {0.1}, 0.5), Error);
  CHECK_THROWS_AS(Grid::make(3, {0, 0, 0}, {1, 1, 1}, 0.5), Error);
  CHECK_THROWS_AS(Grid::make(-1, {0}, {1}, 0.1), Error);
}

TEST_CASE("coordinates are origin + index * h bit for bit") {
  const double h = 0.1;
  const Grid g = Grid::make(2, {-0.3, 0.7}, {1.0, 0.5}, h);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Lattice l = g.lattice(i);
    CHECK(g.index(l) == i);
    CHECK(g.coord(i, 0) == -0.3 + static_cast<double>(l[0]) * h);
    CHECK(g.coord(i, 1) == 0.7 + static_cast<double>(l[1]) * h);
  }
}

TEST_CASE("sampling the corpus") {
  const Grid g = Grid::make(1, {0}, {1}, 0.5);
  const auto lin = sample(TestFunction::polynomial({0, 1}), g);
  CHECK(lin.values == std::vector<double>{0, 0.5, 1});
  CHECK(TestFunction::holder_cusp(0.5).eval(0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(TestFunction::weierstrass(0.5, 3, 30).eval(0.0) == doctest::Approx(2 * (1 - std::pow(0.5, 30))).epsilon(1e-15));

  CHECK_THROWS_AS(TestFunction::holder_cusp(0), Error);
  CHECK_THROWS_AS(TestFunction::holder_cusp(1.5), Error);
  CHECK_THROWS_AS(TestFunction::weierstrass(1.0, 3, 30), Error);
  CHECK_THROWS_AS(TestFunction::weierstrass(0.5, 4, 30), Error);
  CHECK_THROWS_AS(TestFunction::weierstrass(0.2, 3, 30), Error);  // ab < 1
  CHECK_THROWS_AS(TestFunction::weierstrass(0.5, 3, 0), Error);
  CHECK_THROWS_AS(GridFunction(g, {0, 1}), Error);
  CHECK_THROWS_AS(GridFunction(g, {0, NAN, 1}), Error);
  CHECK_THROWS_AS(ScalarField(g, {0, -1, 1}, "x"), Error);
}

TEST_CASE("function spec parsing") {
  CHECK(parse_function("poly:0,1").eval(2.0) == 2.0);
  CHECK(parse_function("sin:3").eval(0.5) == std::sin(1.5));
  CHECK(parse_function("cusp:0.5").eval(4.0) == 2.0);
  CHECK(parse_function("weierstrass").params() == std::vector<double>{0.5, 3, 30});
  CHECK(parse_function("indicator:0,1").eval(0.5) == 1.0);
  CHECK_THROWS_AS(parse_function("nonsense"), Error);
  CHECK_THROWS_AS(parse_function("poly:1,x"), Error);
}

TEST_CASE("ball_indices") {
  const Grid g = Grid::make(1, {0}, {1}, 0.5);
  CHECK(ball_indices(g, 1, 0.6) == std::vector<std::size_t>{0, 2});
  CHECK(ball_indices(g, 1, 0.4).empty());
  const Grid s = Grid::make(2, {0, 0}, {1, 1}, 1);
  CHECK(ball_indices(s, 0, 1.2) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("ball_indices agrees with a distance scan and is monotone in r") {
  const Grid g = oracle::square(-1, 1, 0.125);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  std::uniform_real_distribution<double> rad(0.01, 3.0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t x = pick(rng);
    const double r1 = rad(rng), r2 = r1 + rad(rng);
    std::vector<std::size_t> want;
    for (std::size_t z = 0; z < g.size(); ++z) {
      const double d = oracle::dist(g, x, z);
      if (d > 0 && d < r1) want.push_back(z);
    }
    const auto b1 = ball_indices(g, x, r1);
    const auto b2 = ball_indices(g, x, r2);
    CHECK(b1 == want);
    CHECK(std::includes(b2.begin(), b2.end(), b1.begin(), b1.end()));
  }
}

TEST_CASE("lens_indices") {
  const Grid g = Grid::make(1, {0}, {1}, 0.25);
  CHECK(lens_indices(g, 0, 4) == std::vector<std::size_t>{1, 2, 3});
  CHECK(lens_indices(g, 0, 1).empty());
  CHECK_THROWS_AS(lens_indices(g, 2, 2), Error);

  const Grid s = Grid::make(2, {0, 0}, {1, 1}, 0.5);
  const std::size_t x = s.index({0, 0}), y = s.index({2, 0});
  const auto lens = lens_indices(s, x, y);
  std::vector<std::size_t> want;
  for (std::size_t z = 0; z < s.size(); ++z)
    if (z != x && z != y && oracle::dist(s, z, x) < 1 && oracle::dist(s, z, y) < 1) want.push_back(z);
  CHECK(lens == want);
  CHECK(std::find(lens.begin(), lens.end(), s.index({1, 0})) != lens.end());
}

TEST_CASE("lens is symmetric and sits inside both balls") {
  const Grid g = oracle::square(0, 1, 0.1);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  for (int t = 0; t < 100; ++t) {
    const std::size_t x = pick(rng), y = pick(rng);
    if (x == y) continue;
    const auto l = lens_indices(g, x, y);
    CHECK(l == lens_indices(g, y, x));
    const double r = oracle::dist(g, x, y);
    for (std::size_t z : l) {
      CHECK(oracle::dist(g, x, z) <= r);
      CHECK(oracle::dist(g, y, z) <= r);
    }
  }
}

TEST_CASE("gradient") {
  const Grid g = Grid::make(1, {0}, {1}, 0.25);
  const auto lin = gradient(sample(TestFunction::polynomial({0, 1}), g));
  for (double v : lin.components[0]) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  const auto sq = gradient(sample(TestFunction::polynomial({0, 0, 1}), g));
  CHECK(sq.components[0][2] == 1.0);
  const auto cst = gradient(sample(TestFunction::polynomial({3}), g));
  for (double v : cst.components[0]) CHECK(v == 0.0);
  CHECK_THROWS_AS(gradient(GridFunction(Grid::make(1, {0}, {0.5}, 0.5), {1, 2})), Error);
}

TEST_CASE("gradient is exact on quadratics at interior points (2D)") {
  const Grid g = oracle::square(-1, 1, 0.125);
  const auto tf = TestFunction::polynomial({0.5, -0.25, 1.5});
  const auto grad = gradient(sample(tf, g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.margin(i) < 1) continue;
    const Point p = g.point(i);
    CHECK(grad.components[0][i] == doctest::Approx(tf.derivative(p[0], 1)).epsilon(1e-13));
    CHECK(grad.components[1][i] == doctest::Approx(tf.derivative(p[1], 1)).epsilon(1e-13));
  }
}

TEST_CASE("shell table orders offsets by exact squared length") {
  const Grid g = oracle::square(0, 1, 0.125);
  const ShellTable t(g);
  long prev = 0;
  std::size_t covered = 0;
  for (const auto& s : t.shells()) {
    CHECK(s.n2 > prev);
    prev = s.n2;
    covered += s.end - s.begin;
    for (auto k = s.begin; k < s.end; ++k) {
      const auto& o = t.offsets()[k];
      CHECK(o[0] * o[0] + o[1] * o[1] == s.n2);
    }
  }
  CHECK(covered == t.offsets().size());
  CHECK(t.ball_size(2) == 4);   // the four axis neighbours
  CHECK(t.ball_size(3) == 8);
}
