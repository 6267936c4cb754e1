// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mqsobolev/corpus.hpp"
#include "mqsobolev/error.hpp"
#include "mqsobolev/maximal.hpp"
#include "support.hpp"

using namespace mqs;

namespace {

GridFunction random_function(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(g.size());
  for (double& x : v) x = n(rng);
  return GridFunction(g, v);
}

}  // namespace

TEST_CASE("centered and uncentered maximal match brute force on the line") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Grid g = oracle::line(-1, 1, 0.1);
    const auto f = random_function(g, seed);
    const auto mc = centered_maximal(f);
    const auto mu = uncentered_maximal(f);
    for (std::size_t x = 0; x < g.size(); ++x) {
      CHECK(mc.values[x] == doctest::Approx(oracle::centered_max(f, x)).epsilon(1e-13));
      CHECK(mu.values[x] == doctest::Approx(oracle::uncentered_max(f, x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("centered maximal matches brute force in the plane") {
  const Grid g = oracle::square(0, 1, 0.125);
  const auto f = random_function(g, 3);
  const auto mc = centered_maximal(f);
  for (std::size_t x = 0; x < g.size(); ++x)
    CHECK(mc.values[x] == doctest::Approx(oracle::centered_max(f, x)).epsilon(1e-13));
}

TEST_CASE("one-sided maximal") {
  const Grid g = oracle::line(0, 1, 0.01);
  const auto f = sample(TestFunction::polynomial({0, 1}), g);
  const auto right = one_sided_maximal(f, Side::right);
  const auto left = one_sided_maximal(f, Side::left);
  CHECK(right.values[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(left.values[0] == 0.0);
  const auto mc = centered_maximal(f);
  for (std::size_t x = 0; x < g.size(); ++x) CHECK(std::max(left.values[x], right.values[x]) >= mc.values[x]);

  // brute force on a rough function
  const Grid s = oracle::line(0, 1, 0.05);
  const auto r = random_function(s, 9);
  const auto rr = one_sided_maximal(r, Side::right);
  const auto rl = one_sided_maximal(r, Side::left);
  for (std::size_t x = 0; x < s.size(); ++x) {
    double br = 0, bl = 0, sr = 0, sl = 0;
    for (std::size_t k = 0; x + k < s.size(); ++k) {
      sr += std::abs(r.values[x + k]);
      br = std::max(br, sr / (k + 1));
    }
    for (std::size_t k = 0; k <= x; ++k) {
      sl += std::abs(r.values[x - k]);
      bl = std::max(bl, sl / (k + 1));
    }
    CHECK(rr.values[x] == doctest::Approx(br).epsilon(1e-13));
    CHECK(rl.values[x] == doctest::Approx(bl).epsilon(1e-13));
  }
}

TEST_CASE("maximal functions of constants and zero") {
  const Grid g = oracle::line(0, 2, 0.1);
  const auto c = GridFunction(g, std::vector<double>(g.size(), -3.0));
  for (double v : centered_maximal(c).values) CHECK(v == 3.0);
  for (double v : uncentered_maximal(c).values) CHECK(v == 3.0);
  const auto z = GridFunction(g, std::vector<double>(g.size(), 0.0));
  for (double v : centered_maximal(z).values) CHECK(v == 0.0);
  const Grid s = oracle::square(0, 1, 0.25);
  for (double v : centered_maximal(GridFunction(s, std::vector<double>(s.size(), 2.0))).values) CHECK(v == 2.0);
}

TEST_CASE("indicator examples") {
  const double h = 1.0 / 256;
  const Grid g = oracle::line(0, 4, h);
  const auto f = sample(TestFunction::indicator({0, 1}), g);
  const std::size_t x = g.index({512, 0});  // x = 2
  CHECK(centered_maximal(f).values[x] == doctest::Approx(0.25).epsilon(2 * h));
  CHECK(uncentered_maximal(f).values[x] == doctest::Approx(0.5).epsilon(2 * h));
}

TEST_CASE("uncentered is rejected in 2D") {
  const Grid s = oracle::square(0, 1, 0.25);
  const GridFunction f(s, std::vector<double>(s.size(), 1.0));
  CHECK_THROWS_AS(uncentered_maximal(f), Error);
  CHECK_THROWS_AS(one_sided_maximal(f, Side::left), Error);
  CHECK_THROWS_AS(sandwich_check(f), Error);
}

TEST_CASE("sandwich holds exactly over the corpus") {
  const Grid g = oracle::line(-1, 1, 1.0 / 128);
  for (const auto& tf : oracle::corpus_1d()) {
    const auto r = sandwich_check(sample(tf, g));
    INFO(tf.name());
    CHECK(r.pass);
    CHECK(r.worst_ratio <= 2.0);
  }
  const auto one = sandwich_check(GridFunction(g, std::vector<double>(g.size(), 1.0)));
  CHECK(one.worst_ratio == 1.0);  // M = M^ = 1
  // single-cell indicator, exhaustive
  const Grid s = oracle::line(0, 1, 0.1);
  for (std::size_t j = 0; j < s.size(); ++j) {
    std::vector<double> v(s.size(), 0.0);
    v[j] = 1.0;
    CHECK(sandwich_check(GridFunction(s, v)).pass);
  }
}

TEST_CASE("properties: homogeneity, sublinearity, majorization, cap monotonicity") {
  const Grid g = oracle::line(-1, 1, 0.05);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = random_function(g, seed);
    const auto h = random_function(g, seed + 100);
    // dyadic scale keeps the products exact
    std::vector<double> scaled(f.values), sum(f.values);
    for (std::size_t i = 0; i < g.size(); ++i) {
      scaled[i] *= -4.0;
      sum[i] += h.values[i];
    }
    const auto mf = centered_maximal(f), mh = centered_maximal(h);
    const auto ms = centered_maximal(GridFunction(g, scaled));
    const auto msum = centered_maximal(GridFunction(g, sum));
    const auto uf = uncentered_maximal(f), uh = uncentered_maximal(h);
    const auto usum = uncentered_maximal(GridFunction(g, sum));
    const auto capped = centered_maximal(f, 0.3);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(ms.values[i] == 4.0 * mf.values[i]);
      CHECK(msum.values[i] <= (mf.values[i] + mh.values[i]) * (1 + 1e-14));
      CHECK(usum.values[i] <= (uf.values[i] + uh.values[i]) * (1 + 1e-14));
      CHECK(mf.values[i] >= std::abs(f.values[i]));
      CHECK(uf.values[i] >= mf.values[i]);
      CHECK(capped.values[i] <= mf.values[i]);
    }
  }
}
