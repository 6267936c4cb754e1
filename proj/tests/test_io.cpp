// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mqsobolev/corpus.hpp"
#include "mqsobolev/error.hpp"
#include "mqsobolev/io.hpp"
#include "mqsobolev/meanquotient.hpp"
#include "support.hpp"

using namespace mqs;

TEST_CASE("number formatting round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(1.0 / 3) == "0.3333333333333333");
  CHECK(std::stod(format_double(std::exp(1.0))) == std::exp(1.0));
  CHECK(format_double(INFINITY) == "inf");
}

TEST_CASE("grid function CSV") {
  const Grid g = oracle::line(0, 1, 0.5);
  const GridFunction f(g, {1.0 / 3, 2, -0.25});
  const std::string text = to_csv(f);
  CHECK(text == "index,x,value\n0,0,0.3333333333333333\n1,0.5,2\n2,1,-0.25\n");
  CHECK(grid_function_from_csv(text, g).values == f.values);

  const Grid s = oracle::square(-1, 1, 0.25);
  const GridFunction w = sample(TestFunction::weierstrass(), s);
  const std::string t2 = to_csv(w);
  CHECK(t2.rfind("index,x,y,value\n", 0) == 0);
  CHECK(grid_function_from_csv(t2, s).values == w.values);
}

TEST_CASE("scalar field CSV carries the label") {
  const Grid g = oracle::line(-1, 1, 0.125);
  const auto mq = mq_field(sample(TestFunction::sine(1), g)).base;
  const std::string text = to_csv(mq);
  CHECK(text.rfind("# label: mq\nindex,x,value\n", 0) == 0);
  const ScalarField back = scalar_field_from_csv(text, g);
  CHECK(back.label == "mq");
  CHECK(back.values == mq.values);
}

TEST_CASE("jet CSV") {
  for (const Grid& g : {oracle::line(-1, 1, 0.25), oracle::square(-1, 1, 0.5)}) {
    const Jet F = Jet::from_function(TestFunction::exponential(1.5), g, 2);
    const std::string text = to_csv(F);
    const Jet back = jet_from_csv(text, g);
    CHECK(back.order() == 2);
    CHECK(back.components() == F.components());
  }
  CHECK(to_csv(Jet::from_function(TestFunction::polynomial({1, 1}), oracle::square(0, 1, 1), 1))
            .find("# component 0,1\n") != std::string::npos);
}

TEST_CASE("CSV readers reject malformed input") {
  const Grid g = oracle::line(0, 1, 0.5);
  CHECK_THROWS_AS(grid_function_from_csv("index,x,value\n0,0,1\n1,0.5,2\n", g), Error);
  CHECK_THROWS_AS(grid_function_from_csv("index,x,value\n0,0,1\n1,0.5,2\n2,1.5,3\n", g), Error);
  CHECK_THROWS_AS(grid_function_from_csv("index,x,value\n0,0,1\n1,0.5,zz\n2,1,3\n", g), Error);
  CHECK_THROWS_AS(grid_function_from_csv("index,x,value\n1,0,1\n0,0.5,2\n2,1,3\n", g), Error);
  CHECK_THROWS_AS(scalar_field_from_csv("index,x,value\n0,0,1\n1,0.5,2\n2,1,3\n", g), Error);
  CHECK_THROWS_AS(jet_from_csv("# component 1\nindex,x,value\n0,0,1\n1,0.5,2\n2,1,3\n", g), Error);
  try {
    grid_function_from_csv("", g);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io);
  }
}
