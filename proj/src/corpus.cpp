// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/corpus.hpp"

#include <cmath>
#include <sstream>

namespace mqs {

TestFunction TestFunction::polynomial(std::vector<double> coeffs) {
  require(!coeffs.empty(), Errc::invalid_argument, "polynomial needs at least one coefficient");
  for (double c : coeffs) require(std::isfinite(c), Errc::invalid_argument, "polynomial coefficients must be finite");
  return TestFunction(FunctionKind::polynomial, std::move(coeffs));
}

TestFunction TestFunction::holder_cusp(double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, Errc::invalid_argument, "holder_cusp: alpha must lie in (0, 1]");
  return TestFunction(FunctionKind::holder_cusp, {alpha});
}

TestFunction TestFunction::weierstrass(double a, double b, int terms) {
  require(a > 0.0 && a < 1.0, Errc::invalid_argument, "weierstrass: need 0 < a < 1");
  require(b >= 3.0 && b == std::floor(b) && std::fmod(b, 2.0) == 1.0, Errc::invalid_argument,
          "weierstrass: b must be an odd integer >= 3");
  require(a * b >= 1.0, Errc::invalid_argument, "weierstrass: need a*b >= 1");
  require(terms >= 1, Errc::invalid_argument, "weierstrass: need K >= 1 terms");
  return TestFunction(FunctionKind::weierstrass, {a, b, static_cast<double>(terms)});
}

TestFunction TestFunction::sine(double frequency) {
  require(std::isfinite(frequency), Errc::invalid_argument, "sine frequency must be finite");
  return TestFunction(FunctionKind::sin_composite, {frequency});
}

TestFunction TestFunction::indicator(std::vector<double> box) {
  require(box.size() == 2 || box.size() == 4, Errc::invalid_argument,
          "indicator needs lo,hi (1D) or lo0,hi0,lo1,hi1 (2D)");
  for (std::size_t i = 0; i < box.size(); i += 2)
    require(box[i] <= box[i + 1], Errc::invalid_argument, "indicator interval must have lo <= hi");
  return TestFunction(FunctionKind::indicator, std::move(box));
}

TestFunction TestFunction::exponential(double rate) {
  require(std::isfinite(rate), Errc::invalid_argument, "exponential rate must be finite");
  return TestFunction(FunctionKind::exponential, {rate});
}

TestFunction TestFunction::table(std::vector<double> values) {
  return TestFunction(FunctionKind::custom_table, std::move(values));
}

std::string TestFunction::name() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case FunctionKind::polynomial: os << "poly"; break;
    case FunctionKind::holder_cusp: os << "cusp"; break;
    case FunctionKind::weierstrass: os << "weierstrass"; break;
    case FunctionKind::sin_composite: os << "sin"; break;
    case FunctionKind::indicator: os << "indicator"; break;
    case FunctionKind::exponential: os << "exp"; break;
    case FunctionKind::custom_table: return "table[" + std::to_string(params_.size()) + "]";
  }
  for (std::size_t i = 0; i < params_.size(); ++i) os << (i == 0 ? ':' : ',') << params_[i];
  return os.str();
}

double TestFunction::eval(const Point& p, int dim) const { return partial(p, dim, {0, 0}); }

double TestFunction::partial(const Point& p, int dim, std::array<int, 2> alpha) const {
  if (dim == 1) {
    if (kind_ == FunctionKind::indicator)
      require(params_.size() == 2, Errc::invalid_argument, "1D indicator needs two bounds");
    return derivative(p[0], alpha[0]);
  }
  if (kind_ == FunctionKind::indicator)
    require(params_.size() == 4, Errc::invalid_argument, "2D indicator needs four bounds");
  return partial_t<double>({p[0], p[1]}, dim, alpha);
}

GridFunction sample(const TestFunction& tf, const Grid& grid) {
  if (tf.kind() == FunctionKind::custom_table) return GridFunction(grid, tf.params());
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = tf.eval(grid.point(j), grid.dim());
  return GridFunction(grid, std::move(v));
}

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used > 0 && used == item.size(), Errc::invalid_argument, "bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

TestFunction parse_function(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : parse_list(spec.substr(colon + 1));
  auto arity = [&](std::size_t lo, std::size_t hi) {
    require(args.size() >= lo && args.size() <= hi, Errc::invalid_argument,
            "wrong number of parameters in function spec '" + spec + "'");
  };
  if (head == "poly") {
    arity(1, 64);
    return TestFunction::polynomial(args);
  }
  if (head == "cusp" || head == "holder") {
    arity(0, 1);
    return TestFunction::holder_cusp(args.empty() ? 0.5 : args[0]);
  }
  if (head == "weierstrass") {
    if (args.empty()) return TestFunction::weierstrass();
    arity(3, 3);
    return TestFunction::weierstrass(args[0], args[1], static_cast<int>(args[2]));
  }
  if (head == "sin") {
    arity(0, 1);
    return TestFunction::sine(args.empty() ? 1.0 : args[0]);
  }
  if (head == "exp") {
    arity(0, 1);
    return TestFunction::exponential(args.empty() ? 1.0 : args[0]);
  }
  if (head == "indicator") {
    arity(2, 4);
    return TestFunction::indicator(args);
  }
  fail(Errc::invalid_argument, "unknown function kind '" + head + "'");
}

}  // namespace mqs
