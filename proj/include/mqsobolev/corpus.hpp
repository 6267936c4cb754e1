// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "mqsobolev/error.hpp"
#include "mqsobolev/grid.hpp"

namespace mqs {

enum class FunctionKind {
  polynomial,     // params: c0, c1, ... (1D profile sum c_k x^k)
  holder_cusp,    // params: alpha in (0, 1]; |x|^alpha with the Euclidean norm in 2D
  weierstrass,    // params: a, b, K; sum_{k<K} a^k cos(b^k pi x)
  sin_composite,  // params: w; sin(w x)
  indicator,      // params: lo, hi (1D) or lo0, hi0, lo1, hi1 (2D box), closed
  exponential,    // params: k; exp(k x)
  custom_table,   // params: the sampled values themselves
};

/// Analytic test function. The 1D profile p extends to the plane as
/// p(x) + p(y) for polynomial and Weierstrass, as p(x) p(y) for sine and
/// exponential, radially for the cusp.
class TestFunction {
 public:
  static TestFunction polynomial(std::vector<double> coeffs);
  static TestFunction holder_cusp(double alpha);
  static TestFunction weierstrass(double a = 0.5, double b = 3.0, int terms = 30);
  static TestFunction sine(double frequency);
  static TestFunction indicator(std::vector<double> box);
  static TestFunction exponential(double rate);
  static TestFunction table(std::vector<double> values);

  FunctionKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  std::string name() const;

  /// True when derivatives of every order are available analytically.
  bool differentiable() const {
    return kind_ == FunctionKind::polynomial || kind_ == FunctionKind::sin_composite ||
           kind_ == FunctionKind::exponential;
  }
  /// True for the corpus entries that are C^1 (the smooth corpus).
  bool smooth() const { return differentiable(); }

  template <class Real>
  Real eval(Real x) const;
  /// order-th derivative of the 1D profile.
  template <class Real>
  Real derivative(Real x, int order) const;

  /// Value at a point of R^dim.
  double eval(const Point& p, int dim) const;
  /// Partial derivative d^alpha f at a point of R^dim (alpha[1] ignored in 1D).
  double partial(const Point& p, int dim, std::array<int, 2> alpha) const;
  template <class Real>
  Real partial_t(const std::array<Real, 2>& p, int dim, std::array<int, 2> alpha) const;

 private:
  TestFunction(FunctionKind k, std::vector<double> p) : kind_(k), params_(std::move(p)) {}
  FunctionKind kind_;
  std::vector<double> params_;
};

/// values[j] = tf(grid point j). custom_table functions are copied verbatim.
GridFunction sample(const TestFunction& tf, const Grid& grid);

/// Parses the CLI function syntax: poly:c0,c1,..  cusp:alpha  weierstrass[:a,b,K]
/// sin[:w]  exp[:k]  indicator:lo,hi[,lo1,hi1].
TestFunction parse_function(const std::string& spec);

// ---------------------------------------------------------------------------

template <class Real>
Real TestFunction::eval(Real x) const {
  using std::abs;
  using std::acos;
  using std::cos;
  using std::exp;
  using std::pow;
  using std::sin;
  switch (kind_) {
    case FunctionKind::polynomial: {
      Real acc(0);
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) acc = acc * x + Real(*it);
      return acc;
    }
    case FunctionKind::holder_cusp:
      return abs(x) == Real(0) ? Real(0) : Real(pow(abs(x), Real(params_[0])));
    case FunctionKind::weierstrass: {
      const Real pi = acos(Real(-1));
      Real acc(0), ak(1), bk(1);
      const int terms = static_cast<int>(params_[2]);
      for (int k = 0; k < terms; ++k) {
        acc += ak * cos(bk * pi * x);
        ak *= Real(params_[0]);
        bk *= Real(params_[1]);
      }
      return acc;
    }
    case FunctionKind::sin_composite:
      return sin(Real(params_[0]) * x);
    case FunctionKind::indicator:
      return (x >= Real(params_[0]) && x <= Real(params_[1])) ? Real(1) : Real(0);
    case FunctionKind::exponential:
      return exp(Real(params_[0]) * x);
    case FunctionKind::custom_table:
      break;
  }
  fail(Errc::precondition, "table functions can only be sampled on their own grid");
}

template <class Real>
Real TestFunction::derivative(Real x, int order) const {
  using std::cos;
  using std::exp;
  using std::sin;
  require(order >= 0, Errc::invalid_argument, "derivative order must be nonnegative");
  if (order == 0) return eval(x);
  switch (kind_) {
    case FunctionKind::polynomial: {
      Real acc(0);
      const int n = static_cast<int>(params_.size());
      for (int k = n - 1; k >= order; --k) {
        double falling = 1.0;
        for (int j = 0; j < order; ++j) falling *= static_cast<double>(k - j);
        acc = acc * x + Real(params_[k] * falling);
      }
      return acc;
    }
    case FunctionKind::sin_composite: {
      const Real w(params_[0]);
      Real scale(1);
      for (int j = 0; j < order; ++j) scale *= w;
      switch (order % 4) {
        case 0: return scale * sin(w * x);
        case 1: return scale * cos(w * x);
        case 2: return -scale * sin(w * x);
        default: return -scale * cos(w * x);
      }
    }
    case FunctionKind::exponential: {
      const Real k(params_[0]);
      Real scale(1);
      for (int j = 0; j < order; ++j) scale *= k;
      return scale * exp(k * x);
    }
    default:
      break;
  }
  fail(Errc::precondition, name() + " has no derivative of order " + std::to_string(order));
}

template <class Real>
Real TestFunction::partial_t(const std::array<Real, 2>& p, int dim, std::array<int, 2> alpha) const {
  using std::pow;
  using std::sqrt;
  if (dim == 1) return derivative(p[0], alpha[0]);
  switch (kind_) {
    case FunctionKind::polynomial:
    case FunctionKind::weierstrass:
      if (alpha[0] > 0 && alpha[1] > 0) return Real(0);
      if (alpha[0] == 0 && alpha[1] == 0) return eval(p[0]) + eval(p[1]);
      return alpha[0] > 0 ? derivative(p[0], alpha[0]) : derivative(p[1], alpha[1]);
    case FunctionKind::sin_composite:
    case FunctionKind::exponential:
      return derivative(p[0], alpha[0]) * derivative(p[1], alpha[1]);
    case FunctionKind::holder_cusp:
      if (alpha[0] == 0 && alpha[1] == 0) {
        const Real r = sqrt(p[0] * p[0] + p[1] * p[1]);
        return r == Real(0) ? Real(0) : Real(pow(r, Real(params_[0])));
      }
      break;
    case FunctionKind::indicator:
      if (alpha[0] == 0 && alpha[1] == 0)
        return (p[0] >= Real(params_[0]) && p[0] <= Real(params_[1]) && p[1] >= Real(params_[2]) &&
                p[1] <= Real(params_[3]))
                   ? Real(1)
                   : Real(0);
      break;
    case FunctionKind::custom_table:
      break;
  }
  fail(Errc::precondition, name() + " has no such partial derivative");
}

}  // namespace mqs
