// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mqsobolev/corpus.hpp"
#include "mqsobolev/error.hpp"
#include "mqsobolev/grid.hpp"
#include "mqsobolev/report.hpp"
#include "mqsobolev/sampling.hpp"

namespace mqs {

/// 113-bit binary float. Identity checks run in it so that cancellation in
/// the double-precision evaluation does not swamp the comparison.
using quad = boost::multiprecision::cpp_bin_float_quad;

/// Strictly increasing simple nodes x_0 < ... < x_n. Gaps below
/// 1e3 * eps * |x| are rejected: the difference quotients lose every digit there.
class InterpolationScheme {
 public:
  explicit InterpolationScheme(std::vector<double> nodes);
  static InterpolationScheme equidistant(double x, double h, int count);

  const std::vector<double>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  /// q_k(t) = prod_{i<k} (t - x_i).
  double q(std::size_t k, double t) const;

 private:
  std::vector<double> nodes_;
};

/// Triangular table entry(i, k) = f[x_i, ..., x_{i+k}] over distinct nodes
/// in any order.
template <class Real>
class DividedDifferenceTable {
 public:
  DividedDifferenceTable(std::vector<Real> nodes, const std::vector<Real>& values) : nodes_(std::move(nodes)) {
    const std::size_t n = nodes_.size();
    require(n >= 1, Errc::invalid_argument, "a scheme needs at least one node");
    require(values.size() == n, Errc::size_mismatch, "one value per node is required");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        require(nodes_[i] != nodes_[j], Errc::invalid_argument, "nodes must be distinct");
    cols_.resize(n);
    cols_[0] = values;
    for (std::size_t k = 1; k < n; ++k) {
      cols_[k].resize(n - k);
      for (std::size_t i = 0; i + k < n; ++i)
        cols_[k][i] = (cols_[k - 1][i + 1] - cols_[k - 1][i]) / (nodes_[i + k] - nodes_[i]);
    }
  }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Real>& nodes() const { return nodes_; }
  const Real& entry(std::size_t i, std::size_t k) const { return cols_.at(k).at(i); }
  /// Newton coefficients c_i = f[x_0, ..., x_i].
  std::vector<Real> coefficients() const {
    std::vector<Real> c;
    for (std::size_t k = 0; k < nodes_.size(); ++k) c.push_back(cols_[k][0]);
    return c;
  }
  /// Horner evaluation of sum_i c_i q_i(t).
  Real eval(const Real& t) const {
    const std::size_t n = nodes_.size();
    Real acc = cols_[n - 1][0];
    for (std::size_t k = n - 1; k-- > 0;) acc = acc * (t - nodes_[k]) + cols_[k][0];
    return acc;
  }

 private:
  std::vector<Real> nodes_;
  std::vector<std::vector<Real>> cols_;
};

DividedDifferenceTable<double> divided_differences(const InterpolationScheme& scheme,
                                                   const std::vector<double>& values);
double newton_eval(const DividedDifferenceTable<double>& table, double t);

struct RemainderResult {
  double value = 0.0;           // f(t) - p_n(t)
  double identity_value = 0.0;  // f[x_0, ..., x_n, t] q_{n+1}(t)
  double relative_error = 0.0;  // between the two, against the size of f(t), p_n(t)
  bool identity_holds = true;   // relative_error <= 1e-10
};

/// Interpolation remainder at t, evaluated in extended precision. When t is a
/// node the remainder is 0 and the identity is vacuous.
RemainderResult remainder(const TestFunction& f, const InterpolationScheme& scheme, double t);

/// sum_{i=0}^m (-1)^{m-i} C(m, i) f(x + i h). Throws if x + m h leaves domain.
double finite_difference(const TestFunction& f, double x, double h, int m,
                         std::pair<double, double> domain = {-std::numeric_limits<double>::infinity(),
                                                             std::numeric_limits<double>::infinity()});
quad finite_difference_quad(const TestFunction& f, const quad& x, const quad& h, int m);

/// Ratio R^{m-1}f(x + m h, x) / Delta^m f(x, h) over equidistant schemes,
/// measured on the monomials x^m and x^{m+1} at a fixed set of (x, h). The
/// identity check multiplies Delta^m by this factor.
double equidistant_normalization(int m);

/// Remainder of the scheme x, x + h, ..., x + (m-1) h at x + m h against the
/// normalized Delta^m f, 1e-10 relative.
InequalityReport equidistant_identity_check(const TestFunction& f, double x, double h, int m);

struct LimitReport {
  int m = 0;
  double x = 0.0;
  double target = 0.0;  // f^(m)(x) / m!
  std::vector<double> eps, values, errors;
  std::vector<double> floors;  // errors at or below the rounding floor are recorded as 0
  double observed_order = 0.0;  // least-squares slope of log2 error against log2 eps
  bool monotone = true;
  double final_error = 0.0;
  double bound = 0.0;  // C eps_J
  bool pass = true;
  json to_json() const;
};

/// f[x, x + eps/m, ..., x + eps] against f^(m)(x)/m! along eps_j = 2^-j,
/// j = 1..levels. Passes when the error never increases and the last error is
/// at most c * eps_J.
LimitReport dd_limit_check(const TestFunction& f, double x, int m, int levels = 20, double c = 1.0);

struct DividedOptions {
  std::uint64_t budget = default_pair_budget;
  std::uint64_t seed = 0;
  double constant = 1.0;
  double kappa = 4.0;
};

/// On a 1D grid checks
///   |Delta^m f(y, x)| <= C |y - x|^m (g(x) + g(y))       (equidistant grid nodes)
///   |f[x, x_1, ..., x_{m-1}, y]| <= C (g(x) + g(y))      (random interior grid nodes)
/// over pair sets thinned to the budget, tolerance kappa h / |y - x|.
InequalityReport verify_divided_inequality(const GridFunction& f, int m, const ScalarField& g,
                                           const DividedOptions& opt = {});

struct ConjectureOptions {
  int samples = 20000;
  std::uint64_t seed = 0;
};

/// Exploratory estimate of the constant relating the scheme witness g_{f,Z}
/// to the Taylor-Whitney witness g_{f,TW}. Both witnesses are built by
/// symmetric splitting: each sampled pair's normalized remainder
/// |R(y, x)| / |y - x|^m is split equally between x and y.
json conjecture31_experiment(const TestFunction& f, const Grid& grid, int m, const ConjectureOptions& opt = {});

}  // namespace mqs
