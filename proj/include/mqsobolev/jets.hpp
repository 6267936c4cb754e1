// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mqsobolev/corpus.hpp"
#include "mqsobolev/grid.hpp"
#include "mqsobolev/interpolation.hpp"
#include "mqsobolev/meanquotient.hpp"
#include "mqsobolev/report.hpp"

namespace mqs {

using MultiIndex = std::array<int, 2>;  // second entry 0 on the line

inline int order_of(const MultiIndex& l) { return l[0] + l[1]; }

/// Whitney k-jet: one coefficient field per multi-index |l| <= k, graded
/// (|l| = 0, then (1,0), (0,1), then (2,0), (1,1), (0,2)). On the line the
/// indices are (0,0), (1,0), ..., (k,0). Plane jets stop at k = 2.
class Jet {
 public:
  Jet(Grid grid, int order, std::vector<std::vector<double>> components);

  /// Components sampled from the analytic partial derivatives of tf.
  static Jet from_function(const TestFunction& tf, const Grid& grid, int order);
  /// Multi-indices of a jet of the given order in the given dimension.
  static std::vector<MultiIndex> indices_for(int dim, int order);

  const Grid& grid() const { return grid_; }
  int order() const { return order_; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  const std::vector<std::vector<double>>& components() const { return components_; }
  std::size_t slot(const MultiIndex& l) const;
  const std::vector<double>& component(const MultiIndex& l) const { return components_[slot(l)]; }

 private:
  Grid grid_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::vector<std::vector<double>> components_;
};

/// T^k F(y, x) = sum_l f_l(x) (y - x)^l / l!, x a grid point, y anywhere.
double taylor_field(const Jet& F, const Point& y, std::size_t x);
quad taylor_field_quad(const Jet& F, const std::array<quad, 2>& y, std::size_t x);

/// R^k F(y, x) = f(y) - T^k F(y, x) on grid points.
double tw_remainder(const Jet& F, const GridFunction& f, std::size_t y, std::size_t x);

/// D_l F = {f_l, f_{l+1}, ...}: the jet of order k - |l| whose component m is f_{l+m}.
Jet jet_derivative(const Jet& F, const MultiIndex& l);

/// Outcome of an identity check: the largest relative residual over the
/// evaluated tuples against a threshold.
struct IdentityReport {
  std::string name;
  std::uint64_t checked = 0;
  double max_relative_error = 0.0;
  double threshold = 1e-10;
  bool pass = true;
  json details = json::object();

  void add(double rel) {
    ++checked;
    max_relative_error = std::max(max_relative_error, rel);
    pass = max_relative_error <= threshold;
  }
  json to_json() const;
};

/// D^l_y T^k F(y, x) = T^{k-|l|}(D_l F)(y, x). The left side is obtained by
/// interpolating T^k F(., x) on a tensor stencil around y (exact for
/// polynomials of that degree) and differentiating the interpolant.
IdentityReport commutation_check(const Jet& F, const MultiIndex& l, const Point& y, std::size_t x);

/// R^{k-|l|}(D_l F)(y, x) + T^{k-|l|}(D_l F)(y, x) = f_l(y), y and x grid points.
IdentityReport component_identity_check(const Jet& F, const MultiIndex& l, std::size_t y, std::size_t x);

/// Zeroth and first order Taylor-algebra identities at the triple (x, y, z):
///   R(y,x) + R(x,y) = 0,   R(y,x) - R(y,z) = -R(x,z),
///   R1(y,x) + R1(x,y) = <f'(y) - f'(x), y - x>,
///   R1(y,x) - R1(y,z) = R1(z,x) + <f'(z) - f'(x), y - z>,
///   D_y [R1(y,x) - R1(y,z)] = f'(z) - f'(x).
/// Evaluated in extended precision from the analytic derivatives.
IdentityReport taylor_algebra_check(const TestFunction& f, int dim, const Point& x, const Point& y, const Point& z);

/// m-th order maximal mean quotient of F (order m - 1) against samples f,
/// sup over shell radii <= cap. For m = 1 this is mq_field bit for bit.
MQField mq_m_field(const Jet& F, const GridFunction& f, int m, double cap = unbounded);

/// Runs commutation_check and component_identity_check for every multi-index
/// of the jet of f of the given order, and taylor_algebra_check when f is
/// differentiable, over `tuples` random points in the bounding box of the grid.
IdentityReport jet_identity_suite(const TestFunction& f, const Grid& grid, int order, std::uint64_t tuples,
                                  std::uint64_t seed = 0);

struct LemmaOptions {
  std::uint64_t triples = 100000;
  std::uint64_t seed = 0;
};

/// For sampled grid triples with z in the lens of (x, y):
///   |R1(y,x)|/|y-x|^2 <= |R1(y,z)|/|y-z|^2 + |R1(z,x)|/|z-x|^2 + |f'(z)-f'(x)|/|z-x|
/// with tolerance 0, R1(y, z) being the expansion at z evaluated at y.
InequalityReport second_order_lemma_check(const TestFunction& f, const Grid& grid, const LemmaOptions& opt = {});

/// Lens average of the lemma with actual point counts:
///   |R1(y,x)|/|y-x|^2 <= #B_x/#L (M_rQ^2 f(x) + sum_i M_rQ(d_i f)(x))
///                      + #B_y/#L (M_rQ^2 f(y) + sum_i M_rQ(d_i f)(y)),  r = |x - y|,
/// tolerance 0, over pairs with a nonempty lens.
InequalityReport lemma_average_check(const TestFunction& f, const Grid& grid, const PairOptions& opt);

}  // namespace mqs
