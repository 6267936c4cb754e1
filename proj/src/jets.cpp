// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/jets.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mqsobolev/error.hpp"
#include "mqsobolev/parallel.hpp"
#include "mqsobolev/sampling.hpp"
#include "mqsobolev/shells.hpp"

namespace mqs {
namespace {

double factorial_d(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

quad factorial_q(int n) {
  quad r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double monomial(const MultiIndex& l, double d0, double d1) {
  double r = 1.0;
  for (int i = 0; i < l[0]; ++i) r *= d0;
  for (int i = 0; i < l[1]; ++i) r *= d1;
  return r / (factorial_d(l[0]) * factorial_d(l[1]));
}

quad monomial_q(const MultiIndex& l, const quad& d0, const quad& d1) {
  quad r = 1;
  for (int i = 0; i < l[0]; ++i) r *= d0;
  for (int i = 0; i < l[1]; ++i) r *= d1;
  return r / (factorial_q(l[0]) * factorial_q(l[1]));
}

// order-th derivative at s = 0 of the polynomial through (i delta, values[i]).
quad derivative_at_zero(const std::vector<quad>& values, const quad& delta, int order) {
  const std::size_t n = values.size();
  if (static_cast<std::size_t>(order) >= n) return 0;
  std::vector<quad> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = delta * static_cast<int>(i);
  const auto c = DividedDifferenceTable<quad>(nodes, values).coefficients();
  // Newton form to power basis in s
  std::vector<quad> poly{c[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    std::vector<quad> next(poly.size() + 1, quad(0));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * nodes[k];
    }
    next[0] += c[k];
    poly = std::move(next);
  }
  return poly[static_cast<std::size_t>(order)] * factorial_q(order);
}

double rel(const quad& a, const quad& b, const quad& scale) {
  const quad den = std::max({abs(a), abs(b), scale * quad(1e-24)});
  return den == 0 ? 0.0 : static_cast<double>(abs(a - b) / den);
}

using QPoint = std::array<quad, 2>;

QPoint to_quad(const Point& p) { return {quad(p[0]), quad(p[1])}; }

// Values and gradients of an analytic function in extended precision.
struct Analytic {
  const TestFunction& f;
  int dim;
  quad value(const QPoint& p) const { return f.partial_t<quad>(p, dim, {0, 0}); }
  QPoint grad(const QPoint& p) const {
    return {f.partial_t<quad>(p, dim, {1, 0}), dim == 2 ? f.partial_t<quad>(p, dim, {0, 1}) : quad(0)};
  }
};

quad dot(const QPoint& a, const QPoint& b) { return a[0] * b[0] + a[1] * b[1]; }
QPoint sub(const QPoint& a, const QPoint& b) { return {a[0] - b[0], a[1] - b[1]}; }
quad norm(const QPoint& a) { return sqrt(dot(a, a)); }

std::vector<double> coords_of(const Grid& g, std::size_t i) {
  const Point p = g.point(i);
  return g.dim() == 1 ? std::vector<double>{p[0]} : std::vector<double>{p[0], p[1]};
}

// Extended-precision samples of f and its gradient on every grid point.
struct GridCache {
  std::vector<quad> v;
  std::vector<QPoint> g, p;
  GridCache(const TestFunction& tf, const Grid& grid) : v(grid.size()), g(grid.size()), p(grid.size()) {
    const Analytic an{tf, grid.dim()};
    parallel_for(grid.size(), [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i = b; i < e; ++i) {
        p[i] = to_quad(grid.point(i));
        v[i] = an.value(p[i]);
        g[i] = an.grad(p[i]);
      }
    });
  }
  // R1(a, b) = f(a) - f(b) - <f'(b), a - b>, snapped to 0 below the rounding level
  quad r1(std::size_t a, std::size_t b) const {
    const QPoint d = sub(p[a], p[b]);
    const quad r = v[a] - v[b] - dot(g[b], d);
    const quad scale = abs(v[a]) + abs(v[b]) + abs(dot(g[b], d));
    return abs(r) <= scale * quad(1e-28) ? quad(0) : r;
  }
  quad grad_gap(std::size_t a, std::size_t b) const {
    const quad d = norm(sub(g[a], g[b]));
    return d <= (norm(g[a]) + norm(g[b])) * quad(1e-28) ? quad(0) : d;
  }
  quad grad_gap_axis(std::size_t a, std::size_t b, int axis) const {
    const quad d = abs(g[a][axis] - g[b][axis]);
    return d <= (abs(g[a][axis]) + abs(g[b][axis])) * quad(1e-28) ? quad(0) : d;
  }
};

void add_ratio(WorstPair& acc, const quad& lhs, const quad& rhs, std::size_t a, std::size_t b) {
  // compare in extended precision; the rounded ratio keeps the verdict
  if (rhs == 0)
    acc.add(static_cast<double>(lhs), 0.0, 1.0, 0.0, a, b);
  else
    acc.add(static_cast<double>(lhs / rhs), 1.0, 1.0, 0.0, a, b);
}

}  // namespace

Jet::Jet(Grid grid, int order, std::vector<std::vector<double>> components)
    : grid_(std::move(grid)), order_(order), components_(std::move(components)) {
  require(order >= 0, Errc::invalid_argument, "jet order must be nonnegative");
  require(grid_.dim() == 1 || order <= 2, Errc::unsupported_dimension, "plane jets are limited to order 2");
  indices_ = indices_for(grid_.dim(), order);
  require(components_.size() == indices_.size(), Errc::size_mismatch, "one component per multi-index is required");
  for (const auto& c : components_) {
    require(c.size() == grid_.size(), Errc::size_mismatch, "jet component length differs from the grid");
    for (double v : c) require(std::isfinite(v), Errc::invalid_argument, "jet components must be finite");
  }
}

std::vector<MultiIndex> Jet::indices_for(int dim, int order) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= order; ++d) {
    if (dim == 1) {
      out.push_back({d, 0});
      continue;
    }
    for (int a = d; a >= 0; --a) out.push_back({a, d - a});
  }
  return out;
}

std::size_t Jet::slot(const MultiIndex& l) const {
  const auto it = std::find(indices_.begin(), indices_.end(), l);
  require(it != indices_.end(), Errc::invalid_argument, "multi-index not present in the jet");
  return static_cast<std::size_t>(it - indices_.begin());
}

Jet Jet::from_function(const TestFunction& tf, const Grid& grid, int order) {
  require(order >= 0, Errc::invalid_argument, "jet order must be nonnegative");
  require(grid.dim() == 1 || order <= 2, Errc::unsupported_dimension, "plane jets are limited to order 2");
  const auto idx = indices_for(grid.dim(), order);
  std::vector<std::vector<double>> comps;
  for (const auto& l : idx) {
    std::vector<double> c(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) c[i] = tf.partial(grid.point(i), grid.dim(), l);
    comps.push_back(std::move(c));
  }
  return Jet(grid, order, std::move(comps));
}

double taylor_field(const Jet& F, const Point& y, std::size_t x) {
  require(x < F.grid().size(), Errc::invalid_argument, "field point must be a grid point");
  const Point px = F.grid().point(x);
  const double d0 = y[0] - px[0], d1 = F.grid().dim() == 2 ? y[1] - px[1] : 0.0;
  double t = F.components()[0][x];
  for (std::size_t s = 1; s < F.indices().size(); ++s) t += F.components()[s][x] * monomial(F.indices()[s], d0, d1);
  return t;
}

quad taylor_field_quad(const Jet& F, const std::array<quad, 2>& y, std::size_t x) {
  require(x < F.grid().size(), Errc::invalid_argument, "field point must be a grid point");
  const Point px = F.grid().point(x);
  const quad d0 = y[0] - px[0], d1 = F.grid().dim() == 2 ? quad(y[1] - px[1]) : quad(0);
  quad t = F.components()[0][x];
  for (std::size_t s = 1; s < F.indices().size(); ++s)
    t += quad(F.components()[s][x]) * monomial_q(F.indices()[s], d0, d1);
  return t;
}

double tw_remainder(const Jet& F, const GridFunction& f, std::size_t y, std::size_t x) {
  require(F.grid() == f.grid, Errc::size_mismatch, "jet and function live on different grids");
  require(y < f.grid.size(), Errc::invalid_argument, "space point must be a grid point");
  return f.values[y] - taylor_field(F, f.grid.point(y), x);
}

Jet jet_derivative(const Jet& F, const MultiIndex& l) {
  require(l[0] >= 0 && l[1] >= 0, Errc::invalid_argument, "multi-index entries must be nonnegative");
  require(F.grid().dim() == 2 || l[1] == 0, Errc::invalid_argument, "line jets have one index");
  require(order_of(l) <= F.order(), Errc::invalid_argument, "derivative order exceeds the jet order");
  const int k = F.order() - order_of(l);
  std::vector<std::vector<double>> comps;
  for (const auto& m : Jet::indices_for(F.grid().dim(), k)) comps.push_back(F.component({l[0] + m[0], l[1] + m[1]}));
  return Jet(F.grid(), k, std::move(comps));
}

json IdentityReport::to_json() const {
  json j;
  j["name"] = name;
  j["checked"] = checked;
  j["max_relative_error"] = number(max_relative_error);
  j["threshold"] = threshold;
  j["pass"] = pass;
  if (!details.empty()) j["details"] = details;
  return j;
}

IdentityReport commutation_check(const Jet& F, const MultiIndex& l, const Point& y, std::size_t x) {
  const Jet D = jet_derivative(F, l);
  const int k = F.order();
  const Grid& g = F.grid();
  const quad delta = g.h();
  const QPoint yq = to_quad(y);
  const std::size_t n = static_cast<std::size_t>(k) + 1;
  quad lhs;
  if (g.dim() == 1) {
    std::vector<quad> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = taylor_field_quad(F, {yq[0] + delta * static_cast<int>(i), 0}, x);
    lhs = derivative_at_zero(v, delta, l[0]);
  } else {
    std::vector<quad> col(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<quad> row(n);
      for (std::size_t i = 0; i < n; ++i)
        row[i] = taylor_field_quad(F, {yq[0] + delta * static_cast<int>(i), yq[1] + delta * static_cast<int>(j)}, x);
      col[j] = derivative_at_zero(row, delta, l[0]);
    }
    lhs = derivative_at_zero(col, delta, l[1]);
  }
  const quad rhs = taylor_field_quad(D, yq, x);
  // stencil differentiation amplifies rounding by about (1 + |y - x|)^k / delta^|l|
  const Point px = g.point(x);
  const quad reach = 1 + norm(sub(yq, to_quad(px))) + delta * k;
  quad scale = 0;
  for (const auto& c : F.components()) scale += abs(quad(c[x]));
  for (int i = 0; i < k; ++i) scale *= reach;
  for (int i = 0; i < order_of(l); ++i) scale /= delta;
  IdentityReport r;
  r.name = "jet_commutation";
  r.add(rel(lhs, rhs, scale));
  r.details["lhs"] = static_cast<double>(lhs);
  r.details["rhs"] = static_cast<double>(rhs);
  return r;
}

IdentityReport component_identity_check(const Jet& F, const MultiIndex& l, std::size_t y, std::size_t x) {
  const Jet D = jet_derivative(F, l);
  const Grid& g = F.grid();
  require(y < g.size(), Errc::invalid_argument, "space point must be a grid point");
  const double fl = D.components()[0][y];
  const double t = taylor_field(D, g.point(y), x);
  const double rem = fl - t;
  IdentityReport r;
  r.name = "component_identity";
  // relative to the size of the summands: f_l(y) may vanish while T and R do not
  const quad terms = abs(quad(t)) + abs(quad(rem)) + abs(quad(fl));
  r.add(terms == 0 ? 0.0 : static_cast<double>(abs(quad(rem) + quad(t) - quad(fl)) / terms));
  return r;
}

IdentityReport taylor_algebra_check(const TestFunction& f, int dim, const Point& xp, const Point& yp, const Point& zp) {
  require(dim == 1 || dim == 2, Errc::unsupported_dimension, "dimension must be 1 or 2");
  require(f.differentiable(), Errc::precondition, "the Taylor algebra needs a differentiable function");
  const Analytic an{f, dim};
  const QPoint x = to_quad(xp), y = to_quad(yp), z = to_quad(zp);
  const quad fx = an.value(x), fy = an.value(y), fz = an.value(z);
  const QPoint gx = an.grad(x), gy = an.grad(y), gz = an.grad(z);
  auto R = [](const quad& fa, const quad& fb) { return fa - fb; };
  auto R1 = [&](const quad& fa, const QPoint& a, const quad& fb, const QPoint& b, const QPoint& gb) {
    return fa - fb - dot(gb, sub(a, b));
  };
  const quad diam = std::max({norm(sub(x, y)), norm(sub(y, z)), norm(sub(x, z))});
  const quad scale = abs(fx) + abs(fy) + abs(fz) + diam * (norm(gx) + norm(gy) + norm(gz));

  IdentityReport r;
  r.name = "taylor_algebra";
  json parts = json::object();
  auto record = [&](const char* name, const quad& a, const quad& b) {
    const double e = rel(a, b, scale);
    r.add(e);
    parts[name] = e;
  };
  record("R(y,x)+R(x,y)=0", R(fy, fx) + R(fx, fy), 0);
  record("R(y,x)-R(y,z)=-R(x,z)", R(fy, fx) - R(fy, fz), -R(fx, fz));
  const quad r1yx = R1(fy, y, fx, x, gx), r1xy = R1(fx, x, fy, y, gy);
  record("R1(y,x)+R1(x,y)=<f'(y)-f'(x),y-x>", r1yx + r1xy, dot(sub(gy, gx), sub(y, x)));
  const quad r1yz = R1(fy, y, fz, z, gz), r1zx = R1(fz, z, fx, x, gx);
  record("R1(y,x)-R1(y,z)=R1(z,x)+<f'(z)-f'(x),y-z>", r1yx - r1yz, r1zx + dot(sub(gz, gx), sub(y, z)));
  // P1(x, ., z) is affine in y: one forward difference per axis is its gradient
  auto P = [&](const QPoint& yy) {
    const quad fyy = an.value(yy);
    return R1(fyy, yy, fx, x, gx) - R1(fyy, yy, fz, z, gz);
  };
  const quad step = quad(1e-3) * (1 + norm(y));
  const quad p0 = P(y);
  double worst = 0.0;
  for (int a = 0; a < dim; ++a) {
    QPoint ys = y;
    ys[a] += step;
    const double e = rel((P(ys) - p0) / step, gz[a] - gx[a], scale / step);
    worst = std::max(worst, e);
    r.add(e);
  }
  parts["D_y P1 = f'(z)-f'(x)"] = worst;
  r.details = parts;
  return r;
}

MQField mq_m_field(const Jet& F, const GridFunction& f, int m, double cap) {
  require(m >= 1, Errc::invalid_argument, "order m must be at least 1");
  require(F.order() == m - 1, Errc::invalid_argument, "jet order must be m - 1");
  require(F.grid() == f.grid, Errc::size_mismatch, "jet and function live on different grids");
  require(cap > 0.0, Errc::invalid_argument, "radius cap must be positive");
  const Grid& g = f.grid;
  const ShellTable table(g);
  const std::size_t limit = std::isinf(cap) ? table.shells().size() : table.shells_within(cap);
  const auto& idx = F.indices();
  std::vector<double> out(g.size(), 0.0);
  std::vector<std::uint8_t> empty(g.size(), 0);
  const double h = g.h();
  parallel_for(g.size(), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t x = b; x < e; ++x) {
      const Lattice lx = g.lattice(x);
      const double f0 = F.components()[0][x];
      double best = -1.0;
      walk_shells(
          g, table, x, limit,
          [&](std::size_t z, double radius) {
            const Lattice lz = g.lattice(z);
            const double d0 = static_cast<double>(lz[0] - lx[0]) * h, d1 = static_cast<double>(lz[1] - lx[1]) * h;
            double t = f0;
            for (std::size_t s = 1; s < idx.size(); ++s) t += F.components()[s][x] * monomial(idx[s], d0, d1);
            double rm = radius;
            for (int i = 1; i < m; ++i) rm *= radius;
            return std::abs(f.values[z] - t) / rm;
          },
          [&](std::size_t, double sum, std::size_t count) {
            if (count > 0) best = std::max(best, sum / static_cast<double>(count));
          });
      if (best < 0.0) empty[x] = 1;
      out[x] = std::max(best, 0.0);
    }
  });
  MQField r{ScalarField(g, std::move(out), "mq" + std::to_string(m)), cap, std::move(empty), 0};
  r.empty_count = static_cast<std::size_t>(std::count(r.empty.begin(), r.empty.end(), 1));
  return r;
}

IdentityReport jet_identity_suite(const TestFunction& tf, const Grid& grid, int order, std::uint64_t tuples,
                                  std::uint64_t seed) {
  const Jet F = Jet::from_function(tf, grid, order);
  const Point lo = grid.point(0), hi = grid.point(grid.size() - 1);
  const bool algebra = tf.differentiable();
  const std::size_t workers = worker_count();
  struct Worst {
    double commutation = 0, component = 0, algebra = 0;
  };
  std::vector<Worst> worst(workers);
  parallel_for(static_cast<std::size_t>(tuples), [&](std::size_t b, std::size_t e, std::size_t w) {
    for (std::size_t t = b; t < e; ++t) {
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64(t)));
      std::uniform_real_distribution<double> u0(lo[0], hi[0]), u1(lo[1], hi[1]);
      auto point = [&] { return Point{u0(rng), grid.dim() == 2 ? u1(rng) : 0.0}; };
      std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
      const std::size_t x = pick(rng), y = pick(rng);
      const Point yc = point();
      for (const MultiIndex& l : F.indices()) {
        worst[w].commutation = std::max(worst[w].commutation, commutation_check(F, l, yc, x).max_relative_error);
        worst[w].component = std::max(worst[w].component, component_identity_check(F, l, y, x).max_relative_error);
      }
      if (algebra) {
        const Point a = point(), c = point(), d = point();
        worst[w].algebra = std::max(worst[w].algebra, taylor_algebra_check(tf, grid.dim(), a, c, d).max_relative_error);
      }
    }
  });
  Worst all;
  for (const auto& w : worst) {
    all.commutation = std::max(all.commutation, w.commutation);
    all.component = std::max(all.component, w.component);
    all.algebra = std::max(all.algebra, w.algebra);
  }
  IdentityReport r;
  r.name = "jet_identities";
  r.add(all.commutation);
  r.add(all.component);
  if (algebra) r.add(all.algebra);
  r.checked = tuples;
  r.details["order"] = order;
  r.details["seed"] = seed;
  r.details["commutation_max_relative_error"] = all.commutation;
  r.details["component_identity_max_relative_error"] = all.component;
  r.details["taylor_algebra_max_relative_error"] = algebra ? json(all.algebra) : json("skipped: f is not differentiable");
  return r;
}

InequalityReport second_order_lemma_check(const TestFunction& tf, const Grid& grid, const LemmaOptions& opt) {
  require(tf.differentiable(), Errc::precondition, "the lemma needs a differentiable function");
  require(grid.size() >= 3, Errc::invalid_argument, "grid too small for lens triples");
  const GridCache c(tf, grid);
  const std::size_t n = grid.size();
  const std::size_t workers = worker_count();
  std::vector<WorstPair> acc(workers);
  std::vector<std::uint64_t> skipped(workers, 0);
  parallel_for(static_cast<std::size_t>(opt.triples), [&](std::size_t lo, std::size_t hi, std::size_t w) {
    for (std::size_t s = lo; s < hi; ++s) {
      std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(s)));
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      const std::size_t x = pick(rng);
      std::size_t y = pick(rng);
      while (y == x) y = pick(rng);
      std::size_t z;
      if (grid.dim() == 1) {
        const std::size_t lo_i = std::min(x, y) + 1, hi_i = std::max(x, y);
        if (lo_i >= hi_i) {
          ++skipped[w];
          continue;
        }
        z = std::uniform_int_distribution<std::size_t>(lo_i, hi_i - 1)(rng);
      } else {
        const auto lens = lens_indices(grid, x, y);
        if (lens.empty()) {
          ++skipped[w];
          continue;
        }
        z = lens[std::uniform_int_distribution<std::size_t>(0, lens.size() - 1)(rng)];
      }
      const quad dyx = norm(sub(c.p[y], c.p[x])), dyz = norm(sub(c.p[y], c.p[z])), dzx = norm(sub(c.p[z], c.p[x]));
      const quad lhs = abs(c.r1(y, x)) / (dyx * dyx);
      const quad rhs = abs(c.r1(y, z)) / (dyz * dyz) + abs(c.r1(z, x)) / (dzx * dzx) + c.grad_gap(z, x) / dzx;
      add_ratio(acc[w], lhs, rhs, x, y);
    }
  });
  WorstPair all;
  std::uint64_t empty = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    all.merge(acc[w]);
    empty += skipped[w];
  }
  InequalityReport r;
  r.name = "second_order_lemma";
  finish_report(r, all, 1.0, [&](std::size_t i) { return coords_of(grid, i); });
  r.details["triples_requested"] = opt.triples;
  r.details["empty_lens_skipped"] = empty;
  r.details["seed"] = opt.seed;
  r.details["form"] = "|R1(y,x)|/|y-x|^2 <= |R1(y,z)|/|y-z|^2 + |R1(z,x)|/|z-x|^2 + |f'(z)-f'(x)|/|z-x|";
  r.details["arithmetic"] = "113-bit binary floating point, analytic derivatives";
  return r;
}

InequalityReport lemma_average_check(const TestFunction& tf, const Grid& grid, const PairOptions& opt) {
  require(tf.differentiable(), Errc::precondition, "the lemma needs a differentiable function");
  const GridCache c(tf, grid);
  PairSet set{grid, {}, {}};
  if (opt.interior_only) {
    set.max_n2 = [&grid](std::size_t a) {
      const long m = grid.margin(a);
      return (m + 1) * (m + 1);
    };
    set.accept = [&grid](std::size_t a, std::size_t b, long n2) { return interior_pair(grid, a, b, n2); };
  }
  PairPlan plan;
  plan.budget = opt.budget;
  plan.seed = opt.seed;
  const int dim = grid.dim();
  std::vector<std::uint64_t> empty(worker_count(), 0);
  auto term = [&](std::size_t x, std::size_t z) {
    const quad d = norm(sub(c.p[z], c.p[x]));
    quad t = abs(c.r1(z, x)) / (d * d);
    for (int a = 0; a < dim; ++a) t += c.grad_gap_axis(z, x, a) / d;
    return t;
  };
  // Ball sums are prefixes over lattice shells: prefix[x][s] sums the shells
  // below s. Tables are built when they fit the memory budget.
  const ShellTable table(grid);
  std::vector<std::size_t> reach(grid.size());
  std::size_t total = 0;
  for (std::size_t x = 0; x < grid.size(); ++x) total += (reach[x] = table.reach(grid, x)) + 1;
  const bool tabulate = total <= 4'000'000;
  std::vector<std::vector<quad>> prefix(tabulate ? grid.size() : 0);
  if (tabulate) {
    const auto& offs = table.offsets();
    const auto& shells = table.shells();
    parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi, std::size_t) {
      for (std::size_t x = lo; x < hi; ++x) {
        const Lattice cx = grid.lattice(x);
        auto& pre = prefix[x];
        pre.assign(reach[x] + 1, quad(0));
        for (std::size_t sh = 0; sh < reach[x]; ++sh) {
          quad acc = pre[sh];
          for (std::uint32_t k = shells[sh].begin; k < shells[sh].end; ++k) {
            const Lattice z{cx[0] + offs[k][0], cx[1] + offs[k][1]};
            if (grid.contains(z)) acc += term(x, grid.index(z));
          }
          pre[sh + 1] = acc;
        }
      }
    });
  }
  auto ball_sum = [&](std::size_t x, long n2) {
    if (tabulate) return prefix[x][std::min(table.shells_below(n2), reach[x])];
    quad s = 0;
    for (std::size_t z : ball_indices(grid, x, grid.step_distance(n2))) s += term(x, z);
    return s;
  };
  const WorstPair w = run_pairs(set, plan, [&](std::size_t a, std::size_t b, long n2, WorstPair& acc) {
    const auto lens = lens_indices(grid, a, b);
    if (lens.empty()) return;
    const quad sa = ball_sum(a, n2);
    const quad sb = ball_sum(b, n2);
    // #B/#L times the ball average is the ball sum over #L
    const quad rhs = (sa + sb) / static_cast<int>(lens.size());
    const quad d = norm(sub(c.p[b], c.p[a]));
    add_ratio(acc, abs(c.r1(b, a)) / (d * d), rhs, a, b);
  });
  InequalityReport r;
  r.name = "lemma_average";
  finish_report(r, w, 1.0, [&](std::size_t i) { return coords_of(grid, i); });
  r.details["pairs"] = plan.describe();
  r.details["interior_only"] = opt.interior_only;
  r.details["ball_sums"] = tabulate ? "shell prefix tables" : "direct";
  r.details["form"] =
      "|R1(y,x)|/|y-x|^2 <= #B_x/#L (M_rQ^2 f(x) + sum_i M_rQ(d_i f)(x)) + #B_y/#L (M_rQ^2 f(y) + sum_i M_rQ(d_i f)(y))";
  return r;
}

}  // namespace mqs
