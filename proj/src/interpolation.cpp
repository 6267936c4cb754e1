// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mqsobolev/parallel.hpp"

namespace mqs {
namespace {

quad factorial(int m) {
  quad r = 1;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

double binomial(int m, int i) {
  double r = 1.0;
  for (int k = 1; k <= i; ++k) r = r * (m - i + k) / k;
  return r;
}

quad divided_difference_quad(const TestFunction& f, const std::vector<quad>& nodes) {
  std::vector<quad> v;
  v.reserve(nodes.size());
  for (const auto& x : nodes) v.push_back(f.eval(x));
  return DividedDifferenceTable<quad>(nodes, v).entry(0, nodes.size() - 1);
}

// Interior grid nodes strictly between a and b, m - 1 of them, distinct,
// ordered from a toward b; drawn from a generator keyed by the pair.
std::vector<std::size_t> interior_nodes(std::size_t a, std::size_t b, int m, std::mt19937_64& rng) {
  const std::size_t lo = std::min(a, b) + 1, hi = std::max(a, b) - 1;
  std::vector<std::size_t> picked;
  std::uniform_int_distribution<std::size_t> pick(lo, hi);
  while (picked.size() < static_cast<std::size_t>(m - 1)) {
    const std::size_t z = pick(rng);
    if (std::find(picked.begin(), picked.end(), z) == picked.end()) picked.push_back(z);
  }
  std::sort(picked.begin(), picked.end());
  if (a > b) std::reverse(picked.begin(), picked.end());
  return picked;
}

}  // namespace

InterpolationScheme::InterpolationScheme(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  require(!nodes_.empty(), Errc::invalid_argument, "a scheme needs at least one node");
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double a = nodes_[i], b = nodes_[i + 1];
    require(std::isfinite(a) && std::isfinite(b), Errc::invalid_argument, "nodes must be finite");
    require(a < b, Errc::invalid_argument, "nodes must be strictly increasing");
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
    require(b - a >= floor, Errc::invalid_argument, "node spread below 1e3 * eps * |x|");
  }
}

InterpolationScheme InterpolationScheme::equidistant(double x, double h, int count) {
  require(h > 0.0 && count >= 1, Errc::invalid_argument, "equidistant scheme needs h > 0 and a node");
  std::vector<double> n(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) n[static_cast<std::size_t>(i)] = x + i * h;
  return InterpolationScheme(std::move(n));
}

double InterpolationScheme::q(std::size_t k, double t) const {
  require(k <= nodes_.size(), Errc::invalid_argument, "q_k needs k <= node count");
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) r *= t - nodes_[i];
  return r;
}

DividedDifferenceTable<double> divided_differences(const InterpolationScheme& scheme,
                                                   const std::vector<double>& values) {
  require(values.size() == scheme.size(), Errc::size_mismatch, "one value per node is required");
  return DividedDifferenceTable<double>(scheme.nodes(), values);
}

double newton_eval(const DividedDifferenceTable<double>& table, double t) { return table.eval(t); }

RemainderResult remainder(const TestFunction& f, const InterpolationScheme& scheme, double t) {
  RemainderResult r;
  const auto& nd = scheme.nodes();
  if (std::find(nd.begin(), nd.end(), t) != nd.end()) return r;
  std::vector<quad> nodes(nd.begin(), nd.end()), values;
  for (const auto& x : nodes) values.push_back(f.eval(x));
  const quad tq = t;
  const quad ft = f.eval(tq);
  const quad pt = DividedDifferenceTable<quad>(nodes, values).eval(tq);
  const quad rem = ft - pt;
  nodes.push_back(tq);
  values.push_back(ft);
  const DividedDifferenceTable<quad> ext(nodes, values);
  quad q = 1;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) q *= tq - nodes[i];
  const quad ident = ext.entry(0, nodes.size() - 1) * q;
  r.value = static_cast<double>(rem);
  r.identity_value = static_cast<double>(ident);
  // Both sides are differences of terms of size lambda = |f(t)| + sum |f(x_i) l_i(t)|.
  // Compare relative to the remainder itself unless it sits at the rounding
  // level of those terms, where only a floor proportional to lambda is meaningful.
  quad lambda = abs(ft);
  const std::size_t n = nd.size();
  for (std::size_t i = 0; i < n; ++i) {
    quad li = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) li *= (tq - nodes[j]) / (nodes[i] - nodes[j]);
    lambda += abs(values[i] * li);
  }
  const quad den = std::max({abs(rem), abs(ident), lambda * quad(1e-22)});
  r.relative_error = den == 0 ? 0.0 : static_cast<double>(abs(rem - ident) / den);
  r.identity_holds = r.relative_error <= 1e-10;
  return r;
}

double finite_difference(const TestFunction& f, double x, double h, int m, std::pair<double, double> domain) {
  require(m >= 1, Errc::invalid_argument, "difference order must be at least 1");
  require(h > 0.0, Errc::invalid_argument, "step must be positive");
  require(x >= domain.first && x + m * h <= domain.second, Errc::invalid_argument,
          "difference stencil leaves the domain");
  double s = 0.0;
  for (int i = 0; i <= m; ++i) s += ((m - i) % 2 ? -1.0 : 1.0) * binomial(m, i) * f.eval(x + i * h);
  return s;
}

quad finite_difference_quad(const TestFunction& f, const quad& x, const quad& h, int m) {
  require(m >= 1, Errc::invalid_argument, "difference order must be at least 1");
  quad s = 0;
  for (int i = 0; i <= m; ++i) s += ((m - i) % 2 ? -1 : 1) * quad(binomial(m, i)) * f.eval(quad(x + i * h));
  return s;
}

namespace {

quad equidistant_remainder(const TestFunction& f, const quad& x, const quad& h, int m) {
  std::vector<quad> nodes, values;
  for (int i = 0; i < m; ++i) nodes.push_back(x + i * h);
  for (const auto& z : nodes) values.push_back(f.eval(z));
  const quad t = x + m * h;
  return f.eval(t) - DividedDifferenceTable<quad>(nodes, values).eval(t);
}

}  // namespace

double equidistant_normalization(int m) {
  require(m >= 1, Errc::invalid_argument, "difference order must be at least 1");
  std::vector<double> ratios;
  for (int deg : {m, m + 1}) {
    std::vector<double> c(static_cast<std::size_t>(deg + 1), 0.0);
    c.back() = 1.0;
    const auto mono = TestFunction::polynomial(c);
    for (double x : {-0.75, 0.0, 0.3, 1.25})
      for (double h : {0.5, 0.125, 0.01}) {
        const quad d = finite_difference_quad(mono, x, h, m);
        if (d == 0) continue;
        ratios.push_back(static_cast<double>(equidistant_remainder(mono, x, h, m) / d));
      }
  }
  const double f0 = ratios.front();
  for (double r : ratios)
    require(std::abs(r - f0) <= 1e-12 * std::abs(f0), Errc::precondition,
            "remainder and finite difference are not proportional on monomials");
  return f0;
}

InequalityReport equidistant_identity_check(const TestFunction& f, double x, double h, int m) {
  require(m >= 1 && h > 0.0, Errc::invalid_argument, "need m >= 1 and h > 0");
  const double factor = equidistant_normalization(m);
  const quad rem = equidistant_remainder(f, x, h, m);
  const quad delta = finite_difference_quad(f, x, h, m) * quad(factor);
  quad scale = 0;
  for (int i = 0; i <= m; ++i) scale = std::max(scale, quad(abs(f.eval(quad(x) + i * quad(h)))));
  const quad den = std::max({abs(rem), abs(delta), scale * quad(1e-24)});
  const double rel = den == 0 ? 0.0 : static_cast<double>(abs(rem - delta) / den);
  InequalityReport r;
  r.name = "equidistant_identity";
  r.pairs_checked = 1;
  r.worst_ratio = rel;
  r.worst_pair = {{x}, {x + m * h}};
  r.constant_used = 1e-10;
  r.tolerance = 0.0;
  r.max_raw_ratio = rel;
  r.pass = rel <= 1e-10;
  r.failures = r.pass ? 0 : 1;
  r.details["normalization_factor"] = factor;
  r.details["remainder"] = static_cast<double>(rem);
  r.details["finite_difference"] = static_cast<double>(finite_difference_quad(f, x, h, m));
  r.details["m"] = m;
  r.details["h"] = h;
  return r;
}

json LimitReport::to_json() const {
  json j;
  j["name"] = "divided_difference_limit";
  j["m"] = m;
  j["x"] = x;
  j["target"] = number(target);
  json ladder = json::array();
  for (std::size_t i = 0; i < eps.size(); ++i)
    ladder.push_back({{"eps", eps[i]},
                      {"value", number(values[i])},
                      {"error", number(errors[i])},
                      {"rounding_floor", number(floors[i])}});
  j["ladder"] = ladder;
  j["observed_order"] = number(observed_order);
  j["monotone"] = monotone;
  j["final_error"] = number(final_error);
  j["bound"] = number(bound);
  j["pass"] = pass;
  return j;
}

LimitReport dd_limit_check(const TestFunction& f, double x, int m, int levels, double c) {
  require(m >= 1 && levels >= 1, Errc::invalid_argument, "need m >= 1 and at least one level");
  LimitReport r;
  r.m = m;
  r.x = x;
  const quad xq = x;
  const quad target = f.derivative(xq, m) / factorial(m);
  r.target = static_cast<double>(target);
  // Rounding in Delta^m is about 2^m u max|f|; dividing by m! (eps/m)^m
  // gives the level below which an error is indistinguishable from zero.
  const quad u = ldexp(quad(1), -112);
  for (int j = 1; j <= levels; ++j) {
    const quad eps = ldexp(quad(1), -j);
    std::vector<quad> nodes;
    quad fmax = 0;
    for (int i = 0; i <= m; ++i) {
      nodes.push_back(xq + eps * i / m);
      fmax = std::max(fmax, quad(abs(f.eval(nodes.back()))));
    }
    const quad v = divided_difference_quad(f, nodes);
    const quad err = abs(v - target);
    const quad floor = 16 * ldexp(quad(1), m) * u * (fmax + abs(target)) / (factorial(m) * pow(eps / m, m));
    r.eps.push_back(static_cast<double>(eps));
    r.values.push_back(static_cast<double>(v));
    r.errors.push_back(err <= floor ? 0.0 : static_cast<double>(err));
    r.floors.push_back(static_cast<double>(floor));
  }
  for (std::size_t i = 1; i < r.errors.size(); ++i)
    if (r.errors[i] > r.errors[i - 1]) r.monotone = false;
  // slope of log2(error) over log2(eps) where the error is resolved
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < r.errors.size(); ++i) {
    if (r.errors[i] <= 0.0) continue;
    const double lx = std::log2(r.eps[i]), ly = std::log2(r.errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  r.observed_order = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : std::numeric_limits<double>::infinity();
  r.final_error = r.errors.back();
  r.bound = c * r.eps.back();
  r.pass = r.monotone && r.final_error <= r.bound;
  return r;
}

InequalityReport verify_divided_inequality(const GridFunction& f, int m, const ScalarField& g,
                                           const DividedOptions& opt) {
  const Grid& grid = f.grid;
  require(grid.dim() == 1, Errc::unsupported_dimension, "divided differences are one-dimensional");
  require(grid == g.grid, Errc::size_mismatch, "function and field live on different grids");
  require(m >= 1, Errc::invalid_argument, "order must be at least 1");
  require(grid.size() >= static_cast<std::size_t>(m) + 1, Errc::invalid_argument,
          "order too large for the grid resolution");
  require(opt.constant > 0.0 && opt.kappa >= 0.0, Errc::invalid_argument, "invalid constant or tolerance");
  const double h = grid.h();
  const auto mm = static_cast<std::size_t>(m);
  auto coords = [&](std::size_t i) { return std::vector<double>{grid.coord(i, 0)}; };

  PairSet fd{grid, {}, [mm](std::size_t a, std::size_t b, long) { return (b - a) % mm == 0; }};
  PairPlan fd_plan;
  fd_plan.budget = opt.budget;
  fd_plan.seed = opt.seed;
  const WorstPair w1 = run_pairs(fd, fd_plan, [&](std::size_t a, std::size_t b, long n2, WorstPair& acc) {
    const std::size_t step = (b - a) / mm;
    double s = 0.0;
    for (int i = 0; i <= m; ++i)
      s += ((m - i) % 2 ? -1.0 : 1.0) * binomial(m, i) * f.values[a + static_cast<std::size_t>(i) * step];
    const double d = grid.step_distance(n2);
    acc.add(std::abs(s), std::pow(d, m) * (g.values[a] + g.values[b]), opt.constant, opt.kappa * h / d, a, b);
  });

  PairSet dd{grid, {}, [mm](std::size_t a, std::size_t b, long) { return b - a >= mm; }};
  PairPlan dd_plan;
  dd_plan.budget = opt.budget;
  dd_plan.seed = opt.seed ^ 0x5bd1e995ULL;
  const WorstPair w2 = run_pairs(dd, dd_plan, [&](std::size_t a, std::size_t b, long n2, WorstPair& acc) {
    std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(a) ^ (b << 1)));
    std::vector<std::size_t> idx{a};
    for (std::size_t z : interior_nodes(a, b, m, rng)) idx.push_back(z);
    idx.push_back(b);
    std::vector<double> nodes, values;
    for (std::size_t z : idx) {
      nodes.push_back(grid.coord(z, 0));
      values.push_back(f.values[z]);
    }
    const double v = DividedDifferenceTable<double>(nodes, values).entry(0, idx.size() - 1);
    const double d = grid.step_distance(n2);
    acc.add(std::abs(v), g.values[a] + g.values[b], opt.constant, opt.kappa * h / d, a, b);
  });

  InequalityReport fd_r, dd_r;
  fd_r.name = "finite_difference";
  finish_report(fd_r, w1, opt.constant, coords);
  fd_r.details["pairs"] = fd_plan.describe();
  dd_r.name = "divided_difference";
  finish_report(dd_r, w2, opt.constant, coords);
  dd_r.details["pairs"] = dd_plan.describe();
  WorstPair all = w1;
  all.merge(w2);
  InequalityReport r;
  r.name = "divided_inequality";
  finish_report(r, all, opt.constant, coords);
  r.details["m"] = m;
  r.details["kappa"] = opt.kappa;
  r.details["field"] = g.label;
  r.details["finite_difference"] = fd_r.to_json();
  r.details["divided_difference"] = dd_r.to_json();
  return r;
}

json conjecture31_experiment(const TestFunction& tf, const Grid& grid, int m, const ConjectureOptions& opt) {
  require(grid.dim() == 1, Errc::unsupported_dimension, "the scheme experiment is one-dimensional");
  require(m >= 2, Errc::invalid_argument, "the experiment needs m >= 2");
  require(opt.samples >= 1, Errc::invalid_argument, "at least one sample is required");
  require(tf.differentiable(), Errc::precondition, "the Taylor witness needs analytic derivatives");
  const std::size_t n = grid.size();
  require(n >= static_cast<std::size_t>(m) + 1, Errc::invalid_argument, "grid too coarse for the order");

  struct Sample {
    std::size_t a, b;
    std::vector<std::size_t> inner;
  };
  auto draw = [&](std::uint64_t s) {
    std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(s)));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    Sample out{};
    do {
      out.a = pick(rng);
      out.b = pick(rng);
    } while ((out.a > out.b ? out.a - out.b : out.b - out.a) < static_cast<std::size_t>(m));
    out.inner = interior_nodes(out.a, out.b, m, rng);
    return out;
  };

  const std::size_t workers = worker_count();
  struct Acc {
    std::vector<double> gz, gtw;
    std::vector<std::int64_t> arg;
  };
  std::vector<Acc> acc(workers, Acc{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                                    std::vector<std::int64_t>(n, -1)});
  parallel_for(static_cast<std::size_t>(opt.samples), [&](std::size_t lo, std::size_t hi, std::size_t w) {
    for (std::size_t s = lo; s < hi; ++s) {
      const Sample smp = draw(s);
      const quad x = grid.coord(smp.a, 0), y = grid.coord(smp.b, 0);
      std::vector<quad> nodes{x};
      for (std::size_t z : smp.inner) nodes.push_back(grid.coord(z, 0));
      nodes.push_back(y);
      quad q = 1;
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) q *= y - nodes[i];
      const quad rz = divided_difference_quad(tf, nodes) * q;
      quad taylor = 0, pw = 1;
      for (int k = 0; k < m; ++k) {
        taylor += tf.derivative(x, k) * pw / factorial(k);
        pw *= y - x;
      }
      const quad fy = tf.eval(y);
      const quad rtw = fy - taylor;
      const quad scale = std::max(abs(fy), abs(taylor)) * quad(1e-24);
      const quad norm = pow(abs(y - x), m) * 2;
      const double vz = abs(rz) <= scale ? 0.0 : static_cast<double>(abs(rz) / norm);
      const double vt = abs(rtw) <= scale ? 0.0 : static_cast<double>(abs(rtw) / norm);
      for (std::size_t p : {smp.a, smp.b}) {
        auto& A = acc[w];
        if (vz > A.gz[p] || (vz == A.gz[p] && vz > 0 && static_cast<std::int64_t>(s) < A.arg[p])) {
          A.gz[p] = vz;
          A.arg[p] = static_cast<std::int64_t>(s);
        }
        A.gtw[p] = std::max(A.gtw[p], vt);
      }
    }
  });
  Acc all{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<std::int64_t>(n, -1)};
  for (const auto& A : acc)
    for (std::size_t p = 0; p < n; ++p) {
      if (A.gz[p] > all.gz[p] || (A.gz[p] == all.gz[p] && A.arg[p] >= 0 && (all.arg[p] < 0 || A.arg[p] < all.arg[p]))) {
        all.gz[p] = A.gz[p];
        all.arg[p] = A.arg[p];
      }
      all.gtw[p] = std::max(all.gtw[p], A.gtw[p]);
    }

  double best = 0.0;
  std::int64_t best_point = -1;
  std::vector<std::size_t> flagged;
  std::uint64_t both_zero = 0, tw_zero = 0, visited = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (all.arg[p] < 0 && all.gtw[p] == 0.0 && all.gz[p] == 0.0) {
      // either never sampled or both witnesses vanish: ratio 1 by convention
      ++both_zero;
      if (flagged.size() < 64) flagged.push_back(p);
      continue;
    }
    ++visited;
    if (all.gtw[p] == 0.0) {
      ++tw_zero;
      if (flagged.size() < 64) flagged.push_back(p);
      continue;
    }
    const double ratio = all.gz[p] / all.gtw[p];
    if (ratio > best) {
      best = ratio;
      best_point = static_cast<std::int64_t>(p);
    }
  }
  json j;
  j["name"] = "conjecture31";
  j["label"] = "EXPLORATORY";
  j["m"] = m;
  j["samples"] = opt.samples;
  j["seed"] = opt.seed;
  j["function"] = tf.name();
  j["witness"] = "symmetric splitting of |R(y, x)| / |y - x|^m over sampled pairs";
  if (best_point < 0) {
    j["empirical_C"] = tw_zero > 0 ? number(std::numeric_limits<double>::infinity()) : json(1.0);
    j["worst_point"] = nullptr;
    j["worst_scheme_nodes"] = json::array();
  } else {
    j["empirical_C"] = best;
    const auto p = static_cast<std::size_t>(best_point);
    j["worst_point"] = grid.coord(p, 0);
    const Sample smp = draw(static_cast<std::uint64_t>(all.arg[p]));
    json nodes = json::array({grid.coord(smp.a, 0)});
    for (std::size_t z : smp.inner) nodes.push_back(grid.coord(z, 0));
    nodes.push_back(grid.coord(smp.b, 0));
    j["worst_scheme_nodes"] = nodes;
  }
  j["flagged_points"] = flagged;
  j["zero_witness_points"] = both_zero;
  j["taylor_witness_zero_points"] = tw_zero;
  j["points_with_data"] = visited;
  return j;
}

}  // namespace mqs
