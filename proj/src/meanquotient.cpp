// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/meanquotient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mqsobolev/error.hpp"
#include "mqsobolev/parallel.hpp"
#include "mqsobolev/shells.hpp"

namespace mqs {
namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  require(a == b, Errc::size_mismatch, "function and field live on different grids");
}

// Largest k with k^2 < n2: the farthest per-axis step inside the open ball.
long open_reach(long n2) {
  long k = static_cast<long>(std::sqrt(static_cast<double>(n2)));
  while (k * k >= n2 && k > 0) --k;
  while ((k + 1) * (k + 1) < n2) ++k;
  return k;
}

std::vector<double> coords_of(const Grid& g, std::size_t i) {
  const Point p = g.point(i);
  return g.dim() == 1 ? std::vector<double>{p[0]} : std::vector<double>{p[0], p[1]};
}

auto coords_fn(const Grid& g) {
  return [&g](std::size_t i) { return coords_of(g, i); };
}

// Sup of the ball averages of |f(z) - f(x)| / |z - x| over the first `limit`
// shells. Returns -1 when every ball was empty.
double mq_point(const GridFunction& f, const ShellTable& table, std::size_t x, std::size_t limit) {
  const double fx = f.values[x];
  double best = -1.0;
  walk_shells(
      f.grid, table, x, limit,
      [&](std::size_t z, double radius) { return std::abs(f.values[z] - fx) / radius; },
      [&](std::size_t, double sum, std::size_t count) {
        if (count > 0) best = std::max(best, sum / static_cast<double>(count));
      });
  return best;
}

std::size_t cap_limit(const ShellTable& table, double cap) {
  return std::isinf(cap) ? table.shells().size() : table.shells_within(cap);
}

PairSet make_pairs(const Grid& g, bool interior_only) {
  PairSet set{g, {}, {}};
  if (interior_only) {
    set.max_n2 = [&g](std::size_t a) {
      const long m = g.margin(a);
      return (m + 1) * (m + 1);
    };
    set.accept = [&g](std::size_t a, std::size_t b, long n2) { return interior_pair(g, a, b, n2); };
  }
  return set;
}

// Points z != 0, o of the lattice lens |z|^2 < n2, |z - o|^2 < n2, n2 = |o|^2.
std::uint64_t lattice_lens(const Lattice& o, int dim) {
  const long n2 = o[0] * o[0] + o[1] * o[1];
  if (dim == 1) return static_cast<std::uint64_t>(std::abs(o[0]) - 1);
  const long k = open_reach(n2);
  std::uint64_t n = 0;
  for (long z1 = -k; z1 <= k; ++z1)
    for (long z0 = -k; z0 <= k; ++z0) {
      if (z0 * z0 + z1 * z1 >= n2) continue;
      const long d0 = z0 - o[0], d1 = z1 - o[1];
      if (d0 * d0 + d1 * d1 >= n2) continue;
      if ((z0 == 0 && z1 == 0) || (z0 == o[0] && z1 == o[1])) continue;
      ++n;
    }
  return n;
}

void attach_plan(InequalityReport& r, const PairPlan& plan, const PairOptions& opt) {
  r.details["pairs"] = plan.describe();
  r.details["interior_only"] = opt.interior_only;
  r.details["averages"] = "counting measure over grid points";
}

}  // namespace

bool interior_pair(const Grid& grid, std::size_t a, std::size_t b, long n2) {
  const long k = open_reach(n2);
  return k <= grid.margin(a) && k <= grid.margin(b);
}

double mean_quotient_at(const GridFunction& f, std::size_t x, double r) {
  const Grid& g = f.grid;
  require(x < g.size(), Errc::invalid_argument, "point index out of range");
  require(r > 0.0, Errc::invalid_argument, "radius must be positive");
  const ShellTable table(g);
  double value = 0.0;
  std::size_t n = 0;
  const double fx = f.values[x];
  walk_shells(
      g, table, x, table.shells_within(r),
      [&](std::size_t z, double radius) { return std::abs(f.values[z] - fx) / radius; },
      [&](std::size_t, double sum, std::size_t count) {
        n = count;
        if (count > 0) value = sum / static_cast<double>(count);
      });
  require(n > 0, Errc::empty_set, "ball contains no grid point besides its center");
  return value;
}

MQField mq_field(const GridFunction& f, double cap) {
  require(cap > 0.0, Errc::invalid_argument, "radius cap must be positive");
  const Grid& g = f.grid;
  const ShellTable table(g);
  const std::size_t limit = cap_limit(table, cap);
  std::vector<double> out(g.size(), 0.0);
  std::vector<std::uint8_t> empty(g.size(), 0);
  parallel_for(g.size(), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t x = b; x < e; ++x) {
      const double v = mq_point(f, table, x, limit);
      if (v < 0.0) empty[x] = 1;
      out[x] = std::max(v, 0.0);
    }
  });
  MQField m{ScalarField(g, std::move(out), std::isinf(cap) ? "mq" : "mq_capped"), cap, std::move(empty), 0};
  m.empty_count = static_cast<std::size_t>(std::count(m.empty.begin(), m.empty.end(), 1));
  return m;
}

double lens_constant(int dim) {
  if (dim == 1) return 2.0;
  if (dim == 2) return std::numbers::pi / (2.0 * std::numbers::pi / 3.0 - std::sqrt(3.0) / 2.0);
  fail(Errc::unsupported_dimension, "lens constant is implemented for dimensions 1 and 2");
}

InequalityReport verify_pointwise(const GridFunction& f, const ScalarField& gf, double c,
                                  const PairOptions& opt) {
  require_same_grid(f.grid, gf.grid);
  require(c > 0.0, Errc::invalid_argument, "constant must be positive");
  require(opt.kappa >= 0.0, Errc::invalid_argument, "tolerance factor must be nonnegative");
  const Grid& g = f.grid;
  const PairSet set = make_pairs(g, opt.interior_only);
  PairPlan plan;
  plan.budget = opt.budget;
  plan.seed = opt.seed;
  const double h = g.h();
  const WorstPair w = run_pairs(set, plan, [&](std::size_t a, std::size_t b, long n2, WorstPair& acc) {
    const double d = g.step_distance(n2);
    const double lhs = std::abs(f.values[a] - f.values[b]);
    const double rhs = d * (gf.values[a] + gf.values[b]);
    acc.add(lhs, rhs, c, opt.kappa * h / d, a, b);
  });
  InequalityReport r;
  r.name = "pointwise";
  finish_report(r, w, c, coords_fn(g));
  attach_plan(r, plan, opt);
  r.details["kappa"] = opt.kappa;
  r.details["field"] = gf.label;
  return r;
}

InequalityReport verify_lens_chain(const GridFunction& f, const PairOptions& opt) {
  const Grid& g = f.grid;
  const ShellTable table(g);
  const std::size_t n = g.size();
  const bool interior = opt.interior_only;
  if (!interior && g.dim() == 2)
    require(n <= 4096, Errc::resource, "clipped lens counting in 2D is limited to 4096 grid points");

  // Shells each point needs: enough to cover its farthest admissible partner.
  std::vector<std::size_t> need(n);
  std::uint64_t total = 0;
  long max_n2 = 0;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t s = table.reach(g, x);
    if (interior) {
      const long m = g.margin(x);
      s = std::min(s, table.shells_below((m + 1) * (m + 1) + 1));
      max_n2 = std::max(max_n2, (m + 1) * (m + 1));
    }
    need[x] = s;
    total += s;
  }
  require(total <= 60'000'000, Errc::resource, "prefix-mean tables exceed the memory budget");

  // mean[x][s]: average over the ball closed at shell s; count[x][s] its size.
  std::vector<std::vector<double>> mean(n);
  std::vector<std::vector<std::uint32_t>> count(interior ? 0 : n);
  parallel_for(n, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t x = b; x < e; ++x) {
      mean[x].resize(need[x]);
      if (!interior) count[x].resize(need[x]);
      const double fx = f.values[x];
      walk_shells(
          g, table, x, need[x],
          [&](std::size_t z, double radius) { return std::abs(f.values[z] - fx) / radius; },
          [&](std::size_t s, double sum, std::size_t c) {
            mean[x][s] = c > 0 ? sum / static_cast<double>(c) : 0.0;
            if (!interior) count[x][s] = static_cast<std::uint32_t>(c);
          });
    }
  });

  // Interior lens sizes depend only on the offset, up to reflections.
  const long side = interior ? open_reach(max_n2) + 2 : 0;
  std::vector<std::uint64_t> lens_memo;
  if (interior) {
    lens_memo.assign(static_cast<std::size_t>(side * side), 0);
    parallel_for(static_cast<std::size_t>(side), [&](std::size_t b, std::size_t e, std::size_t) {
      for (std::size_t i = b; i < e; ++i)
        for (long j = 0; j < side; ++j) {
          const long o0 = static_cast<long>(i), o1 = g.dim() == 1 ? 0 : j;
          if ((g.dim() == 1 && j > 0) || o0 * o0 + o1 * o1 > max_n2 || (o0 == 0 && o1 == 0)) continue;
          lens_memo[i * side + j] = lattice_lens({o0, o1}, g.dim());
        }
    });
  }
  auto clipped_lens = [&](std::size_t a, std::size_t b, long n2) -> std::uint64_t {
    const Lattice la = g.lattice(a), lb = g.lattice(b);
    if (g.dim() == 1) return static_cast<std::uint64_t>(std::abs(la[0] - lb[0]) - 1);
    const long k = open_reach(n2);
    std::uint64_t c = 0;
    for (long z1 = std::max(0L, la[1] - k); z1 <= std::min(g.count(1) - 1, la[1] + k); ++z1)
      for (long z0 = std::max(0L, la[0] - k); z0 <= std::min(g.count(0) - 1, la[0] + k); ++z0) {
        const long a0 = z0 - la[0], a1 = z1 - la[1], b0 = z0 - lb[0], b1 = z1 - lb[1];
        if (a0 * a0 + a1 * a1 >= n2 || b0 * b0 + b1 * b1 >= n2) continue;
        if ((a0 == 0 && a1 == 0) || (b0 == 0 && b1 == 0)) continue;
        ++c;
      }
    return c;
  };

  const PairSet set = make_pairs(g, interior);
  PairPlan plan;
  plan.budget = opt.budget;
  plan.seed = opt.seed;
  std::vector<std::uint64_t> empty_lens(worker_count(), 0);
  const WorstPair w = run_pairs(set, plan, [&](std::size_t a, std::size_t b, long n2, WorstPair& acc) {
    std::uint64_t lens;
    if (interior) {
      const Lattice la = g.lattice(a), lb = g.lattice(b);
      const long o0 = std::abs(la[0] - lb[0]), o1 = std::abs(la[1] - lb[1]);
      lens = lens_memo[static_cast<std::size_t>(o0 * side + o1)];
    } else {
      lens = clipped_lens(a, b, n2);
    }
    if (lens == 0) return;  // the averaging argument needs a lens point
    const std::size_t s = table.shells_below(n2) - 1;  // ball of radius |a - b|
    const double ba = interior ? static_cast<double>(table.ball_size(n2)) : count[a][s];
    const double bb = interior ? ba : count[b][s];
    const double l = static_cast<double>(lens);
    const double d = g.step_distance(n2);
    const double lhs = std::abs(f.values[a] - f.values[b]) / d;
    const double rhs = ba / l * mean[a][s] + bb / l * mean[b][s];
    acc.add(lhs, rhs, 1.0, 0.0, a, b);
  });
  InequalityReport r;
  r.name = "lens_chain";
  finish_report(r, w, 1.0, coords_fn(g));
  attach_plan(r, plan, opt);
  return r;
}

InequalityReport smg_lattice_check(const GridFunction& f, const ScalarField& g1, const ScalarField& g2, double c,
                                   const PairOptions& opt) {
  require_same_grid(f.grid, g1.grid);
  require_same_grid(f.grid, g2.grid);
  const InequalityReport r1 = verify_pointwise(f, g1, c, opt);
  const InequalityReport r2 = verify_pointwise(f, g2, c, opt);
  require(r1.pass && r2.pass, Errc::precondition, "both candidate gradients must pass verify_pointwise first");
  std::vector<double> lo(f.values.size()), up(f.values.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::min(g1.values[i], g2.values[i]);
    up[i] = g1.values[i] + g2.values[i];
  }
  const InequalityReport rmin = verify_pointwise(f, ScalarField(f.grid, std::move(lo), "min"), c, opt);
  const InequalityReport rsum = verify_pointwise(f, ScalarField(f.grid, std::move(up), "sum"), c, opt);
  InequalityReport r = rmin;
  r.name = "smg_lattice";
  r.pass = rmin.pass && rsum.pass;
  r.details = json::object();
  r.details["min"] = rmin.to_json();
  r.details["upward_closure"] = rsum.to_json();
  r.details["note"] = "the minimum of two gradients is not a gradient in general; this is an empirical check";
  return r;
}

InequalityReport verify_minimality(const GridFunction& f, const ScalarField& gf, const PairOptions& opt,
                                   double kappa) {
  require_same_grid(f.grid, gf.grid);
  PairOptions exact = opt;
  exact.interior_only = false;
  exact.kappa = 0.0;
  const InequalityReport pre = verify_pointwise(f, gf, 1.0, exact);
  require(pre.pass, Errc::precondition, "g does not satisfy the pointwise inequality with constant 1");

  const Grid& g = f.grid;
  const MQField mq = mq_field(f);
  const GridFunction gfun(g, gf.values);
  const ScalarField mg = centered_maximal(gfun);
  const ShellTable table(g);
  // Center-free maximal function of g over the same balls as MQ.
  std::vector<double> m0(g.size(), 0.0);
  parallel_for(g.size(), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t x = b; x < e; ++x) {
      double best = 0.0;
      walk_shells(
          g, table, x, table.shells().size(), [&](std::size_t z, double) { return gf.values[z]; },
          [&](std::size_t, double sum, std::size_t c) {
            if (c > 0) best = std::max(best, sum / static_cast<double>(c));
          });
      m0[x] = best;
    }
  });
  WorstPair first, second, discrete;
  const double tol = kappa * g.h();
  for (std::size_t x = 0; x < g.size(); ++x) {
    first.add(mq.base.values[x], gf.values[x] + mg.values[x], 1.0, tol, x, x);
    second.add(gf.values[x] + mg.values[x], 2.0 * mg.values[x], 1.0, 0.0, x, x);
    discrete.add(mq.base.values[x], gf.values[x] + m0[x], 1.0, 0.0, x, x);
  }
  auto sub = [&](const char* name, const WorstPair& w) {
    InequalityReport s;
    s.name = name;
    finish_report(s, w, 1.0, coords_fn(g));
    return s;
  };
  const InequalityReport r1 = sub("mq_le_g_plus_maximal", first);
  const InequalityReport r2 = sub("g_plus_maximal_le_twice_maximal", second);
  const InequalityReport r3 = sub("mq_le_g_plus_centerfree_maximal", discrete);
  InequalityReport r = r1;
  r.name = "minimality";
  r.pass = r1.pass && r2.pass && r3.pass;
  r.details["kappa"] = kappa;
  r.details["second"] = r2.to_json();
  r.details["discrete_exact"] = r3.to_json();
  return r;
}

InequalityReport verify_grad_domination(const GridFunction& f, double kappa) {
  const Grid& g = f.grid;
  const MQField mq = mq_field(f);
  const ScalarField grad = gradient(f).norm();
  const ScalarField mg = centered_maximal(GridFunction(g, grad.values));
  WorstPair w;
  const double tol = kappa * g.h();
  std::uint64_t skipped = 0;
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (g.margin(x) < 1) {
      ++skipped;
      continue;
    }
    w.add(mq.base.values[x], mg.values[x], 1.0, tol, x, x);
  }
  InequalityReport r;
  r.name = "grad_domination";
  finish_report(r, w, 1.0, coords_fn(g));
  r.details["kappa"] = kappa;
  r.details["boundary_points_skipped"] = skipped;
  return r;
}

std::pair<double, double> poincare_pointwise(const GridFunction& f, std::size_t x, double r) {
  const Grid& g = f.grid;
  require(x < g.size(), Errc::invalid_argument, "point index out of range");
  const auto ball = ball_indices(g, x, r);
  require(!ball.empty(), Errc::empty_set, "ball contains no grid point besides its center");
  double sum = f.values[x];
  for (std::size_t z : ball) sum += f.values[z];
  const double avg = sum / static_cast<double>(ball.size() + 1);
  const ShellTable table(g);
  const double mq = std::max(mq_point(f, table, x, table.shells().size()), 0.0);
  return {std::abs(f.values[x] - avg), r * mq};
}

InequalityReport poincare_check(const GridFunction& f, double r, double p) {
  require(r > 0.0 && std::isfinite(r), Errc::invalid_argument, "radius must be positive");
  const Grid& g = f.grid;
  const MQField mq = mq_field(f);
  WorstPair w;
  std::uint64_t empty = 0;
  for (std::size_t x = 0; x < g.size(); ++x) {
    const auto ball = ball_indices(g, x, r);
    if (ball.empty()) {
      ++empty;
      continue;
    }
    double sum = f.values[x];
    for (std::size_t z : ball) sum += f.values[z];
    const double avg = sum / static_cast<double>(ball.size() + 1);
    w.add(std::abs(f.values[x] - avg), r * mq.base.values[x], 1.0, 0.0, x, x);
  }
  InequalityReport rep;
  rep.name = "poincare";
  finish_report(rep, w, 1.0, coords_fn(g));
  rep.details["radius"] = r;
  rep.details["empty_balls"] = empty;
  rep.details["p"] = p;
  rep.details["integral_witness"] = number(poincare_integral(f, p));
  return rep;
}

double poincare_integral(const GridFunction& f, double p) {
  require(p >= 1.0, Errc::invalid_argument, "p must be at least 1");
  const Grid& g = f.grid;
  const ScalarField grad = gradient(f).norm();
  const double n = static_cast<double>(g.size());
  double mean = 0.0;
  for (double v : f.values) mean += v;
  mean /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    num += std::pow(std::abs(f.values[i] - mean), p);
    den += std::pow(grad.values[i], p);
  }
  num = std::pow(num / n, 1.0 / p);
  den = g.diameter() * std::pow(den / n, 1.0 / p);
  if (num == 0.0) return 0.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

InequalityReport holder_check(const GridFunction& f, double p, const PairOptions& opt) {
  require(p > 1.0, Errc::invalid_argument, "p must exceed 1");
  const Grid& g = f.grid;
  require(g.dim() == 1, Errc::unsupported_dimension, "the Hölder check is one-dimensional");
  const ScalarField grad = gradient(f).norm();
  double s = 0.0;
  for (double v : grad.values) s += std::pow(v, p);
  const double norm = std::pow(s * g.h(), 1.0 / p);
  const double alpha = 1.0 - 1.0 / p;
  const PairSet set = make_pairs(g, false);
  PairPlan plan;
  plan.budget = opt.budget;
  plan.seed = opt.seed;
  const WorstPair w = run_pairs(set, plan, [&](std::size_t a, std::size_t b, long n2, WorstPair& acc) {
    const double d = g.step_distance(n2);
    acc.add(std::abs(f.values[a] - f.values[b]), std::pow(d, alpha) * norm, 1.0, opt.kappa * g.h() / d, a, b);
  });
  InequalityReport r;
  r.name = "holder";
  finish_report(r, w, 1.0, coords_fn(g));
  attach_plan(r, plan, opt);
  r.details["p"] = p;
  r.details["gradient_norm"] = number(norm);
  r.details["kappa"] = opt.kappa;
  return r;
}

}  // namespace mqs
