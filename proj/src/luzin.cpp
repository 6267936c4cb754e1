// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/luzin.hpp"

#include <algorithm>
#include <cmath>

#include "mqsobolev/error.hpp"
#include "mqsobolev/interpolation.hpp"
#include "mqsobolev/meanquotient.hpp"
#include "mqsobolev/parallel.hpp"

namespace mqs {
namespace {

constexpr double unit_roundoff = 0x1p-53;

double cell(const Grid& g) { return g.dim() == 1 ? g.h() : g.h() * g.h(); }

double diameter(const Grid& g) {
  const Point a = g.point(0), b = g.point(g.size() - 1);
  return std::hypot(b[0] - a[0], b[1] - a[1]);
}

}  // namespace

LevelSet sublevel_set(const ScalarField& g, double L) {
  require(L >= 0.0 && std::isfinite(L), Errc::invalid_argument, "level must be finite and nonnegative");
  LevelSet e{g.grid, std::vector<std::uint8_t>(g.values.size(), 0), L, 0, 0.0};
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    e.member[i] = g.values[i] <= L ? 1 : 0;
    e.member_count += e.member[i];
  }
  e.complement_measure = static_cast<double>(g.values.size() - e.member_count) * cell(g.grid);
  return e;
}

TschebyscheffReport tschebyscheff_check(const ScalarField& g, const std::vector<double>& ladder) {
  require(!ladder.empty(), Errc::invalid_argument, "ladder must be nonempty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    require(ladder[i] > 0.0 && std::isfinite(ladder[i]), Errc::invalid_argument, "ladder values must be positive");
    require(i == 0 || ladder[i] > ladder[i - 1], Errc::invalid_argument, "ladder must be increasing");
  }
  quad sum = 0;
  for (double v : g.values) sum += v;
  const double c = cell(g.grid);
  TschebyscheffReport r;
  r.l1_norm = static_cast<double>(sum * c);
  double prev = std::numeric_limits<double>::infinity();
  for (double L : ladder) {
    const LevelSet e = sublevel_set(g, L);
    const std::size_t outside = g.values.size() - e.member_count;
    // count * L <= sum g, compared without rounding the sum to double
    const bool ok = quad(outside) * L <= sum;
    r.rungs.push_back({L, e.complement_measure, static_cast<double>(sum * c / L), ok});
    r.monotone = r.monotone && e.complement_measure <= prev;
    r.pass = r.pass && ok;
    prev = e.complement_measure;
  }
  r.pass = r.pass && r.monotone;
  return r;
}

json TschebyscheffReport::to_json() const {
  json j;
  j["name"] = "tschebyscheff";
  j["l1_norm"] = number(l1_norm);
  j["rungs"] = json::array();
  for (const auto& s : rungs)
    j["rungs"].push_back({{"L", s.L}, {"measure", s.measure}, {"bound", number(s.bound)}, {"pass", s.pass}});
  j["monotone"] = monotone;
  j["pass"] = pass;
  return j;
}

double guarded_lambda(const GridFunction& f, const LevelSet& E, double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), Errc::invalid_argument, "lambda must be positive");
  double fmax = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (E.member[i]) fmax = std::max(fmax, std::abs(f.values[i]));
  const double scale = fmax + lambda * diameter(f.grid);
  // each candidate carries at most about 5u of scale in error; leave 32u of room
  const double eta = 32.0 * unit_roundoff * scale / (lambda * f.grid.h());
  require(eta < 0.5, Errc::precondition, "lambda is too small for a rounding-safe extension at this scale");
  return lambda * (1.0 - eta);
}

GridFunction mcshane_extend(const GridFunction& f, const LevelSet& E, double lambda) {
  require(f.grid == E.grid, Errc::size_mismatch, "function and level set live on different grids");
  require(E.member_count > 0, Errc::empty_set, "extension needs a nonempty set");
  const double lam = guarded_lambda(f, E, lambda);
  const Grid& g = f.grid;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (E.member[i]) members.push_back(i);
  std::vector<double> out(g.size());
  const double h = g.h();
  parallel_for(g.size(), [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t x = b; x < e; ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t y : members)
        best = std::min(best, f.values[y] + lam * (h * std::sqrt(static_cast<double>(g.squared_steps(x, y)))));
      out[x] = best;
    }
  });
  return GridFunction(g, std::move(out));
}

LipschitzReport lipschitz_check(const GridFunction& f, double lambda, const std::vector<std::uint8_t>* subset) {
  const Grid& g = f.grid;
  const std::size_t n = g.size();
  require(subset == nullptr || subset->size() == n, Errc::size_mismatch, "subset flags differ from the grid");
  const std::size_t workers = worker_count();
  std::vector<double> witness(workers, 0.0);
  std::vector<std::uint64_t> pairs(workers, 0), bad(workers, 0);
  const double h = g.h();
  const quad lam_q = lambda, h_q = h;
  // accept in double when the margin beats the evaluation error, otherwise decide in extended precision
  const double filter = 1.0 - 16.0 * unit_roundoff;
  parallel_for(n, [&](std::size_t lo, std::size_t hi, std::size_t w) {
    for (std::size_t a = lo; a < hi; ++a) {
      if (subset && !(*subset)[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (subset && !(*subset)[b]) continue;
        const long n2 = g.squared_steps(a, b);
        const double d = h * std::sqrt(static_cast<double>(n2));
        const double diff = std::abs(f.values[a] - f.values[b]);
        witness[w] = std::max(witness[w], diff / d);
        ++pairs[w];
        if (diff <= lambda * d * filter) continue;
        const quad dq = abs(quad(f.values[a]) - quad(f.values[b]));
        if (dq * dq > lam_q * lam_q * h_q * h_q * n2) ++bad[w];
      }
    }
  });
  LipschitzReport r;
  r.lambda = lambda;
  for (std::size_t w = 0; w < workers; ++w) {
    r.witness = std::max(r.witness, witness[w]);
    r.pairs += pairs[w];
    r.pass = r.pass && bad[w] == 0;
  }
  return r;
}

LuzinResult luzin_pipeline(const GridFunction& f, double L, double cap) {
  const MQField mq = mq_field(f, cap);
  LevelSet E = sublevel_set(mq.base, L);
  require(E.member_count > 0, Errc::empty_set, "level set is empty: L is below the minimum of MQf");
  const double lambda = 2.0 * lens_constant(f.grid.dim()) * L;
  GridFunction approx = mcshane_extend(f, E, lambda);
  LuzinResult r{approx, E, lambda, guarded_lambda(f, E, lambda), E.complement_measure, {}, {}, 0.0};
  r.approximant_lipschitz = lipschitz_check(approx, lambda);
  r.level_set_lipschitz = lipschitz_check(f, lambda, &E.member);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (E.member[i]) r.agreement_defect = std::max(r.agreement_defect, f.values[i] - approx.values[i]);
  return r;
}

json LuzinResult::to_json() const {
  json j;
  j["name"] = "luzin";
  j["L"] = level.L;
  j["exceptional_measure"] = exceptional_measure;
  j["lipschitz_witness"] = approximant_lipschitz.witness;
  j["lambda"] = lambda;
  j["lambda_effective"] = lambda_effective;
  j["level_set_size"] = level.member_count;
  j["approximant_lipschitz"] = approximant_lipschitz.pass;
  j["pairs_checked"] = approximant_lipschitz.pairs;
  j["level_set_lipschitz_constant"] = level_set_lipschitz.witness;
  j["level_set_lipschitz"] = level_set_lipschitz.pass;
  j["agreement_defect"] = agreement_defect;
  j["pass"] = approximant_lipschitz.pass;
  return j;
}

}  // namespace mqs
