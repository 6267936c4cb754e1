// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Reference values come from brute-force oracles written here, not from the
// library code paths under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mqsobolev/corpus.hpp"
#include "mqsobolev/interpolation.hpp"
#include "mqsobolev/jets.hpp"
#include "mqsobolev/luzin.hpp"
#include "mqsobolev/maximal.hpp"
#include "mqsobolev/meanquotient.hpp"
#include "mqsobolev/mms.hpp"
#include "support.hpp"

#ifndef MQS_CLI_PATH
#error "MQS_CLI_PATH must name the command-line binary"
#endif

namespace {

using namespace mqs;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::ostringstream note;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (std::find(failures.begin(), failures.end(), what) == failures.end()) failures.push_back(what);
    }
  }
};

// Short label: the kind without its parameters.
std::string label(const TestFunction& tf) {
  const std::string n = tf.name();
  return n.substr(0, n.find(':'));
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<TestFunction> corpus_2d() {
  return {TestFunction::polynomial({0.3, -1.0, 0.5, 2.0}), TestFunction::holder_cusp(0.5),
          TestFunction::weierstrass(), TestFunction::sine(2 * std::numbers::pi),
          TestFunction::indicator({-0.3, 0.4, -0.5, 0.2}), TestFunction::exponential(1.5)};
}

void lens_constants(Verdict& v) {
  const auto t0 = Clock::now();
  v.require(lens_constant(1) == 2.0, "c(1) == 2");
  const double closed = std::numbers::pi / (2 * std::numbers::pi / 3 - std::sqrt(3.0) / 2);
  v.require(std::abs(lens_constant(2) - closed) <= 1e-15 * closed, "c(2) closed form");
  // midpoint-rule area of the unit lens
  const int n = 1500;
  long inside = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = -0.5 + 2.0 * (i + 0.5) / n, y = -1.0 + 2.0 * (j + 0.5) / n;
      if (x * x + y * y < 1 && (x - 1) * (x - 1) + y * y < 1) ++inside;
    }
  const double oracle = std::numbers::pi / (static_cast<double>(inside) * 4.0 / (double(n) * n));
  const double rel = std::abs(oracle - lens_constant(2)) / lens_constant(2);
  v.require(rel <= 1e-3, "area oracle within 1e-3");
  const double t = seconds_since(t0);
  v.require(t < 1.0, "runtime < 1 s");
  v.note << "c(2) = " << fmt(lens_constant(2)) << ", area oracle rel err " << fmt(rel) << ", " << fmt(t) << " s";
}

void exact_chain(Verdict& v) {
  PairOptions opt;
  opt.interior_only = true;
  opt.budget = 10'000'000;
  double slowest = 0, worst = 0;
  std::size_t runs = 0;
  auto run = [&](const TestFunction& tf, const Grid& g) {
    const auto t0 = Clock::now();
    const auto r = verify_lens_chain(sample(tf, g), opt);
    const double t = seconds_since(t0);
    slowest = std::max(slowest, t);
    worst = std::max(worst, r.worst_ratio);
    ++runs;
    v.require(r.pass && r.tolerance == 0.0 && r.pairs_checked > 0, label(tf) + " on " + std::to_string(g.size()));
    v.require(t < 60.0, label(tf) + " runtime < 60 s");
  };
  const Grid line = oracle::line(-1, 1, 1e-3);  // 2001 points
  for (const auto& tf : oracle::corpus_1d()) run(tf, line);
  const Grid sq = oracle::square(-1, 1, 1.0 / 64);  // 129 x 129
  for (const auto& tf : corpus_2d()) run(tf, sq);
  v.note << runs << " runs (2001 and 129^2 points), worst ratio " << fmt(worst) << ", slowest " << fmt(slowest)
         << " s";
}

void analytic_constant(Verdict& v) {
  struct Rungs {
    int dim;
    double h1, h2;
  };
  std::ostringstream trend;
  bool decreasing = true;
  for (const Rungs& rg : {Rungs{1, 1.0 / 32, 1.0 / 64}, Rungs{2, 1.0 / 8, 1.0 / 16}})
    for (const auto& tf : oracle::smooth_corpus()) {
      double ratio[2];
      int k = 0;
      for (double h : {rg.h1, rg.h2}) {
        const Grid g = rg.dim == 1 ? oracle::line(-1, 1, h) : oracle::square(-1, 1, h);
        const auto f = sample(tf, g);
        const auto r = verify_pointwise(f, mq_field(f).base, lens_constant(rg.dim));
        v.require(r.pass, label(tf) + " " + std::to_string(rg.dim) + "D passes at h=" + fmt(h));
        ratio[k++] = r.worst_ratio;
      }
      trend << " " << label(tf) << "/" << rg.dim << "D " << fmt(ratio[0]) << "->" << fmt(ratio[1]);
      if (!(ratio[1] < ratio[0])) decreasing = false;
    }
  v.require(decreasing, "worst ratio decreases as h halves");
  v.note << "c = c(n), tol = 4h/|x-y|; worst ratio by rung:" << trend.str();
}

void grad_domination(Verdict& v) {
  double worst = 0;
  for (const auto& tf : {TestFunction::polynomial({0.3, -1.0, 0.5, 2.0}), TestFunction::polynomial({0, 0, 1}),
                         TestFunction::sine(2 * std::numbers::pi), TestFunction::sine(1.0)})
    for (int dim : {1, 2}) {
      const Grid g = dim == 1 ? oracle::line(-1, 1, 1.0 / 64) : oracle::square(-1, 1, 1.0 / 16);
      const auto r = verify_grad_domination(sample(tf, g), 4.0);
      v.require(r.pass, label(tf) + " " + std::to_string(dim) + "D");
      worst = std::max(worst, r.worst_ratio);
    }
  v.note << "polynomial and sine, 1D and 2D, worst MQf / M(|grad f|) " << fmt(worst);
}

void sandwich(Verdict& v) {
  const Grid g = oracle::line(-1, 1, 1.0 / 128);
  double worst = 0;
  for (const auto& tf : oracle::corpus_1d()) {
    const auto r = sandwich_check(sample(tf, g));
    v.require(r.pass && r.tolerance == 0.0, label(tf));
    worst = std::max(worst, r.worst_ratio);
  }
  double dev = 0;
  for (double h : {1.0 / 64, 1.0 / 128, 1.0 / 256}) {
    const Grid s = oracle::line(0, 4, h);
    const auto f = sample(TestFunction::indicator({0, 1}), s);
    const auto u = uncentered_maximal(f).values;
    for (double x : {1.0, 1.5, 2.0, 3.0, 4.0}) {
      const std::size_t i = static_cast<std::size_t>(std::lround(x / h));
      const double err = std::abs(u[i] - 1.0 / x);
      v.require(err <= 2 * h, "uncentered indicator at x=" + fmt(x) + " h=" + fmt(h));
      dev = std::max(dev, err / h);
    }
  }
  v.note << "worst Mf / M^f " << fmt(worst) << "; max |M 1_[0,1](x) - 1/x| = " << fmt(dev) << " h";
}

void interpolation(Verdict& v) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  auto random_nodes = [&](int count) {
    std::vector<double> n;
    while (static_cast<int>(n.size()) < count) {
      const double x = u(rng);
      if (std::all_of(n.begin(), n.end(), [&](double y) { return std::abs(x - y) > 1e-3; })) n.push_back(x);
    }
    std::sort(n.begin(), n.end());
    return n;
  };
  double exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<double> coeffs(static_cast<std::size_t>(1 + trial % (n + 1)));
    for (double& c : coeffs) c = u(rng);
    const auto p = TestFunction::polynomial(coeffs);
    const double t = u(rng);
    const auto rr = remainder(p, InterpolationScheme(random_nodes(n + 1)), t);
    exact = std::max(exact, std::abs(rr.value) / std::max(1.0, std::abs(p.eval(t))));
  }
  v.require(exact <= 1e-12, "polynomial remainder vanishes");

  std::uniform_real_distribution<double> w(-0.9, 0.9);
  double ident = 0;
  for (const auto& tf : oracle::corpus_1d())
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + trial % 5;
      std::vector<double> nodes;
      while (static_cast<int>(nodes.size()) < n + 1) {
        const double x = w(rng);
        if (std::all_of(nodes.begin(), nodes.end(), [&](double y) { return std::abs(x - y) > 1e-2; }))
          nodes.push_back(x);
      }
      std::sort(nodes.begin(), nodes.end());
      const auto rr = remainder(tf, InterpolationScheme(nodes), w(rng));
      ident = std::max(ident, rr.relative_error);
    }
  v.require(ident <= 1e-10, "remainder identity");

  const auto lim = dd_limit_check(TestFunction::exponential(1.0), 0.0, 2, 20);
  v.require(lim.monotone, "exp ladder monotone");
  v.require(lim.final_error <= 1e-6, "exp ladder final error <= 1e-6");
  v.require(lim.eps.size() == 20 && lim.eps.back() == std::ldexp(1.0, -20), "ladder ends at 2^-20");
  v.note << "max polynomial remainder " << fmt(exact) << ", identity rel err " << fmt(ident)
         << ", exp ladder final error " << fmt(lim.final_error);
}

void equidistant(Verdict& v) {
  std::ostringstream norms;
  for (int m : {2, 3}) {
    // brute force: R = f(x_m) - p(x_m) over monomials, against Delta^m
    double lo = INFINITY, hi = -INFINITY;
    for (int deg : {m, m + 1})
      for (double x : {-0.5, 0.25, 1.0})
        for (double h : {0.5, 0.125}) {
          std::vector<double> c(static_cast<std::size_t>(deg + 1), 0.0);
          c.back() = 1.0;
          const auto mono = TestFunction::polynomial(c);
          std::vector<double> nodes, vals;
          for (int i = 0; i < m; ++i) {
            nodes.push_back(x + i * h);
            vals.push_back(mono.eval(x + i * h));
          }
          // Lagrange form of the interpolant at x + m h
          const double t = x + m * h;
          double p = 0;
          for (int i = 0; i < m; ++i) {
            double l = 1;
            for (int j = 0; j < m; ++j)
              if (j != i) l *= (t - nodes[j]) / (nodes[i] - nodes[j]);
            p += vals[i] * l;
          }
          double delta = 0, binom = 1;
          for (int i = 0; i <= m; ++i) {
            delta += ((m - i) % 2 ? -1 : 1) * binom * mono.eval(x + i * h);
            binom = binom * (m - i) / (i + 1);
          }
          const double ratio = (mono.eval(t) - p) / delta;
          lo = std::min(lo, ratio);
          hi = std::max(hi, ratio);
        }
    v.require(hi - lo <= 1e-12, "normalization constant across monomials, m=" + std::to_string(m));
    v.require(std::abs(equidistant_normalization(m) - lo) <= 1e-12, "library normalization, m=" + std::to_string(m));
    norms << " m=" << m << ": " << fmt(lo);
  }
  double worst = 0;
  for (const auto& tf : oracle::smooth_corpus())
    for (int m : {2, 3})
      for (double x : {-0.7, 0.3})
        for (double h : {1e-1, 1e-2, 1e-3}) {
          const auto r = equidistant_identity_check(tf, x, h, m);
          v.require(r.pass, label(tf) + " m=" + std::to_string(m) + " h=" + fmt(h));
          worst = std::max(worst, r.worst_ratio);
        }
  v.note << "normalization" << norms.str() << "; identity checked on the smooth corpus";
}

void jet_algebra(Verdict& v) {
  double worst = 0, lemma = 0;
  std::uint64_t tuples = 0, triples = 0;
  for (const auto& tf : oracle::smooth_corpus()) {
    const auto a = jet_identity_suite(tf, oracle::line(-1, 1, 1.0 / 16), 3, 1000, 7);
    const auto b = jet_identity_suite(tf, oracle::square(-1, 1, 1.0 / 8), 2, 1000, 7);
    v.require(a.pass && a.threshold <= 1e-10, label(tf) + " 1D identities");
    v.require(b.pass && b.threshold <= 1e-10, label(tf) + " 2D identities");
    worst = std::max({worst, a.max_relative_error, b.max_relative_error});
    tuples += a.checked + b.checked;
    for (const Grid& g : {oracle::line(-1, 1, 1.0 / 64), oracle::square(-1, 1, 1.0 / 16)}) {
      const auto r = second_order_lemma_check(tf, g, {100'000, 3});
      v.require(r.pass && r.tolerance == 0.0, label(tf) + " lemma");
      lemma = std::max(lemma, r.worst_ratio);
      triples += r.pairs_checked;
    }
  }
  v.note << tuples << " identity evaluations, max rel err " << fmt(worst) << "; " << triples
         << " lemma triples, worst ratio " << fmt(lemma);
}

void luzin(Verdict& v) {
  const Grid g = oracle::line(-1, 1, 1.0 / 512);
  const auto f = sample(TestFunction::holder_cusp(0.5), g);
  const std::vector<double> ladder{2, 4, 8, 16, 32};
  const auto tsch = tschebyscheff_check(mq_field(f).base, ladder);
  v.require(tsch.pass, "Tschebyscheff bound on every rung");
  double prev = INFINITY, m2 = 0, m32 = 0;
  for (double L : ladder) {
    const auto r = luzin_pipeline(f, L);
    // independent pairwise Lipschitz check of the approximant
    bool lip = true;
    for (std::size_t a = 0; a < g.size() && lip; ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b)
        if (std::abs(r.approximant.values[a] - r.approximant.values[b]) > r.lambda * oracle::dist(g, a, b)) {
          lip = false;
          break;
        }
    v.require(lip && r.approximant_lipschitz.pass, "lambda-Lipschitz at L=" + fmt(L));
    v.require(r.exceptional_measure <= prev, "nonincreasing at L=" + fmt(L));
    prev = r.exceptional_measure;
    if (L == 2) m2 = r.exceptional_measure;
    if (L == 32) m32 = r.exceptional_measure;
  }
  v.require(m2 > 0 && m32 <= m2 / 10, "measure at L=32 at least 10x below L=2");

  const Grid gw = oracle::line(-1, 1, 1.0 / 1024);
  const auto fw = sample(TestFunction::weierstrass(), gw);
  const auto tw = tschebyscheff_check(mq_field(fw).base, {12, 24, 48});
  v.require(tw.pass && tw.monotone, "Weierstrass Tschebyscheff ladder");
  for (double L : {12.0, 24.0, 48.0}) v.require(luzin_pipeline(fw, L).approximant_lipschitz.pass, "Weierstrass lambda-Lipschitz");
  v.note << "cusp exceptional measure " << fmt(m2) << " at L=2, " << fmt(m32) << " at L=32";
}

void mms_regression(Verdict& v) {
  // 1D cloud on grid points against the grid field
  const Grid g = oracle::line(-1, 1, 1.0 / 64);
  const auto f = sample(TestFunction::sine(2 * std::numbers::pi), g);
  std::vector<std::vector<double>> coords;
  for (std::size_t i = 0; i < g.size(); ++i) coords.push_back({g.coord(i, 0)});
  const MetricSpace X = MetricSpace::point_cloud(coords);
  double diff = 0;
  for (double cap : {double(INFINITY), 0.2}) {
    const auto a = mq_field_mms(f.values, X, cap);
    const auto b = mq_field(f, cap).base.values;
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]) / std::max(1.0, b[i]));
  }
  v.require(diff <= 1e-12, "cloud matches grid");

  const auto base = mq_field_mms(f.values, X);
  const auto scaled = mq_field_mms(f.values, X.scaled(4.0, 1.0));
  const auto heavy = mq_field_mms(f.values, X.scaled(1.0, 8.0));
  bool exact = true;
  for (std::size_t i = 0; i < base.size(); ++i) exact = exact && scaled[i] == base[i] / 4.0 && heavy[i] == base[i];
  v.require(exact, "metric and weight scaling exact");

  // path graphs by hand
  const MetricSpace p3 = MetricSpace::path(3);
  v.require(p3.d(0, 2) == 2.0 && p3.d(0, 1) == 1.0, "path3 distances");
  for (double m : mq_field_mms({0, 1, 2}, p3)) v.require(m == 1.0, "path3 MQ == 1");
  const auto pw = verify_pointwise_mms({0, 1, 2}, p3, {1, 1, 1}, 2.0);
  v.require(pw.pass && pw.worst_ratio == 0.5, "path3 pointwise worst ratio 1/2");

  const MetricSpace p5 = MetricSpace::path(5);
  // enumerate lenses: ball B(x, r) \ x and lens over every pair
  double sup = 0;
  std::uint64_t empty = 0;
  for (std::size_t x = 0; x < 5; ++x)
    for (std::size_t y = x + 1; y < 5; ++y) {
      const double r = p5.d(x, y);
      double bx = 0, by = 0, lens = 0;
      for (std::size_t z = 0; z < 5; ++z) {
        const bool ix = z != x && p5.d(z, x) < r, iy = z != y && p5.d(z, y) < r;
        bx += ix;
        by += iy;
        lens += ix && iy && z != x && z != y;
      }
      if (lens == 0) {
        ++empty;
        continue;
      }
      sup = std::max({sup, bx / lens, by / lens});
    }
  const auto ov = overlap_constant(p5);
  v.require(ov.defined && ov.constant == sup && ov.empty_lens_pairs == empty, "path5 overlap table");
  v.note << "cloud vs grid max rel diff " << fmt(diff) << "; path5 overlap " << fmt(ov.constant) << " with " << empty
         << " empty lenses";
}

void divergence(Verdict& v) {
  std::ostringstream trend;
  auto at_zero = [](const TestFunction& tf, double h) {
    const Grid g = oracle::line(-1, 1, h);
    const auto f = sample(tf, g);
    return mq_field(f).base.values[g.size() / 2];
  };
  for (const auto& tf : {TestFunction::holder_cusp(0.5), TestFunction::weierstrass()}) {
    double prev = 0;
    trend << " " << label(tf) << ":";
    for (int k = 7; k <= 10; ++k) {
      const double val = at_zero(tf, std::ldexp(1.0, -k));
      v.require(val > prev, label(tf) + " increases at h=2^-" + std::to_string(k));
      trend << " " << fmt(val);
      prev = val;
    }
  }
  const auto poly = TestFunction::polynomial({0.3, -1.0, 0.5, 2.0});
  double worst = 0;
  for (int k = 7; k < 10; ++k) {
    const double h = std::ldexp(1.0, -k);
    const double q = at_zero(poly, h / 2) / at_zero(poly, h);
    v.require(q <= 1 + 10 * h, "polynomial bounded at h=2^-" + std::to_string(k));
    worst = std::max(worst, q);
  }
  v.note << "MQ at 0 for h = 2^-7..2^-10:" << trend.str() << "; polynomial worst rung ratio " << fmt(worst);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(Verdict& v) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("mqs_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::string> commands{
      "verify pointwise --fn sin:3 --h 0.00390625 --budget 20000 --seed 5",
      "verify pointwise --fn cusp:0.5 --dim 2 --h 0.0625",
      "field mq --fn weierstrass --h 0.0078125 --format csv",
      "verify lemma2 --fn exp:1.5 --dim 2 --h 0.125 --triples 5000",
      "luzin --fn cusp:0.5 --h 0.00390625 --format csv",
      "mms overlap --space '{\"kind\":\"path\",\"params\":{\"n\":7}}' --table",
      "experiment conjecture31 --fn sin:1 --h 0.03125 --samples 2000 --seed 3",
      "constants lens --dim 2"};
  int identical = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string out[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path file = dir / ("run" + std::to_string(i) + "_" + std::to_string(run));
      // the second run uses a different worker count
      const std::string cmd = std::string("MQSOBOLEV_THREADS=") + (run == 0 ? "1" : "3") + " '" + MQS_CLI_PATH +
                              "' " + commands[i] + " --out '" + file.string() + "' 2>/dev/null";
      const int status = std::system(cmd.c_str());
      v.require(status == 0, commands[i] + " exits 0");
      out[run] = slurp(file);
    }
    const bool same = !out[0].empty() && out[0] == out[1];
    v.require(same, commands[i] + " byte-identical");
    identical += same;
  }
  fs::remove_all(dir);
  v.note << identical << "/" << commands.size() << " commands byte-identical across reruns with 1 and 3 workers";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
      {"lens constants", lens_constants},
      {"exact lens chain", exact_chain},
      {"analytic constant", analytic_constant},
      {"gradient domination", grad_domination},
      {"maximal sandwich", sandwich},
      {"interpolation exactness", interpolation},
      {"equidistant identity", equidistant},
      {"jet algebra", jet_algebra},
      {"Luzin pipeline", luzin},
      {"metric measure spaces", mms_regression},
      {"divergence witnesses", divergence},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.failures.push_back(std::string("exception: ") + e.what());
    }
    std::printf("criterion %2zu %-24s %s  (%.1f s) %s\n", i + 1, criteria[i].first, v.pass ? "PASS" : "FAIL",
                seconds_since(t0), v.note.str().c_str());
    for (const auto& f : v.failures) std::printf("    failed: %s\n", f.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
