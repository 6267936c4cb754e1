// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev.h"

#include <cmath>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "mqsobolev/corpus.hpp"
#include "mqsobolev/error.hpp"
#include "mqsobolev/interpolation.hpp"
#include "mqsobolev/io.hpp"
#include "mqsobolev/jets.hpp"
#include "mqsobolev/luzin.hpp"
#include "mqsobolev/maximal.hpp"
#include "mqsobolev/meanquotient.hpp"
#include "mqsobolev/mms.hpp"

struct mqs_grid {
  mqs::Grid g;
};

struct mqs_function {
  mqs::GridFunction f;
  std::optional<mqs::TestFunction> tf;
};

struct mqs_field {
  mqs::ScalarField g;
};

struct mqs_space {
  mqs::MetricSpace s;
};

struct mqs_report {
  std::string text;
  bool pass;
};

namespace {

thread_local std::string last_error;

mqs_status to_status(mqs::Errc c) { return static_cast<mqs_status>(static_cast<int>(c)); }

template <class Body>
mqs_status guard(Body&& body) {
  try {
    last_error.clear();
    body();
    return MQS_OK;
  } catch (const mqs::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MQS_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MQS_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw mqs::Error(mqs::Errc::invalid_argument, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

double cap_of(double cap) { return cap > 0 ? cap : mqs::unbounded; }

mqs::PairOptions pair_options(const mqs_pair_options* o) {
  mqs::PairOptions p;
  if (o) {
    p.budget = o->budget;
    p.seed = o->seed;
    p.interior_only = o->interior_only != 0;
    p.kappa = o->kappa;
  }
  mqs::require(p.budget > 0, mqs::Errc::invalid_argument, "pair budget must be positive");
  mqs::require(p.kappa >= 0 && std::isfinite(p.kappa), mqs::Errc::invalid_argument, "kappa must be nonnegative");
  return p;
}

void emit(mqs_report** out, const mqs::json& j, bool pass) { *out = new mqs_report{j.dump(), pass}; }

void emit(mqs_report** out, const mqs::InequalityReport& r) { emit(out, r.to_json(), r.pass); }

const mqs::TestFunction& analytic(const mqs_function* f) {
  mqs::require(f->tf.has_value(), mqs::Errc::precondition, "this operation needs an analytic corpus function");
  return *f->tf;
}

}  // namespace

extern "C" {

const char* mqs_version(void) { return "1.0.0"; }
const char* mqs_last_error(void) { return last_error.c_str(); }
void mqs_string_free(char* s) { std::free(s); }

void mqs_pair_options_default(mqs_pair_options* opt) {
  if (!opt) return;
  const mqs::PairOptions d;
  *opt = {d.budget, d.seed, d.interior_only ? 1 : 0, d.kappa};
}

mqs_status mqs_grid_create(int dim, const double* origin, const double* extent, double h, mqs_grid** out) {
  return guard([&] {
    need(origin, "origin");
    need(extent, "extent");
    need(out, "out");
    const int n = dim == 2 ? 2 : 1;
    *out = new mqs_grid{mqs::Grid::make(dim, std::vector<double>(origin, origin + n),
                                        std::vector<double>(extent, extent + n), h)};
  });
}

void mqs_grid_destroy(mqs_grid* g) { delete g; }
size_t mqs_grid_size(const mqs_grid* g) { return g ? g->g.size() : 0; }
int mqs_grid_dim(const mqs_grid* g) { return g ? g->g.dim() : 0; }

mqs_status mqs_grid_point(const mqs_grid* g, size_t index, double* coords) {
  return guard([&] {
    need(g, "grid");
    need(coords, "coords");
    mqs::require(index < g->g.size(), mqs::Errc::invalid_argument, "point index out of range");
    const mqs::Point p = g->g.point(index);
    for (int a = 0; a < g->g.dim(); ++a) coords[a] = p[a];
  });
}

mqs_status mqs_function_create(const char* spec, const mqs_grid* g, mqs_function** out) {
  return guard([&] {
    need(spec, "spec");
    need(g, "grid");
    need(out, "out");
    mqs::TestFunction tf = mqs::parse_function(spec);
    *out = new mqs_function{mqs::sample(tf, g->g), tf};
  });
}

mqs_status mqs_function_from_values(const mqs_grid* g, const double* values, size_t n, mqs_function** out) {
  return guard([&] {
    need(g, "grid");
    need(values, "values");
    need(out, "out");
    mqs::require(n == g->g.size(), mqs::Errc::size_mismatch, "one value per grid point is required");
    *out = new mqs_function{mqs::GridFunction(g->g, std::vector<double>(values, values + n)), std::nullopt};
  });
}

void mqs_function_destroy(mqs_function* f) { delete f; }

mqs_status mqs_function_values(const mqs_function* f, const double** values, size_t* n) {
  return guard([&] {
    need(f, "function");
    need(values, "values");
    need(n, "n");
    *values = f->f.values.data();
    *n = f->f.values.size();
  });
}

mqs_status mqs_function_csv(const mqs_function* f, char** csv) {
  return guard([&] {
    need(f, "function");
    need(csv, "csv");
    *csv = dup(mqs::to_csv(f->f));
  });
}

mqs_status mqs_field_mq(const mqs_function* f, double cap, mqs_field** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    *out = new mqs_field{mqs::mq_field(f->f, cap_of(cap)).base};
  });
}

mqs_status mqs_field_maximal(const mqs_function* f, mqs_maximal_kind kind, double cap, mqs_field** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    mqs::require(kind == MQS_MAXIMAL_CENTERED || kind == MQS_MAXIMAL_UNCENTERED, mqs::Errc::invalid_argument,
                 "unknown maximal kind");
    *out = new mqs_field{kind == MQS_MAXIMAL_CENTERED ? mqs::centered_maximal(f->f, cap_of(cap))
                                                      : mqs::uncentered_maximal(f->f, cap_of(cap))};
  });
}

mqs_status mqs_field_mq_m(const mqs_function* f, int m, double cap, mqs_field** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    mqs::require(m >= 1, mqs::Errc::invalid_argument, "order m must be at least 1");
    const mqs::Jet F = m == 1 ? mqs::Jet(f->f.grid, 0, {f->f.values})
                              : mqs::Jet::from_function(analytic(f), f->f.grid, m - 1);
    *out = new mqs_field{mqs::mq_m_field(F, f->f, m, cap_of(cap)).base};
  });
}

void mqs_field_destroy(mqs_field* g) { delete g; }

mqs_status mqs_field_values(const mqs_field* g, const double** values, size_t* n) {
  return guard([&] {
    need(g, "field");
    need(values, "values");
    need(n, "n");
    *values = g->g.values.data();
    *n = g->g.values.size();
  });
}

mqs_status mqs_field_csv(const mqs_field* g, char** csv) {
  return guard([&] {
    need(g, "field");
    need(csv, "csv");
    *csv = dup(mqs::to_csv(g->g));
  });
}

mqs_status mqs_field_json(const mqs_field* g, char** json) {
  return guard([&] {
    need(g, "field");
    need(json, "json");
    mqs::json j;
    j["name"] = "field";
    j["label"] = g->g.label;
    j["points"] = g->g.values.size();
    mqs::json vals = mqs::json::array();
    for (double v : g->g.values) vals.push_back(mqs::number(v));
    j["values"] = vals;
    *json = dup(j.dump());
  });
}

const char* mqs_report_json(const mqs_report* r) { return r ? r->text.c_str() : ""; }
int mqs_report_pass(const mqs_report* r) { return r && r->pass ? 1 : 0; }
void mqs_report_destroy(mqs_report* r) { delete r; }

mqs_status mqs_verify_pointwise(const mqs_function* f, double cap, double c, const mqs_pair_options* opt,
                                mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    const double constant = c > 0 ? c : mqs::lens_constant(f->f.grid.dim());
    const auto g = mqs::mq_field(f->f, cap_of(cap));
    auto r = mqs::verify_pointwise(f->f, g.base, constant, pair_options(opt));
    r.details["gradient"] = g.base.label;
    r.details["constant_source"] = c > 0 ? "caller" : "lens_constant";
    emit(out, r);
  });
}

mqs_status mqs_verify_chain(const mqs_function* f, const mqs_pair_options* opt, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    emit(out, mqs::verify_lens_chain(f->f, pair_options(opt)));
  });
}

mqs_status mqs_verify_grad_domination(const mqs_function* f, double kappa, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    mqs::require(kappa >= 0, mqs::Errc::invalid_argument, "kappa must be nonnegative");
    emit(out, mqs::verify_grad_domination(f->f, kappa));
  });
}

mqs_status mqs_verify_sandwich(const mqs_function* f, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    emit(out, mqs::sandwich_check(f->f));
  });
}

mqs_status mqs_verify_poincare(const mqs_function* f, double radius, double p, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    emit(out, mqs::poincare_check(f->f, radius, p));
  });
}

mqs_status mqs_verify_holder(const mqs_function* f, double p, const mqs_pair_options* opt, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    emit(out, mqs::holder_check(f->f, p, pair_options(opt)));
  });
}

mqs_status mqs_verify_divided(const mqs_function* f, int m, double cap, double constant,
                              const mqs_pair_options* opt, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    mqs::require(m >= 1, mqs::Errc::invalid_argument, "order m must be at least 1");
    const mqs::Jet F = m == 1 ? mqs::Jet(f->f.grid, 0, {f->f.values})
                              : mqs::Jet::from_function(analytic(f), f->f.grid, m - 1);
    const auto g = mqs::mq_m_field(F, f->f, m, cap_of(cap));
    const mqs::PairOptions p = pair_options(opt);
    mqs::DividedOptions d;
    d.budget = p.budget;
    d.seed = p.seed;
    d.kappa = p.kappa;
    d.constant = constant > 0 ? constant : 1.0;
    auto r = mqs::verify_divided_inequality(f->f, m, g.base, d);
    r.details["gradient"] = g.base.label;
    emit(out, r);
  });
}

mqs_status mqs_verify_lemma2(const mqs_function* f, uint64_t triples, const mqs_pair_options* opt, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    const mqs::PairOptions p = pair_options(opt);
    mqs::LemmaOptions lo;
    lo.triples = triples;
    lo.seed = p.seed;
    const auto lemma = mqs::second_order_lemma_check(analytic(f), f->f.grid, lo);
    const auto avg = mqs::lemma_average_check(analytic(f), f->f.grid, p);
    mqs::json j;
    j["name"] = "lemma2";
    j["pass"] = lemma.pass && avg.pass;
    j["triples"] = lemma.to_json();
    j["lens_average"] = avg.to_json();
    emit(out, j, lemma.pass && avg.pass);
  });
}

mqs_status mqs_verify_jets(const mqs_function* f, int order, uint64_t tuples, uint64_t seed, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    const auto r = mqs::jet_identity_suite(analytic(f), f->f.grid, order, tuples, seed);
    emit(out, r.to_json(), r.pass);
  });
}

mqs_status mqs_verify_equidistant(const mqs_function* f, double x, double h, int m, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    emit(out, mqs::equidistant_identity_check(analytic(f), x, h, m));
  });
}

mqs_status mqs_verify_dd_limit(const mqs_function* f, double x, int m, int levels, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    const auto r = mqs::dd_limit_check(analytic(f), x, m, levels);
    emit(out, r.to_json(), r.pass);
  });
}

mqs_status mqs_luzin(const mqs_function* f, const double* ladder, size_t n, double cap, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(ladder, "ladder");
    need(out, "out");
    const std::vector<double> levels(ladder, ladder + n);
    const auto mq = mqs::mq_field(f->f, cap_of(cap));
    const auto tsch = mqs::tschebyscheff_check(mq.base, levels);
    mqs::json rungs = mqs::json::array();
    bool pass = tsch.pass;
    for (double L : levels) {
      const auto r = mqs::luzin_pipeline(f->f, L, cap_of(cap));
      pass = pass && r.approximant_lipschitz.pass;
      rungs.push_back(r.to_json());
    }
    mqs::json j;
    j["name"] = "luzin";
    j["pass"] = pass;
    j["rungs"] = rungs;
    j["tschebyscheff"] = tsch.to_json();
    emit(out, j, pass);
  });
}

mqs_status mqs_experiment_conjecture31(const mqs_function* f, int m, int samples, uint64_t seed, mqs_report** out) {
  return guard([&] {
    need(f, "function");
    need(out, "out");
    mqs::ConjectureOptions o;
    o.samples = samples;
    o.seed = seed;
    emit(out, mqs::conjecture31_experiment(analytic(f), f->f.grid, m, o), true);
  });
}

mqs_status mqs_lens_constant(int dim, double* out) {
  return guard([&] {
    need(out, "out");
    *out = mqs::lens_constant(dim);
  });
}

mqs_status mqs_space_from_json(const char* spec, mqs_space** out) {
  return guard([&] {
    need(spec, "spec");
    need(out, "out");
    mqs::json j;
    try {
      j = mqs::json::parse(spec);
    } catch (const mqs::json::exception& e) {
      throw mqs::Error(mqs::Errc::io, std::string("space spec is not valid JSON: ") + e.what());
    }
    *out = new mqs_space{mqs::MetricSpace::from_json(j)};
  });
}

mqs_status mqs_space_from_csv(const char* matrix, const double* weights, size_t n_weights, mqs_space** out) {
  return guard([&] {
    need(matrix, "matrix");
    need(out, "out");
    std::vector<double> w;
    if (weights) w.assign(weights, weights + n_weights);
    *out = new mqs_space{mqs::MetricSpace::from_csv(matrix, std::move(w))};
  });
}

void mqs_space_destroy(mqs_space* s) { delete s; }
size_t mqs_space_size(const mqs_space* s) { return s ? s->s.size() : 0; }

mqs_status mqs_mms_mq(const mqs_space* s, const double* f, size_t n, double cap, double* out) {
  return guard([&] {
    need(s, "space");
    need(f, "f");
    need(out, "out");
    const auto v = mqs::mq_field_mms(std::vector<double>(f, f + n), s->s, cap_of(cap));
    std::copy(v.begin(), v.end(), out);
  });
}

mqs_status mqs_mms_doubling(const mqs_space* s, double* out) {
  return guard([&] {
    need(s, "space");
    need(out, "out");
    *out = mqs::doubling_constant(s->s);
  });
}

mqs_status mqs_mms_overlap(const mqs_space* s, int with_table, mqs_report** out) {
  return guard([&] {
    need(s, "space");
    need(out, "out");
    emit(out, mqs::overlap_constant(s->s).to_json(with_table != 0), true);
  });
}

mqs_status mqs_mms_verify(const mqs_space* s, const double* f, const double* g, size_t n, double C, mqs_report** out) {
  return guard([&] {
    need(s, "space");
    need(f, "f");
    need(out, "out");
    const std::vector<double> fv(f, f + n);
    const std::vector<double> gv = g ? std::vector<double>(g, g + n) : mqs::mq_field_mms(fv, s->s);
    auto r = mqs::verify_pointwise_mms(fv, s->s, gv, C);
    r.details["gradient"] = g ? "caller" : "mq";
    emit(out, r);
  });
}

}  // extern "C"
