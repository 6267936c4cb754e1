// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library through the C interface only.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mqsobolev.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_config = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(mqs_status s) {
  if (s != MQS_OK) throw ConfigError(mqs_last_error());
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using Grid = std::unique_ptr<mqs_grid, Deleter<mqs_grid, mqs_grid_destroy>>;
using Function = std::unique_ptr<mqs_function, Deleter<mqs_function, mqs_function_destroy>>;
using Field = std::unique_ptr<mqs_field, Deleter<mqs_field, mqs_field_destroy>>;
using Space = std::unique_ptr<mqs_space, Deleter<mqs_space, mqs_space_destroy>>;
using Report = std::unique_ptr<mqs_report, Deleter<mqs_report, mqs_report_destroy>>;

std::string take(char* s) {
  std::string out(s);
  mqs_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "1,2,3" or "@file" holding numbers separated by commas, spaces or newlines.
std::vector<double> number_list(const std::string& text) {
  std::string body = !text.empty() && text[0] == '@' ? read_file(text.substr(1)) : text;
  for (char& c : body)
    if (c == ',' || c == '\n' || c == '\r' || c == '\t') c = ' ';
  std::istringstream in(body);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + tok + "'");
    }
  }
  return out;
}

// Every run is fully described by these values; the report echoes them.
struct Config {
  std::string fn = "sin:1";
  int dim = 1;
  double h = 1.0 / 64;
  std::vector<double> origin{-1.0};
  std::vector<double> extent{2.0};
  double cap = 0.0;
  std::uint64_t budget = 10'000'000;
  double tol = 4.0;
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "json";

  double c = 0.0, p = 2.0, radius = 0.0, x = 0.1, step = 0.05;
  int m = 2, order = 2, levels = 20, samples = 20000;
  std::uint64_t triples = 100000, tuples = 1000;
  std::string kind = "centered";
  std::string ladder = "2,4,8,16,32";
  std::string space, matrix, weights, values, gradient;
  bool interior = false, table = false;
};

struct Outcome {
  json config = json::object();
  json result;
  bool pass = true;
  std::string csv;  // set when the command has a native CSV form
};

struct Context {
  Config cfg;
  Grid grid;
  Function fn;

  std::vector<double> axis(const std::vector<double>& v, const char* what) const {
    if (v.size() == 1 && cfg.dim == 2) return {v[0], v[0]};
    if (v.size() != static_cast<std::size_t>(cfg.dim))
      throw ConfigError(std::string(what) + " needs 1 or dim values");
    return v;
  }

  void build_grid() {
    mqs_grid* g = nullptr;
    const auto o = axis(cfg.origin, "--origin"), e = axis(cfg.extent, "--extent");
    check(mqs_grid_create(cfg.dim, o.data(), e.data(), cfg.h, &g));
    grid.reset(g);
    mqs_function* f = nullptr;
    check(mqs_function_create(cfg.fn.c_str(), grid.get(), &f));
    fn.reset(f);
  }

  mqs_pair_options pairs() const {
    mqs_pair_options o;
    mqs_pair_options_default(&o);
    o.budget = cfg.budget;
    o.seed = cfg.seed;
    o.kappa = cfg.tol;
    o.interior_only = cfg.interior ? 1 : 0;
    return o;
  }

  json grid_config() const {
    return {{"fn", cfg.fn},
            {"dim", cfg.dim},
            {"h", cfg.h},
            {"origin", axis(cfg.origin, "--origin")},
            {"extent", axis(cfg.extent, "--extent")},
            {"points", mqs_grid_size(grid.get())}};
  }

  json cap_json() const { return cfg.cap > 0 ? json(cfg.cap) : json("none"); }
};

Outcome from_report(mqs_report* raw) {
  Report r(raw);
  Outcome o;
  o.result = json::parse(mqs_report_json(r.get()));
  o.pass = mqs_report_pass(r.get()) != 0;
  return o;
}

Outcome field_outcome(Context& ctx, mqs_field* raw, json config) {
  Field f(raw);
  Outcome o;
  o.config = std::move(config);
  o.result = json::parse(take([&] {
    char* s = nullptr;
    check(mqs_field_json(f.get(), &s));
    return s;
  }()));
  o.csv = take([&] {
    char* s = nullptr;
    check(mqs_field_csv(f.get(), &s));
    return s;
  }());
  (void)ctx;
  return o;
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      v = q + "\"";
    }
    out << prefix << ',' << v << '\n';
  }
}

std::string render(const std::string& command, const Outcome& o, const std::string& format) {
  json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  doc["config"] = o.config;
  doc["pass"] = o.pass;
  doc["result"] = o.result;
  if (format == "json") return doc.dump(2) + "\n";
  if (!o.csv.empty()) return o.csv;
  std::ostringstream out;
  out << "key,value\n";
  flatten(doc, "", out);
  return out.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ConfigError("cannot write '" + path + "'");
}

using Runner = std::function<Outcome(Context&)>;

struct Leaf {
  CLI::App* app;
  std::string command;
  Runner run;
  bool needs_grid;
};

void grid_options(CLI::App* s, Config& c) {
  s->add_option("--fn", c.fn, "corpus function: poly:c0,c1,.. cusp:a weierstrass[:a,b,K] sin[:w] exp[:k] indicator:lo,hi")
      ->capture_default_str();
  s->add_option("--dim", c.dim, "grid dimension (1 or 2)")->capture_default_str();
  s->add_option("--h", c.h, "grid spacing")->capture_default_str();
  s->add_option("--origin", c.origin, "lower corner, one value or one per axis")->delimiter(',')->capture_default_str();
  s->add_option("--extent", c.extent, "box side lengths, one value or one per axis")->delimiter(',')->capture_default_str();
  s->add_option("--cap", c.cap, "radius cap R (0 = none)")->capture_default_str();
}

void pair_options(CLI::App* s, Config& c) {
  s->add_option("--budget", c.budget, "pair budget before stratified thinning")->capture_default_str();
  s->add_option("--tol", c.tol, "tolerance factor kappa in kappa h / |x - y|")->capture_default_str();
  s->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
  s->add_flag("--interior", c.interior, "only pairs whose balls stay inside the grid");
}

void output_options(CLI::App* s, Config& c) {
  s->add_option("--out", c.out, "output path, - for stdout")->capture_default_str();
  s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

json pairs_json(const Config& c) {
  return {{"budget", c.budget}, {"tol", c.tol}, {"seed", c.seed}, {"interior", c.interior}};
}

void merge(json& into, const json& more) {
  for (auto it = more.begin(); it != more.end(); ++it) into[it.key()] = it.value();
}

Space load_space(const Config& c) {
  mqs_space* s = nullptr;
  if (!c.space.empty() == !c.matrix.empty()) throw ConfigError("give exactly one of --space and --matrix");
  if (!c.space.empty()) {
    const std::string text = c.space[0] == '{' ? c.space : read_file(c.space);
    check(mqs_space_from_json(text.c_str(), &s));
    return Space(s);
  }
  const std::vector<double> w = c.weights.empty() ? std::vector<double>{} : number_list(c.weights);
  check(mqs_space_from_csv(read_file(c.matrix).c_str(), w.empty() ? nullptr : w.data(), w.size(), &s));
  return Space(s);
}

json space_config(const Config& c) {
  json j;
  if (!c.space.empty()) j["space"] = c.space;
  if (!c.matrix.empty()) j["matrix"] = c.matrix;
  if (!c.weights.empty()) j["weights"] = c.weights;
  return j;
}

std::vector<double> space_values(const Config& c, const Space& s) {
  if (c.values.empty()) throw ConfigError("--values is required");
  auto v = number_list(c.values);
  if (v.size() != mqs_space_size(s.get())) throw ConfigError("--values needs one number per point");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mqsobolev: maximal mean quotients, pointwise Sobolev inequalities and their verification"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mqs_version()));
  Context ctx;
  Config& c = ctx.cfg;
  std::vector<Leaf> leaves;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, bool grid, bool pairs,
                  Runner run) {
    CLI::App* s = parent->add_subcommand(name, help);
    if (grid) grid_options(s, c);
    if (pairs) pair_options(s, c);
    output_options(s, c);
    const std::string command = parent == &app ? name : parent->get_name() + " " + name;
    leaves.push_back({s, command, std::move(run), grid});
    return s;
  };

  // field
  CLI::App* field = app.add_subcommand("field", "compute a field on a grid");
  field->require_subcommand(1);
  leaf(field, "mq", "maximal mean difference quotient MQf", true, false, [](Context& x) {
    mqs_field* f = nullptr;
    check(mqs_field_mq(x.fn.get(), x.cfg.cap, &f));
    json cfg = x.grid_config();
    cfg["cap"] = x.cap_json();
    return field_outcome(x, f, cfg);
  });
  auto* maximal = leaf(field, "maximal", "Hardy-Littlewood maximal function", true, false, [](Context& x) {
    mqs_field* f = nullptr;
    check(mqs_field_maximal(x.fn.get(), x.cfg.kind == "centered" ? MQS_MAXIMAL_CENTERED : MQS_MAXIMAL_UNCENTERED,
                            x.cfg.cap, &f));
    json cfg = x.grid_config();
    cfg["cap"] = x.cap_json();
    cfg["kind"] = x.cfg.kind;
    return field_outcome(x, f, cfg);
  });
  maximal->add_option("--kind", c.kind, "centered or uncentered")
      ->check(CLI::IsMember({"centered", "uncentered"}))
      ->capture_default_str();
  auto* mqm = leaf(field, "mq-m", "m-th order maximal mean quotient from the Taylor-Whitney jet", true, false,
                   [](Context& x) {
                     mqs_field* f = nullptr;
                     check(mqs_field_mq_m(x.fn.get(), x.cfg.m, x.cfg.cap, &f));
                     json cfg = x.grid_config();
                     cfg["cap"] = x.cap_json();
                     cfg["m"] = x.cfg.m;
                     return field_outcome(x, f, cfg);
                   });
  mqm->add_option("--m", c.m, "order m >= 1")->capture_default_str();

  // verify
  CLI::App* verify = app.add_subcommand("verify", "check an inequality or identity");
  verify->require_subcommand(1);
  auto* pw = leaf(verify, "pointwise", "|f(x)-f(y)| <= c |x-y| (MQf(x) + MQf(y))", true, true, [](Context& x) {
    auto o = pairs_json(x.cfg);
    mqs_pair_options p = x.pairs();
    mqs_report* r = nullptr;
    check(mqs_verify_pointwise(x.fn.get(), x.cfg.cap, x.cfg.c, &p, &r));
    Outcome out = from_report(r);
    out.config = x.grid_config();
    out.config["cap"] = x.cap_json();
    out.config["c"] = x.cfg.c > 0 ? json(x.cfg.c) : json("lens_constant");
    merge(out.config, o);
    return out;
  });
  pw->add_option("--c", c.c, "constant (0 = lens constant c(n))")->capture_default_str();
  leaf(verify, "chain", "exact discrete lens-averaging chain, tolerance 0", true, true, [](Context& x) {
    mqs_pair_options p = x.pairs();
    mqs_report* r = nullptr;
    check(mqs_verify_chain(x.fn.get(), &p, &r));
    Outcome out = from_report(r);
    out.config = x.grid_config();
    merge(out.config, pairs_json(x.cfg));
    return out;
  });
  leaf(verify, "grad-dom", "MQf <= M(|grad f|) (1 + kappa h)", true, false, [](Context& x) {
    mqs_report* r = nullptr;
    check(mqs_verify_grad_domination(x.fn.get(), x.cfg.tol, &r));
    Outcome out = from_report(r);
    out.config = x.grid_config();
    out.config["tol"] = x.cfg.tol;
    return out;
  })->add_option("--tol", c.tol, "tolerance factor kappa")->capture_default_str();
  leaf(verify, "sandwich", "M^f <= Mf <= 2^n M^f", true, false, [](Context& x) {
    mqs_report* r = nullptr;
    check(mqs_verify_sandwich(x.fn.get(), &r));
    Outcome out = from_report(r);
    out.config = x.grid_config();
    return out;
  });
  auto* poin = leaf(verify, "poincare", "|f(x) - f_B| <= r MQf(x) and the integral witness", true, false,
                    [](Context& x) {
                      const double r0 = x.cfg.radius > 0 ? x.cfg.radius : 8 * x.cfg.h;
                      mqs_report* r = nullptr;
                      check(mqs_verify_poincare(x.fn.get(), r0, x.cfg.p, &r));
                      Outcome out = from_report(r);
                      out.config = x.grid_config();
                      out.config["radius"] = r0;
                      out.config["p"] = x.cfg.p;
                      return out;
                    });
  poin->add_option("--radius", c.radius, "ball radius (0 = 8h)")->capture_default_str();
  poin->add_option("--p", c.p, "exponent of the integral witness")->capture_default_str();
  leaf(verify, "holder", "|f(y)-f(x)| <= |y-x|^(1-1/p) |f'|_p", true, true, [](Context& x) {
    mqs_pair_options p = x.pairs();
    mqs_report* r = nullptr;
    check(mqs_verify_holder(x.fn.get(), x.cfg.p, &p, &r));
    Outcome out = from_report(r);
    out.config = x.grid_config();
    out.config["p"] = x.cfg.p;
    merge(out.config, pairs_json(x.cfg));
    return out;
  })->add_option("--p", c.p, "exponent p > 1")->capture_default_str();
  auto* div = leaf(verify, "divided", "finite and divided differences against MQ^m", true, true, [](Context& x) {
    mqs_pair_options p = x.pairs();
    mqs_report* r = nullptr;
    check(mqs_verify_divided(x.fn.get(), x.cfg.m, x.cfg.cap, x.cfg.c, &p, &r));
    Outcome out = from_report(r);
    out.config = x.grid_config();
    out.config["cap"] = x.cap_json();
    out.config["m"] = x.cfg.m;
    out.config["c"] = x.cfg.c > 0 ? x.cfg.c : 1.0;
    merge(out.config, pairs_json(x.cfg));
    return out;
  });
  div->add_option("--m", c.m, "order m >= 1")->capture_default_str();
  div->add_option("--c", c.c, "constant (0 = 1)")->capture_default_str();
  auto* lem = leaf(verify, "lemma2", "second-order lens lemma on triples and its lens average", true, true,
                   [](Context& x) {
                     mqs_pair_options p = x.pairs();
                     mqs_report* r = nullptr;
                     check(mqs_verify_lemma2(x.fn.get(), x.cfg.triples, &p, &r));
                     Outcome out = from_report(r);
                     out.config = x.grid_config();
                     out.config["triples"] = x.cfg.triples;
                     merge(out.config, pairs_json(x.cfg));
                     return out;
                   });
  lem->add_option("--triples", c.triples, "sampled lens triples")->capture_default_str();
  auto* jets = leaf(verify, "jets", "jet commutation, component and Taylor-algebra identities", true, false,
                    [](Context& x) {
                      mqs_report* r = nullptr;
                      check(mqs_verify_jets(x.fn.get(), x.cfg.order, x.cfg.tuples, x.cfg.seed, &r));
                      Outcome out = from_report(r);
                      out.config = x.grid_config();
                      out.config["order"] = x.cfg.order;
                      out.config["tuples"] = x.cfg.tuples;
                      out.config["seed"] = x.cfg.seed;
                      return out;
                    });
  jets->add_option("--order", c.order, "jet order")->capture_default_str();
  jets->add_option("--tuples", c.tuples, "random point tuples")->capture_default_str();
  jets->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
  auto* eq = leaf(verify, "equidistant", "remainder against the m-th forward difference", true, false,
                  [](Context& x) {
                    mqs_report* r = nullptr;
                    check(mqs_verify_equidistant(x.fn.get(), x.cfg.x, x.cfg.step, x.cfg.m, &r));
                    Outcome out = from_report(r);
                    out.config = {{"fn", x.cfg.fn}, {"x", x.cfg.x}, {"step", x.cfg.step}, {"m", x.cfg.m}};
                    return out;
                  });
  eq->add_option("--x", c.x, "base node")->capture_default_str();
  eq->add_option("--step", c.step, "node spacing")->capture_default_str();
  eq->add_option("--m", c.m, "order")->capture_default_str();
  auto* dd = leaf(verify, "dd-limit", "divided differences on shrinking schemes tend to f^(m)/m!", true, false,
                  [](Context& x) {
                    mqs_report* r = nullptr;
                    check(mqs_verify_dd_limit(x.fn.get(), x.cfg.x, x.cfg.m, x.cfg.levels, &r));
                    Outcome out = from_report(r);
                    out.config = {{"fn", x.cfg.fn}, {"x", x.cfg.x}, {"m", x.cfg.m}, {"levels", x.cfg.levels}};
                    return out;
                  });
  dd->add_option("--x", c.x, "limit point")->capture_default_str();
  dd->add_option("--m", c.m, "order")->capture_default_str();
  dd->add_option("--levels", c.levels, "ladder rungs eps = 2^-j")->capture_default_str();

  // luzin
  leaf(&app, "luzin", "level sets, Tschebyscheff bound and McShane extension over a ladder of L", true, false,
       [](Context& x) {
         const auto ladder = number_list(x.cfg.ladder);
         mqs_report* r = nullptr;
         check(mqs_luzin(x.fn.get(), ladder.data(), ladder.size(), x.cfg.cap, &r));
         Outcome out = from_report(r);
         out.config = x.grid_config();
         out.config["cap"] = x.cap_json();
         out.config["L"] = ladder;
         return out;
       })
      ->add_option("--L", c.ladder, "increasing ladder of levels, comma separated")
      ->capture_default_str();

  // mms
  CLI::App* mms = app.add_subcommand("mms", "finite metric measure spaces");
  mms->require_subcommand(1);
  auto space_opts = [&](CLI::App* s, bool values) {
    s->add_option("--space", c.space, "space JSON {kind, params, weights} (file path or inline)");
    s->add_option("--matrix", c.matrix, "distance matrix CSV file");
    s->add_option("--weights", c.weights, "point masses for --matrix (list or @file)");
    if (values) s->add_option("--values", c.values, "function values, one per point (list or @file)");
  };
  auto* mmq = leaf(mms, "mq", "MQ on the space", false, false, [](Context& x) {
    const Space s = load_space(x.cfg);
    const auto f = space_values(x.cfg, s);
    std::vector<double> g(f.size());
    check(mqs_mms_mq(s.get(), f.data(), f.size(), x.cfg.cap, g.data()));
    Outcome out;
    out.config = space_config(x.cfg);
    out.config["values"] = x.cfg.values;
    out.config["cap"] = x.cap_json();
    out.result = {{"name", "mq_mms"}, {"points", g.size()}, {"values", g}};
    std::ostringstream csv;
    csv << "index,value\n";
    for (std::size_t i = 0; i < g.size(); ++i) csv << i << ',' << json(g[i]).dump() << '\n';
    out.csv = csv.str();
    return out;
  });
  space_opts(mmq, true);
  mmq->add_option("--cap", c.cap, "radius cap R (0 = none)")->capture_default_str();
  space_opts(leaf(mms, "doubling", "doubling constant", false, false,
                  [](Context& x) {
                    const Space s = load_space(x.cfg);
                    double d = 0;
                    check(mqs_mms_doubling(s.get(), &d));
                    Outcome out;
                    out.config = space_config(x.cfg);
                    out.result = {{"name", "doubling_constant"}, {"points", mqs_space_size(s.get())}, {"value", d}};
                    return out;
                  }),
             false);
  auto* ovl = leaf(mms, "overlap", "ball-to-lens mass ratio", false, false, [](Context& x) {
    const Space s = load_space(x.cfg);
    mqs_report* r = nullptr;
    check(mqs_mms_overlap(s.get(), x.cfg.table ? 1 : 0, &r));
    Outcome out = from_report(r);
    out.config = space_config(x.cfg);
    out.config["table"] = x.cfg.table;
    return out;
  });
  space_opts(ovl, false);
  ovl->add_flag("--table", c.table, "include the per-pair table");
  auto* mver = leaf(mms, "verify", "|f(x)-f(y)| <= C d(x,y) (g(x) + g(y))", false, false, [](Context& x) {
    const Space s = load_space(x.cfg);
    const auto f = space_values(x.cfg, s);
    std::vector<double> g;
    if (!x.cfg.gradient.empty()) {
      g = number_list(x.cfg.gradient);
      if (g.size() != f.size()) throw ConfigError("--g needs one number per point");
    }
    mqs_report* r = nullptr;
    check(mqs_mms_verify(s.get(), f.data(), g.empty() ? nullptr : g.data(), f.size(), x.cfg.c, &r));
    Outcome out = from_report(r);
    out.config = space_config(x.cfg);
    out.config["values"] = x.cfg.values;
    out.config["g"] = x.cfg.gradient.empty() ? json("mq") : json(x.cfg.gradient);
    out.config["c"] = x.cfg.c > 0 ? json(x.cfg.c) : json("overlap_constant");
    return out;
  });
  space_opts(mver, true);
  mver->add_option("--g", c.gradient, "candidate gradient (list or @file; default MQ)");
  mver->add_option("--c", c.c, "constant (0 = measured overlap constant)")->capture_default_str();

  // experiment
  CLI::App* exp = app.add_subcommand("experiment", "exploratory measurements");
  exp->require_subcommand(1);
  auto* conj = leaf(exp, "conjecture31", "scheme witness against the Taylor-Whitney witness (EXPLORATORY)", true,
                    false, [](Context& x) {
                      mqs_report* r = nullptr;
                      check(mqs_experiment_conjecture31(x.fn.get(), x.cfg.m, x.cfg.samples, x.cfg.seed, &r));
                      Outcome out = from_report(r);
                      out.config = x.grid_config();
                      out.config["m"] = x.cfg.m;
                      out.config["samples"] = x.cfg.samples;
                      out.config["seed"] = x.cfg.seed;
                      return out;
                    });
  conj->add_option("--m", c.m, "order m >= 2")->capture_default_str();
  conj->add_option("--samples", c.samples, "sampled (pair, scheme) draws")->capture_default_str();
  conj->add_option("--seed", c.seed, "sampling seed")->capture_default_str();

  // constants
  CLI::App* consts = app.add_subcommand("constants", "closed-form constants");
  consts->require_subcommand(1);
  leaf(consts, "lens", "ball-to-lens volume ratio c(n)", false, false, [](Context& x) {
    double v = 0;
    check(mqs_lens_constant(x.cfg.dim, &v));
    char digits[64];
    std::snprintf(digits, sizeof digits, "%.12f", v);
    Outcome out;
    out.config = {{"dim", x.cfg.dim}};
    out.result = {{"name", "lens_constant"}, {"dim", x.cfg.dim}, {"value", v}, {"value_12", digits}};
    return out;
  })->add_option("--dim", c.dim, "dimension (1 or 2)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_config;
  }

  for (const Leaf& l : leaves) {
    if (!l.app->parsed()) continue;
    try {
      if (l.needs_grid) ctx.build_grid();
      const Outcome o = l.run(ctx);
      write_output(c.out, render(l.command, o, c.format));
      if (!o.pass) {
        std::cerr << "mqsobolev: " << l.command << ": check failed\n";
        return exit_fail;
      }
      return exit_pass;
    } catch (const ConfigError& e) {
      std::cerr << "mqsobolev: " << l.command << ": " << e.what() << "\n";
      return exit_config;
    } catch (const std::exception& e) {
      std::cerr << "mqsobolev: " << l.command << ": " << e.what() << "\n";
      return exit_config;
    }
  }
  std::cerr << "mqsobolev: no command given\n";
  return exit_config;
}
