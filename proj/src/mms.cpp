// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/mms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mqsobolev/error.hpp"
#include "mqsobolev/parallel.hpp"

namespace mqs {
namespace {

constexpr std::size_t max_points = 4096;

std::vector<double> default_weights(std::vector<double> w, std::size_t n) {
  if (w.empty()) return std::vector<double>(n, 1.0);
  return w;
}

std::vector<std::vector<double>> euclidean(const std::vector<std::vector<double>>& coords) {
  const std::size_t n = coords.size();
  require(n >= 1, Errc::invalid_argument, "point cloud must be nonempty");
  for (const auto& c : coords) {
    require(c.size() == coords[0].size() && !c.empty(), Errc::size_mismatch, "points must share a dimension");
    for (double v : c) require(std::isfinite(v), Errc::invalid_argument, "coordinates must be finite");
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0;
      for (std::size_t a = 0; a < coords[i].size(); ++a) s += (coords[i][a] - coords[j][a]) * (coords[i][a] - coords[j][a]);
      require(s > 0, Errc::invalid_argument, "point cloud has duplicate points");
      d[i][j] = d[j][i] = std::sqrt(s);
    }
  return d;
}

std::vector<double> doubles(const json& j, const char* what) {
  require(j.is_array(), Errc::invalid_argument, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    require(v.is_number(), Errc::invalid_argument, std::string(what) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> matrix(const json& j, const char* what) {
  require(j.is_array(), Errc::invalid_argument, std::string(what) + " must be an array of arrays");
  std::vector<std::vector<double>> out;
  for (const auto& row : j) out.push_back(doubles(row, what));
  return out;
}

}  // namespace

MetricSpace::MetricSpace(std::vector<std::vector<double>> dist, std::vector<double> weights) {
  const std::size_t n = dist.size();
  require(n >= 1, Errc::invalid_argument, "metric space must be nonempty");
  require(n <= max_points, Errc::resource, "metric spaces are limited to 4096 points");
  weights_ = default_weights(std::move(weights), n);
  dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    require(dist[i].size() == n, Errc::size_mismatch, "distance matrix must be square");
    std::copy(dist[i].begin(), dist[i].end(), dist_.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  validate(true);
}

void MetricSpace::validate(bool check_triangle) {
  const std::size_t n = size();
  require(dist_.size() == n * n, Errc::size_mismatch, "one weight per point is required");
  for (double w : weights_) require(std::isfinite(w) && w > 0, Errc::invalid_argument, "weights must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    require(d(i, i) == 0.0, Errc::invalid_argument, "distance matrix must have a zero diagonal");
    for (std::size_t j = i + 1; j < n; ++j) {
      require(std::isfinite(d(i, j)) && d(i, j) > 0, Errc::invalid_argument, "distinct points need positive distance");
      require(d(i, j) == d(j, i), Errc::invalid_argument, "distance matrix must be symmetric");
    }
  }
  if (!check_triangle) return;
  std::vector<std::uint8_t> bad(worker_count(), 0);
  parallel_for(n, [&](std::size_t lo, std::size_t hi, std::size_t w) {
    for (std::size_t i = lo; i < hi && !bad[w]; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double* rj = &dist_[j * n];
        const double* ri = &dist_[i * n];
        const double dij = ri[j];
        for (std::size_t k = 0; k < n; ++k)
          if (ri[k] > (dij + rj[k]) * (1 + 1e-12)) bad[w] = 1;
      }
  });
  for (auto b : bad) require(!b, Errc::invalid_argument, "distance matrix violates the triangle inequality");
}

MetricSpace MetricSpace::graph(std::size_t n, const std::vector<std::array<double, 3>>& edges, std::vector<double> weights) {
  require(n >= 1, Errc::invalid_argument, "graph must have a node");
  require(n <= max_points, Errc::resource, "metric spaces are limited to 4096 points");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (const auto& e : edges) {
    require(e[0] >= 0 && e[1] >= 0 && e[0] < static_cast<double>(n) && e[1] < static_cast<double>(n) &&
                e[0] == std::floor(e[0]) && e[1] == std::floor(e[1]),
            Errc::invalid_argument, "edge endpoints must be node indices");
    const auto a = static_cast<std::size_t>(e[0]), b = static_cast<std::size_t>(e[1]);
    require(a != b, Errc::invalid_argument, "self loops are not allowed");
    require(std::isfinite(e[2]) && e[2] > 0, Errc::invalid_argument, "edge lengths must be positive");
    d[a * n + b] = d[b * n + a] = std::min(d[a * n + b], e[2]);
  }
  std::vector<double> direct = d;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  for (double v : d) require(std::isfinite(v), Errc::invalid_argument, "graph must be connected");
  for (const auto& e : edges) {
    const auto a = static_cast<std::size_t>(e[0]), b = static_cast<std::size_t>(e[1]);
    require(e[2] <= d[a * n + b], Errc::invalid_argument,
            "edge longer than a path between its ends: graph weights are not metric-consistent");
  }
  MetricSpace s;
  s.dist_ = std::move(d);
  s.weights_ = default_weights(std::move(weights), n);
  s.kind_ = "graph";
  s.validate(false);
  return s;
}

MetricSpace MetricSpace::path(std::size_t n, double spacing, std::vector<double> weights) {
  require(spacing > 0 && std::isfinite(spacing), Errc::invalid_argument, "spacing must be positive");
  std::vector<std::array<double, 3>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({double(i), double(i + 1), spacing});
  MetricSpace s = graph(n, edges, std::move(weights));
  s.kind_ = "path";
  return s;
}

MetricSpace MetricSpace::point_cloud(const std::vector<std::vector<double>>& coords, std::vector<double> weights) {
  require(coords.size() <= max_points, Errc::resource, "metric spaces are limited to 4096 points");
  const auto d = euclidean(coords);
  MetricSpace s;
  s.dist_.reserve(d.size() * d.size());
  for (const auto& row : d) s.dist_.insert(s.dist_.end(), row.begin(), row.end());
  s.weights_ = default_weights(std::move(weights), coords.size());
  s.kind_ = "point_cloud";
  s.validate(false);
  return s;
}

MetricSpace MetricSpace::snowflake(const std::vector<std::vector<double>>& coords, double theta,
                                   std::vector<double> weights) {
  require(theta > 0 && theta <= 1, Errc::invalid_argument, "snowflake exponent must lie in (0, 1]");
  MetricSpace s = point_cloud(coords, std::move(weights));
  for (double& v : s.dist_) v = v == 0 ? 0 : std::pow(v, theta);
  s.kind_ = "snowflake";
  s.validate(false);
  return s;
}

MetricSpace MetricSpace::scaled(double s, double c) const {
  require(s > 0 && c > 0 && std::isfinite(s) && std::isfinite(c), Errc::invalid_argument, "scales must be positive");
  MetricSpace out = *this;
  for (double& v : out.dist_) v *= s;
  for (double& w : out.weights_) w *= c;
  out.validate(false);
  return out;
}

MetricSpace MetricSpace::from_json(const json& spec) {
  require(spec.is_object() && spec.contains("kind"), Errc::invalid_argument, "space spec needs a kind");
  const std::string kind = spec.at("kind").get<std::string>();
  const json params = spec.value("params", json::object());
  std::vector<double> w = spec.contains("weights") ? doubles(spec["weights"], "weights") : std::vector<double>{};
  try {
    if (kind == "graph") {
      std::vector<std::array<double, 3>> edges;
      for (const auto& row : matrix(params.at("edges"), "edges")) {
        require(row.size() == 3, Errc::invalid_argument, "edges are [i, j, length]");
        edges.push_back({row[0], row[1], row[2]});
      }
      return graph(params.at("n").get<std::size_t>(), edges, std::move(w));
    }
    if (kind == "path") return path(params.at("n").get<std::size_t>(), params.value("spacing", 1.0), std::move(w));
    if (kind == "point_cloud") return point_cloud(matrix(params.at("coords"), "coords"), std::move(w));
    if (kind == "snowflake")
      return snowflake(matrix(params.at("coords"), "coords"), params.at("exponent").get<double>(), std::move(w));
    if (kind == "matrix") return MetricSpace(matrix(params.at("dist"), "dist"), std::move(w));
  } catch (const json::exception& e) {
    fail(Errc::invalid_argument, std::string("bad space parameters: ") + e.what());
  }
  fail(Errc::invalid_argument, "unknown space kind '" + kind + "'");
}

MetricSpace MetricSpace::from_csv(const std::string& text, std::vector<double> weights) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        require(cell.find_first_not_of(" \t\r", used) == std::string::npos, Errc::io, "bad number '" + cell + "'");
      } catch (const std::logic_error&) {
        fail(Errc::io, "bad number '" + cell + "' in distance matrix");
      }
    }
    rows.push_back(std::move(row));
  }
  return MetricSpace(std::move(rows), std::move(weights));
}

json MetricSpace::to_json() const {
  json j;
  j["kind"] = kind_;
  j["points"] = size();
  return j;
}

std::vector<double> mq_field_mms(const std::vector<double>& f, const MetricSpace& X, double cap) {
  const std::size_t n = X.size();
  require(f.size() == n, Errc::size_mismatch, "one value per point is required");
  require(cap > 0, Errc::invalid_argument, "radius cap must be positive");
  std::vector<double> out(n, 0.0);
  parallel_for(n, [&](std::size_t lo, std::size_t hi, std::size_t) {
    std::vector<std::size_t> order(n);
    for (std::size_t x = lo; x < hi; ++x) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return X.d(x, a) != X.d(x, b) ? X.d(x, a) < X.d(x, b) : a < b;
      });
      double num = 0, mass = 0, best = 0;
      for (std::size_t k = 1; k < n; ++k) {  // order[0] == x
        const std::size_t z = order[k];
        const double r = X.d(x, z);
        if (!(r < cap)) break;
        num += X.weight(z) * (std::abs(f[z] - f[x]) / r);
        mass += X.weight(z);
        if (k + 1 == n || X.d(x, order[k + 1]) != r) best = std::max(best, num / mass);
      }
      out[x] = best;
    }
  });
  return out;
}

double doubling_constant(const MetricSpace& X) {
  const std::size_t n = X.size();
  std::vector<double> best(worker_count(), 1.0);
  parallel_for(n, [&](std::size_t lo, std::size_t hi, std::size_t w) {
    std::vector<double> d(n);
    for (std::size_t x = lo; x < hi; ++x) {
      for (std::size_t z = 0; z < n; ++z) d[z] = X.d(x, z);
      auto mass = [&](double r) {
        double m = 0;
        for (std::size_t z = 0; z < n; ++z)
          if (d[z] <= r) m += X.weight(z);
        return m;
      };
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x) continue;
        for (double r : {d[z], d[z] / 2}) best[w] = std::max(best[w], mass(2 * r) / mass(r));
      }
    }
  });
  return *std::max_element(best.begin(), best.end());
}

OverlapReport overlap_constant(const MetricSpace& X) {
  const std::size_t n = X.size();
  OverlapReport r;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      const double rad = X.d(x, y);
      OverlapPair p{x, y, 0, 0, 0};
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        const bool in_x = X.d(z, x) < rad, in_y = X.d(z, y) < rad;
        if (in_x) p.ball_x += X.weight(z);
        if (in_y) p.ball_y += X.weight(z);
        if (in_x && in_y) p.lens += X.weight(z);
      }
      // y itself is never inside B(x, r) since d(x, y) = r
      r.table.push_back(p);
      if (p.lens == 0) {
        ++r.empty_lens_pairs;
        continue;
      }
      r.defined = true;
      r.constant = std::max({r.constant, p.ball_x / p.lens, p.ball_y / p.lens});
    }
  return r;
}

json OverlapReport::to_json(bool with_table) const {
  json j;
  j["name"] = "overlap_constant";
  j["constant"] = defined ? json(constant) : json("undefined");
  j["empty_lens_pairs"] = empty_lens_pairs;
  j["pairs"] = table.size();
  if (with_table) {
    j["table"] = json::array();
    for (const auto& p : table)
      j["table"].push_back({{"x", p.x}, {"y", p.y}, {"ball_x", p.ball_x}, {"ball_y", p.ball_y}, {"lens", p.lens}});
  }
  return j;
}

InequalityReport verify_pointwise_mms(const std::vector<double>& f, const MetricSpace& X, const std::vector<double>& g,
                                      double C) {
  const std::size_t n = X.size();
  require(f.size() == n && g.size() == n, Errc::size_mismatch, "one value per point is required");
  const OverlapReport ov = overlap_constant(X);
  const double c = C > 0 ? C : (ov.defined ? ov.constant : 1.0);
  WorstPair lens_pairs, empty_pairs;
  for (const auto& p : ov.table) {
    const double lhs = std::abs(f[p.x] - f[p.y]);
    const double rhs = X.d(p.x, p.y) * (g[p.x] + g[p.y]);
    (p.lens > 0 ? lens_pairs : empty_pairs).add(lhs, rhs, c, 0.0, p.x, p.y);
  }
  InequalityReport r;
  r.name = "pointwise_mms";
  finish_report(r, lens_pairs, c, [](std::size_t i) { return std::vector<double>{static_cast<double>(i)}; });
  r.details["constant_source"] = C > 0 ? "caller" : (ov.defined ? "overlap_constant" : "none: no pair has a lens");
  r.details["overlap_constant"] = ov.defined ? json(ov.constant) : json("undefined");
  r.details["empty_lens_pairs"] = {{"count", empty_pairs.checked},
                                   {"worst_ratio", empty_pairs.score >= 0 ? empty_pairs.ratio : 0.0},
                                   {"within_constant", empty_pairs.failures == 0 && empty_pairs.hard == 0}};
  r.details["points"] = n;
  return r;
}

}  // namespace mqs
