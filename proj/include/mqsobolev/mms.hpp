// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mqsobolev/report.hpp"

namespace mqs {

/// Finite (X, d, mu): a validated distance matrix and positive point masses.
class MetricSpace {
 public:
  /// Validates symmetry, zero diagonal, positive off-diagonal distances,
  /// positive finite weights and the triangle inequality (relative slack 1e-12).
  MetricSpace(std::vector<std::vector<double>> dist, std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double d(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::string& kind() const { return kind_; }

  /// Shortest-path metric of a connected weighted graph; an edge longer than
  /// the shortest path between its ends is rejected as metric-inconsistent.
  static MetricSpace graph(std::size_t n, const std::vector<std::array<double, 3>>& edges,
                           std::vector<double> weights = {});
  /// Path graph 0 - 1 - ... - (n-1) with equal edge lengths.
  static MetricSpace path(std::size_t n, double spacing = 1.0, std::vector<double> weights = {});
  /// Euclidean distances between distinct points.
  static MetricSpace point_cloud(const std::vector<std::vector<double>>& coords, std::vector<double> weights = {});
  /// Euclidean distances raised to theta in (0, 1].
  static MetricSpace snowflake(const std::vector<std::vector<double>>& coords, double theta,
                               std::vector<double> weights = {});
  /// Same points with d -> s d and mu -> c mu.
  MetricSpace scaled(double s, double c) const;

  /// {"kind": graph|path|point_cloud|snowflake|matrix, "params": {...}, "weights": [...]}
  static MetricSpace from_json(const json& spec);
  /// Square distance matrix, one row per line, comma separated.
  static MetricSpace from_csv(const std::string& text, std::vector<double> weights = {});
  json to_json() const;

 private:
  MetricSpace() = default;
  void validate(bool check_triangle);
  std::vector<double> dist_;
  std::vector<double> weights_;
  std::string kind_ = "matrix";
};

/// MQ_R f(x) = sup over r < R of the mu-average of |f(z) - f(x)| / d(z, x)
/// over 0 < d(z, x) < r. Between consecutive realized distances the open ball
/// does not change, so the sup runs over closed balls at realized distances below R.
std::vector<double> mq_field_mms(const std::vector<double>& f, const MetricSpace& X,
                                 double cap = std::numeric_limits<double>::infinity());

/// sup over x and r > 0 of mu(B[x, 2r]) / mu(B[x, r]), closed balls with the
/// center. The ratio only changes at r = d and r = d / 2 for realized distances d.
double doubling_constant(const MetricSpace& X);

struct OverlapPair {
  std::size_t x, y;
  double ball_x, ball_y, lens;  // masses; balls exclude the center
};

struct OverlapReport {
  double constant = 0.0;  // sup of mu(B(x, r) \ x) / mu(lens), both ends; 0 if no pair has a lens
  bool defined = false;
  std::uint64_t empty_lens_pairs = 0;
  std::vector<OverlapPair> table;
  json to_json(bool with_table = false) const;
};

/// r = d(x, y), lens = {z != x, y : d(z, x) < r, d(z, y) < r}, balls B(x, r) open.
OverlapReport overlap_constant(const MetricSpace& X);

/// |f(x) - f(y)| <= C d(x, y) (g(x) + g(y)) over all pairs with a nonempty lens;
/// C <= 0 means the measured overlap constant. Empty-lens pairs are summarized
/// in details and do not decide the verdict.
InequalityReport verify_pointwise_mms(const std::vector<double>& f, const MetricSpace& X, const std::vector<double>& g,
                                      double C = 0.0);

}  // namespace mqs
