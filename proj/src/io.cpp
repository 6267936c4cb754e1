// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#include "mqsobolev/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "mqsobolev/error.hpp"

namespace mqs {
namespace {

std::string header(const Grid& g) { return g.dim() == 1 ? "index,x,value\n" : "index,x,y,value\n"; }

void write_rows(std::ostringstream& out, const Grid& g, const std::vector<double>& values) {
  out << header(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point p = g.point(i);
    out << i << ',' << format_double(p[0]);
    if (g.dim() == 2) out << ',' << format_double(p[1]);
    out << ',' << format_double(values[i]) << '\n';
  }
}

double parse_number(const std::string& s) {
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  while (e > b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
  if (e - b == 3 && std::string(b, e) == "nan") return std::nan("");
  double v = 0;
  const auto r = std::from_chars(b, e, v);
  require(r.ec == std::errc() && r.ptr == e, Errc::io, "bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

// Parses the rows of one block (header already consumed) into values.
std::vector<double> read_rows(const std::vector<std::string>& lines, const Grid& g) {
  require(lines.size() == g.size(), Errc::io, "expected one row per grid point");
  const std::size_t width = static_cast<std::size_t>(g.dim()) + 2;
  std::vector<double> values(g.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto cells = split(lines[i]);
    require(cells.size() == width, Errc::io, "row " + std::to_string(i) + " has the wrong number of columns");
    require(parse_number(cells[0]) == static_cast<double>(i), Errc::io, "rows must be in index order");
    const Point p = g.point(i);
    for (int a = 0; a < g.dim(); ++a) {
      const double c = parse_number(cells[static_cast<std::size_t>(a) + 1]);
      require(std::abs(c - p[a]) <= 1e-12 * (1 + std::abs(p[a])), Errc::io,
              "row " + std::to_string(i) + " coordinates do not match the grid");
    }
    values[i] = parse_number(cells.back());
  }
  return values;
}

struct Block {
  std::string tag;  // text after '#', or empty
  std::vector<std::string> rows;
};

// Splits text into blocks opened by comment lines; the column header line is dropped.
std::vector<Block> blocks(const std::string& text) {
  std::vector<Block> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      out.push_back({line.substr(1), {}});
      continue;
    }
    if (out.empty()) out.push_back({"", {}});
    if (line.rfind("index,", 0) == 0) continue;
    out.back().rows.push_back(line);
  }
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(' ');
  return b == std::string::npos ? "" : s.substr(b);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string to_csv(const GridFunction& f) {
  std::ostringstream out;
  write_rows(out, f.grid, f.values);
  return out.str();
}

std::string to_csv(const ScalarField& g) {
  std::ostringstream out;
  out << "# label: " << g.label << '\n';
  write_rows(out, g.grid, g.values);
  return out.str();
}

std::string to_csv(const Jet& F) {
  std::ostringstream out;
  for (std::size_t s = 0; s < F.indices().size(); ++s) {
    const MultiIndex& l = F.indices()[s];
    out << "# component " << l[0];
    if (F.grid().dim() == 2) out << ',' << l[1];
    out << '\n';
    write_rows(out, F.grid(), F.components()[s]);
  }
  return out.str();
}

GridFunction grid_function_from_csv(const std::string& text, const Grid& grid) {
  const auto b = blocks(text);
  require(b.size() == 1, Errc::io, "a function file holds exactly one block");
  return GridFunction(grid, read_rows(b[0].rows, grid));
}

ScalarField scalar_field_from_csv(const std::string& text, const Grid& grid) {
  const auto b = blocks(text);
  require(b.size() == 1, Errc::io, "a field file holds exactly one block");
  const std::string tag = trim(b[0].tag);
  require(tag.rfind("label:", 0) == 0, Errc::io, "a field file starts with a '# label:' line");
  return ScalarField(grid, read_rows(b[0].rows, grid), trim(tag.substr(6)));
}

Jet jet_from_csv(const std::string& text, const Grid& grid) {
  const auto b = blocks(text);
  require(!b.empty(), Errc::io, "a jet file holds at least one block");
  int order = -1;
  std::vector<MultiIndex> seen;
  std::vector<std::vector<double>> comps;
  for (const auto& blk : b) {
    const std::string tag = trim(blk.tag);
    require(tag.rfind("component ", 0) == 0, Errc::io, "jet blocks start with '# component'");
    const auto parts = split(tag.substr(10));
    require(parts.size() == static_cast<std::size_t>(grid.dim()), Errc::io, "component index has the wrong length");
    MultiIndex l{static_cast<int>(parse_number(parts[0])), grid.dim() == 2 ? static_cast<int>(parse_number(parts[1])) : 0};
    seen.push_back(l);
    order = std::max(order, order_of(l));
    comps.push_back(read_rows(blk.rows, grid));
  }
  require(seen == Jet::indices_for(grid.dim(), order), Errc::io, "jet components must appear in graded order");
  return Jet(grid, order, std::move(comps));
}

}  // namespace mqs
