#pragma once

// Serialization: grid CSVs with JSON sidecars, sample tables, JSON
// manifests with stable key order, and the plain key=value config format.
// All floating-point output uses 17 significant digits, '.' as the decimal
// separator, and LF line endings, so identical inputs produce byte-identical
// files.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ektau/core.hpp"
#include "ektau/grid.hpp"
#include "ektau/space.hpp"
#include "ektau/surface.hpp"

namespace ektau {

using Json = nlohmann::ordered_json;

// %.17g with the C locale: enough digits to reproduce any double exactly.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline double parse_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) {
    fail(ErrorKind::UsageError, "not a number: '" + s + "'");
  }
  return v;
}

namespace detail {

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::UsageError, "cannot open for writing: " + path);
  out << body;
  if (!out) fail(ErrorKind::UsageError, "write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::UsageError, "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Grid CSV (header x,y,u; row-major, x fastest) plus JSON sidecar.

inline std::string grid_csv_string(const GridData& g) {
  std::string body = "x,y,u\n";
  body.reserve(static_cast<size_t>(g.nx()) * g.ny() * 48 + 8);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      body += format_g17(g.node_x(i));
      body += ',';
      body += format_g17(g.node_y(j));
      body += ',';
      body += format_g17(g.value(i, j));
      body += '\n';
    }
  }
  return body;
}

inline void write_grid_csv(const std::string& path, const GridData& g) {
  detail::write_text_file(path, grid_csv_string(g));
}

inline Json window_json(const Window& w) {
  return Json{{"x0", w.x0}, {"x1", w.x1}, {"y0", w.y0}, {"y1", w.y1}};
}

inline Window window_from_json(const Json& j) {
  return Window{j.at("x0").get<double>(), j.at("x1").get<double>(),
                j.at("y0").get<double>(), j.at("y1").get<double>()};
}

inline Json grid_sidecar_json(const GraphSurface& s) {
  const GridData& g = s.grid();
  Json j;
  j["kappa"] = s.space().kappa;
  j["bundle"] = s.space().bundle;
  j["side"] = to_string(s.space().side);
  j["window"] = window_json(g.window());
  j["h"] = g.hx();
  j["cmc"] = s.cmc();
  return j;
}

inline void write_json_file(const std::string& path, const Json& j) {
  detail::write_text_file(path, j.dump(2) + "\n");
}

inline Json read_json_file(const std::string& path) {
  return Json::parse(detail::read_text_file(path));
}

// Writes <stem>.csv and <stem>.json for a grid-backed surface.
inline void write_surface(const std::string& stem, const GraphSurface& s) {
  if (s.grid_backed()) {
    write_grid_csv(stem + ".csv", s.grid());
    write_json_file(stem + ".json", grid_sidecar_json(s));
    return;
  }
  // Closed-form backend: sample onto the window lattice at the surface step.
  GridData g = GridData::sampled(s.window(), s.step(), [&](double x, double y) {
    return s.jet_at(x, y).u;
  });
  GraphSurface sampled(s.space(), s.cmc(), std::move(g));
  write_grid_csv(stem + ".csv", sampled.grid());
  write_json_file(stem + ".json", grid_sidecar_json(sampled));
}

inline GridData read_grid_csv(const std::string& path) {
  const std::string body = detail::read_text_file(path);
  std::istringstream in(body);
  std::string line;
  if (!std::getline(in, line) || (line != "x,y,u" && line != "x,y,u\r")) {
    fail(ErrorKind::UsageError, "expected header 'x,y,u' in " + path);
  }
  std::vector<double> xs, ys, us;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t c1 = line.find(',');
    const size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      fail(ErrorKind::UsageError, "malformed CSV row in " + path);
    }
    xs.push_back(parse_double(line.substr(0, c1)));
    ys.push_back(parse_double(line.substr(c1 + 1, c2 - c1 - 1)));
    us.push_back(parse_double(line.substr(c2 + 1)));
  }
  if (us.size() < 4) fail(ErrorKind::UsageError, "grid too small in " + path);
  // Recover nx from the row-major layout: x repeats with period nx.
  int nx = 1;
  while (nx < static_cast<int>(xs.size()) && ys[nx] == ys[0]) ++nx;
  const int ny = static_cast<int>(us.size()) / nx;
  if (static_cast<size_t>(nx) * ny != us.size()) {
    fail(ErrorKind::UsageError, "ragged grid in " + path);
  }
  const Window w{xs.front(), xs[nx - 1], ys.front(), ys.back()};
  return GridData(w, nx, ny, std::move(us));
}

inline GraphSurface read_surface(const std::string& stem) {
  const Json side_j = read_json_file(stem + ".json");
  GridData g = read_grid_csv(stem + ".csv");
  SpaceParams sp{side_j.at("kappa").get<double>(),
                 side_j.at("bundle").get<double>(),
                 side_from_string(side_j.at("side").get<std::string>())};
  const double cmc =
      side_j.contains("cmc") ? side_j.at("cmc").get<double>() : 0.0;
  return GraphSurface(sp, cmc, std::move(g));
}

// ---------------------------------------------------------------------------
// Sample tables: header x,y,<name>[,<name>...], one row per sample.

struct SampleTable {
  std::vector<std::string> columns;          // names after the leading x,y
  std::vector<std::array<double, 2>> points;
  std::vector<std::vector<double>> rows;     // rows[i].size() == columns.size()
};

inline std::string sample_table_csv(const SampleTable& t) {
  std::string body = "x,y";
  for (const std::string& c : t.columns) {
    body += ',';
    body += c;
  }
  body += '\n';
  for (size_t r = 0; r < t.rows.size(); ++r) {
    body += format_g17(t.points[r][0]);
    body += ',';
    body += format_g17(t.points[r][1]);
    for (double v : t.rows[r]) {
      body += ',';
      body += format_g17(v);
    }
    body += '\n';
  }
  return body;
}

inline void write_sample_table(const std::string& path, const SampleTable& t) {
  detail::write_text_file(path, sample_table_csv(t));
}

// ---------------------------------------------------------------------------
// Plain key=value configuration files: '#' comments, blank lines ignored,
// whitespace around keys and values trimmed.

inline std::map<std::string, std::string> parse_config(
    const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    const size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::UsageError,
           "config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      fail(ErrorKind::UsageError,
           "config line " + std::to_string(lineno) + ": empty key");
    }
    if (!out.emplace(key, value).second) {
      fail(ErrorKind::UsageError,
           "config line " + std::to_string(lineno) + ": duplicate key '" +
               key + "'");
    }
  }
  return out;
}

inline std::map<std::string, std::string> parse_config_file(
    const std::string& path) {
  return parse_config(detail::read_text_file(path));
}

}  // namespace ektau
