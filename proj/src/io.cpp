#include "swe/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "swe/quadrature.hpp"

namespace swe {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kDegToRad = std::numbers::pi / 180.0;

[[noreturn]] void fail(int line, const std::string& key,
                       const std::string& what) {
  std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
  throw std::runtime_error("config: " + where + "'" + key + "': " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double to_double(const std::string& v, const std::string& key, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) fail(line, key, "not a number: '" + v + "'");
    return d;
  } catch (const std::logic_error&) {
    fail(line, key, "not a number: '" + v + "'");
  }
}

long long to_int(const std::string& v, const std::string& key, int line) {
  try {
    std::size_t pos = 0;
    const long long n = std::stoll(v, &pos);
    if (pos != v.size()) fail(line, key, "not an integer: '" + v + "'");
    return n;
  } catch (const std::logic_error&) {
    fail(line, key, "not an integer: '" + v + "'");
  }
}

bool to_bool(const std::string& v, const std::string& key, int line) {
  const std::string s = lower(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  fail(line, key, "not a boolean: '" + v + "'");
}

BcType to_bc(const std::string& v, const std::string& key, int line) {
  const std::string s = lower(v);
  if (s == "periodic") return BcType::Periodic;
  if (s == "wall") return BcType::Wall;
  if (s == "open") return BcType::Open;
  fail(line, key, "expected periodic|wall|open, got '" + v + "'");
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value,
               int line) {
  const auto dot = key.find('.');
  if (dot == std::string::npos)
    fail(line, key, "expected section.key");
  const std::string section = lower(key.substr(0, dot));
  const std::string name = lower(key.substr(dot + 1));

  if (section == "grid") {
    c.grid_set = true;
    if (name == "nx") c.grid.nx = static_cast<int>(to_int(value, key, line));
    else if (name == "ny") c.grid.ny = static_cast<int>(to_int(value, key, line));
    else if (name == "x0") c.grid.x0 = to_double(value, key, line);
    else if (name == "y0") c.grid.y0 = to_double(value, key, line);
    else if (name == "x1") c.grid.x1 = to_double(value, key, line);
    else if (name == "y1") c.grid.y1 = to_double(value, key, line);
    else if (name == "radius") {
      c.grid.radius = to_double(value, key, line);
      if (c.grid.radius <= 0.0) fail(line, key, "radius must be positive");
    } else if (name == "geometry") {
      const std::string s = lower(value);
      if (s == "cartesian") c.grid.geometry = Geometry::Cartesian;
      else if (s == "spherical") c.grid.geometry = Geometry::Spherical;
      else fail(line, key, "expected cartesian|spherical, got '" + value + "'");
    } else fail(line, key, "unknown key");
  } else if (section == "bc") {
    c.bc_set = true;
    if (name == "west") c.bc.west = to_bc(value, key, line);
    else if (name == "east") c.bc.east = to_bc(value, key, line);
    else if (name == "south") c.bc.south = to_bc(value, key, line);
    else if (name == "north") c.bc.north = to_bc(value, key, line);
    else fail(line, key, "unknown key");
  } else if (section == "scheme") {
    if (name == "cfl") {
      c.scheme.cfl = to_double(value, key, line);
      if (!(c.scheme.cfl > 0.0 && c.scheme.cfl <= 1.0))
        fail(line, key, "cfl must be in (0, 1]");
    } else if (name == "g") {
      c.scheme.g = to_double(value, key, line);
      if (c.scheme.g <= 0.0) fail(line, key, "g must be positive");
    } else if (name == "order") {
      const long long o = to_int(value, key, line);
      if (o == 3) c.scheme.variant = Variant::P2P1;
      else if (o == 4) c.scheme.variant = Variant::P3P1;
      else fail(line, key, "order must be 3 or 4");
    } else if (name == "variant") {
      const std::string s = lower(value);
      if (s == "p2p1") c.scheme.variant = Variant::P2P1;
      else if (s == "p3p1") c.scheme.variant = Variant::P3P1;
      else if (s == "p3p2") c.scheme.variant = Variant::P3P2;
      else fail(line, key, "expected p2p1|p3p1|p3p2, got '" + value + "'");
    } else if (name == "d0") {
      c.scheme.d0 = to_double(value, key, line);
      if (!(c.scheme.d0 > 0.0 && c.scheme.d0 < 1.0))
        fail(line, key, "d0 must be in (0, 1)");
    } else if (name == "dr") {
      c.scheme.dr = to_double(value, key, line);
      if (c.scheme.dr <= 0.0) fail(line, key, "dr must be positive");
    } else if (name == "eps_law") {
      const std::string s = lower(value);
      if (s == "h") c.scheme.eps_law = EpsLaw::H;
      else if (s == "h2") c.scheme.eps_law = EpsLaw::H2;
      else if (s == "const" || s == "constant") c.scheme.eps_law = EpsLaw::Constant;
      else fail(line, key, "expected h|h2|const, got '" + value + "'");
    } else if (name == "eps_const") {
      c.scheme.eps_const = to_double(value, key, line);
      if (c.scheme.eps_const <= 0.0) fail(line, key, "must be positive");
    } else if (name == "h_dry") {
      c.scheme.h_dry = to_double(value, key, line);
      if (c.scheme.h_dry <= 0.0) fail(line, key, "must be positive");
    } else if (name == "threads") {
      c.scheme.threads = static_cast<int>(to_int(value, key, line));
      if (c.scheme.threads < 0) fail(line, key, "must be >= 0");
    } else if (name == "max_steps") {
      c.scheme.max_steps = to_int(value, key, line);
      if (c.scheme.max_steps <= 0) fail(line, key, "must be positive");
    } else if (name == "t_end") {
      c.t_end = to_double(value, key, line);
      if (c.t_end < 0.0) fail(line, key, "must be nonnegative");
    } else fail(line, key, "unknown key");
  } else if (section == "scenario") {
    if (name == "name") c.scenario_name = lower(value);
    else if (name == "seed") c.scenario.seed = static_cast<std::uint64_t>(to_int(value, key, line));
    else if (name == "cells") {
      c.scenario.cells = static_cast<int>(to_int(value, key, line));
      if (c.scenario.cells < 0) fail(line, key, "must be >= 0");
    } else if (name == "resolution_deg") {
      c.scenario.resolution_deg = to_double(value, key, line);
      if (c.scenario.resolution_deg <= 0.0) fail(line, key, "must be positive");
    } else if (name == "printed_variant")
      c.scenario.thacker_printed_variant = to_bool(value, key, line);
    else if (name == "quad_pts") {
      c.scenario.quad_pts = static_cast<int>(to_int(value, key, line));
      if (c.scenario.quad_pts < 1 || c.scenario.quad_pts > 3)
        fail(line, key, "must be 1, 2 or 3");
    } else if (name == "noise_amplitude")
      c.scenario.noise_amplitude = to_double(value, key, line);
    else if (name == "vortex_h0") c.scenario.vortex_h0 = to_double(value, key, line);
    else if (name == "vortex_vbar") c.scenario.vortex_vbar = to_double(value, key, line);
    else if (name == "vortex_alpha") c.scenario.vortex_alpha = to_double(value, key, line);
    else if (name == "thacker_h0") c.scenario.thacker_h0 = to_double(value, key, line);
    else if (name == "thacker_a") c.scenario.thacker_a = to_double(value, key, line);
    else if (name == "thacker_sigma") c.scenario.thacker_sigma = to_double(value, key, line);
    else if (name == "wave_amplitude") c.scenario.wave_amplitude = to_double(value, key, line);
    else if (name == "wave_width") c.scenario.wave_width = to_double(value, key, line);
    else fail(line, key, "unknown key");
  } else if (section == "raster") {
    if (name == "path") c.raster.path = value;
    else if (name == "positive_down") c.raster.positive_down = to_bool(value, key, line);
    else if (name == "nodata_policy") {
      const std::string s = lower(value);
      if (s != "land" && s != "zero" && s != "error")
        fail(line, key, "expected land|zero|error, got '" + value + "'");
      c.raster.nodata_policy = s;
    } else if (name == "land_height")
      c.raster.land_height = to_double(value, key, line);
    else fail(line, key, "unknown key");
  } else if (section == "output") {
    if (name == "directory") c.output.directory = value;
    else if (name == "prefix") c.output.prefix = value;
    else if (name == "snapshot_interval") {
      c.output.snapshot_interval = to_double(value, key, line);
      if (c.output.snapshot_interval < 0.0) fail(line, key, "must be >= 0");
    } else if (name == "gauge_interval") {
      c.output.gauge_interval = to_double(value, key, line);
      if (c.output.gauge_interval <= 0.0) fail(line, key, "must be positive");
    } else if (name == "gauge") {
      const auto comma = value.find(',');
      if (comma == std::string::npos)
        fail(line, key, "expected 'x,y', got '" + value + "'");
      c.output.gauges.emplace_back(
          to_double(trim(value.substr(0, comma)), key, line),
          to_double(trim(value.substr(comma + 1)), key, line));
    } else fail(line, key, "unknown key");
  } else {
    fail(line, key, "unknown section '" + section + "'");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(lineno, line, "expected 'section.key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(lineno, key.empty() ? line : key, "empty key or value");
    apply_key(c, key, value, lineno);
  }
  c.scenario.g = c.scheme.g;
  return c;
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    fail(0, assignment, "override must be section.key=value");
  apply_key(config, trim(assignment.substr(0, eq)),
            trim(assignment.substr(eq + 1)), 0);
  config.scenario.g = config.scheme.g;
}

RasterGrid read_raster(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("raster: cannot open '" + path + "'");
  RasterGrid r;
  bool have[5] = {false, false, false, false, false};
  std::string word;
  // Header: keyword/value pairs until the first purely numeric token.
  while (in >> word) {
    const std::string k = lower(word);
    double v = 0.0;
    if (k == "ncols" || k == "nrows" || k == "xllcorner" || k == "yllcorner" ||
        k == "cellsize" || k == "nodata_value") {
      if (!(in >> v))
        throw std::runtime_error("raster: '" + path + "': malformed header value for " + k);
      if (k == "ncols") { r.ncols = static_cast<int>(v); have[0] = true; }
      else if (k == "nrows") { r.nrows = static_cast<int>(v); have[1] = true; }
      else if (k == "xllcorner") { r.xll = v; have[2] = true; }
      else if (k == "yllcorner") { r.yll = v; have[3] = true; }
      else if (k == "cellsize") { r.cellsize = v; have[4] = true; }
      else r.nodata = v;
    } else {
      // first data token
      try {
        std::size_t pos = 0;
        r.values.push_back(std::stod(word, &pos));
        if (pos != word.size()) throw std::invalid_argument(word);
      } catch (const std::logic_error&) {
        throw std::runtime_error("raster: '" + path + "': unexpected token '" + word + "'");
      }
      break;
    }
  }
  for (bool h : have)
    if (!h) throw std::runtime_error("raster: '" + path + "': incomplete header");
  if (r.ncols < 1 || r.nrows < 1 || r.cellsize <= 0.0)
    throw std::runtime_error("raster: '" + path + "': invalid header values");
  double v;
  while (in >> v) r.values.push_back(v);
  const std::size_t expect =
      static_cast<std::size_t>(r.ncols) * static_cast<std::size_t>(r.nrows);
  if (r.values.size() != expect)
    throw std::runtime_error("raster: '" + path + "': expected " +
                             std::to_string(expect) + " values, got " +
                             std::to_string(r.values.size()));
  if (std::all_of(r.values.begin(), r.values.end(),
                  [&r](double x) { return r.is_nodata(x); }))
    throw std::runtime_error("raster: '" + path + "': all values are nodata");
  return r;
}

double raster_bilinear(const RasterGrid& raster, double x, double y,
                       double nodata_replacement) {
  auto node = [&](int s, int c) {
    const double v = raster.at(raster.nrows - 1 - s, c);
    return raster.is_nodata(v) ? nodata_replacement : v;
  };
  double fx = (x - raster.xll) / raster.cellsize - 0.5;
  double fy = (y - raster.yll) / raster.cellsize - 0.5;
  fx = std::clamp(fx, 0.0, static_cast<double>(raster.ncols - 1));
  fy = std::clamp(fy, 0.0, static_cast<double>(raster.nrows - 1));
  const int c0 = std::min(static_cast<int>(fx), raster.ncols - 2 >= 0 ? raster.ncols - 2 : 0);
  const int s0 = std::min(static_cast<int>(fy), raster.nrows - 2 >= 0 ? raster.nrows - 2 : 0);
  const int c1 = std::min(c0 + 1, raster.ncols - 1);
  const int s1 = std::min(s0 + 1, raster.nrows - 1);
  const double tx = fx - c0, ty = fy - s0;
  const double a = node(s0, c0) * (1.0 - tx) + node(s0, c1) * tx;
  const double b = node(s1, c0) * (1.0 - tx) + node(s1, c1) * tx;
  return a * (1.0 - ty) + b * ty;
}

void apply_raster_bathymetry(StateField& field, const Grid& grid,
                             const RasterGrid& raster, const RasterConfig& rc,
                             int quad_pts) {
  if (rc.nodata_policy == "error") {
    for (double v : raster.values)
      if (raster.is_nodata(v))
        throw std::runtime_error("raster: nodata value present (policy=error)");
  }
  // Replacement in file units: the land policy stands for dry ground
  // land_height meters above the datum.
  double repl = 0.0;
  if (rc.nodata_policy == "land")
    repl = rc.positive_down ? -rc.land_height : rc.land_height;
  const bool spherical = grid.geometry == Geometry::Spherical;
  const GaussRule& gr = gauss_rule(quad_pts);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      double sum = 0.0;
      for (int ly = 0; ly < gr.n; ++ly)
        for (int lx = 0; lx < gr.n; ++lx) {
          const double xg = grid.xc(i) + gr.node[lx] * grid.dx;
          const double yg = grid.yc(j) + gr.node[ly] * grid.dy;
          const double xs = spherical ? xg * kRadToDeg : xg;
          const double ys = spherical ? yg * kRadToDeg : yg;
          double h = raster_bilinear(raster, xs, ys, repl);
          if (!rc.positive_down) h = -h;
          if (spherical) h *= std::cos(yg);
          sum += gr.weight[lx] * gr.weight[ly] * h;
        }
      field.Hsig[field.idx(i, j)] = sum;
    }
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("io: cannot write '" + path + "'");
  return out;
}

void put(std::ofstream& out, double v, char sep) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf << sep;
}

}  // namespace

void write_snapshot(const StateField& field, const Grid& grid, double time,
                    const std::string& path) {
  std::ofstream out = open_out(path);
  out << "# t = ";
  put(out, time, '\n');
  out << "x,y,h,qx,qy,eta,H\n";
  const bool spherical = grid.geometry == Geometry::Spherical;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto id = field.idx(i, j);
      const double sig = field.sigma(j);
      const double x = spherical ? grid.xc(i) * kRadToDeg : grid.xc(i);
      const double y = spherical ? grid.yc(j) * kRadToDeg : grid.yc(j);
      put(out, x, ',');
      put(out, y, ',');
      put(out, field.a[id] / sig, ',');
      put(out, field.m1[id] / sig, ',');
      put(out, field.m2[id] / sig, ',');
      put(out, (field.a[id] - field.Hsig[id]) / sig, ',');
      put(out, field.Hsig[id] / sig, '\n');
    }
  if (!out) throw std::runtime_error("io: write failed for '" + path + "'");
}

void write_gauges(const GaugeSeries& series, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "t,eta\n";
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    put(out, series.t[k], ',');
    put(out, series.eta[k], '\n');
  }
  if (!out) throw std::runtime_error("io: write failed for '" + path + "'");
}

void write_table(const std::vector<TableRow>& rows, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "N,err_h,rate_h,err_qx,rate_qx,err_qy,rate_qy\n";
  auto put_rate = [&out](double r, char sep) {
    if (std::isnan(r)) out << '-' << sep;
    else put(out, r, sep);
  };
  for (const TableRow& r : rows) {
    out << r.n << ',';
    put(out, r.err_h, ',');
    put_rate(r.rate_h, ',');
    put(out, r.err_qx, ',');
    put_rate(r.rate_qx, ',');
    put(out, r.err_qy, ',');
    put_rate(r.rate_qy, '\n');
  }
  if (!out) throw std::runtime_error("io: write failed for '" + path + "'");
}

std::vector<std::array<double, 7>> read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
  std::vector<std::array<double, 7>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    std::array<double, 7> row{};
    std::istringstream ls(line);
    std::string cell;
    for (int k = 0; k < 7; ++k) {
      if (!std::getline(ls, cell, ','))
        throw std::runtime_error("io: short row in '" + path + "'");
      row[k] = std::stod(cell);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace swe
