#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "swe/io.hpp"

using namespace swe;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::string contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos ? "" : hay;
}

}  // namespace

TEST_CASE("parse_config defaults on empty input") {
  const RunConfig c = parse_config("");
  CHECK(c.scenario_name.empty());
  CHECK(c.scheme.cfl == 0.5);
  CHECK(c.scheme.g == 9.81);
  CHECK(c.scheme.variant == Variant::P2P1);
  CHECK(c.scheme.h_dry == 1e-8);
  CHECK(!c.grid_set);
  CHECK(!c.bc_set);
  CHECK(c.t_end == -1.0);
  CHECK(c.output.prefix == "out");
  CHECK(c.output.gauges.empty());
}

TEST_CASE("parse_config reads every section") {
  const std::string text = R"(
# full-run configuration
scenario.name = Thacker
scenario.cells = 50
scenario.printed_variant = true
scheme.variant = p3p2
scheme.cfl = 0.4
scheme.g = 9.8          # trailing comment
scheme.eps_law = const
scheme.eps_const = 1e-6
scheme.t_end = 12.5
grid.nx = 40
grid.ny = 30
grid.x0 = -1
grid.y0 = -1
grid.x1 = 1
grid.y1 = 1
grid.geometry = cartesian
bc.west = wall
bc.east = wall
bc.south = open
bc.north = open
raster.path = bed.asc
raster.positive_down = false
raster.nodata_policy = zero
output.prefix = lake
output.snapshot_interval = 5
output.gauge = 0.25, -0.5
output.gauge = 0.75, 0.5
)";
  const RunConfig c = parse_config(text);
  CHECK(c.scenario_name == "thacker");
  CHECK(c.scenario.cells == 50);
  CHECK(c.scenario.thacker_printed_variant);
  CHECK(c.scheme.variant == Variant::P3P2);
  CHECK(c.scheme.cfl == 0.4);
  CHECK(c.scheme.g == 9.8);
  CHECK(c.scenario.g == 9.8);  // kept in sync
  CHECK(c.scheme.eps_law == EpsLaw::Constant);
  CHECK(c.scheme.eps_const == 1e-6);
  CHECK(c.t_end == 12.5);
  CHECK(c.grid_set);
  CHECK(c.grid.nx == 40);
  CHECK(c.bc_set);
  CHECK(c.bc.south == BcType::Open);
  CHECK(c.raster.path == "bed.asc");
  CHECK(!c.raster.positive_down);
  CHECK(c.raster.nodata_policy == "zero");
  CHECK(c.output.prefix == "lake");
  CHECK(c.output.snapshot_interval == 5.0);
  REQUIRE(c.output.gauges.size() == 2);
  CHECK(c.output.gauges[0].first == 0.25);
  CHECK(c.output.gauges[1].second == 0.5);
}

TEST_CASE("parse_config errors name the key and the line") {
  try {
    parse_config("scenario.name = vortex\nscheme.cfl = 1.5\n");
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(contains(msg, "line 2") == "");
    CHECK(contains(msg, "scheme.cfl") == "");
  }
  CHECK_THROWS(parse_config("scheme.wibble = 1\n"));
  CHECK_THROWS(parse_config("nosection = 1\n"));
  CHECK_THROWS(parse_config("scheme.order = 5\n"));
  CHECK_THROWS(parse_config("scheme.g = fast\n"));
  CHECK_THROWS(parse_config("bc.west = slippery\n"));
  CHECK_THROWS(parse_config("just some words\n"));
}

TEST_CASE("apply_override layers on top of a parsed config") {
  RunConfig c = parse_config("scheme.cfl = 0.3\n");
  apply_override(c, "scheme.cfl=0.9");
  CHECK(c.scheme.cfl == 0.9);
  apply_override(c, "scenario.name=vortex");
  CHECK(c.scenario_name == "vortex");
  apply_override(c, "scheme.g = 1.0");
  CHECK(c.scenario.g == 1.0);
  CHECK_THROWS(apply_override(c, "scheme.cfl"));
  CHECK_THROWS(apply_override(c, "scheme.cfl=2.0"));
}

TEST_CASE("raster parsing and bilinear sampling") {
  const std::string asc =
      "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
      "3 4\n1 2\n";
  TempFile tf("test_io_raster.asc", asc);
  const RasterGrid r = read_raster(tf.path);
  CHECK(r.ncols == 2);
  CHECK(r.nrows == 2);
  // File rows run north to south: row 0 holds {3, 4}.
  CHECK(r.at(0, 0) == 3.0);
  CHECK(r.at(1, 1) == 2.0);

  // Nodes sit at cell centers; dead center of the 2x2 block averages all four.
  CHECK(raster_bilinear(r, 1.0, 1.0, 0.0) == doctest::Approx(2.5));
  // At a node, the node value.
  CHECK(raster_bilinear(r, 0.5, 0.5, 0.0) == doctest::Approx(1.0));
  CHECK(raster_bilinear(r, 1.5, 1.5, 0.0) == doctest::Approx(4.0));
  // Outside the hull the value is clamped.
  CHECK(raster_bilinear(r, -5.0, -5.0, 0.0) == doctest::Approx(1.0));
  CHECK(raster_bilinear(r, 9.0, 9.0, 0.0) == doctest::Approx(4.0));
}

TEST_CASE("raster error cases") {
  TempFile bad_count("test_io_badcount.asc",
                     "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
                     "1 2 3\n");
  CHECK_THROWS(read_raster(bad_count.path));

  TempFile no_header("test_io_nohdr.asc", "1 2 3 4\n");
  CHECK_THROWS(read_raster(no_header.path));

  TempFile all_nodata("test_io_nodata.asc",
                      "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
                      "nodata_value -9999\n-9999 -9999\n-9999 -9999\n");
  CHECK_THROWS(read_raster(all_nodata.path));

  CHECK_THROWS(read_raster("test_io_does_not_exist.asc"));
}

TEST_CASE("apply_raster_bathymetry reproduces a constant bed exactly") {
  const std::string asc =
      "ncols 4\nnrows 4\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
      "7 7 7 7\n7 7 7 7\n7 7 7 7\n7 7 7 7\n";
  TempFile tf("test_io_const.asc", asc);
  const RasterGrid r = read_raster(tf.path);
  const Grid g = build_grid({8, 8, 0.5, 0.5, 3.5, 3.5, Geometry::Cartesian, 1.0});
  StateField f(g);
  RasterConfig rc;
  apply_raster_bathymetry(f, g, r, rc, 3);
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i)
      CHECK(f.Hsig[f.idx(i, j)] == doctest::Approx(7.0).epsilon(1e-14));

  // positive_down = false flips the sign (file stores elevations).
  rc.positive_down = false;
  apply_raster_bathymetry(f, g, r, rc, 2);
  CHECK(f.Hsig[f.idx(3, 3)] == doctest::Approx(-7.0).epsilon(1e-14));
}

TEST_CASE("nodata policies") {
  const std::string asc =
      "ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
      "nodata_value -9999\n5 -9999\n";
  TempFile tf("test_io_policy.asc", asc);
  const RasterGrid r = read_raster(tf.path);
  const Grid g = build_grid({2, 1, 0, 0, 2, 1, Geometry::Cartesian, 1.0});
  StateField f(g);
  RasterConfig rc;

  rc.nodata_policy = "land";  // depth -land_height: dry ground above datum
  apply_raster_bathymetry(f, g, r, rc, 1);
  CHECK(f.Hsig[f.idx(1, 0)] == doctest::Approx(-10.0).epsilon(1e-12));

  rc.nodata_policy = "zero";
  apply_raster_bathymetry(f, g, r, rc, 1);
  CHECK(f.Hsig[f.idx(1, 0)] == doctest::Approx(0.0).scale(1.0));

  rc.nodata_policy = "error";
  CHECK_THROWS(apply_raster_bathymetry(f, g, r, rc, 1));
}

TEST_CASE("snapshot round-trip") {
  const Grid g = build_grid({5, 4, 0, 0, 5, 4, Geometry::Cartesian, 1.0});
  StateField f(g);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 5; ++i) {
      const auto id = f.idx(i, j);
      f.a[id] = 1.0 + 0.1 * i + 0.01 * j;
      f.m1[id] = std::sin(1.0 * i + 2.0 * j);
      f.m2[id] = -0.25 * i;
      f.Hsig[id] = 2.0 - 0.05 * j;
    }
  const std::string path = "test_io_snapshot.csv";
  write_snapshot(f, g, 1.5, path);
  const auto rows = read_snapshot(path);
  std::remove(path.c_str());
  REQUIRE(rows.size() == 20);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 5; ++i) {
      const auto& row = rows[static_cast<std::size_t>(j) * 5 + i];
      const auto id = f.idx(i, j);
      CHECK(row[0] == doctest::Approx(g.xc(i)).epsilon(1e-15));
      CHECK(row[1] == doctest::Approx(g.yc(j)).epsilon(1e-15));
      CHECK(row[2] == f.a[id]);  // %.17g round-trips doubles exactly
      CHECK(row[3] == f.m1[id]);
      CHECK(row[4] == f.m2[id]);
      CHECK(row[5] == doctest::Approx(f.a[id] - f.Hsig[id]).epsilon(1e-15));
      CHECK(row[6] == f.Hsig[id]);
    }
}

TEST_CASE("gauge and table headers") {
  GaugeSeries s;
  s.t = {0.0, 10.0};
  s.eta = {0.5, 0.25};
  write_gauges(s, "test_io_gauge.csv");
  {
    std::ifstream in("test_io_gauge.csv");
    std::string l1, l2;
    std::getline(in, l1);
    std::getline(in, l2);
    CHECK(l1 == "t,eta");
    CHECK(l2 == "0,0.5");
  }
  std::remove("test_io_gauge.csv");

  std::vector<TableRow> rows(2);
  rows[0] = {25, 1e-3, std::nan(""), 2e-3, std::nan(""), 3e-3, std::nan("")};
  rows[1] = {50, 1.25e-4, 3.0, 2.5e-4, 3.0, 3.75e-4, 3.0};
  write_table(rows, "test_io_table.csv");
  {
    std::ifstream in("test_io_table.csv");
    std::string l1, l2, l3;
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    CHECK(l1 == "N,err_h,rate_h,err_qx,rate_qx,err_qy,rate_qy");
    // Errors are full-precision decimals; missing rates print as '-'.
    auto split = [](const std::string& s) {
      std::vector<std::string> out;
      std::size_t pos = 0;
      while (true) {
        const auto comma = s.find(',', pos);
        out.push_back(s.substr(pos, comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      return out;
    };
    const auto f2 = split(l2);
    REQUIRE(f2.size() == 7);
    CHECK(f2[0] == "25");
    CHECK(std::stod(f2[1]) == 1e-3);
    CHECK(f2[2] == "-");
    CHECK(std::stod(f2[5]) == 3e-3);
    CHECK(f2[6] == "-");
    const auto f3 = split(l3);
    REQUIRE(f3.size() == 7);
    CHECK(f3[0] == "50");
    CHECK(std::stod(f3[1]) == 1.25e-4);
    CHECK(std::stod(f3[2]) == 3.0);
    CHECK(std::stod(f3[6]) == 3.0);
  }
  std::remove("test_io_table.csv");
}
