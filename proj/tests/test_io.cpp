#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <vector>

#include "permuton/excursions.hpp"
#include "permuton/io.hpp"
#include "permuton/patterns.hpp"
#include "permuton/permuton.hpp"
#include "permuton/walks.hpp"

using namespace permuton;

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789, 0.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("path CSV round trip") {
  const Path2D p = sample_excursion(-0.3, GlauberConfig{9, 3, 20, 2});
  std::ostringstream out;
  write_path_csv(out, p);
  CHECK(out.str().rfind("t,x,y\n", 0) == 0);
  std::istringstream in(out.str());
  const Path2D q = read_path_csv(in, -0.3, PathKind::quadrant_excursion);
  CHECK(q.xs == p.xs);
  CHECK(q.ys == p.ys);
  CHECK(q.dt == doctest::Approx(p.dt));
  CHECK(q.kind == PathKind::quadrant_excursion);

  std::istringstream bad_header("x,y\n0,0\n");
  CHECK_THROWS(read_path_csv(bad_header, 0.0, PathKind::free_bm));
  std::istringstream bad_row("t,x,y\n0,0\n");
  CHECK_THROWS(read_path_csv(bad_row, 0.0, PathKind::free_bm));
  std::istringstream bad_number("t,x,y\n0,zero,0\n");
  CHECK_THROWS(read_path_csv(bad_number, 0.0, PathKind::free_bm));
}

TEST_CASE("walk CSV round trip") {
  const Path2D d = sample_excursion(0.2, GlauberConfig{9, 3, 20, 2});
  const WalkFamily f = simulate_walk_family(d, 0.4, u_grid(d.size(), 8));
  std::ostringstream out;
  write_walk_csv(out, f, 3);
  std::istringstream in(out.str());
  const WalkSeries w = read_walk_csv(in);
  REQUIRE(w.z.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(w.z[i] == f.z(3, i));
    CHECK(w.t[i] == doctest::Approx(double(i) * d.dt));
  }
  CHECK_THROWS_AS(write_walk_csv(out, f, 8), std::invalid_argument);
}

TEST_CASE("grid CSV round trip and PGM") {
  const GridMeasure g = permuton_from_permutation(Permutation::parse("3142"), 8);
  std::ostringstream out;
  write_grid_csv(out, g);
  std::istringstream in(out.str());
  const GridMeasure h = read_grid_csv(in);
  REQUIRE(h.resolution() == 8);
  CHECK(grid_distance(g, h) == 0.0);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) CHECK(h.mass(r, c) == g.mass(r, c));

  GridMeasure small(2);
  small.mass(1, 0) = 0.5;  // top-left in the image
  small.mass(0, 1) = 0.25;
  std::ostringstream pgm;
  write_pgm(pgm, small);
  CHECK(pgm.str() == "P2\n2 2\n255\n255 0\n0 128\n");

  std::istringstream zero_based("row,col,mass\n0,1,0.5\n");
  CHECK_THROWS(read_grid_csv(zero_based));
}

TEST_CASE("points CSV round trip") {
  PhiCurve c{{0.125, 0.375, 0.625}, {1.0 / 3, 2.0 / 3, 1.0}};
  std::ostringstream out;
  write_points_csv(out, c);
  std::istringstream in(out.str());
  const PhiCurve d = read_points_csv(in);
  CHECK(d.t == c.t);
  CHECK(d.phi == c.phi);
}

TEST_CASE("report CSV round trip") {
  std::vector<PatternReport> r{
      {Permutation::parse("132"), 0.125, 0.001, 1000, PatternSource::monte_carlo},
      {Permutation::parse("10,9,8,7,6,5,4,3,2,1"), 1.0 / 3, 0.0, 7, PatternSource::exact_enumeration}};
  std::ostringstream out;
  write_report_csv(out, r);
  CHECK(out.str().rfind("pattern,estimate,stderr,n_samples,source\n", 0) == 0);
  std::istringstream in(out.str());
  const auto s = read_report_csv(in);
  REQUIRE(s.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(s[i].pattern == r[i].pattern);
    CHECK(s[i].estimate == r[i].estimate);
    CHECK(s[i].std_error == r[i].std_error);
    CHECK(s[i].n_samples == r[i].n_samples);
    CHECK(s[i].source == r[i].source);
  }
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "permuton_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_file(dir / "a.txt", "hello\n");
  CHECK(read_file(dir / "a.txt") == "hello\n");
  CHECK_THROWS(read_file(dir / "missing.txt"));
  std::filesystem::remove_all(dir.parent_path());
}
