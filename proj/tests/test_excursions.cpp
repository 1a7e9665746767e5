#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "permuton/excursions.hpp"
#include "permuton/rng.hpp"
#include "permuton/stats.hpp"

using namespace permuton;

namespace {

Path2D three_point(double a, double b, double rho, double dt) {
  Path2D p;
  p.dt = dt;
  p.rho = rho;
  p.kind = PathKind::quadrant_excursion;
  p.xs = {0.0, a, 0.0};
  p.ys = {0.0, b, 0.0};
  return p;
}

void require_quadrant(const Path2D& p) {
  REQUIRE(p.xs.front() == 0.0);
  REQUIRE(p.ys.front() == 0.0);
  REQUIRE(p.xs.back() == 0.0);
  REQUIRE(p.ys.back() == 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    REQUIRE(p.xs[i] >= 0.0);
    REQUIRE(p.ys[i] >= 0.0);
  }
}

}  // namespace

TEST_CASE("correlated BM: rho = 1 collapses to one coordinate") {
  const Path2D p = sample_correlated_bm(1.0, 500, 0.01, 7);
  CHECK(p.kind == PathKind::free_bm);
  CHECK(p.xs == p.ys);
  CHECK(p.xs[0] == 0.0);
}

TEST_CASE("correlated BM: single point") {
  const Path2D p = sample_correlated_bm(0.3, 1, 1.0, 1);
  REQUIRE(p.size() == 1);
  CHECK(p.xs[0] == 0.0);
  CHECK(p.ys[0] == 0.0);
  CHECK(p.duration() == 0.0);
}

TEST_CASE("correlated BM: increment correlation and variance") {
  const std::size_t n = 100000;
  for (double rho : {-0.5, 0.0, 0.5}) {
    const Path2D p = sample_correlated_bm(rho, n, 1.0, 11);
    std::vector<double> dx(n - 1), dy(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      dx[i - 1] = p.xs[i] - p.xs[i - 1];
      dy[i - 1] = p.ys[i] - p.ys[i - 1];
    }
    const double tol = 3.0 / std::sqrt(double(n)) * (1 - rho * rho) + 0.01;
    CHECK(std::abs(correlation(dx, dy) - rho) < tol);
    CHECK(std::abs(sample_variance(dx) - 1.0) < 0.02);
    CHECK(std::abs(sample_variance(dy) - 1.0) < 0.02);
  }
  const Path2D p0 = sample_correlated_bm(0.0, n, 1.0, 12);
  std::vector<double> dx(n - 1), dy(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    dx[i - 1] = p0.xs[i] - p0.xs[i - 1];
    dy[i - 1] = p0.ys[i] - p0.ys[i - 1];
  }
  CHECK(std::abs(correlation(dx, dy)) < 0.02);
}

TEST_CASE("correlated BM: argument checks") {
  CHECK_THROWS_AS(sample_correlated_bm(-1.0, 10, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_correlated_bm(1.5, 10, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_correlated_bm(0.0, 10, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_correlated_bm(0.0, 10, -1.0, 1), std::invalid_argument);
}

TEST_CASE("glauber sweep keeps endpoints and the quadrant") {
  Rng rng(3);
  for (double rho : {-0.9, -0.5, 0.0, 0.7, 1.0}) {
    Path2D p = three_point(0.4, rho == 1.0 ? 0.4 : 1.3, rho, 0.1);
    for (int s = 0; s < 50; ++s) {
      glauber_sweep(p, rng);
      require_quadrant(p);
      if (rho == 1.0) REQUIRE(p.xs == p.ys);
    }
  }
}

TEST_CASE("glauber sweep rejects free paths") {
  Rng rng(1);
  Path2D p = sample_correlated_bm(0.0, 5, 1.0, 1);
  CHECK_THROWS_AS(glauber_sweep(p, rng), std::invalid_argument);
}

TEST_CASE("glauber conditional matches a rejection-sampling oracle") {
  // One interior point with dt = 2 and rho = 0: the conditional law is a
  // standard Gaussian restricted to the quadrant.
  const std::size_t draws = 10000;
  Path2D p = three_point(1.0, 1.0, 0.0, 2.0);
  Rng rng(2024);
  std::vector<double> gx, gy;
  for (std::size_t i = 0; i < draws; ++i) {
    glauber_sweep(p, rng);
    gx.push_back(p.xs[1]);
    gy.push_back(p.ys[1]);
  }
  Rng oracle(99);
  std::vector<double> ox, oy;
  while (ox.size() < draws) {
    const double a = oracle.normal();
    const double b = oracle.normal();
    if (a >= 0 && b >= 0) {
      ox.push_back(a);
      oy.push_back(b);
    }
  }
  CHECK(ks_distance(gx, ox) < 0.03);
  CHECK(ks_distance(gy, oy) < 0.03);
}

TEST_CASE("glauber conditional with a deep negative mean stays in the quadrant") {
  // Correlation -0.95 with neighbours far apart pushes the conditional mass
  // against an axis; the Gibbs fallback has to handle it.
  Path2D p;
  p.dt = 1e-4;
  p.rho = -0.95;
  p.kind = PathKind::quadrant_excursion;
  p.xs = {0.0, 0.0, 2.0, 0.0, 0.0};
  p.ys = {0.0, 2.0, 0.0, 2.0, 0.0};
  Rng rng(5);
  for (int s = 0; s < 200; ++s) {
    glauber_sweep(p, rng);
    require_quadrant(p);
  }
}

TEST_CASE("refine_midpoints") {
  Path2D two;
  two.dt = 1.0;
  two.kind = PathKind::quadrant_excursion;
  two.xs = {0.0, 0.0};
  two.ys = {0.0, 0.0};
  const Path2D r2 = refine_midpoints(two);
  CHECK(r2.size() == 3);
  CHECK(r2.dt == 0.5);
  for (std::size_t i = 0; i < 3; ++i) CHECK(r2.xs[i] == 0.0);

  Path2D five = sample_correlated_bm(0.2, 5, 0.25, 8);
  const Path2D r5 = refine_midpoints(five);
  REQUIRE(r5.size() == 9);
  CHECK(r5.dt == 0.125);
  CHECK(r5.duration() == doctest::Approx(five.duration()));
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(r5.xs[2 * i] == five.xs[i]);
    CHECK(r5.ys[2 * i] == five.ys[i]);
  }
  for (std::size_t i = 0; i + 1 < 5; ++i) {
    CHECK(r5.xs[2 * i + 1] == (five.xs[i] + five.xs[i + 1]) / 2);
    CHECK(r5.ys[2 * i + 1] == (five.ys[i] + five.ys[i + 1]) / 2);
  }
}

TEST_CASE("glauber config") {
  GlauberConfig c;
  CHECK(c.final_points() == 4609);
  c.refinement_levels = 0;
  CHECK(c.final_points() == 10);
  c.initial_points = 2;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  GlauberConfig s;
  s.sweeps_per_level = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("sample_excursion: sizes, invariants, determinism") {
  GlauberConfig c{10, 0, 20, 4};
  const Path2D coarse = sample_excursion(-0.5, c);
  CHECK(coarse.size() == 10);
  require_quadrant(coarse);

  GlauberConfig f{9, 5, 30, 4};
  const Path2D a = sample_excursion(0.3, f);
  const Path2D b = sample_excursion(0.3, f);
  CHECK(a.size() == f.final_points());
  CHECK(a.kind == PathKind::quadrant_excursion);
  CHECK(a.dt == doctest::Approx(1.0 / double(a.size() - 1)));
  CHECK(a.duration() == doctest::Approx(1.0));
  require_quadrant(a);
  CHECK(a.xs == b.xs);
  CHECK(a.ys == b.ys);
  f.seed = 5;
  CHECK(sample_excursion(0.3, f).xs != a.xs);
  check_invariants(a);
}

TEST_CASE("sample_excursion: rho = 1 duplicates a one-dimensional excursion") {
  GlauberConfig c{9, 4, 30, 2};
  const Path2D p = sample_excursion(1.0, c);
  CHECK(p.xs == p.ys);
  CHECK(p.xs == sample_excursion_1d(c));
  require_quadrant(p);
}

TEST_CASE("sample_excursion: rho near 1 hugs the diagonal") {
  GlauberConfig c{9, 9, 200, 17};
  const Path2D p = sample_excursion(0.995, c);
  REQUIRE(p.size() == 4097);
  double diff = 0.0, sup = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    diff += std::abs(p.xs[i] - p.ys[i]);
    sup = std::max({sup, p.xs[i], p.ys[i]});
  }
  diff /= double(p.size());
  CHECK(diff < 0.2 * sup);
}

TEST_CASE("sample_excursion: argument checks") {
  CHECK_THROWS_AS(sample_excursion(-1.0, GlauberConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(sample_excursion(1.01, GlauberConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(sample_excursion(0.0, GlauberConfig{2, 3, 10, 1}), std::invalid_argument);
}

TEST_CASE("check_invariants flags broken paths") {
  Path2D p = three_point(0.5, 0.5, 0.0, 1.0);
  CHECK_NOTHROW(check_invariants(p));
  p.ys[1] = -0.1;
  CHECK_THROWS(check_invariants(p));
  p = three_point(0.5, 0.5, 0.0, 1.0);
  p.xs[2] = 0.1;
  CHECK_THROWS(check_invariants(p));
  p = three_point(0.5, 0.6, 1.0, 1.0);
  CHECK_THROWS(check_invariants(p));
  p = three_point(0.5, 0.5, 0.0, 1.0);
  p.ys.pop_back();
  CHECK_THROWS(check_invariants(p));
}

TEST_CASE("one-dimensional excursion") {
  const auto e = sample_excursion_1d(65, 3);
  REQUIRE(e.size() == 65);
  CHECK(e.front() == 0.0);
  CHECK(e.back() == 0.0);
  for (double v : e) CHECK(v >= 0.0);
  CHECK(sample_excursion_1d(2, 1) == std::vector<double>{0.0, 0.0});
  CHECK(sample_excursion_1d(100, 1).size() == 100);
  CHECK_THROWS_AS(sample_excursion_1d(1, 1), std::invalid_argument);
}

TEST_CASE("one-dimensional excursion is reversible in law") {
  const std::size_t n = 65;
  const std::size_t samples = 1000;
  std::vector<double> a, b, d;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto e = sample_excursion_1d(n, mix_seed(77, s));
    a.push_back(e[n / 4]);
    b.push_back(e[n - 1 - n / 4]);
    d.push_back(a.back() - b.back());
  }
  CHECK(std::abs(mean(a) - mean(b)) < 2.0 * standard_error(d) + 1e-12);
}
