#include "permuton/excursions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace permuton {
namespace {

constexpr int kMaxRejections = 64;

// Bivariate draw from N(mean, var * [[1, rho], [rho, 1]]) restricted to the
// non-negative quadrant. `x`, `y` hold the current (valid) state on entry;
// it is the starting point of the Gibbs fallback.
void resample_quadrant(double mx, double my, double var, double rho, double& x, double& y,
                       Rng& rng) {
  const double sd = std::sqrt(var);
  if (rho == 1.0) {
    // Degenerate: y - x is fixed at my - mx.
    const double shift = my - mx;
    x = rng.truncated_normal_lower(mx, sd, std::max(0.0, -shift));
    y = std::max(0.0, x + shift);
    return;
  }
  const double comp = std::sqrt(1.0 - rho * rho);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double g1 = rng.normal();
    const double g2 = rng.normal();
    const double cx = mx + sd * g1;
    const double cy = my + sd * (rho * g1 + comp * g2);
    if (cx >= 0.0 && cy >= 0.0) {
      x = cx;
      y = cy;
      return;
    }
  }
  // Gibbs fallback: one pass of truncated univariate conditionals.
  const double cond_sd = sd * comp;
  x = rng.truncated_normal_lower(mx + rho * (y - my), cond_sd, 0.0);
  y = rng.truncated_normal_lower(my + rho * (x - mx), cond_sd, 0.0);
}

std::vector<double> tent(std::size_t k) {
  std::vector<double> v(k);
  const double scale = 1.0 / static_cast<double>((k - 1) * (k - 1));
  for (std::size_t i = 0; i < k; ++i) {
    v[i] = static_cast<double>(i * (k - 1 - i)) * scale;
  }
  return v;
}

void sweep_1d(std::vector<double>& e, double dt, Rng& rng) {
  const double sd = std::sqrt(0.5 * dt);
  for (std::size_t i = 1; i + 1 < e.size(); ++i) {
    e[i] = rng.truncated_normal_lower(0.5 * (e[i - 1] + e[i + 1]), sd, 0.0);
  }
}

std::vector<double> refine_1d(const std::vector<double>& e) {
  std::vector<double> out(2 * e.size() - 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    out[2 * i] = e[i];
    if (i + 1 < e.size()) out[2 * i + 1] = 0.5 * (e[i] + e[i + 1]);
  }
  return out;
}

}  // namespace

void check_rho(double rho) {
  if (!(rho > -1.0 && rho <= 1.0)) {
    throw std::invalid_argument("rho must lie in (-1, 1], got " + std::to_string(rho));
  }
}

void check_invariants(const Path2D& path) {
  if (path.xs.size() != path.ys.size()) throw std::logic_error("Path2D: coordinate length mismatch");
  if (path.xs.empty()) throw std::logic_error("Path2D: empty path");
  if (path.kind == PathKind::quadrant_excursion) {
    const std::size_t last = path.size() - 1;
    if (path.xs[0] != 0.0 || path.ys[0] != 0.0 || path.xs[last] != 0.0 || path.ys[last] != 0.0) {
      throw std::logic_error("Path2D: excursion endpoints not pinned at the origin");
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (path.xs[i] < 0.0 || path.ys[i] < 0.0) {
        throw std::logic_error("Path2D: point " + std::to_string(i) + " leaves the quadrant");
      }
    }
  }
  if (path.rho == 1.0) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (path.xs[i] != path.ys[i]) throw std::logic_error("Path2D: rho = 1 but x != y");
    }
  }
}

std::size_t GlauberConfig::final_points() const {
  return (initial_points - 1) * (std::size_t{1} << refinement_levels) + 1;
}

void GlauberConfig::validate() const {
  if (initial_points < 3) throw std::invalid_argument("GlauberConfig: initial_points must be >= 3");
  if (sweeps_per_level < 1) throw std::invalid_argument("GlauberConfig: sweeps_per_level must be >= 1");
  if (refinement_levels > 24) throw std::invalid_argument("GlauberConfig: refinement_levels too large");
}

Path2D sample_correlated_bm(double rho, std::size_t n, double dt, std::uint64_t seed) {
  check_rho(rho);
  if (!(dt > 0.0)) throw std::invalid_argument("sample_correlated_bm: dt must be positive");
  if (n < 1) throw std::invalid_argument("sample_correlated_bm: n must be >= 1");

  Path2D path;
  path.dt = dt;
  path.rho = rho;
  path.kind = PathKind::free_bm;
  path.xs.assign(n, 0.0);
  path.ys.assign(n, 0.0);

  Rng rng(seed);
  const double sd = std::sqrt(dt);
  const double comp = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 1; i < n; ++i) {
    const double g1 = rng.normal();
    const double g2 = rng.normal();
    const double dx = sd * g1;
    const double dy = rho == 1.0 ? dx : sd * (rho * g1 + comp * g2);
    path.xs[i] = path.xs[i - 1] + dx;
    path.ys[i] = path.ys[i - 1] + dy;
  }
  return path;
}

void glauber_sweep(Path2D& path, Rng& rng) {
  if (path.kind != PathKind::quadrant_excursion) {
    throw std::invalid_argument("glauber_sweep: path must be a quadrant excursion");
  }
  const double var = 0.5 * path.dt;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const double mx = 0.5 * (path.xs[i - 1] + path.xs[i + 1]);
    const double my = 0.5 * (path.ys[i - 1] + path.ys[i + 1]);
    resample_quadrant(mx, my, var, path.rho, path.xs[i], path.ys[i], rng);
  }
}

Path2D glauber_sweep(const Path2D& path, Rng& rng) {
  Path2D out = path;
  glauber_sweep(out, rng);
  return out;
}

Path2D refine_midpoints(const Path2D& path) {
  if (path.size() < 2) throw std::invalid_argument("refine_midpoints: need at least two points");
  Path2D out;
  out.dt = 0.5 * path.dt;
  out.rho = path.rho;
  out.kind = path.kind;
  out.xs = refine_1d(path.xs);
  out.ys = refine_1d(path.ys);
  return out;
}

Path2D sample_excursion(double rho, const GlauberConfig& config) {
  check_rho(rho);
  config.validate();

  Path2D path;
  path.rho = rho;
  path.kind = PathKind::quadrant_excursion;
  if (rho == 1.0) {
    path.xs = sample_excursion_1d(config);
    path.ys = path.xs;
    path.dt = 1.0 / static_cast<double>(path.xs.size() - 1);
    return path;
  }

  Rng rng(config.seed);
  path.xs = tent(config.initial_points);
  path.ys = path.xs;
  path.dt = 1.0 / static_cast<double>(config.initial_points - 1);
  for (std::size_t level = 0;; ++level) {
    for (std::size_t s = 0; s < config.sweeps_per_level; ++s) glauber_sweep(path, rng);
    if (level == config.refinement_levels) break;
    path = refine_midpoints(path);
  }
  return path;
}

std::vector<double> sample_excursion_1d(const GlauberConfig& config) {
  config.validate();
  Rng rng(config.seed);
  std::vector<double> e = tent(config.initial_points);
  double dt = 1.0 / static_cast<double>(config.initial_points - 1);
  for (std::size_t level = 0;; ++level) {
    for (std::size_t s = 0; s < config.sweeps_per_level; ++s) sweep_1d(e, dt, rng);
    if (level == config.refinement_levels) break;
    e = refine_1d(e);
    dt *= 0.5;
  }
  return e;
}

std::vector<double> sample_excursion_1d(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample_excursion_1d: n must be >= 2");
  if (n == 2) return {0.0, 0.0};
  std::size_t coarse = n - 1;
  std::size_t levels = 0;
  while (coarse % 2 == 0 && coarse / 2 >= 2) {
    coarse /= 2;
    ++levels;
  }
  GlauberConfig config;
  config.initial_points = coarse + 1;
  config.refinement_levels = levels;
  config.seed = seed;
  return sample_excursion_1d(config);
}

}  // namespace permuton
