#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "permuton/rng.hpp"

namespace permuton {

enum class PathKind { free_bm, quadrant_excursion };

/// Two-dimensional path on a uniform time grid, t_i = i * dt.
/// For a quadrant excursion both coordinates are pinned to zero at the ends
/// and stay non-negative; for rho == 1 the coordinates coincide.
struct Path2D {
  double dt = 1.0;
  double rho = 0.0;
  PathKind kind = PathKind::free_bm;
  std::vector<double> xs;
  std::vector<double> ys;

  std::size_t size() const { return xs.size(); }
  double duration() const { return xs.empty() ? 0.0 : dt * static_cast<double>(xs.size() - 1); }
};

/// Throws std::logic_error naming the first violated invariant.
void check_invariants(const Path2D& path);

struct GlauberConfig {
  std::size_t initial_points = 10;
  std::size_t refinement_levels = 9;
  std::size_t sweeps_per_level = 200;
  std::uint64_t seed = 1;

  std::size_t final_points() const;
  void validate() const;
};

/// Validates rho in (-1, 1].
void check_rho(double rho);

Path2D sample_correlated_bm(double rho, std::size_t n, double dt, std::uint64_t seed);

/// One systematic left-to-right Glauber sweep over the interior points. Each
/// point is redrawn from its Gaussian bridge conditional (mean = neighbour
/// average, covariance dt/2 * [[1, rho], [rho, 1]]) restricted to the
/// quadrant.
void glauber_sweep(Path2D& path, Rng& rng);
Path2D glauber_sweep(const Path2D& path, Rng& rng);

/// Inserts the midpoint of every segment: n points become 2n - 1, dt halves.
Path2D refine_midpoints(const Path2D& path);

/// Multiscale Glauber pipeline on [0, 1]. rho == 1 runs the one-dimensional
/// sampler and duplicates the coordinate.
Path2D sample_excursion(double rho, const GlauberConfig& config);

std::vector<double> sample_excursion_1d(const GlauberConfig& config);

/// Picks the coarsest multiscale schedule that lands exactly on n points:
/// n - 1 = c * 2^L with c >= 2 as small as possible.
std::vector<double> sample_excursion_1d(std::size_t n, std::uint64_t seed);

}  // namespace permuton
