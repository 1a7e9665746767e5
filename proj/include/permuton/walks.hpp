#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "permuton/excursions.hpp"
#include "permuton/rng.hpp"

namespace permuton {

/// Coalescent-walk family on a shared time grid. Walk j starts at grid index
/// u_indices[j] and is zero up to and including it.
class WalkFamily {
 public:
  WalkFamily(std::size_t grid_size, double dt, double rho, double q,
             std::vector<std::size_t> u_indices);

  std::size_t grid_size() const { return grid_size_; }
  std::size_t walk_count() const { return u_indices_.size(); }
  double dt() const { return dt_; }
  double rho() const { return rho_; }
  double q() const { return q_; }
  const std::vector<std::size_t>& u_indices() const { return u_indices_; }

  double z(std::size_t walk, std::size_t index) const { return z_[walk * grid_size_ + index]; }
  std::span<const double> trajectory(std::size_t walk) const;
  std::span<double> trajectory(std::size_t walk);

 private:
  std::size_t grid_size_;
  double dt_;
  double rho_;
  double q_;
  std::vector<std::size_t> u_indices_;
  std::vector<double> z_;
};

/// Zero prefix and coalescence checks; throws std::logic_error on violation.
void check_invariants(const WalkFamily& family);

/// Signs attached to the local minima of a one-dimensional path. The first
/// entry of minima_indices is the sentinel at index 0.
struct SignAssignment {
  std::vector<std::size_t> minima_indices;
  std::vector<int> signs;
  double q = 0.5;
};

SignAssignment draw_signs(std::span<const std::size_t> minima, double q, Rng& rng);

/// Couples assignments across q: sign is +1 iff uniforms[l] < q.
SignAssignment signs_from_uniforms(std::span<const std::size_t> minima,
                                   std::span<const double> uniforms, double q);

SignAssignment negated(const SignAssignment& assignment);

/// r(x) = x/(1-q) for x > 0, x/q otherwise; s is its inverse. q in (0, 1).
double r_transform(double x, double q);
double s_transform(double x, double q);

/// One explicit Euler step of the transformed (local-time free) equation.
/// The boundary value 0 takes the <= 0 branch.
inline double step_r(double r_prev, double dx, double dy, double q) {
  return r_prev > 0.0 ? r_prev + (1.0 - q) * dy : r_prev - q * dx;
}

/// Default evaluation grid: indices nearest to (j - 1/2)/m on [0, 1],
/// j = 1..m. Throws if two evaluation points collide.
std::vector<std::size_t> u_grid(std::size_t grid_size, std::size_t m);

/// Euler scheme on R with Z = r(R) for q in (0, 1); reflected dynamics for
/// q in {0, 1}. All walks are stepped together; walks whose values cross
/// during a step have met and merge, following the older walk from then on.
/// Requires driver.rho < 1.
WalkFamily simulate_walk_family(const Path2D& driver, double q,
                                std::span<const std::size_t> u_indices);

/// Interior strict local minima e[i-1] > e[i] < e[i+1], preceded by the
/// sentinel index 0.
std::vector<std::size_t> local_minima(std::span<const double> e);

/// z(t) = (e(t) - min e[u..t]) * sign, the sign taken at the last index
/// attaining the running minimum (sentinel sign when that index is not a
/// detected local minimum).
std::vector<double> sign_flip_walk(std::span<const double> e, const SignAssignment& assignment,
                                   std::size_t u);

WalkFamily sign_flip_family(std::span<const double> e, const SignAssignment& assignment,
                            std::span<const std::size_t> u_indices);

/// Skew Brownian motion of parameter q on n grid points, built by flipping
/// the excursions of a free Brownian motion.
std::vector<double> skew_bm_reference(double q, std::size_t n, double dt, std::uint64_t seed);

}  // namespace permuton
