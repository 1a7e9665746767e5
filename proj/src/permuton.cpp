#include "permuton/permuton.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace permuton {

GridMeasure::GridMeasure(std::size_t k) : k_(k), mass_(k * k, 0.0) {
  if (k == 0) throw std::invalid_argument("GridMeasure: resolution must be >= 1");
}

double GridMeasure::total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

std::vector<double> GridMeasure::row_sums() const {
  std::vector<double> out(k_, 0.0);
  for (std::size_t r = 0; r < k_; ++r)
    for (std::size_t c = 0; c < k_; ++c) out[r] += mass(r, c);
  return out;
}

std::vector<double> GridMeasure::column_sums() const {
  std::vector<double> out(k_, 0.0);
  for (std::size_t r = 0; r < k_; ++r)
    for (std::size_t c = 0; c < k_; ++c) out[c] += mass(r, c);
  return out;
}

double GridMeasure::max_mass() const { return *std::max_element(mass_.begin(), mass_.end()); }

// Signs are read from the sign bit: a sign-flip walk sitting on its running
// minimum is -0.0 when that minimum carries sign -1.
std::vector<double> phi_from_walks(const WalkFamily& family) {
  const std::size_t m = family.walk_count();
  const auto& u = family.u_indices();
  std::vector<double> phi(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t count = 0;
    for (std::size_t k = 0; k < j; ++k) {
      if (std::signbit(family.z(k, u[j]))) ++count;
    }
    for (std::size_t k = j; k < m; ++k) {
      if (!std::signbit(family.z(j, u[k]))) ++count;
    }
    phi[j] = static_cast<double>(count) / static_cast<double>(m);
  }
  return phi;
}

PhiCurve phi_curve(const WalkFamily& family) {
  PhiCurve curve;
  curve.phi = phi_from_walks(family);
  curve.t.reserve(family.walk_count());
  for (std::size_t idx : family.u_indices()) curve.t.push_back(static_cast<double>(idx) * family.dt());
  return curve;
}

Permutation permutation_from_phi(std::span<const double> phi) {
  if (phi.empty()) throw std::invalid_argument("permutation_from_phi: empty input");
  return standardize(std::vector<double>(phi.begin(), phi.end()));
}

namespace {

// Length of [a0, a1] ∩ [b0, b1] on integer endpoints.
long long overlap(long long a0, long long a1, long long b0, long long b1) {
  return std::max(0LL, std::min(a1, b1) - std::max(a0, b0));
}

std::size_t cell_of(double x, std::size_t k) {
  const double c = std::ceil(x * static_cast<double>(k));
  if (!(c >= 1.0)) return 0;
  if (c >= static_cast<double>(k)) return k - 1;
  return static_cast<std::size_t>(c) - 1;
}

}  // namespace

GridMeasure permuton_from_permutation(const Permutation& sigma, std::size_t k) {
  const auto n = static_cast<long long>(sigma.size());
  if (n == 0) throw std::invalid_argument("permuton_from_permutation: empty permutation");
  GridMeasure grid(k);
  const auto kk = static_cast<long long>(k);
  // In units of 1/(n k): the i-th square spans [(i-1)k, ik], cell a spans [an, (a+1)n].
  const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(k) * static_cast<double>(k));
  for (long long i = 1; i <= n; ++i) {
    const long long v = sigma[static_cast<std::size_t>(i - 1)];
    const long long col_lo = ((i - 1) * kk) / n;
    const long long row_lo = ((v - 1) * kk) / n;
    for (long long c = col_lo; c < kk; ++c) {
      const long long ox = overlap((i - 1) * kk, i * kk, c * n, (c + 1) * n);
      if (ox == 0) break;
      for (long long r = row_lo; r < kk; ++r) {
        const long long oy = overlap((v - 1) * kk, v * kk, r * n, (r + 1) * n);
        if (oy == 0) break;
        grid.mass(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) +=
            static_cast<double>(ox * oy) * norm;
      }
    }
  }
  return grid;
}

GridMeasure empirical_permuton(const PhiCurve& curve, std::size_t k) {
  if (curve.t.size() != curve.phi.size()) {
    throw std::invalid_argument("empirical_permuton: t and phi differ in length");
  }
  GridMeasure grid(k);
  if (curve.phi.empty()) return grid;
  const double w = 1.0 / static_cast<double>(curve.phi.size());
  for (std::size_t j = 0; j < curve.phi.size(); ++j) {
    grid.mass(cell_of(curve.phi[j], k), cell_of(curve.t[j], k)) += w;
  }
  return grid;
}

double grid_distance(const GridMeasure& a, const GridMeasure& b) {
  const std::size_t k = a.resolution();
  if (b.resolution() != k) throw std::invalid_argument("grid_distance: resolution mismatch");
  // cdf(r, c) accumulates rows < r and columns < c.
  std::vector<double> ca((k + 1) * (k + 1), 0.0);
  std::vector<double> cb((k + 1) * (k + 1), 0.0);
  double worst = 0.0;
  for (std::size_t r = 1; r <= k; ++r) {
    for (std::size_t c = 1; c <= k; ++c) {
      const std::size_t at = r * (k + 1) + c;
      ca[at] = a.mass(r - 1, c - 1) + ca[at - 1] + ca[at - (k + 1)] - ca[at - (k + 1) - 1];
      cb[at] = b.mass(r - 1, c - 1) + cb[at - 1] + cb[at - (k + 1)] - cb[at - (k + 1) - 1];
      worst = std::max(worst, std::abs(ca[at] - cb[at]));
    }
  }
  return worst;
}

std::vector<PairOrder> separable_order(std::span<const double> e, const SignAssignment& signs,
                                       std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<int> sign_at(e.size(), 0);
  for (std::size_t l = 0; l < signs.minima_indices.size(); ++l) {
    if (signs.minima_indices[l] < e.size()) sign_at[signs.minima_indices[l]] = signs.signs[l];
  }
  std::vector<PairOrder> out;
  out.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    if (!(x < y) || y >= e.size()) throw std::invalid_argument("separable_order: need x < y inside the path");
    std::size_t argmin = x;
    bool tied = false;
    for (std::size_t i = x + 1; i <= y; ++i) {
      if (e[i] < e[argmin]) {
        argmin = i;
        tied = false;
      } else if (e[i] == e[argmin]) {
        tied = true;
      }
    }
    if (tied || argmin == x || argmin == y) {
      out.push_back(PairOrder::non_generic);
      continue;
    }
    const int s = sign_at[argmin];
    if (s == 0) {
      throw std::invalid_argument("separable_order: no sign for local minimum at index " +
                                  std::to_string(argmin));
    }
    out.push_back(s > 0 ? PairOrder::before : PairOrder::after);
  }
  return out;
}

}  // namespace permuton
