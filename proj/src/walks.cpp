#include "permuton/walks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "permuton/parallel.hpp"

namespace permuton {

WalkFamily::WalkFamily(std::size_t grid_size, double dt, double rho, double q,
                       std::vector<std::size_t> u_indices)
    : grid_size_(grid_size), dt_(dt), rho_(rho), q_(q), u_indices_(std::move(u_indices)) {
  for (std::size_t j = 0; j < u_indices_.size(); ++j) {
    if (u_indices_[j] >= grid_size_) throw std::invalid_argument("WalkFamily: u index outside the grid");
    if (j > 0 && u_indices_[j] <= u_indices_[j - 1]) {
      throw std::invalid_argument("WalkFamily: u indices must be strictly increasing");
    }
  }
  z_.assign(grid_size_ * u_indices_.size(), 0.0);
}

std::span<const double> WalkFamily::trajectory(std::size_t walk) const {
  return {z_.data() + walk * grid_size_, grid_size_};
}

std::span<double> WalkFamily::trajectory(std::size_t walk) {
  return {z_.data() + walk * grid_size_, grid_size_};
}

void check_invariants(const WalkFamily& family) {
  const std::size_t m = family.walk_count();
  const std::size_t n = family.grid_size();
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i <= family.u_indices()[j]; ++i) {
      if (family.z(j, i) != 0.0) {
        throw std::logic_error("WalkFamily: walk " + std::to_string(j) + " nonzero before its start");
      }
    }
  }
  // Agreement at i must persist to i + 1; induction covers later indices.
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    active.clear();
    for (std::size_t j = 0; j < m && family.u_indices()[j] <= i; ++j) active.push_back(j);
    std::sort(active.begin(), active.end(), [&](std::size_t a, std::size_t b) {
      return family.z(a, i) < family.z(b, i);
    });
    for (std::size_t k = 1; k < active.size(); ++k) {
      const std::size_t a = active[k - 1];
      const std::size_t b = active[k];
      if (family.z(a, i) == family.z(b, i) && family.z(a, i + 1) != family.z(b, i + 1)) {
        throw std::logic_error("WalkFamily: walks " + std::to_string(a) + " and " +
                               std::to_string(b) + " separate after meeting at index " +
                               std::to_string(i));
      }
    }
  }
}

SignAssignment draw_signs(std::span<const std::size_t> minima, double q, Rng& rng) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("draw_signs: q must lie in [0, 1]");
  SignAssignment out;
  out.q = q;
  out.minima_indices.assign(minima.begin(), minima.end());
  out.signs.reserve(minima.size());
  for (std::size_t l = 0; l < minima.size(); ++l) out.signs.push_back(rng.uniform() < q ? +1 : -1);
  return out;
}

SignAssignment signs_from_uniforms(std::span<const std::size_t> minima,
                                   std::span<const double> uniforms, double q) {
  if (uniforms.size() != minima.size()) {
    throw std::invalid_argument("signs_from_uniforms: one uniform per minimum required");
  }
  SignAssignment out;
  out.q = q;
  out.minima_indices.assign(minima.begin(), minima.end());
  out.signs.reserve(minima.size());
  for (double u : uniforms) out.signs.push_back(u < q ? +1 : -1);
  return out;
}

SignAssignment negated(const SignAssignment& assignment) {
  SignAssignment out = assignment;
  out.q = 1.0 - assignment.q;
  for (int& s : out.signs) s = -s;
  return out;
}

std::vector<std::size_t> u_grid(std::size_t grid_size, std::size_t m) {
  if (grid_size < 2 || m < 1) throw std::invalid_argument("u_grid: need grid_size >= 2 and m >= 1");
  std::vector<std::size_t> out(m);
  const double span = static_cast<double>(grid_size - 1);
  for (std::size_t j = 0; j < m; ++j) {
    const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
    out[j] = static_cast<std::size_t>(std::llround(t * span));
    if (j > 0 && out[j] <= out[j - 1]) {
      throw std::invalid_argument("u_grid: " + std::to_string(m) +
                                  " evaluation points do not fit on a grid of " +
                                  std::to_string(grid_size) + " points");
    }
  }
  return out;
}

namespace {

// Walks sharing a value move together; rep is the oldest member.
struct Cluster {
  double value;
  std::size_t rep;
  std::vector<std::size_t> members;
};

double plain_step(double v, double dx, double dy, double q) {
  if (q == 0.0) return -std::abs(v - dx);
  if (q == 1.0) return std::abs(v + dy);
  return step_r(v, dx, dy, q);
}

double to_z(double v, double q) { return q == 0.0 || q == 1.0 ? v : r_transform(v, q); }

// Restores increasing order after a step: runs of clusters whose images are
// out of order meet during the step and merge, taking the oldest walk's image.
void merge_crossings(std::vector<Cluster>& clusters) {
  std::vector<Cluster> out;
  out.reserve(clusters.size());
  for (auto& c : clusters) {
    out.push_back(std::move(c));
    while (out.size() >= 2 && out[out.size() - 2].value >= out.back().value) {
      Cluster top = std::move(out.back());
      out.pop_back();
      Cluster& below = out.back();
      if (top.rep < below.rep) {
        below.value = top.value;
        below.rep = top.rep;
      }
      below.members.insert(below.members.end(), top.members.begin(), top.members.end());
    }
  }
  clusters = std::move(out);
}

}  // namespace

WalkFamily simulate_walk_family(const Path2D& driver, double q,
                                std::span<const std::size_t> u_indices) {
  check_rho(driver.rho);
  if (driver.rho >= 1.0) {
    throw std::invalid_argument("simulate_walk_family: rho = 1 drivers need sign_flip_family");
  }
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("simulate_walk_family: q must lie in [0, 1]");

  WalkFamily family(driver.size(), driver.dt, driver.rho, q,
                    std::vector<std::size_t>(u_indices.begin(), u_indices.end()));
  const std::size_t n = driver.size();
  const std::size_t m = family.walk_count();
  const auto& xs = driver.xs;
  const auto& ys = driver.ys;

  std::vector<Cluster> clusters;
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !clusters.empty()) {
      const double dx = xs[i] - xs[i - 1];
      const double dy = ys[i] - ys[i - 1];
      for (auto& c : clusters) c.value = plain_step(c.value, dx, dy, q);
      merge_crossings(clusters);
      for (const auto& c : clusters) {
        const double z = to_z(c.value, q);
        for (std::size_t w : c.members) family.trajectory(w)[i] = z;
      }
    }
    while (next < m && u_indices[next] == i) {
      auto pos = std::lower_bound(clusters.begin(), clusters.end(), 0.0,
                                  [](const Cluster& c, double v) { return c.value < v; });
      if (pos != clusters.end() && pos->value == 0.0) {
        pos->members.push_back(next);
      } else {
        clusters.insert(pos, Cluster{0.0, next, {next}});
      }
      ++next;
    }
  }
  return family;
}

std::vector<std::size_t> local_minima(std::span<const double> e) {
  std::vector<std::size_t> out{0};
  for (std::size_t i = 1; i + 1 < e.size(); ++i) {
    if (e[i - 1] > e[i] && e[i] < e[i + 1]) out.push_back(i);
  }
  return out;
}

namespace {

// Per-index sign lookup; 0 marks "not a detected local minimum".
struct SignTable {
  std::vector<int> at;
  int sentinel = 0;
};

SignTable make_sign_table(std::span<const double> e, const SignAssignment& assignment) {
  if (assignment.signs.size() != assignment.minima_indices.size()) {
    throw std::invalid_argument("SignAssignment: signs and minima differ in length");
  }
  std::vector<int> given(e.size(), 0);
  for (std::size_t l = 0; l < assignment.signs.size(); ++l) {
    const std::size_t idx = assignment.minima_indices[l];
    const int s = assignment.signs[l];
    if (idx >= e.size()) throw std::invalid_argument("SignAssignment: minimum index outside the path");
    if (s != 1 && s != -1) throw std::invalid_argument("SignAssignment: signs must be +1 or -1");
    given[idx] = s;
  }
  SignTable table;
  table.sentinel = given.empty() ? 0 : given[0];
  if (table.sentinel == 0) throw std::invalid_argument("SignAssignment: missing sentinel sign at index 0");
  table.at.assign(e.size(), 0);
  for (std::size_t idx : local_minima(e)) {
    if (given[idx] == 0) {
      throw std::invalid_argument("SignAssignment: missing sign for local minimum at index " +
                                  std::to_string(idx));
    }
    table.at[idx] = given[idx];
  }
  return table;
}

void fill_sign_flip(std::span<const double> e, const SignTable& table, std::size_t u,
                    std::span<double> z) {
  double running_min = e[u];
  std::size_t argmin = u;
  z[u] = 0.0;
  for (std::size_t i = u + 1; i < e.size(); ++i) {
    if (e[i] <= running_min) {
      running_min = e[i];
      argmin = i;
    }
    const int s = table.at[argmin] != 0 ? table.at[argmin] : table.sentinel;
    z[i] = (e[i] - running_min) * s;
  }
}

}  // namespace

std::vector<double> sign_flip_walk(std::span<const double> e, const SignAssignment& assignment,
                                   std::size_t u) {
  if (u >= e.size()) throw std::invalid_argument("sign_flip_walk: start index outside the path");
  const SignTable table = make_sign_table(e, assignment);
  std::vector<double> z(e.size(), 0.0);
  fill_sign_flip(e, table, u, z);
  return z;
}

WalkFamily sign_flip_family(std::span<const double> e, const SignAssignment& assignment,
                            std::span<const std::size_t> u_indices) {
  if (e.size() < 2) throw std::invalid_argument("sign_flip_family: path too short");
  const SignTable table = make_sign_table(e, assignment);
  WalkFamily family(e.size(), 1.0 / static_cast<double>(e.size() - 1), 1.0, assignment.q,
                    std::vector<std::size_t>(u_indices.begin(), u_indices.end()));
  parallel_for(family.walk_count(), [&](std::size_t j) {
    fill_sign_flip(e, table, family.u_indices()[j], family.trajectory(j));
  });
  return family;
}

std::vector<double> skew_bm_reference(double q, std::size_t n, double dt, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("skew_bm_reference: n must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("skew_bm_reference: dt must be positive");
  Rng rng(seed);
  std::vector<double> b(n, 0.0);
  const double sd = std::sqrt(dt);
  for (std::size_t i = 1; i < n; ++i) b[i] = b[i - 1] + sd * rng.normal();
  const auto minima = local_minima(b);
  const SignAssignment signs = draw_signs(minima, q, rng);
  return sign_flip_walk(b, signs, 0);
}

}  // namespace permuton
