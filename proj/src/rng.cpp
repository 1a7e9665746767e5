#include "permuton/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace permuton {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() {
  // 53 random mantissa bits; identical across standard libraries.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() { return gauss_(engine_); }

double Rng::exponential(double rate) {
  return -std::log1p(-uniform()) / rate;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
  // Lemire-style rejection to avoid modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

double Rng::truncated_normal_lower(double mean, double sd, double lower) {
  if (sd <= 0.0) return std::max(mean, lower);
  const double alpha = (lower - mean) / sd;
  double z;
  if (alpha < 0.5) {
    do {
      z = normal();
    } while (z < alpha);
  } else {
    const double lambda = 0.5 * (alpha + std::sqrt(alpha * alpha + 4.0));
    for (;;) {
      z = alpha + exponential(lambda);
      const double d = z - lambda;
      if (uniform() <= std::exp(-0.5 * d * d)) break;
    }
  }
  return std::max(lower, mean + sd * z);
}

}  // namespace permuton
