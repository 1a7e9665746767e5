#pragma once

#include <cstdint>
#include <random>

namespace permuton {

/// SplitMix64 finalizer. Used to derive independent per-replicate seeds
/// from a master seed so that results do not depend on scheduling.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

/// Seeded source of the few variates the samplers need.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double uniform();            // [0, 1)
  double normal();             // standard Gaussian
  double exponential(double rate);
  std::uint64_t below(std::uint64_t bound);  // uniform on {0, ..., bound-1}

  /// N(mean, sd^2) conditioned on being >= lower. sd == 0 degenerates to
  /// max(mean, lower). Uses plain rejection when the bound is not far in the
  /// upper tail and an exponential proposal (Robert 1995) otherwise.
  double truncated_normal_lower(double mean, double sd, double lower);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace permuton
