#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "permuton/permutation.hpp"
#include "permuton/rational.hpp"
#include "permuton/rng.hpp"

namespace permuton {

enum class ClassId { baxter, semi_baxter, strong_baxter, separable };

ClassId parse_class(std::string_view name);  // accepts "semi_baxter" and "semi-baxter"
std::string to_string(ClassId id);

inline constexpr std::size_t kDefaultCeiling = 10;
inline constexpr std::size_t kMaxCeiling = 12;
inline constexpr std::uint64_t kRejectionCap = 10'000'000;

bool is_member(ClassId cls, const Permutation& sigma);

/// Members of one class at one size, stored compactly in lexicographic order.
class ClassMembers {
 public:
  ClassMembers(std::size_t n, std::vector<std::uint8_t> flat);

  std::size_t permutation_size() const { return n_; }
  std::size_t size() const { return n_ == 0 ? 1 : flat_.size() / n_; }
  Permutation operator[](std::size_t i) const;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> flat_;
};

/// Pruned backtracking over one-line prefixes; calls visit(values) for each
/// member in lexicographic order. Throws std::invalid_argument when n
/// exceeds the ceiling.
void for_each_member(ClassId cls, std::size_t n, const std::function<void(const std::vector<int>&)>& visit,
                     std::size_t ceiling = kDefaultCeiling);

/// Cached, shareable enumeration.
std::shared_ptr<const ClassMembers> enumerate(ClassId cls, std::size_t n,
                                              std::size_t ceiling = kDefaultCeiling);

std::uint64_t class_count(ClassId cls, std::size_t n, std::size_t ceiling = kDefaultCeiling);

/// Uniform member: indexes the cached enumeration up to the ceiling and
/// rejection-samples from S_n above it (std::runtime_error after
/// kRejectionCap attempts).
Permutation uniform_sample(ClassId cls, std::size_t n, Rng& rng, std::size_t ceiling = kDefaultCeiling);
Permutation uniform_sample(ClassId cls, std::size_t n, std::uint64_t seed,
                           std::size_t ceiling = kDefaultCeiling);

/// Average of pocc(pi, sigma) over the class at size n.
Rational exact_expected_pocc(ClassId cls, std::size_t n, const Permutation& pi,
                             std::size_t ceiling = kDefaultCeiling);

}  // namespace permuton
