#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace permuton {

/// Bijection of {1..n} in one-line notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> values);

  static Permutation identity(std::size_t n);
  static Permutation decreasing(std::size_t n);
  /// Accepts "3142" (single digits) or separated forms like "10 2 1 ..." /
  /// "3,1,4,2".
  static Permutation parse(std::string_view text);

  std::size_t size() const { return values_.size(); }
  int operator[](std::size_t position) const { return values_[position]; }
  const std::vector<int>& values() const { return values_; }

  Permutation reverse() const;
  Permutation complement() const;
  Permutation reverse_complement() const;

  /// Digits concatenated when n <= 9, space separated otherwise.
  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> values_;
};

/// Rank pattern of values (1 = smallest), ties broken by position.
Permutation standardize(const std::vector<double>& values);

/// All k! permutations of size k in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t k);

}  // namespace permuton
