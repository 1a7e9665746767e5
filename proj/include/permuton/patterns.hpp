#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permuton/permutation.hpp"

namespace permuton {

enum class PatternSource { monte_carlo, exact_enumeration };

std::string to_string(PatternSource source);
PatternSource parse_pattern_source(std::string_view text);

struct PatternReport {
  Permutation pattern;
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  PatternSource source = PatternSource::monte_carlo;
};

/// Number of k-subsets of positions of sigma order-isomorphic to pi.
std::uint64_t occ(const Permutation& pi, const Permutation& sigma);
double pocc(const Permutation& pi, const Permutation& sigma);

std::uint64_t binomial(std::size_t n, std::size_t k);

/// Sorts points by x and returns the rank pattern of their y values.
Permutation induced_pattern(std::span<const std::pair<double, double>> points);

/// Draws n_samples k-subsets of evaluation points uniformly (distinct
/// indices) and tallies the patterns they induce. One report per pattern of
/// size k, in lexicographic order.
std::vector<PatternReport> sample_pattern_density(std::span<const double> phi, std::size_t k,
                                                  std::size_t n_samples, std::uint64_t seed);

/// Averages per-replicate reports (same pattern order in each); the standard
/// error is the between-replicate one.
std::vector<PatternReport> combine_replicates(const std::vector<std::vector<PatternReport>>& replicates);

/// Vincular patterns with the middle pair adjacent: 2-41-3, 3-14-2, 3-41-2.
enum class VincularPattern { p2413v, p3142v, p3412v };

VincularPattern parse_vincular(std::string_view id);
std::string to_string(VincularPattern p);

/// Classical pattern obtained by dropping the adjacency requirement.
Permutation classical_core(VincularPattern p);

/// Triples i < j < k with k >= j + 2 satisfying the pattern's chain on
/// sigma(i), sigma(j), sigma(j+1), sigma(k).
std::uint64_t vincular_occ(VincularPattern p, const Permutation& sigma);

/// True when the chain holds for values a = sigma(i), b = sigma(j),
/// c = sigma(j+1), d = sigma(k).
bool vincular_chain(VincularPattern p, int a, int b, int c, int d);

}  // namespace permuton
