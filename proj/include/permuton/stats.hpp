#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace permuton {

double mean(std::span<const double> v);
double sample_variance(std::span<const double> v);
double standard_error(std::span<const double> v);
double correlation(std::span<const double> a, std::span<const double> b);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// Upper-tail probability of Pearson's chi-square statistic for observed
/// counts against equal expected counts.
double chi_square_uniform_pvalue(std::span<const std::size_t> counts);

}  // namespace permuton
