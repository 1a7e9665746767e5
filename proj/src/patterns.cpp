#include "permuton/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "permuton/permuton.hpp"
#include "permuton/rng.hpp"

namespace permuton {

std::string to_string(PatternSource source) {
  return source == PatternSource::monte_carlo ? "monte_carlo" : "exact_enumeration";
}

PatternSource parse_pattern_source(std::string_view text) {
  if (text == "monte_carlo") return PatternSource::monte_carlo;
  if (text == "exact_enumeration") return PatternSource::exact_enumeration;
  throw std::invalid_argument("unknown pattern source: " + std::string(text));
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

namespace {

// Extends a partial occurrence; chosen[d] holds the position matched to pi[d].
std::uint64_t count_from(const Permutation& pi, const Permutation& sigma, std::size_t depth,
                         std::size_t start, std::vector<std::size_t>& chosen) {
  const std::size_t k = pi.size();
  if (depth == k) return 1;
  std::uint64_t total = 0;
  const std::size_t last_start = sigma.size() - (k - depth);
  for (std::size_t p = start; p <= last_start; ++p) {
    bool ok = true;
    for (std::size_t e = 0; e < depth && ok; ++e) {
      ok = (sigma[chosen[e]] < sigma[p]) == (pi[e] < pi[depth]);
    }
    if (!ok) continue;
    chosen[depth] = p;
    total += count_from(pi, sigma, depth + 1, p + 1, chosen);
  }
  return total;
}

}  // namespace

std::uint64_t occ(const Permutation& pi, const Permutation& sigma) {
  if (pi.size() > sigma.size()) throw std::invalid_argument("occ: pattern longer than permutation");
  if (pi.size() == 0) return 1;
  std::vector<std::size_t> chosen(pi.size());
  return count_from(pi, sigma, 0, 0, chosen);
}

double pocc(const Permutation& pi, const Permutation& sigma) {
  return static_cast<double>(occ(pi, sigma)) /
         static_cast<double>(binomial(sigma.size(), pi.size()));
}

Permutation induced_pattern(std::span<const std::pair<double, double>> points) {
  std::vector<std::pair<double, double>> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ys(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i].first == sorted[i - 1].first) {
      throw std::invalid_argument("induced_pattern: duplicate x coordinate");
    }
    ys[i] = sorted[i].second;
  }
  std::vector<double> ys_sorted = ys;
  std::sort(ys_sorted.begin(), ys_sorted.end());
  if (std::adjacent_find(ys_sorted.begin(), ys_sorted.end()) != ys_sorted.end()) {
    throw std::invalid_argument("induced_pattern: duplicate y coordinate");
  }
  return standardize(ys);
}

std::vector<PatternReport> sample_pattern_density(std::span<const double> phi, std::size_t k,
                                                  std::size_t n_samples, std::uint64_t seed) {
  const std::size_t m = phi.size();
  if (k < 1) throw std::invalid_argument("sample_pattern_density: k must be >= 1");
  if (k > m) throw std::invalid_argument("sample_pattern_density: fewer points than k");
  if (n_samples < 1) throw std::invalid_argument("sample_pattern_density: need at least one sample");

  // Ranks carry the index tie-break, so sampled points never collide in y.
  const Permutation ranks = permutation_from_phi(phi);
  std::vector<Permutation> patterns = all_permutations(k);
  std::map<Permutation, std::size_t> slot;
  for (std::size_t i = 0; i < patterns.size(); ++i) slot.emplace(patterns[i], i);

  std::vector<std::size_t> tally(patterns.size(), 0);
  std::vector<std::size_t> idx(k);
  std::vector<std::pair<double, double>> points(k);
  Rng rng(seed);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t d = 0; d < k; ++d) {
      std::size_t cand;
      do {
        cand = static_cast<std::size_t>(rng.below(m));
      } while (std::find(idx.begin(), idx.begin() + d, cand) != idx.begin() + d);
      idx[d] = cand;
      points[d] = {static_cast<double>(cand), static_cast<double>(ranks[cand])};
    }
    ++tally[slot.at(induced_pattern(points))];
  }

  std::vector<PatternReport> out;
  out.reserve(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const double p = static_cast<double>(tally[i]) / static_cast<double>(n_samples);
    out.push_back({patterns[i], p, std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples)),
                   n_samples, PatternSource::monte_carlo});
  }
  return out;
}

std::vector<PatternReport> combine_replicates(const std::vector<std::vector<PatternReport>>& replicates) {
  if (replicates.empty()) throw std::invalid_argument("combine_replicates: no replicates");
  const std::size_t r = replicates.size();
  std::vector<PatternReport> out = replicates.front();
  for (std::size_t i = 0; i < out.size(); ++i) {
    double sum = 0.0;
    std::size_t samples = 0;
    for (const auto& rep : replicates) {
      if (rep.size() != out.size() || rep[i].pattern != out[i].pattern) {
        throw std::invalid_argument("combine_replicates: replicate reports are not aligned");
      }
      sum += rep[i].estimate;
      samples += rep[i].n_samples;
    }
    const double mean = sum / static_cast<double>(r);
    double ss = 0.0;
    for (const auto& rep : replicates) ss += (rep[i].estimate - mean) * (rep[i].estimate - mean);
    out[i].estimate = mean;
    out[i].std_error = r > 1 ? std::sqrt(ss / static_cast<double>(r - 1) / static_cast<double>(r))
                           : replicates.front()[i].std_error;
    out[i].n_samples = samples;
  }
  return out;
}

VincularPattern parse_vincular(std::string_view id) {
  if (id == "p2413v" || id == "2-41-3") return VincularPattern::p2413v;
  if (id == "p3142v" || id == "3-14-2") return VincularPattern::p3142v;
  if (id == "p3412v" || id == "3-41-2") return VincularPattern::p3412v;
  throw std::invalid_argument("unknown vincular pattern: " + std::string(id));
}

std::string to_string(VincularPattern p) {
  switch (p) {
    case VincularPattern::p2413v: return "p2413v";
    case VincularPattern::p3142v: return "p3142v";
    case VincularPattern::p3412v: return "p3412v";
  }
  return "?";
}

Permutation classical_core(VincularPattern p) {
  switch (p) {
    case VincularPattern::p2413v: return Permutation({2, 4, 1, 3});
    case VincularPattern::p3142v: return Permutation({3, 1, 4, 2});
    case VincularPattern::p3412v: return Permutation({3, 4, 1, 2});
  }
  throw std::invalid_argument("classical_core: unknown pattern");
}

bool vincular_chain(VincularPattern p, int a, int b, int c, int d) {
  switch (p) {
    case VincularPattern::p2413v: return c < a && a < d && d < b;
    case VincularPattern::p3142v: return b < d && d < a && a < c;
    case VincularPattern::p3412v: return c < d && d < a && a < b;
  }
  return false;
}

std::uint64_t vincular_occ(VincularPattern p, const Permutation& sigma) {
  const std::size_t n = sigma.size();
  std::uint64_t count = 0;
  for (std::size_t j = 1; j + 2 < n; ++j) {
    const int b = sigma[j];
    const int c = sigma[j + 1];
    for (std::size_t i = 0; i < j; ++i) {
      for (std::size_t k = j + 2; k < n; ++k) {
        if (vincular_chain(p, sigma[i], b, c, sigma[k])) ++count;
      }
    }
  }
  return count;
}

}  // namespace permuton
