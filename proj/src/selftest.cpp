#include "permuton/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "permuton/classes.hpp"
#include "permuton/parallel.hpp"
#include "permuton/pipeline.hpp"
#include "permuton/stats.hpp"

namespace permuton {
namespace {

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(4);
  ss << x;
  return ss.str();
}

CheckResult transforms_round_trip(std::uint64_t seed) {
  Rng rng(seed);
  double worst_ulps = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 20.0 * rng.uniform() - 10.0;
    const double q = 0.001 + 0.998 * rng.uniform();
    for (double back : {s_transform(r_transform(x, q), q), r_transform(s_transform(x, q), q)}) {
      const double ulp = std::abs(std::nextafter(x, INFINITY) - x);
      worst_ulps = std::max(worst_ulps, std::abs(back - x) / ulp);
    }
  }
  return {"r/s transforms are mutual inverses", worst_ulps <= 1.0, "worst error " + fmt(worst_ulps) + " ulp"};
}

CheckResult half_q_matches_tanaka(std::uint64_t seed) {
  const Path2D bm = sample_correlated_bm(-0.5, 2001, 1e-3, seed);
  const std::vector<std::size_t> u{0, 500, 1000};
  const WalkFamily fam = simulate_walk_family(bm, 0.5, u);
  bool same = true;
  for (std::size_t j = 0; j < u.size(); ++j) {
    double z = 0.0;
    for (std::size_t i = u[j] + 1; i < bm.size(); ++i) {
      z = z > 0.0 ? z + (bm.ys[i] - bm.ys[i - 1]) : z - (bm.xs[i] - bm.xs[i - 1]);
      same = same && z == fam.z(j, i);
    }
  }
  return {"q = 1/2 scheme equals the perturbed Tanaka update", same, same ? "bit-identical" : "mismatch"};
}

CheckResult skew_law(std::uint64_t seed) {
  constexpr int reps = 4000;
  constexpr std::size_t n = 1025;
  const double q = 0.7;
  int positive = 0;
  const std::vector<std::size_t> u{0};
  for (int r = 0; r < reps; ++r) {
    const Path2D bm = sample_correlated_bm(0.0, n, 1.0 / (n - 1), mix_seed(seed, r));
    positive += simulate_walk_family(bm, q, u).z(0, n - 1) > 0.0;
  }
  const double p = static_cast<double>(positive) / reps;
  return {"terminal sign of the SDE solution has probability q", std::abs(p - q) < 0.03,
          "P(Z(T) > 0) = " + fmt(p) + " vs q = " + fmt(q)};
}

CheckResult degenerate_q(std::uint64_t seed) {
  GlauberConfig cfg{9, 5, 50, seed};
  bool ok = true;
  for (double rho : {-0.5, 0.0, 0.9}) {
    cfg.seed = mix_seed(seed, static_cast<std::uint64_t>((rho + 1.0) * 10));
    ok = ok && permutation_from_phi(sample_phi(rho, 0.0, cfg, 64).phi) == Permutation::identity(64);
    ok = ok && permutation_from_phi(sample_phi(rho, 1.0, cfg, 64).phi) == Permutation::decreasing(64);
  }
  return {"q = 0 gives the identity, q = 1 the decreasing permutation", ok, ok ? "all rho" : "mismatch"};
}

CheckResult class_counts() {
  const bool ok = class_count(ClassId::baxter, 4) == 22 && class_count(ClassId::separable, 4) == 22 &&
                  class_count(ClassId::baxter, 6) == 422;
  bool nested = true;
  for (std::size_t n = 1; n <= 7; ++n) {
    nested = nested && class_count(ClassId::strong_baxter, n) <= class_count(ClassId::baxter, n) &&
             class_count(ClassId::baxter, n) <= class_count(ClassId::semi_baxter, n);
  }
  return {"class counts", ok && nested, "baxter(4) = " + std::to_string(class_count(ClassId::baxter, 4))};
}

CheckResult sampler_uniformity(std::uint64_t seed) {
  const auto members = enumerate(ClassId::baxter, 4);
  std::vector<std::size_t> counts(members->size(), 0);
  Rng rng(seed);
  for (int i = 0; i < 10000; ++i) {
    const Permutation s = uniform_sample(ClassId::baxter, 4, rng);
    for (std::size_t j = 0; j < members->size(); ++j) {
      if ((*members)[j] == s) ++counts[j];
    }
  }
  const double p = chi_square_uniform_pvalue(counts);
  return {"uniform Baxter sampler passes chi-square", p > 0.001, "p = " + fmt(p)};
}

CheckResult coupled_orders(std::uint64_t seed) {
  const auto e = sample_excursion_1d(1025, seed);
  Rng rng(mix_seed(seed, 1));
  const auto minima = local_minima(e);
  const SignAssignment signs = draw_signs(minima, 0.4, rng);
  const SignAssignment flipped = negated(signs);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  while (pairs.size() < 2000) {
    std::size_t a = rng.below(e.size()), b = rng.below(e.size());
    if (a == b) continue;
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  const auto orders = separable_order(e, signs, pairs);
  std::size_t generic = 0, agree = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (orders[p] == PairOrder::non_generic) continue;
    ++generic;
    const double z = sign_flip_walk(e, flipped, pairs[p].first)[pairs[p].second];
    const PairOrder walk_order = z < 0.0 ? PairOrder::before : PairOrder::after;
    agree += walk_order == orders[p];
  }
  const double frac = generic ? static_cast<double>(agree) / generic : 0.0;
  return {"excursion order matches the sign-flip walk order", generic > 0 && frac >= 0.995,
          std::to_string(agree) + "/" + std::to_string(generic) + " generic pairs agree"};
}

CheckResult marginals(std::uint64_t seed) {
  EnsembleConfig cfg;
  cfg.rho = -0.5;
  cfg.q = 0.5;
  cfg.excursion = {9, 7, 100, 0};
  cfg.m = 256;
  cfg.replicates = 5;
  cfg.seed = seed;
  const GridMeasure g = ensemble_grid(cfg, 16);
  double worst = 0.0;
  for (double s : g.row_sums()) worst = std::max(worst, std::abs(s - 1.0 / 16));
  for (double s : g.column_sums()) worst = std::max(worst, std::abs(s - 1.0 / 16));
  return {"empirical permuton has near-uniform marginals", worst < 0.02, "max deviation " + fmt(worst)};
}

CheckResult determinism(std::uint64_t seed) {
  GlauberConfig cfg{9, 5, 50, seed};
  const std::size_t saved = thread_count();
  set_thread_count(1);
  const PhiCurve a = sample_phi(0.3, 0.6, cfg, 64);
  set_thread_count(3);
  const PhiCurve b = sample_phi(0.3, 0.6, cfg, 64);
  set_thread_count(saved);
  const bool ok = a.phi == b.phi && a.t == b.t;
  return {"results independent of thread count", ok, ok ? "identical" : "differ"};
}

CheckResult preset_roots() {
  const double r = strong_baxter_rho();
  const double q = strong_baxter_q();
  const double pr = 1 + 6 * r + 8 * r * r + 8 * r * r * r;
  const double pq = -1 + 6 * q - 11 * q * q + 7 * q * q * q;
  const bool ok = std::abs(pr) < 1e-10 && std::abs(pq) < 1e-10 && std::abs(r + 0.2151) < 1e-4 &&
                  std::abs(q - 0.3008) < 1e-4;
  return {"strong-Baxter preset roots", ok, "rho = " + fmt(r) + ", q = " + fmt(q)};
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed, std::ostream* log) {
  const std::vector<std::function<CheckResult()>> checks{
      [&] { return transforms_round_trip(seed); },
      [&] { return half_q_matches_tanaka(seed); },
      [&] { return skew_law(seed); },
      [&] { return degenerate_q(seed); },
      [] { return class_counts(); },
      [&] { return sampler_uniformity(seed); },
      [&] { return coupled_orders(seed); },
      [&] { return marginals(seed); },
      [&] { return determinism(seed); },
      [] { return preset_roots(); },
  };
  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& ex) {
      r = {"(check threw)", false, ex.what()};
    }
    if (log) *log << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace permuton
