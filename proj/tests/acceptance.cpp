// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "permuton/classes.hpp"
#include "permuton/excursions.hpp"
#include "permuton/io.hpp"
#include "permuton/parallel.hpp"
#include "permuton/patterns.hpp"
#include "permuton/permuton.hpp"
#include "permuton/pipeline.hpp"
#include "permuton/rng.hpp"
#include "permuton/stats.hpp"
#include "permuton/walks.hpp"

using namespace permuton;

namespace {

constexpr std::uint64_t kSeed = 20211;
const GlauberConfig kDriver{9, 9, 200, 0};  // 4097 points

struct Outcome {
  bool passed;
  std::string detail;
  bool warn = false;
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream ss;
  ss.precision(digits);
  ss << x;
  return ss.str();
}

bool families_coalesce = true;

void note_family(const WalkFamily& f) {
  try {
    check_invariants(f);
  } catch (const std::exception&) {
    families_coalesce = false;
  }
}

Outcome marginals() {
  const std::vector<std::pair<double, double>> params{
      {-0.5, 0.5}, {strong_baxter_rho(), strong_baxter_q()}, {0.5, 0.8}, {1.0, 0.3}};
  const std::size_t seeds = 20, k = 16;
  double worst = 0.0;
  for (const auto& [rho, q] : params) {
    std::vector<double> rows(k, 0.0), cols(k, 0.0);
    for (std::size_t s = 0; s < seeds; ++s) {
      GlauberConfig cfg = kDriver;
      cfg.seed = mix_seed(kSeed, s);
      const Simulation sim = simulate_permuton(rho, q, cfg, 512);
      note_family(sim.family);
      const GridMeasure g = empirical_permuton(sim.curve, k);
      const auto r = g.row_sums();
      const auto c = g.column_sums();
      for (std::size_t i = 0; i < k; ++i) {
        rows[i] += r[i] / double(seeds);
        cols[i] += c[i] / double(seeds);
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      worst = std::max({worst, std::abs(rows[i] - 1.0 / double(k)), std::abs(cols[i] - 1.0 / double(k))});
    }
  }
  return {worst <= 0.015, "max |row/col mass - 1/16| = " + fmt(worst) + " (tol 0.015)"};
}

Outcome skew_law() {
  const std::size_t reps = 10000, n = 4097;
  const double dt = 1.0 / double(n - 1);
  const std::vector<std::pair<double, double>> params{{-0.5, 0.3}, {0.0, 0.7}};
  bool ok = true;
  std::string detail;
  for (std::size_t p = 0; p < params.size(); ++p) {
    const auto [rho, q] = params[p];
    std::vector<double> solution(reps), reference(reps);
    parallel_for(reps, [&](std::size_t r) {
      const Path2D driver = sample_correlated_bm(rho, n, dt, mix_seed(mix_seed(kSeed, 100 + p), r));
      const std::vector<std::size_t> start{0};
      solution[r] = simulate_walk_family(driver, q, start).z(0, n - 1);
      reference[r] = skew_bm_reference(q, n, dt, mix_seed(mix_seed(kSeed, 200 + p), r)).back();
    });
    const double positive =
        double(std::count_if(solution.begin(), solution.end(), [](double z) { return z > 0; })) / double(reps);
    const double ks = ks_distance(solution, reference);
    ok = ok && std::abs(positive - q) <= 0.02 && ks < 0.05;
    detail += "(rho " + fmt(rho) + ", q " + fmt(q) + "): P(Z(T)>0) = " + fmt(positive) + ", KS = " + fmt(ks) + "; ";
  }
  detail += "tol 0.02 / 0.05";
  return {ok, detail};
}

Outcome coupled_orders() {
  GlauberConfig cfg = kDriver;
  cfg.seed = mix_seed(kSeed, 300);
  const auto e = sample_excursion_1d(cfg);
  Rng rng(mix_seed(kSeed, 301));
  const SignAssignment signs = draw_signs(local_minima(e), 0.4, rng);
  const SignAssignment flipped = negated(signs);
  std::size_t generic = 0, agree = 0, flagged = 0;
  while (generic < 10000) {
    const std::size_t a = rng.below(e.size()), b = rng.below(e.size());
    if (a == b) continue;
    const std::vector<std::pair<std::size_t, std::size_t>> pair{{std::min(a, b), std::max(a, b)}};
    const PairOrder order = separable_order(e, signs, pair)[0];
    if (order == PairOrder::non_generic) {
      ++flagged;
      continue;
    }
    ++generic;
    const double z = sign_flip_walk(e, flipped, pair[0].first)[pair[0].second];
    agree += (z < 0.0 ? PairOrder::before : PairOrder::after) == order;
  }
  const double frac = double(agree) / double(generic);
  return {frac >= 0.995, std::to_string(agree) + "/" + std::to_string(generic) + " generic pairs agree (" +
                             std::to_string(flagged) + " non-generic pairs flagged and skipped); need 99.5%"};
}

Outcome degenerate() {
  bool ok = true;
  std::string bad;
  for (double rho : {-0.5, 0.0, 0.9}) {
    for (std::size_t s = 0; s < 5; ++s) {
      GlauberConfig cfg = kDriver;
      cfg.seed = mix_seed(kSeed, 400 + s);
      const Simulation low = simulate_permuton(rho, 0.0, cfg, 512);
      const Simulation high = simulate_permuton(rho, 1.0, cfg, 512);
      note_family(low.family);
      note_family(high.family);
      const bool id = permutation_from_phi(low.curve.phi) == Permutation::identity(512);
      const bool dec = permutation_from_phi(high.curve.phi) == Permutation::decreasing(512);
      if (!id || !dec) bad += " rho " + fmt(rho) + " seed " + std::to_string(s);
      ok = ok && id && dec;
    }
  }
  return {ok, ok ? "q = 0 gives the identity and q = 1 the decreasing permutation, 5 seeds x 3 rho"
                 : "mismatch at" + bad};
}

Outcome half_symmetry() {
  const std::vector<double> rhos{find_preset("semi-baxter").rho, -0.5, 0.0, 0.5};
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    EnsembleConfig cfg;
    cfg.rho = rhos[i];
    cfg.q = 0.5;
    cfg.excursion = GlauberConfig{9, 7, 200, 0};  // 1153 points
    cfg.m = 256;
    cfg.replicates = 400;
    cfg.seed = mix_seed(kSeed, 500 + i);
    const auto reports = ensemble_pattern_density(cfg, 2, 250);  // 10^5 samples in total
    const auto& inv = reports[1];
    ok = ok && std::abs(inv.estimate - 0.5) <= 0.02;
    detail += "rho " + fmt(rhos[i]) + ": " + fmt(inv.estimate) + " +- " + fmt(inv.std_error, 2) + "; ";
  }
  detail += "pocc(21) tol 0.5 +- 0.02";
  return {ok, detail};
}

Outcome discrete() {
  const Permutation p2413 = Permutation::parse("2413"), p3142 = Permutation::parse("3142");
  std::size_t baxter = 0, separable = 0;
  for (const auto& s : all_permutations(4)) {
    // 2413 and 3142 of size 4 have their only vincular occurrence at j = 2.
    baxter += s != p2413 && s != p3142;
    separable += occ(p2413, s) == 0 && occ(p3142, s) == 0;
  }
  bool ok = baxter == 22 && separable == 22 && class_count(ClassId::baxter, 4) == 22 &&
            class_count(ClassId::separable, 4) == 22;

  bool contained = true;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto strong = enumerate(ClassId::strong_baxter, n);
    const auto bax = enumerate(ClassId::baxter, n);
    const auto semi = enumerate(ClassId::semi_baxter, n);
    contained = contained && strong->size() <= bax->size() && bax->size() <= semi->size();
    for (std::size_t i = 0; i < strong->size(); ++i) contained = contained && is_member(ClassId::baxter, (*strong)[i]);
    for (std::size_t i = 0; i < bax->size(); ++i) contained = contained && is_member(ClassId::semi_baxter, (*bax)[i]);
  }

  const auto members = enumerate(ClassId::baxter, 4);
  std::map<Permutation, std::size_t> index;
  for (std::size_t i = 0; i < members->size(); ++i) index[(*members)[i]] = i;
  std::vector<std::size_t> counts(members->size(), 0);
  Rng rng(mix_seed(kSeed, 600));
  for (int i = 0; i < 10000; ++i) ++counts[index.at(uniform_sample(ClassId::baxter, 4, rng))];
  const double p = chi_square_uniform_pvalue(counts);
  ok = ok && contained && p > 0.001;
  return {ok, "baxter(4) = " + std::to_string(class_count(ClassId::baxter, 4)) + ", separable(4) = " +
                  std::to_string(class_count(ClassId::separable, 4)) + ", brute force " + std::to_string(baxter) +
                  "/" + std::to_string(separable) + ", containment n<=8 " + (contained ? "ok" : "broken") +
                  ", chi-square p = " + fmt(p)};
}

Outcome continuum_discrete() {
  CompareConfig cfg;
  const Preset b = find_preset("baxter");
  cfg.cls = ClassId::baxter;
  cfg.rho = b.rho;
  cfg.q = b.q;
  cfg.patterns = {Permutation::parse("123"), Permutation::parse("321"), Permutation::parse("132")};
  cfg.ceiling = 10;
  cfg.ensemble.excursion = kDriver;
  cfg.ensemble.m = 512;
  cfg.ensemble.replicates = 400;
  cfg.ensemble.seed = mix_seed(kSeed, 700);
  cfg.samples_per_replicate = 500;
  const auto rows = cmd_compare(cfg);
  std::size_t shrinking = 0;
  double worst = 0.0;
  std::string detail;
  for (const auto& pi : cfg.patterns) {
    double g4 = 0, g10 = 0;
    for (const auto& r : rows) {
      if (r.pattern != pi) continue;
      if (r.n == 4) g4 = r.gap;
      if (r.n == 10) g10 = r.gap;
    }
    shrinking += gap_shrinks(rows, pi);
    worst = std::max(worst, g10);
    detail += pi.to_string() + ": gap " + fmt(g4) + " (n=4) -> " + fmt(g10) + " (n=10); ";
  }
  const bool trend = shrinking >= 2;
  detail += std::to_string(shrinking) + "/3 shrinking; n=10 gap limit 0.08";
  return {worst <= 0.08, detail, !trend};
}

Outcome determinism() {
  const std::size_t saved = thread_count();
  auto run = [](std::size_t threads) {
    set_thread_count(threads);
    EnsembleConfig cfg;
    cfg.rho = -0.3;
    cfg.q = 0.6;
    cfg.excursion = GlauberConfig{9, 6, 50, 0};
    cfg.m = 128;
    cfg.replicates = 6;
    cfg.seed = kSeed;
    std::ostringstream out;
    write_report_csv(out, ensemble_pattern_density(cfg, 3, 2000));
    const Simulation sim = simulate_permuton(-0.3, 0.6, GlauberConfig{9, 7, 100, kSeed}, 256);
    note_family(sim.family);
    write_points_csv(out, sim.curve);
    write_grid_csv(out, empirical_permuton(sim.curve, 32));
    return out.str();
  };
  const std::string one = run(1);
  const std::string four = run(4);
  const std::string again = run(1);
  set_thread_count(saved);
  const bool identical = one == four && one == again;

  Rng rng(mix_seed(kSeed, 800));
  double worst_ulps = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double q = 0.001 + 0.998 * rng.uniform();
    const double x = 200.0 * (rng.uniform() - 0.5);
    const double back = s_transform(r_transform(x, q), q);
    const double ulp = std::abs(std::nextafter(x, 2 * x + 1) - x);
    worst_ulps = std::max(worst_ulps, std::abs(back - x) / ulp);
  }
  const bool ok = identical && worst_ulps <= 1.0 && families_coalesce;
  return {ok, std::string(identical ? "byte-identical" : "outputs differ") + " at 1/4/1 threads; round trip " +
                  fmt(worst_ulps) + " ulp; coalescence " + (families_coalesce ? "holds" : "violated") +
                  " on every simulated family"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  // Criterion 8 runs last so that it can report coalescence over every
  // family simulated by the others.
  const std::vector<Criterion> criteria{
      {1, "marginal uniformity", 300, marginals},
      {2, "skew Brownian motion law", 120, skew_law},
      {3, "coupled order equality at rho = 1", 30, coupled_orders},
      {4, "degenerate endpoints", 30, degenerate},
      {5, "q = 1/2 symmetry", 120, half_symmetry},
      {6, "discrete oracles", 60, discrete},
      {7, "continuum vs discrete", 300, continuum_discrete},
      {8, "determinism and transform identities", 60, determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.passed && in_time;
    all = all && pass;
    std::printf("ACCEPTANCE %d %s: %s%s -- %s [%.1f s, limit %.0f s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                o.warn ? " (WARN: trend check failed)" : "", o.detail.c_str(), secs, c.limit_seconds);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
