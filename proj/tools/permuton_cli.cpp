#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "permuton/classes.hpp"
#include "permuton/io.hpp"
#include "permuton/parallel.hpp"
#include "permuton/patterns.hpp"
#include "permuton/pipeline.hpp"
#include "permuton/selftest.hpp"

using namespace permuton;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitSelftest = 3;

void add_excursion_flags(CLI::App* cmd, GlauberConfig& cfg) {
  cmd->add_option("--points", cfg.initial_points, "Points of the coarse starting walk")->capture_default_str();
  cmd->add_option("--levels", cfg.refinement_levels, "Midpoint refinement rounds")->capture_default_str();
  cmd->add_option("--sweeps", cfg.sweeps_per_level, "Glauber sweeps per level")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
}

struct Params {
  double rho = -0.5;
  double q = 0.5;
  std::string preset;
};

void add_param_flags(CLI::App* cmd, Params& p) {
  cmd->add_option("--rho", p.rho, "Correlation in (-1, 1]")->capture_default_str();
  cmd->add_option("--q", p.q, "Skewness in [0, 1]")->capture_default_str();
  cmd->add_option("--preset", p.preset, "baxter | strong-baxter | semi-baxter | separable (overrides --rho/--q)");
}

void resolve(Params& p) {
  if (!p.preset.empty()) {
    const Preset pr = find_preset(p.preset);
    p.rho = pr.rho;
    p.q = pr.q;
  }
  check_parameters(p.rho, p.q);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::vector<Permutation> parse_patterns(const std::string& list) {
  std::vector<Permutation> out;
  std::istringstream ss(list);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (!tok.empty()) out.push_back(Permutation::parse(tok));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skew Brownian permuton simulation and discrete pattern-class oracles"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: PERMUTON_THREADS or hardware)");

  // excursion
  GlauberConfig exc_cfg;
  double exc_rho = -0.5;
  std::string exc_out;
  auto* exc = app.add_subcommand("excursion", "Sample a quadrant Brownian excursion (CSV t,x,y)");
  exc->add_option("--rho", exc_rho, "Correlation in (-1, 1]")->capture_default_str();
  add_excursion_flags(exc, exc_cfg);
  exc->add_option("--out", exc_out, "Output CSV (default stdout)");

  // walks
  GlauberConfig walk_cfg;
  Params walk_p;
  std::size_t walk_m = 512;
  std::size_t walk_index = 0;
  std::string walk_out;
  auto* walks = app.add_subcommand("walks", "Simulate the coalescent-walk family and export one walk (CSV t,z)");
  add_param_flags(walks, walk_p);
  add_excursion_flags(walks, walk_cfg);
  walks->add_option("--m", walk_m, "Evaluation points")->capture_default_str();
  walks->add_option("--walk", walk_index, "Walk to export (0-based)")->capture_default_str();
  walks->add_option("--out", walk_out, "Output CSV (default stdout)");

  // simulate
  SimulateConfig sim_cfg;
  Params sim_p;
  auto* sim = app.add_subcommand("simulate", "Full pipeline: points.csv, grid.csv, grid.pgm, meta.json");
  add_param_flags(sim, sim_p);
  add_excursion_flags(sim, sim_cfg.excursion);
  sim->add_option("--m", sim_cfg.m, "Evaluation points")->capture_default_str();
  sim->add_option("--grid", sim_cfg.grid, "Grid resolution")->capture_default_str();
  sim->add_option("--out-prefix", sim_cfg.out_prefix, "Prefix for output files")->capture_default_str();

  // pattern-density
  EnsembleConfig pd_cfg;
  Params pd_p;
  std::size_t pd_k = 3;
  std::size_t pd_samples = 100000;
  std::string pd_out;
  auto* pd = app.add_subcommand("pattern-density", "Monte Carlo pattern densities (CSV report)");
  add_param_flags(pd, pd_p);
  add_excursion_flags(pd, pd_cfg.excursion);
  pd->add_option("--m", pd_cfg.m, "Evaluation points")->capture_default_str();
  pd->add_option("--k", pd_k, "Pattern size")->capture_default_str();
  pd->add_option("--samples", pd_samples, "Total pattern samples")->capture_default_str();
  pd->add_option("--replicates", pd_cfg.replicates, "Independent permutons")->capture_default_str();
  pd->add_option("--out", pd_out, "Output CSV (default stdout)");

  // discrete
  std::string d_class = "baxter";
  std::size_t d_n = 4;
  std::string d_pattern;
  bool d_exact = false;
  std::size_t d_sample = 0;
  std::size_t d_ceiling = kDefaultCeiling;
  std::uint64_t d_seed = 1;
  auto* disc = app.add_subcommand("discrete", "Exact statistics and uniform samples of permutation classes");
  disc->add_option("--class", d_class, "baxter | semi_baxter | strong_baxter | separable")->capture_default_str();
  disc->add_option("--n", d_n, "Permutation size")->capture_default_str();
  disc->add_option("--pattern", d_pattern, "Pattern in one-line notation");
  disc->add_flag("--exact", d_exact, "Print the exact expected pattern density");
  disc->add_option("--sample", d_sample, "Emit this many uniform samples as CSV rows");
  disc->add_option("--ceiling", d_ceiling, "Enumeration ceiling")->capture_default_str();
  disc->add_option("--seed", d_seed, "Random seed")->capture_default_str();

  // figure-grid
  FigureGridConfig fg_cfg;
  std::string fg_dir = "figure_grid";
  auto* fg = app.add_subcommand("figure-grid", "6 x 5 grid of coupled density images");
  add_excursion_flags(fg, fg_cfg.excursion);
  fg->add_option("--m", fg_cfg.m, "Evaluation points")->capture_default_str();
  fg->add_option("--grid", fg_cfg.grid, "Grid resolution")->capture_default_str();
  fg->add_option("--out-dir", fg_dir, "Output directory")->capture_default_str();

  // compare
  CompareConfig cmp_cfg;
  std::string cmp_class = "baxter";
  std::string cmp_preset = "baxter";
  std::string cmp_patterns = "123,321,132";
  std::string cmp_out;
  cmp_cfg.ensemble.replicates = 100;
  auto* cmp = app.add_subcommand("compare", "Exact class densities vs continuum Monte Carlo (CSV)");
  cmp->add_option("--class", cmp_class, "Permutation class")->capture_default_str();
  cmp->add_option("--preset", cmp_preset, "Continuum parameter preset")->capture_default_str();
  cmp->add_option("--patterns", cmp_patterns, "Comma-separated patterns")->capture_default_str();
  cmp->add_option("--ceiling", cmp_cfg.ceiling, "Largest exact n")->capture_default_str();
  cmp->add_option("--replicates", cmp_cfg.ensemble.replicates, "Independent permutons")->capture_default_str();
  cmp->add_option("--samples", cmp_cfg.samples_per_replicate, "Pattern samples per permuton")->capture_default_str();
  cmp->add_option("--m", cmp_cfg.ensemble.m, "Evaluation points")->capture_default_str();
  add_excursion_flags(cmp, cmp_cfg.ensemble.excursion);
  cmp->add_option("--out", cmp_out, "Output CSV (default stdout)");

  // selftest
  bool st_verbose = false;
  std::uint64_t st_seed = 20211;
  auto* st = app.add_subcommand("selftest", "Fast consistency checks");
  st->add_flag("--verbose", st_verbose, "One line per check");
  st->add_option("--seed", st_seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadArgs;
  }
  if (threads > 0) set_thread_count(threads);

  try {
    if (*exc) {
      check_rho(exc_rho);
      std::ostringstream csv;
      write_path_csv(csv, sample_excursion(exc_rho, exc_cfg));
      emit(exc_out, csv.str());
    } else if (*walks) {
      resolve(walk_p);
      const Simulation s = simulate_permuton(walk_p.rho, walk_p.q, walk_cfg, walk_m);
      std::ostringstream csv;
      write_walk_csv(csv, s.family, walk_index);
      emit(walk_out, csv.str());
    } else if (*sim) {
      resolve(sim_p);
      sim_cfg.rho = sim_p.rho;
      sim_cfg.q = sim_p.q;
      sim_cfg.preset = sim_p.preset;
      const SimulateOutputs out = cmd_simulate(sim_cfg);
      std::cout << "wrote " << out.points.string() << ", " << out.grid_csv.string() << ", "
                << out.grid_pgm.string() << ", " << out.meta.string() << '\n';
    } else if (*pd) {
      resolve(pd_p);
      pd_cfg.rho = pd_p.rho;
      pd_cfg.q = pd_p.q;
      pd_cfg.seed = pd_cfg.excursion.seed;
      if (pd_cfg.replicates < 1) throw std::invalid_argument("--replicates must be >= 1");
      const std::size_t per = std::max<std::size_t>(1, pd_samples / pd_cfg.replicates);
      std::ostringstream csv;
      write_report_csv(csv, ensemble_pattern_density(pd_cfg, pd_k, per));
      emit(pd_out, csv.str());
    } else if (*disc) {
      const ClassId cls = parse_class(d_class);
      if (d_exact) {
        if (d_pattern.empty()) throw std::invalid_argument("--exact needs --pattern");
        const Rational r = exact_expected_pocc(cls, d_n, Permutation::parse(d_pattern), d_ceiling);
        std::cout << r.to_string() << ' ' << format_double(r.to_double()) << '\n';
      }
      if (d_sample > 0) {
        Rng rng(d_seed);
        for (std::size_t i = 0; i < d_sample; ++i) {
          const Permutation s = uniform_sample(cls, d_n, rng, d_ceiling);
          for (std::size_t p = 0; p < s.size(); ++p) std::cout << (p ? "," : "") << s[p];
          std::cout << '\n';
        }
      }
      if (!d_exact && d_sample == 0) {
        std::cout << class_count(cls, d_n, d_ceiling) << '\n';
      }
    } else if (*fg) {
      fg_cfg.out_dir = fg_dir;
      const auto files = cmd_figure_grid(fg_cfg);
      std::cout << "wrote " << files.size() << " files to " << fg_dir << '\n';
    } else if (*cmp) {
      const Preset pr = find_preset(cmp_preset);
      cmp_cfg.cls = parse_class(cmp_class);
      cmp_cfg.rho = pr.rho;
      cmp_cfg.q = pr.q;
      cmp_cfg.patterns = parse_patterns(cmp_patterns);
      cmp_cfg.ensemble.seed = cmp_cfg.ensemble.excursion.seed;
      const auto rows = cmd_compare(cmp_cfg);
      std::ostringstream csv;
      write_compare_csv(csv, rows);
      emit(cmp_out, csv.str());
      for (const auto& pi : cmp_cfg.patterns) {
        std::vector<Rational> exact;
        for (const auto& r : rows)
          if (r.pattern == pi) exact.push_back(r.exact);
        const bool flat = std::all_of(exact.begin(), exact.end(), [&](const Rational& e) { return e == exact.front(); });
        if (!flat && !gap_shrinks(rows, pi)) {
          std::cerr << "WARN: gap for pattern " << pi.to_string() << " does not shrink with n\n";
        }
      }
    } else if (*st) {
      const auto results = run_selftest(st_seed, st_verbose ? &std::cout : nullptr);
      if (!all_passed(results)) {
        if (!st_verbose) {
          for (const auto& r : results) {
            if (!r.passed) std::cerr << "[FAIL] " << r.name << ": " << r.detail << '\n';
          }
        }
        return kExitSelftest;
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
