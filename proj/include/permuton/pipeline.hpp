#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permuton/classes.hpp"
#include "permuton/excursions.hpp"
#include "permuton/patterns.hpp"
#include "permuton/permuton.hpp"
#include "permuton/rational.hpp"
#include "permuton/walks.hpp"

namespace permuton {

std::string library_version();

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

/// Real roots of 1 + 6r + 8r^2 + 8r^3 and -1 + 6q - 11q^2 + 7q^3.
double strong_baxter_rho();
double strong_baxter_q();

struct Preset {
  std::string name;
  double rho;
  double q;
};

/// baxter, strong-baxter, semi-baxter, separable (underscores accepted).
Preset find_preset(std::string_view name);
std::vector<std::string> preset_names();

/// Checks rho in (-1, 1] and q in [0, 1].
void check_parameters(double rho, double q);

struct Simulation {
  Path2D driver;  // x == y for rho == 1
  WalkFamily family;
  PhiCurve curve;
};

/// Excursion -> coalescent walks on the default u-grid -> phi. For rho == 1
/// the walks come from the sign-flip construction with signs drawn from a
/// seed derived from the excursion seed.
Simulation simulate_permuton(double rho, double q, const GlauberConfig& excursion, std::size_t m);

/// Same as simulate_permuton but keeps only the phi curve.
PhiCurve sample_phi(double rho, double q, const GlauberConfig& excursion, std::size_t m);

struct EnsembleConfig {
  double rho = -0.5;
  double q = 0.5;
  GlauberConfig excursion;  // seed is ignored; replicate i uses mix_seed(seed, i)
  std::size_t m = 512;
  std::size_t replicates = 1;
  std::uint64_t seed = 1;
};

/// Runs replicates in parallel and hands each phi curve to `use`. Results
/// are indexed by replicate so they do not depend on the pool size.
void for_each_replicate(const EnsembleConfig& config,
                        const std::function<void(std::size_t, const PhiCurve&)>& use);

/// Pattern densities averaged over independent permutons.
std::vector<PatternReport> ensemble_pattern_density(const EnsembleConfig& config, std::size_t k,
                                                    std::size_t samples_per_replicate);

/// Grid averaged over independent permutons.
GridMeasure ensemble_grid(const EnsembleConfig& config, std::size_t k);

// ---- subcommands -------------------------------------------------------

struct SimulateConfig {
  double rho = -0.5;
  double q = 0.5;
  GlauberConfig excursion;
  std::size_t m = 512;
  std::size_t grid = 64;
  std::string out_prefix = "permuton_";
  std::string preset;  // recorded in meta.json when set
};

struct SimulateOutputs {
  std::filesystem::path points, grid_csv, grid_pgm, meta;
};

/// Writes <prefix>points.csv, grid.csv, grid.pgm and meta.json.
SimulateOutputs cmd_simulate(const SimulateConfig& config);

struct FigureGridConfig {
  std::vector<double> rhos{-0.995, -0.5, 0.0, 0.5, 0.995, 1.0};
  std::vector<double> qs{0.01, 0.25, 0.5, 0.75, 0.99};
  GlauberConfig excursion;
  std::size_t m = 512;
  std::size_t grid = 64;
  std::filesystem::path out_dir = "figure_grid";
};

/// One excursion per rho row shared by all q columns of that row. Returns
/// the files written.
std::vector<std::filesystem::path> cmd_figure_grid(const FigureGridConfig& config);

struct CompareConfig {
  ClassId cls = ClassId::baxter;
  double rho = -0.5;
  double q = 0.5;
  std::vector<Permutation> patterns;
  std::size_t n_min = 4;
  std::size_t ceiling = kDefaultCeiling;
  EnsembleConfig ensemble;  // rho/q overwritten from the fields above
  std::size_t samples_per_replicate = 2000;
};

struct CompareRow {
  Permutation pattern;
  std::size_t n;
  Rational exact;
  double mc_estimate;
  double std_error;
  double gap;
};

std::vector<CompareRow> cmd_compare(const CompareConfig& config);
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);
std::vector<CompareRow> read_compare_csv(std::istream& in);

/// Gap at the largest n below the gap at the smallest n, for one pattern.
bool gap_shrinks(const std::vector<CompareRow>& rows, const Permutation& pattern);

}  // namespace permuton
