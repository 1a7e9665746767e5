#include "permuton/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "permuton/io.hpp"
#include "permuton/parallel.hpp"

#ifndef PERMUTON_VERSION
#define PERMUTON_VERSION "0.0.0"
#endif

namespace permuton {
namespace {

constexpr std::uint64_t kSignStream = 0x5167'6e73ull;
constexpr std::uint64_t kPatternStream = 0x7061'7474ull;

nlohmann::json excursion_json(const GlauberConfig& c) {
  return {{"initial_points", c.initial_points},
          {"refinement_levels", c.refinement_levels},
          {"sweeps_per_level", c.sweeps_per_level},
          {"final_points", c.final_points()},
          {"seed", c.seed}};
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

std::string fixed3(double x) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(3) << x;
  return ss.str();
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace

std::string library_version() { return PERMUTON_VERSION; }

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw std::invalid_argument("bisect: interval does not bracket a root");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double strong_baxter_rho() {
  static const double root =
      bisect([](double r) { return 1.0 + 6.0 * r + 8.0 * r * r + 8.0 * r * r * r; }, -0.3, -0.2);
  return root;
}

double strong_baxter_q() {
  static const double root =
      bisect([](double q) { return -1.0 + 6.0 * q - 11.0 * q * q + 7.0 * q * q * q; }, 0.25, 0.35);
  return root;
}

Preset find_preset(std::string_view name) {
  std::string key(name);
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  if (key == "baxter") return {"baxter", -0.5, 0.5};
  if (key == "strong-baxter") return {"strong-baxter", strong_baxter_rho(), strong_baxter_q()};
  if (key == "semi-baxter") return {"semi-baxter", -(1.0 + std::sqrt(5.0)) / 4.0, 0.5};
  if (key == "separable") return {"separable", 1.0, 0.5};
  throw std::invalid_argument("unknown preset: " + std::string(name));
}

std::vector<std::string> preset_names() { return {"baxter", "strong-baxter", "semi-baxter", "separable"}; }

void check_parameters(double rho, double q) {
  check_rho(rho);
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
}

Simulation simulate_permuton(double rho, double q, const GlauberConfig& excursion, std::size_t m) {
  check_parameters(rho, q);
  Path2D driver = sample_excursion(rho, excursion);
  const auto u = u_grid(driver.size(), m);
  if (rho == 1.0) {
    const auto minima = local_minima(driver.xs);
    Rng rng(mix_seed(excursion.seed, kSignStream));
    const SignAssignment signs = draw_signs(minima, q, rng);
    WalkFamily family = sign_flip_family(driver.xs, signs, u);
    PhiCurve curve = phi_curve(family);
    return {std::move(driver), std::move(family), std::move(curve)};
  }
  WalkFamily family = simulate_walk_family(driver, q, u);
  PhiCurve curve = phi_curve(family);
  return {std::move(driver), std::move(family), std::move(curve)};
}

PhiCurve sample_phi(double rho, double q, const GlauberConfig& excursion, std::size_t m) {
  return simulate_permuton(rho, q, excursion, m).curve;
}

void for_each_replicate(const EnsembleConfig& config,
                        const std::function<void(std::size_t, const PhiCurve&)>& use) {
  check_parameters(config.rho, config.q);
  if (config.replicates < 1) throw std::invalid_argument("ensemble: need at least one replicate");
  parallel_for(config.replicates, [&](std::size_t i) {
    GlauberConfig excursion = config.excursion;
    excursion.seed = mix_seed(config.seed, i);
    use(i, sample_phi(config.rho, config.q, excursion, config.m));
  });
}

std::vector<PatternReport> ensemble_pattern_density(const EnsembleConfig& config, std::size_t k,
                                                    std::size_t samples_per_replicate) {
  std::vector<std::vector<PatternReport>> per(config.replicates);
  for_each_replicate(config, [&](std::size_t i, const PhiCurve& curve) {
    per[i] = sample_pattern_density(curve.phi, k, samples_per_replicate,
                                    mix_seed(config.seed ^ kPatternStream, i));
  });
  return combine_replicates(per);
}

GridMeasure ensemble_grid(const EnsembleConfig& config, std::size_t k) {
  std::vector<GridMeasure> grids(config.replicates, GridMeasure(k));
  for_each_replicate(config, [&](std::size_t i, const PhiCurve& curve) { grids[i] = empirical_permuton(curve, k); });
  GridMeasure out(k);
  const double w = 1.0 / static_cast<double>(grids.size());
  for (const auto& g : grids)
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) out.mass(r, c) += w * g.mass(r, c);
  return out;
}

SimulateOutputs cmd_simulate(const SimulateConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Simulation sim = simulate_permuton(config.rho, config.q, config.excursion, config.m);
  const GridMeasure grid = empirical_permuton(sim.curve, config.grid);

  SimulateOutputs out{config.out_prefix + "points.csv", config.out_prefix + "grid.csv",
                      config.out_prefix + "grid.pgm", config.out_prefix + "meta.json"};
  std::ostringstream points, grid_csv, pgm;
  write_points_csv(points, sim.curve);
  write_grid_csv(grid_csv, grid);
  write_pgm(pgm, grid);
  write_file(out.points, points.str());
  write_file(out.grid_csv, grid_csv.str());
  write_file(out.grid_pgm, pgm.str());

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  nlohmann::json meta = {{"command", "simulate"},
                         {"rho", config.rho},
                         {"q", config.q},
                         {"m", config.m},
                         {"grid", config.grid},
                         {"excursion", excursion_json(config.excursion)},
                         {"seed", config.excursion.seed},
                         {"library_version", library_version()},
                         {"threads", thread_count()},
                         {"wall_time_seconds", wall},
                         {"created_utc", utc_now()}};
  if (!config.preset.empty()) meta["preset"] = config.preset;
  write_file(out.meta, meta.dump(2) + "\n");
  return out;
}

std::vector<std::filesystem::path> cmd_figure_grid(const FigureGridConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  for (double q : config.qs) check_parameters(0.0, q);
  std::vector<std::filesystem::path> written;
  for (std::size_t row = 0; row < config.rhos.size(); ++row) {
    const double rho = config.rhos[row];
    check_rho(rho);
    GlauberConfig excursion = config.excursion;
    excursion.seed = mix_seed(config.excursion.seed, row);
    const Path2D driver = sample_excursion(rho, excursion);
    const auto u = u_grid(driver.size(), config.m);

    const std::string tag = "rho_" + fixed3(rho);
    std::ostringstream csv;
    write_path_csv(csv, driver);
    written.push_back(config.out_dir / ("excursion_" + tag + ".csv"));
    write_file(written.back(), csv.str());

    // rho = 1: one uniform per minimum, shared by every column of the row.
    std::vector<std::size_t> minima;
    std::vector<double> uniforms;
    if (rho == 1.0) {
      minima = local_minima(driver.xs);
      Rng rng(mix_seed(excursion.seed, kSignStream));
      for (std::size_t l = 0; l < minima.size(); ++l) uniforms.push_back(rng.uniform());
    }

    for (double q : config.qs) {
      const WalkFamily family = rho == 1.0
                                    ? sign_flip_family(driver.xs, signs_from_uniforms(minima, uniforms, q), u)
                                    : simulate_walk_family(driver, q, u);
      const GridMeasure grid = empirical_permuton(phi_curve(family), config.grid);
      std::ostringstream pgm;
      write_pgm(pgm, grid);
      written.push_back(config.out_dir / (tag + "_q_" + fixed3(q) + ".pgm"));
      write_file(written.back(), pgm.str());
    }
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  nlohmann::json meta = {{"command", "figure-grid"},
                         {"rhos", config.rhos},
                         {"qs", config.qs},
                         {"m", config.m},
                         {"grid", config.grid},
                         {"excursion", excursion_json(config.excursion)},
                         {"seed", config.excursion.seed},
                         {"library_version", library_version()},
                         {"threads", thread_count()},
                         {"wall_time_seconds", wall},
                         {"created_utc", utc_now()}};
  written.push_back(config.out_dir / "meta.json");
  write_file(written.back(), meta.dump(2) + "\n");
  return written;
}

std::vector<CompareRow> cmd_compare(const CompareConfig& config) {
  check_parameters(config.rho, config.q);
  if (config.patterns.empty()) throw std::invalid_argument("compare: no patterns given");
  if (config.n_min > config.ceiling) throw std::invalid_argument("compare: n_min above the ceiling");

  EnsembleConfig ens = config.ensemble;
  ens.rho = config.rho;
  ens.q = config.q;

  std::map<std::size_t, std::vector<PatternReport>> by_size;
  for (const auto& pi : config.patterns) {
    if (!by_size.count(pi.size())) by_size[pi.size()] = ensemble_pattern_density(ens, pi.size(), config.samples_per_replicate);
  }

  std::vector<CompareRow> rows;
  for (const auto& pi : config.patterns) {
    const auto& reports = by_size.at(pi.size());
    const auto it = std::find_if(reports.begin(), reports.end(), [&](const PatternReport& r) { return r.pattern == pi; });
    for (std::size_t n = std::max(config.n_min, pi.size()); n <= config.ceiling; ++n) {
      const Rational exact = exact_expected_pocc(config.cls, n, pi, config.ceiling);
      rows.push_back({pi, n, exact, it->estimate, it->std_error, std::abs(exact.to_double() - it->estimate)});
    }
  }
  return rows;
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << "pattern,n,exact,exact_decimal,mc_estimate,stderr,gap\n";
  for (const auto& r : rows) {
    out << r.pattern.to_string() << ',' << r.n << ',' << r.exact.to_string() << ','
        << format_double(r.exact.to_double()) << ',' << format_double(r.mc_estimate) << ','
        << format_double(r.std_error) << ',' << format_double(r.gap) << '\n';
  }
}

std::vector<CompareRow> read_compare_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "pattern,n,exact,exact_decimal,mc_estimate,stderr,gap") {
    throw std::runtime_error("compare CSV: unexpected header");
  }
  std::vector<CompareRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) f.push_back(field);
    if (f.size() != 7) throw std::runtime_error("compare CSV: expected 7 fields");
    rows.push_back({Permutation::parse(f[0]), static_cast<std::size_t>(std::stoul(f[1])), parse_rational(f[2]),
                    std::stod(f[4]), std::stod(f[5]), std::stod(f[6])});
  }
  return rows;
}

bool gap_shrinks(const std::vector<CompareRow>& rows, const Permutation& pattern) {
  const CompareRow* first = nullptr;
  const CompareRow* last = nullptr;
  for (const auto& r : rows) {
    if (r.pattern != pattern) continue;
    if (!first || r.n < first->n) first = &r;
    if (!last || r.n > last->n) last = &r;
  }
  if (!first) throw std::invalid_argument("gap_shrinks: pattern not in the report");
  return last->gap < first->gap;
}

}  // namespace permuton
