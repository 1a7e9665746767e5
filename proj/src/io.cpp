#include "permuton/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace permuton {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

void expect_header(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != header) {
    throw std::runtime_error("CSV: expected header '" + header + "'");
  }
}

// Calls row(fields) for each non-empty data line with the expected arity.
template <typename F>
void for_rows(std::istream& in, std::size_t arity, F&& row) {
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != arity) {
      throw std::runtime_error("CSV: line " + std::to_string(line_no) + " has " +
                               std::to_string(fields.size()) + " fields, expected " + std::to_string(arity));
    }
    row(fields);
  }
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("CSV: malformed number '" + s + "'");
  return v;
}

std::size_t to_index(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw std::runtime_error("CSV: malformed integer '" + s + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string format_double(double x) {
  std::ostringstream ss;
  ss << std::setprecision(17) << x;
  return ss.str();
}

void write_path_csv(std::ostream& out, const Path2D& path) {
  out << "t,x,y\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    out << format_double(static_cast<double>(i) * path.dt) << ',' << format_double(path.xs[i]) << ','
        << format_double(path.ys[i]) << '\n';
  }
}

Path2D read_path_csv(std::istream& in, double rho, PathKind kind) {
  expect_header(in, "t,x,y");
  Path2D path;
  path.rho = rho;
  path.kind = kind;
  std::vector<double> ts;
  for_rows(in, 3, [&](const std::vector<std::string>& f) {
    ts.push_back(to_double(f[0]));
    path.xs.push_back(to_double(f[1]));
    path.ys.push_back(to_double(f[2]));
  });
  if (path.xs.empty()) throw std::runtime_error("CSV: path has no rows");
  path.dt = path.xs.size() > 1 ? ts[1] - ts[0] : 1.0;
  return path;
}

void write_walk_csv(std::ostream& out, const WalkFamily& family, std::size_t walk) {
  if (walk >= family.walk_count()) throw std::invalid_argument("write_walk_csv: walk index out of range");
  out << "t,z\n";
  const auto z = family.trajectory(walk);
  for (std::size_t i = 0; i < z.size(); ++i) {
    out << format_double(static_cast<double>(i) * family.dt()) << ',' << format_double(z[i]) << '\n';
  }
}

WalkSeries read_walk_csv(std::istream& in) {
  expect_header(in, "t,z");
  WalkSeries s;
  for_rows(in, 2, [&](const std::vector<std::string>& f) {
    s.t.push_back(to_double(f[0]));
    s.z.push_back(to_double(f[1]));
  });
  return s;
}

void write_grid_csv(std::ostream& out, const GridMeasure& grid) {
  out << "row,col,mass\n";
  const std::size_t k = grid.resolution();
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      out << r + 1 << ',' << c + 1 << ',' << format_double(grid.mass(r, c)) << '\n';
    }
  }
}

GridMeasure read_grid_csv(std::istream& in) {
  expect_header(in, "row,col,mass");
  struct Cell {
    std::size_t r, c;
    double m;
  };
  std::vector<Cell> cells;
  std::size_t k = 0;
  for_rows(in, 3, [&](const std::vector<std::string>& f) {
    Cell cell{to_index(f[0]), to_index(f[1]), to_double(f[2])};
    if (cell.r == 0 || cell.c == 0) throw std::runtime_error("CSV: grid indices are 1-based");
    k = std::max({k, cell.r, cell.c});
    cells.push_back(cell);
  });
  if (k == 0) throw std::runtime_error("CSV: grid has no rows");
  GridMeasure grid(k);
  for (const auto& cell : cells) grid.mass(cell.r - 1, cell.c - 1) = cell.m;
  return grid;
}

void write_points_csv(std::ostream& out, const PhiCurve& curve) {
  out << "t,phi\n";
  for (std::size_t j = 0; j < curve.t.size(); ++j) {
    out << format_double(curve.t[j]) << ',' << format_double(curve.phi[j]) << '\n';
  }
}

PhiCurve read_points_csv(std::istream& in) {
  expect_header(in, "t,phi");
  PhiCurve curve;
  for_rows(in, 2, [&](const std::vector<std::string>& f) {
    curve.t.push_back(to_double(f[0]));
    curve.phi.push_back(to_double(f[1]));
  });
  return curve;
}

void write_report_csv(std::ostream& out, const std::vector<PatternReport>& reports) {
  out << "pattern,estimate,stderr,n_samples,source\n";
  for (const auto& r : reports) {
    out << r.pattern.to_string() << ',' << format_double(r.estimate) << ',' << format_double(r.std_error)
        << ',' << r.n_samples << ',' << to_string(r.source) << '\n';
  }
}

std::vector<PatternReport> read_report_csv(std::istream& in) {
  expect_header(in, "pattern,estimate,stderr,n_samples,source");
  std::vector<PatternReport> out;
  for_rows(in, 5, [&](const std::vector<std::string>& f) {
    out.push_back({Permutation::parse(f[0]), to_double(f[1]), to_double(f[2]), to_index(f[3]),
                   parse_pattern_source(f[4])});
  });
  return out;
}

void write_pgm(std::ostream& out, const GridMeasure& grid) {
  const std::size_t k = grid.resolution();
  const double peak = grid.max_mass();
  out << "P2\n" << k << ' ' << k << "\n255\n";
  for (std::size_t r = k; r-- > 0;) {
    for (std::size_t c = 0; c < k; ++c) {
      const long gray = peak > 0.0 ? std::lround(255.0 * grid.mass(r, c) / peak) : 0;
      out << gray << (c + 1 < k ? ' ' : '\n');
    }
  }
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace permuton
