#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "permuton/excursions.hpp"
#include "permuton/patterns.hpp"
#include "permuton/permuton.hpp"
#include "permuton/walks.hpp"

namespace permuton {

// CSV writers emit doubles with 17 significant digits so readers recover
// the exact values. Grid rows/columns are 1-based in files.

void write_path_csv(std::ostream& out, const Path2D& path);      // t,x,y
Path2D read_path_csv(std::istream& in, double rho, PathKind kind);

struct WalkSeries {
  std::vector<double> t;
  std::vector<double> z;
};

void write_walk_csv(std::ostream& out, const WalkFamily& family, std::size_t walk);  // t,z
WalkSeries read_walk_csv(std::istream& in);

void write_grid_csv(std::ostream& out, const GridMeasure& grid);  // row,col,mass
GridMeasure read_grid_csv(std::istream& in);

void write_points_csv(std::ostream& out, const PhiCurve& curve);  // t,phi
PhiCurve read_points_csv(std::istream& in);

void write_report_csv(std::ostream& out, const std::vector<PatternReport>& reports);
std::vector<PatternReport> read_report_csv(std::istream& in);

/// Plain (P2) PGM, max gray 255, gray = round(255 * mass / max mass). The
/// top image row is the top of the unit square.
void write_pgm(std::ostream& out, const GridMeasure& grid);

/// Writes a whole file, creating parent directories. Throws
/// std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

std::string format_double(double x);

}  // namespace permuton
