#pragma once

// Command-line front end: eval, compare, profile, grid and zeros subcommands
// rendering tables as CSV or JSON.

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sdream/core.hpp"
#include "sdream/quadrature.hpp"

namespace sdream::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAllFailed = 3;

inline constexpr double kMaxGridNodes = 4e6;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "x", "yi", "x+yi", "x-yi", "i", "-i" (also with 'j'). Throws UsageError.
Complex parse_complex(std::string_view text);

std::vector<std::string> split_list(std::string_view text);

enum class Format { Csv, Json };

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::pair<std::string, Cell>> config;  // echoed as header metadata
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_table(const Table& table, Format format, std::ostream& out);

struct GridNode {
  double x = 0.0;
  double y = 0.0;
  double re_f = 0.0;
  double im_f = 0.0;
  double abs_f = 0.0;
};

struct GridScan {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  int nx = 0;
  int ny = 0;
  double a = 1.0;
  std::vector<GridNode> nodes;  // row-major: y outer, x inner
};

/// Samples f by quadrature on the grid; failed nodes hold NaN.
GridScan compute_grid(double x_min, double x_max, double y_min, double y_max, int nx, int ny,
                      double a, const QuadratureConfig& cfg);

Table grid_table(const GridScan& scan);

/// Reads a grid written with --format json back into a GridScan.
GridScan read_grid_json(std::istream& in);

/// Entry point; argv[0] is the program name. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sdream::cli
