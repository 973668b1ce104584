#pragma once

// Non-trivial zeros of f(t, a): asymptotic seeds, Newton refinement on the
// quadrature evaluator, and batched tables with spacing statistics.

#include <optional>
#include <string>
#include <vector>

#include "sdream/core.hpp"
#include "sdream/quadrature.hpp"

namespace sdream {

struct ZeroRecord {
  int index = 0;
  Complex guess{};
  Complex refined{};
  double residual = 0.0;  // |f(refined, a)|
  int iterations = 0;
  double a = 1.0;
  std::optional<ErrorKind> failure;  // set when refinement failed for this index
  std::string message;
};

struct RefineOptions {
  double tol = 1e-10;
  int max_steps = 50;
  int max_halvings = 5;
  bool check_basin = true;
  QuadratureConfig quadrature{};
};

/// Asymptotic zero position: i 2 pi e (n - 1/8)/a - (e/(2a)) ln(2 pi^2 (n - 1/8))
/// for a >= 1/e; for a < 1/e, -1 + i 2 pi (n - 1/8)/ln(1/a).
Complex zero_guess(int n, double a);

/// Damped Newton on f_quadrature. Throws NoConvergence after max_steps and
/// WrongBasin when the root lies farther than half a period from the guess.
ZeroRecord zero_refine(Complex guess, double a, const RefineOptions& opt = {});

/// Local minima of |f| on a grid with the given resolution over
/// [x_lo, x_hi] x [y_lo, y_hi], ordered by distance from the origin.
std::vector<Complex> scan_minima(double a, double x_lo, double x_hi, double y_lo, double y_hi,
                                 double resolution, const QuadratureConfig& cfg = {});

struct SpacingStats {
  int found = 0;
  double mean_spacing = 0.0;     // along Im t (along Re t for a < 0)
  double slope = 0.0;            // least-squares slope of that coordinate vs n
  double median_spacing = 0.0;
  int suspected_skips = 0;       // gaps above 1.5 x median spacing
};

struct ZeroTable {
  double a = 1.0;
  double tol = 1e-10;
  std::vector<ZeroRecord> records;
  SpacingStats stats;
};

/// Refines zeros 1..n_max. Failures are recorded per index. For a < 0 the
/// seeds come from a 0.25-resolution scan of |f| near the negative real axis.
ZeroTable zero_table(int n_max, double a, const RefineOptions& opt = {});

SpacingStats spacing_stats(const std::vector<ZeroRecord>& records, bool along_real);

}  // namespace sdream
