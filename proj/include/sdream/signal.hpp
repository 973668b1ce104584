#pragma once

// Period and frequency measurements on uniformly sampled real signals.

#include <cstddef>
#include <span>
#include <vector>

#include "sdream/core.hpp"
#include "sdream/quadrature.hpp"

namespace sdream::signal {

/// Interior samples strictly above the left neighbour and not below the right.
std::vector<std::size_t> local_maxima(std::span<const double> v);

/// Mean distance in x between consecutive local maxima; NaN with fewer than two.
double mean_maxima_spacing(std::span<const double> x, std::span<const double> v);

/// Centered running mean with edge padding; output has the input's length.
std::vector<double> moving_average(std::span<const double> v, std::size_t window);

/// Indices i with v[i] and v[i+1] of strictly opposite sign.
std::vector<std::size_t> sign_changes(std::span<const double> v);

/// Period from zero crossings, counting two crossings per period; NaN with
/// fewer than three crossings.
double crossing_period(std::span<const double> x, std::span<const double> v);

struct ModulationCounts {
  std::size_t fast = 0;  // sign changes of v minus its running mean
  std::size_t slow = 0;  // sign changes of the running mean about its average
  double ratio = 0.0;
};

/// Splits v into a running mean over `window` samples and the residual.
ModulationCounts modulation_counts(std::span<const double> v, std::size_t window);

/// f(t, a) at `count` evenly spaced points of the segment [start, end]
/// (a single point when start == end), evaluated in parallel by quadrature.
std::vector<Complex> sample_segment(Complex start, Complex end, std::size_t count, double a,
                                    const QuadratureConfig& cfg = {});

}  // namespace sdream::signal
