#include "sdream/signal.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "sdream/evaluators.hpp"
#include "sdream/parallel.hpp"

namespace sdream::signal {

std::vector<std::size_t> local_maxima(std::span<const double> v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) out.push_back(i);
  }
  return out;
}

double mean_maxima_spacing(std::span<const double> x, std::span<const double> v) {
  const auto m = local_maxima(v);
  if (m.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return (x[m.back()] - x[m.front()]) / static_cast<double>(m.size() - 1);
}

std::vector<double> moving_average(std::span<const double> v, std::size_t window) {
  const std::size_t n = v.size();
  if (window <= 1 || n == 0) return {v.begin(), v.end()};
  const std::size_t left = window / 2;
  const auto at = [&](std::ptrdiff_t i) {
    if (i < 0) return v.front();
    if (i >= static_cast<std::ptrdiff_t>(n)) return v.back();
    return v[static_cast<std::size_t>(i)];
  };
  std::vector<double> out(n);
  double sum = 0.0;
  const auto first = -static_cast<std::ptrdiff_t>(left);
  for (std::size_t k = 0; k < window; ++k) sum += at(first + static_cast<std::ptrdiff_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = sum / static_cast<double>(window);
    const auto lo = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(left);
    sum += at(lo + static_cast<std::ptrdiff_t>(window)) - at(lo);
  }
  return out;
}

std::vector<std::size_t> sign_changes(std::span<const double> v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if ((v[i] > 0.0 && v[i + 1] < 0.0) || (v[i] < 0.0 && v[i + 1] > 0.0)) out.push_back(i);
  }
  return out;
}

double crossing_period(std::span<const double> x, std::span<const double> v) {
  const auto c = sign_changes(v);
  if (c.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  // Interpolated crossing positions.
  const auto pos = [&](std::size_t i) {
    return x[i] + (x[i + 1] - x[i]) * v[i] / (v[i] - v[i + 1]);
  };
  // Use an odd number of crossings so the span covers whole periods.
  const std::size_t last = (c.size() % 2 == 1) ? c.size() - 1 : c.size() - 2;
  return 2.0 * std::abs(pos(c[last]) - pos(c[0])) / static_cast<double>(last);
}

ModulationCounts modulation_counts(std::span<const double> v, std::size_t window) {
  const std::vector<double> slow = moving_average(v, window);
  std::vector<double> fast(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) fast[i] = v[i] - slow[i];
  const double mean = slow.empty() ? 0.0
                                   : std::accumulate(slow.begin(), slow.end(), 0.0) /
                                         static_cast<double>(slow.size());
  std::vector<double> centered(slow.size());
  for (std::size_t i = 0; i < slow.size(); ++i) centered[i] = slow[i] - mean;
  ModulationCounts out;
  out.fast = sign_changes(fast).size();
  out.slow = sign_changes(centered).size();
  out.ratio = out.slow == 0 ? std::numeric_limits<double>::infinity()
                            : static_cast<double>(out.fast) / static_cast<double>(out.slow);
  return out;
}

std::vector<Complex> sample_segment(Complex start, Complex end, std::size_t count, double a,
                                    const QuadratureConfig& cfg) {
  if (start == end) count = 1;
  std::vector<Complex> out(count);
  parallel_for(count, [&](std::size_t i) {
    const double s = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = f_quadrature(EvalPoint(start + s * (end - start), a), cfg).value;
  });
  return out;
}

}  // namespace sdream::signal
