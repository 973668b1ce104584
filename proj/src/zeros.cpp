#include "sdream/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdream/asymptotics.hpp"
#include "sdream/evaluators.hpp"
#include "sdream/parallel.hpp"

namespace sdream {

namespace {

constexpr double kScanResolution = 0.25;
// Along the real axis the a = -1 oscillation has period 2.
constexpr double kNegativeBasin = 1.0;

double basin_radius(double a) {
  return a > 0.0 ? 0.5 * oscillation_period(a) : kNegativeBasin;
}

}  // namespace

Complex zero_guess(int n, double a) {
  if (n < 1) fail(ErrorKind::Domain, "zero index must be >= 1");
  if (!(a > 0.0)) fail(ErrorKind::Domain, "asymptotic zero seeds need a > 0");
  const double m = n - 0.125;
  if (a < kInvE) return {-1.0, 2.0 * kPi * m / std::log(1.0 / a)};
  return {-kE / (2.0 * a) * std::log(2.0 * kPi * kPi * m), 2.0 * kPi * kE * m / a};
}

ZeroRecord zero_refine(Complex guess, double a, const RefineOptions& opt) {
  if (a == 0.0) fail(ErrorKind::Domain, "scale a must be nonzero");
  if (!(opt.tol > 0.0)) fail(ErrorKind::Domain, "tolerance must be > 0");
  ZeroRecord rec;
  rec.guess = guess;
  rec.a = a;

  Complex t = guess;
  ValueAndSlope cur = f_quadrature_with_slope(EvalPoint(t, a), opt.quadrature);
  int steps = 0;
  while (std::abs(cur.value) >= opt.tol) {
    if (steps == opt.max_steps) {
      fail(ErrorKind::NoConvergence, "Newton iteration did not reach the tolerance");
    }
    ++steps;
    if (cur.slope == Complex(0.0, 0.0)) fail(ErrorKind::NoConvergence, "zero derivative");
    Complex step = -cur.value / cur.slope;
    Complex trial = t + step;
    ValueAndSlope next = f_quadrature_with_slope(EvalPoint(trial, a), opt.quadrature);
    for (int h = 0; h < opt.max_halvings && !(std::abs(next.value) < std::abs(cur.value)); ++h) {
      step *= 0.5;
      trial = t + step;
      next = f_quadrature_with_slope(EvalPoint(trial, a), opt.quadrature);
    }
    t = trial;
    cur = next;
  }
  rec.refined = t;
  rec.residual = std::abs(cur.value);
  rec.iterations = steps;
  if (opt.check_basin && std::abs(t - guess) > basin_radius(a)) {
    fail(ErrorKind::WrongBasin, "Newton left the basin of the seed");
  }
  return rec;
}

std::vector<Complex> scan_minima(double a, double x_lo, double x_hi, double y_lo, double y_hi,
                                 double resolution, const QuadratureConfig& cfg) {
  const auto nx = static_cast<std::size_t>(std::floor((x_hi - x_lo) / resolution)) + 1;
  const auto ny = static_cast<std::size_t>(std::floor((y_hi - y_lo) / resolution)) + 1;
  std::vector<double> mag(nx * ny);
  const auto node = [&](std::size_t ix, std::size_t iy) {
    return Complex(x_lo + ix * resolution, y_lo + iy * resolution);
  };
  parallel_for(mag.size(), [&](std::size_t k) {
    mag[k] = std::abs(f_quadrature(EvalPoint(node(k % nx, k / nx), a), cfg).value);
  });
  std::vector<Complex> out;
  for (std::size_t iy = 1; iy + 1 < ny; ++iy) {
    for (std::size_t ix = 1; ix + 1 < nx; ++ix) {
      const double m = mag[iy * nx + ix];
      bool is_min = true;
      for (int dy = -1; dy <= 1 && is_min; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (mag[(iy + dy) * nx + (ix + dx)] <= m) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) out.push_back(node(ix, iy));
    }
  }
  std::sort(out.begin(), out.end(),
            [](Complex p, Complex q) { return std::abs(p) < std::abs(q); });
  return out;
}

SpacingStats spacing_stats(const std::vector<ZeroRecord>& records, bool along_real) {
  SpacingStats s;
  std::vector<double> n;
  std::vector<double> v;
  for (const auto& r : records) {
    if (r.failure) continue;
    n.push_back(r.index);
    v.push_back(along_real ? r.refined.real() : r.refined.imag());
  }
  s.found = static_cast<int>(v.size());
  if (v.size() < 2) return s;
  std::vector<double> gaps;
  for (std::size_t i = 1; i < v.size(); ++i) gaps.push_back(std::abs(v[i] - v[i - 1]));
  s.mean_spacing = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
  std::vector<double> sorted = gaps;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median_spacing = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  s.suspected_skips = static_cast<int>(
      std::count_if(gaps.begin(), gaps.end(), [&](double g) { return g > 1.5 * s.median_spacing; }));
  const double nm = std::accumulate(n.begin(), n.end(), 0.0) / static_cast<double>(n.size());
  const double vm = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    sxy += (n[i] - nm) * (v[i] - vm);
    sxx += (n[i] - nm) * (n[i] - nm);
  }
  s.slope = sxy / sxx;
  return s;
}

ZeroTable zero_table(int n_max, double a, const RefineOptions& opt) {
  if (n_max < 1) fail(ErrorKind::Domain, "n_max must be >= 1");
  if (!(opt.tol > 0.0)) fail(ErrorKind::Domain, "tolerance must be > 0");
  if (a == 0.0) fail(ErrorKind::Domain, "scale a must be nonzero");
  ZeroTable table;
  table.a = a;
  table.tol = opt.tol;

  std::vector<Complex> seeds;
  if (a > 0.0) {
    for (int n = 1; n <= n_max; ++n) seeds.push_back(zero_guess(n, a));
  } else {
    const double x_lo = -(2.5 * n_max + 2.0);
    for (Complex s : scan_minima(a, x_lo, 0.0, -2.0, 2.0, kScanResolution, opt.quadrature)) {
      if (std::abs(s) > 2.0 * kScanResolution) seeds.push_back(s);
      if (static_cast<int>(seeds.size()) == n_max) break;
    }
  }

  table.records.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    ZeroRecord& rec = table.records[i];
    try {
      rec = zero_refine(seeds[i], a, opt);
    } catch (const NumericError& e) {
      rec.guess = seeds[i];
      rec.a = a;
      rec.failure = e.kind();
      rec.message = e.what();
    }
    rec.index = static_cast<int>(i) + 1;
  });
  table.stats = spacing_stats(table.records, a < 0.0);
  return table;
}

}  // namespace sdream
