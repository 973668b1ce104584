// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sdream/asymptotics.hpp"
#include "sdream/evaluators.hpp"
#include "sdream/signal.hpp"
#include "sdream/special_functions.hpp"
#include "sdream/zeros.hpp"

using namespace sdream;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

std::vector<double> real_parts(const std::vector<Complex>& v) {
  std::vector<double> out;
  for (Complex c : v) out.push_back(c.real());
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return x;
}

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0.0 && secs >= time_limit) {
    o.pass = false;
    o.detail += fmt(" (over time limit %.0f s)", time_limit);
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-28s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs,
              o.detail.c_str());
  std::fflush(stdout);
}

Outcome constants() {
  const double s1 = f_series(1.0).value.real();
  const double q1 = f_quadrature(EvalPoint(1.0, 1.0)).value.real();
  const double s2 = std::abs(f_series(-1.0).value);
  const double q2 = std::abs(f_quadrature(EvalPoint(-1.0, 1.0)).value);
  const auto dp4 = [](double v, double want) { return std::abs(v - want) < 5e-5; };
  return {dp4(s1, 1.2913) && dp4(q1, 1.2913) && dp4(s2, 0.7834) && dp4(q2, 0.7834),
          fmt("f(1,1)=%.10f/%.10f |f(-1,1)|=%.10f/%.10f", s1, q1, s2, q2)};
}

Outcome laplace_spot() {
  const double v = approx_laplace_corrected(1.0).value.real();
  return {std::abs(v - 1.31666) < 5e-6, fmt("value %.6f, want 1.31666", v)};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  int compared = 0;
  int flagged = 0;
  for (double a : {0.5, 0.8, 1.0, 1.5, 3.0}) {
    for (double t : linspace(-10.0, 30.0, 40)) {
      const EvalPoint p(t, a);
      const Complex q = f_quadrature(p).value;
      std::vector<MethodResult> series = {f_series_general(p)};
      if (a == 1.0) series.push_back(f_series(t));
      for (const auto& s : series) {
        if (s.condition_flag) {
          ++flagged;
          continue;
        }
        if (q == Complex(0.0, 0.0)) continue;
        worst = std::max(worst, rel(s.value, q));
        ++compared;
      }
    }
  }
  return {worst < 1e-8, fmt("max rel %.3g over %d pairs, %d flagged", worst, compared, flagged)};
}

Outcome small_a() {
  bool ok = true;
  double worst = 0.0;
  for (double t : linspace(20.0, 50.0, 7)) {
    double prev = INFINITY;
    for (double a : {0.2, 0.1, 0.05}) {
      const EvalPoint p(t, a);
      const double err = rel(approx_small_a(p).value, f_quadrature(p).value);
      if (a == 0.2) {
        worst = std::max(worst, err);
        ok = ok && err <= 0.12;
      }
      ok = ok && err < prev;
      prev = err;
    }
  }
  return {ok, fmt("worst error at a=0.2: %.4f", worst)};
}

Outcome plateau() {
  bool in_band = true;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int k = 0; k < 10; ++k) {
    const double t = -10.0 * std::pow(100.0, k / 9.0);
    const double v = f_quadrature(EvalPoint(t, 0.5)).value.real();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    in_band = in_band && v >= -0.15 && v <= -0.05;
  }
  const EvalPoint p(-1000.0, 0.5);
  const double e = rel(approx_neg_t_log(p).value, f_quadrature(p).value);
  return {in_band && e < 0.05, fmt("range [%.4f, %.4f], log form error %.4f at t=-1000", lo, hi, e)};
}

Outcome marginal() {
  const double v = f_quadrature(EvalPoint(-1e6, 1.0)).value.real();
  return {std::abs(v + 1.0) < 0.15, fmt("f(-1e6,1)=%.6f", v)};
}

Outcome zeros() {
  const ZeroTable one = zero_table(8, 1.0);
  bool ok = true;
  for (const auto& r : one.records) {
    ok = ok && !r.failure && r.residual < 1e-10 && r.refined.real() < 0.0;
  }
  const double s1 = one.stats.slope / (2.0 * kPi * kE) - 1.0;
  const ZeroTable three = zero_table(8, 3.0);
  const double s3 = three.stats.slope / (2.0 * kPi * kE / 3.0) - 1.0;
  ok = ok && std::abs(s1) < 0.02 && std::abs(s3) < 0.02;
  return {ok, fmt("a=1: %d/8 slope %.4f (%+.2f%%); a=3: %d/8 slope %.4f (%+.2f%%), %d skips", one.stats.found,
                  one.stats.slope, 100 * s1, three.stats.found, three.stats.slope, 100 * s3,
                  three.stats.suspected_skips)};
}

double measured_period(double a, double y_max) {
  const std::size_t n = 6001;
  const auto v = real_parts(signal::sample_segment({-2.0, 0.0}, {-2.0, y_max}, n, a));
  return signal::mean_maxima_spacing(linspace(0.0, y_max, n), v);
}

Outcome period_law() {
  const double p1 = measured_period(1.0, 300.0);
  const double p3 = measured_period(3.0, 120.0);
  const double pq = measured_period(0.25, 60.0);
  const double e1 = p1 / oscillation_period(1.0) - 1.0;
  const double e3 = p3 / oscillation_period(3.0) - 1.0;
  const double eq = pq / (2.0 * kPi / std::log(4.0)) - 1.0;
  return {std::abs(e1) < 0.05 && std::abs(e3) < 0.05 && std::abs(eq) < 0.05,
          fmt("a=1 %.4f (%+.2f%%), a=3 %.4f (%+.2f%%), a=1/4 %.4f (%+.2f%%)", p1, 100 * e1, p3,
              100 * e3, pq, 100 * eq)};
}

Outcome modulation() {
  const std::size_t n = 20001;
  const double y0 = 10.0;
  const double y1 = 530.0;
  const auto v = real_parts(signal::sample_segment({-2.0, y0}, {-2.0, y1}, n, 3.0));
  const double dy = (y1 - y0) / (n - 1);
  // Average over one fast period 2 pi e/a.
  const auto window = static_cast<std::size_t>(std::lround(2.0 * kPi * kE / 3.0 / dy));
  const auto m = signal::modulation_counts(v, window);
  const double target = modulation_ratio(3.0);
  return {std::abs(m.ratio / target - 1.0) < 0.15,
          fmt("fast %zu slow %zu ratio %.3f vs %.0f", m.fast, m.slow, m.ratio, target)};
}

Outcome identities() {
  std::mt19937_64 gen(7);
  const auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
  const int per = 200;
  int schwarz = 0, limits = 0, limits_reduced = 0, gamma = 0, comp = 0, half = 0;
  for (int i = 0; i < per; ++i) {
    const Complex t(u(-10.0, 10.0), u(-10.0, 10.0));
    const double a = u(0.3, 3.0);
    const Complex v = f_quadrature(EvalPoint(t, a)).value;
    const Complex w = f_quadrature(EvalPoint(std::conj(t), a)).value;
    schwarz += std::abs(w - std::conj(v)) <= 1e-10 * std::max(1.0, std::abs(v));

    const Complex s(u(-3.0, 3.0), u(-3.0, 3.0));
    const double lambda = u(0.5, 2.0);
    const Complex direct = f_limits_direct(s, lambda).value;
    const Complex reduced = f_quadrature(EvalPoint(lambda * s, lambda)).value;
    const double scale = std::max(1.0, std::abs(direct));
    limits += std::abs(direct - lambda * reduced) <= 1e-9 * scale;
    limits_reduced += std::abs(direct - reduced) <= 1e-9 * scale;

    const int n = 1 + static_cast<int>(gen() % 20);
    const double x = u(-5.0, 5.0);
    const double lhs = upper_gamma_int({n, x});
    const double rhs = n * upper_gamma_int({n - 1, x}) + std::pow(x, n) * std::exp(-x);
    gamma += std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs);

    const double r = u(-6.0, 6.0);
    comp += std::abs(erf(Complex(r, 0.0)).real() + erfc(Complex(r, 0.0)).real() - 1.0) < 1e-13;

    const double h = u(0.0, 20.0);
    const double alt = lower_gamma_half(h) * std::exp(h) / kSqrtPi;
    half += std::abs(half_derivative_exp(h) - alt) <= 1e-11 * std::max(1.0, alt);
  }
  const bool ok = schwarz == per && limits == per && gamma == per && comp == per && half == per;
  return {ok, fmt("reflection %d, F=lambda f(lambda t,lambda) %d, Gamma recurrence %d, "
                  "erf+erfc %d, half-derivative %d of %d each; F=f(lambda t,lambda) holds %d/%d",
                  schwarz, limits, gamma, comp, half, per, limits_reduced, per)};
}

Outcome negative_a() {
  const std::size_t n = 2001;
  const auto v = real_parts(signal::sample_segment({-20.0, 0.0}, {-1.0, 0.0}, n, -1.0));
  const double p = signal::crossing_period(linspace(-20.0, -1.0, n), v);
  return {std::abs(p - 2.0) <= 0.1, fmt("period %.4f", p)};
}

}  // namespace

int main() {
  criterion(1, "f(1,1) and |f(-1,1)|", 1.0, constants);
  criterion(2, "quarter-shift Laplace at t=1", 0.0, laplace_spot);
  criterion(3, "series vs quadrature", 30.0, oracle_equivalence);
  criterion(4, "small-a erfc accuracy", 0.0, small_a);
  criterion(5, "negative-t plateau", 0.0, plateau);
  criterion(6, "marginal limit a=1", 5.0, marginal);
  criterion(7, "zero spacing", 60.0, zeros);
  criterion(8, "period law", 0.0, period_law);
  criterion(9, "modulation ratio", 0.0, modulation);
  criterion(10, "identity suite", 10.0, identities);
  criterion(11, "negative-a period", 0.0, negative_a);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures;
}
