#include "sdream/evaluators.hpp"

#include <quadmath.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sdream/detail/incomplete_gamma.hpp"

namespace sdream {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) fail(ErrorKind::Domain, "rel_tol must be > 0");
  if (!(abs_tol > 0.0)) fail(ErrorKind::Domain, "abs_tol must be > 0");
  if (max_subdivisions < 1) fail(ErrorKind::Domain, "max_subdivisions must be >= 1");
  if (max_panels < 1) fail(ErrorKind::Domain, "max_panels must be >= 1");
}

EvalPoint::EvalPoint(Complex t, double a) : t_(t), a_(a) {
  if (a == 0.0) fail(ErrorKind::Domain, "scale a must be nonzero");
  if (!std::isfinite(a) || !std::isfinite(t.real()) || !std::isfinite(t.imag())) {
    fail(ErrorKind::Domain, "arguments must be finite");
  }
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Series: return "series";
    case Method::SeriesGeneral: return "series_general";
    case Method::SeriesShifted: return "series_shifted";
    case Method::Quadrature: return "quadrature";
    case Method::Tilde: return "tilde";
    case Method::Limits: return "limits";
  }
  return "unknown";
}

namespace {

constexpr double kTermTol = 1e-16;
constexpr int kBaseTermCap = 500;

// The fixed cap of 500 terms cannot cover |t| near 1e3, where terms keep
// growing until n ~ e|t|; the cap is raised to clear that peak.
int term_cap(double guard) {
  return std::max(kBaseTermCap, static_cast<int>(std::ceil(guard)) + 100);
}

void check_finite(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    fail(ErrorKind::Overflow, std::string(what) + " overflowed");
  }
}

MethodResult finish_series(Complex sum, double max_term, double last_term, int n, Method m) {
  check_finite(sum, "series");
  MethodResult r;
  r.value = sum;
  r.method = m;
  r.terms = n;
  const double mag = std::abs(sum);
  r.err_estimate = last_term + max_term * 1e-16 * std::sqrt(static_cast<double>(n));
  r.condition_flag = max_term > kCancellationLimit * mag;
  return r;
}

// ---- binary128 helpers for the incomplete-gamma series ----

using Quad = __float128;

struct QuadOps {
  static Quad exp(Quad v) { return expq(v); }
  static Quad log(Quad v) { return logq(v); }
  static Quad lgamma(Quad v) { return lgammaq(v); }
};

struct QComplex {
  Quad re = 0;
  Quad im = 0;
};

QComplex operator*(QComplex x, QComplex y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
QComplex operator*(QComplex x, Quad s) { return {x.re * s, x.im * s}; }
QComplex operator+(QComplex x, QComplex y) { return {x.re + y.re, x.im + y.im}; }
double magnitude(QComplex x) { return std::hypot(static_cast<double>(x.re), static_cast<double>(x.im)); }

}  // namespace

MethodResult f_series(Complex t) {
  const double guard = kE * std::abs(t);
  const int cap = term_cap(guard);
  Complex term = t;
  Complex sum = t;
  double max_term = std::abs(t);
  double max_partial = std::abs(sum);
  if (t == Complex(0.0, 0.0)) return finish_series(sum, 0.0, 0.0, 1, Method::Series);
  for (int n = 2; n <= cap; ++n) {
    // t^n/n^n from t^{n-1}/(n-1)^{n-1}: multiply by (t/n) (1 - 1/n)^{n-1}.
    term *= t / static_cast<double>(n) *
            std::exp(static_cast<double>(n - 1) * std::log1p(-1.0 / n));
    sum += term;
    const double mt = std::abs(term);
    max_term = std::max(max_term, mt);
    max_partial = std::max(max_partial, std::abs(sum));
    if (n > guard && mt < kTermTol * max_partial) {
      return finish_series(sum, max_term, mt, n, Method::Series);
    }
  }
  fail(ErrorKind::NoConvergence, "power series hit its term cap");
}

MethodResult f_series_general(const EvalPoint& p) {
  const double a = p.a();
  if (a <= 0.0) fail(ErrorKind::Domain, "incomplete-gamma series needs a > 0");
  const Complex t = p.t();
  if (t == Complex(0.0, 0.0)) return finish_series({}, 0.0, 0.0, 1, Method::SeriesGeneral);

  // Sum over m = n+1 >= 1 of u^m/m^m Q(m-1, -m ln a), u = t/a. For a > 1 the
  // Q factors grow like e^{m ln a} and the alternating sum cancels, so terms
  // and the incomplete gamma run in binary128.
  const Quad qa = a;
  const Quad c = logq(qa);
  const QComplex u{static_cast<Quad>(t.real()) / qa, static_cast<Quad>(t.imag()) / qa};
  const double cd = static_cast<double>(c);
  const double growth = cd > 0.0 ? std::max(1.0, cd * std::exp(1.0 + cd)) : 1.0;
  const double guard = kE * std::abs(t / a) * growth;
  const int cap = term_cap(guard);
  const Quad q_eps = 1e-30;

  QComplex power = u;  // u^m / m^m
  QComplex sum{};
  double max_term = 0.0;
  double max_partial = 0.0;
  for (int m = 1; m <= cap; ++m) {
    if (m > 1) {
      const Quad mq = m;
      power = power * u * (expq(static_cast<Quad>(m - 1) * log1pq(-1 / mq)) / mq);
    }
    const Quad q = detail::regularized_upper_gamma<Quad, QuadOps>(m - 1, -static_cast<Quad>(m) * c, q_eps);
    const QComplex term = power * q;
    sum = sum + term;
    const double mt = magnitude(term);
    if (!std::isfinite(mt)) fail(ErrorKind::Overflow, "incomplete-gamma series overflowed");
    max_term = std::max(max_term, mt);
    max_partial = std::max(max_partial, magnitude(sum));
    if (m > guard && mt < kTermTol * max_partial) {
      const Complex value(static_cast<double>(sum.re), static_cast<double>(sum.im));
      MethodResult r = finish_series(value, max_term, mt, m, Method::SeriesGeneral);
      // Cancellation is absorbed by the extended precision.
      r.err_estimate = mt + max_term * 1e-32 * m + 1e-16 * std::abs(value);
      return r;
    }
  }
  fail(ErrorKind::NoConvergence, "incomplete-gamma series hit its term cap");
}

MethodResult f_series_shifted(Complex t, double d) {
  if (!(d > -1.0)) fail(ErrorKind::Domain, "shift d must be > -1");
  const double guard = kE * std::abs(t);
  const int cap = term_cap(guard);
  Complex term = 1.0 / (1.0 + d);
  Complex sum = term;
  double max_term = std::abs(term);
  double max_partial = max_term;
  for (int n = 2; n <= cap; ++n) {
    const double nd = n + d;
    term *= t / nd * std::exp(static_cast<double>(n - 1) * std::log1p(-1.0 / nd));
    sum += term;
    const double mt = std::abs(term);
    max_term = std::max(max_term, mt);
    max_partial = std::max(max_partial, std::abs(sum));
    if (n > guard && mt < kTermTol * max_partial) {
      return finish_series(sum, max_term, mt, n, Method::SeriesShifted);
    }
  }
  fail(ErrorKind::NoConvergence, "shifted series hit its term cap");
}

namespace {

constexpr double kSplit = 0.5;

struct Pair {
  Complex f{};
  Complex d{};
};
Pair operator+(Pair x, Pair y) { return {x.f + y.f, x.d + y.d}; }
Pair operator-(Pair x, Pair y) { return {x.f - y.f, x.d - y.d}; }
Pair operator*(Pair x, double s) { return {x.f * s, x.d * s}; }
double magnitude(const Pair& p) { return std::max(std::abs(p.f), std::abs(p.d)); }

// Integration variable s: s <= 0 maps to x = e^{-(ln 2 - s)} covering (0, 1/2],
// s >= 1 maps to x = 1 - e^{-(ln 2 + s - 1)} covering [1/2, 1). Both ends carry
// boundary layers of width ~1/|t|, which become O(1) wide in these variables.
struct ExponentMap {
  Complex t;
  Complex shift;  // log(a x) - ln x

  struct Sample {
    Complex exponent;  // -t x log(ax)
    double log_jacobian;
  };

  Sample at(double s) const {
    if (s < kSplit) {
      const double y = std::log(2.0) - s;
      const double x = std::exp(-y);
      return {-t * x * (shift - y), -y};
    }
    const double z = std::log(2.0) + (s - 1.0);
    const double w = std::exp(-z);
    return {-t * (1.0 - w) * (std::log1p(-w) + shift), -z};
  }
};

std::array<Interval, 2> exponent_intervals(Complex t, double a) {
  const double span = 45.0 + std::log1p(std::abs(t)) + 2.0 * std::abs(std::log(std::abs(a)));
  return {Interval{std::log(2.0) - span, 0.0}, Interval{1.0, 1.0 + span - std::log(2.0)}};
}

ExponentMap make_map(const EvalPoint& p) {
  const double theta = p.a() < 0.0 ? -kPi : 0.0;
  return {p.t(), Complex(std::log(std::abs(p.a())), theta)};
}

Complex safe_exp(Complex e) {
  if (e.real() < -745.0) return {0.0, 0.0};
  return std::exp(e);
}

}  // namespace

MethodResult f_quadrature(const EvalPoint& p, const QuadratureConfig& cfg) {
  cfg.validate();
  MethodResult r;
  r.method = Method::Quadrature;
  const Complex t = p.t();
  if (t == Complex(0.0, 0.0)) return r;
  const ExponentMap map = make_map(p);
  const auto intervals = exponent_intervals(t, p.a());
  const auto integrand = [&](double s) -> Complex {
    const auto smp = map.at(s);
    return safe_exp(smp.exponent + smp.log_jacobian);
  };
  const Integral<Complex> in = integrate<Complex>(integrand, intervals, cfg);
  if (!in.converged) {
    fail(ErrorKind::ToleranceNotMet, "quadrature exhausted its subdivision budget");
  }
  r.value = t * in.value;
  r.err_estimate = std::abs(t) * in.error;
  r.terms = in.panels;
  r.condition_flag = in.abs_value > kCancellationLimit * std::abs(in.value);
  return r;
}

ValueAndSlope f_quadrature_with_slope(const EvalPoint& p, const QuadratureConfig& cfg) {
  cfg.validate();
  const Complex t = p.t();
  const ExponentMap map = make_map(p);
  const auto intervals = exponent_intervals(t, p.a());
  const auto integrand = [&](double s) -> Pair {
    const auto smp = map.at(s);
    const Complex w = safe_exp(smp.exponent + smp.log_jacobian);
    return {w, w * (1.0 + smp.exponent)};
  };
  const Integral<Pair> in = integrate<Pair>(integrand, intervals, cfg);
  if (!in.converged) {
    fail(ErrorKind::ToleranceNotMet, "quadrature exhausted its subdivision budget");
  }
  return {t * in.value.f, in.value.d, std::max(1.0, std::abs(t)) * in.error};
}

MethodResult f_tilde(const EvalPoint& p, const QuadratureConfig& cfg) {
  cfg.validate();
  const Complex t = p.t();
  const double a = p.a();
  if (!(t.real() > 0.0) || a <= 0.0) {
    fail(ErrorKind::Divergence, "integral over [1, inf) needs Re t > 0 and a > 0");
  }
  const double la = std::log(a);
  // x = 1 + u/(1-u) = 1/(1-u), dx = x^2 du.
  const auto integrand = [&](double u) -> Complex {
    const double x = 1.0 / (1.0 - u);
    const Complex e = -t * x * (std::log(x) + la) + 2.0 * std::log(x);
    return safe_exp(e);
  };
  const std::array<Interval, 1> iv{Interval{0.0, 1.0}};
  const Integral<Complex> in = integrate<Complex>(integrand, iv, cfg);
  if (!in.converged) {
    fail(ErrorKind::ToleranceNotMet, "quadrature exhausted its subdivision budget");
  }
  MethodResult r;
  r.method = Method::Tilde;
  r.value = t * in.value;
  r.err_estimate = std::abs(t) * in.error;
  r.terms = in.panels;
  r.condition_flag = in.abs_value > kCancellationLimit * std::abs(in.value);
  return r;
}

MethodResult f_limits(Complex t, double lambda, const QuadratureConfig& cfg) {
  if (!(lambda > 0.0)) fail(ErrorKind::Domain, "lambda must be > 0");
  MethodResult r = f_quadrature(EvalPoint(lambda * t, lambda), cfg);
  r.method = Method::Limits;
  return r;
}

MethodResult f_limits_direct(Complex t, double lambda, const QuadratureConfig& cfg) {
  if (!(lambda > 0.0)) fail(ErrorKind::Domain, "lambda must be > 0");
  cfg.validate();
  MethodResult r;
  r.method = Method::Limits;
  if (t == Complex(0.0, 0.0)) return r;
  const auto integrand = [&](double x) -> Complex { return safe_exp(-t * x * std::log(x)); };
  const std::array<Interval, 1> iv{Interval{0.0, lambda}};
  const Integral<Complex> in = integrate<Complex>(integrand, iv, cfg);
  if (!in.converged) {
    fail(ErrorKind::ToleranceNotMet, "quadrature exhausted its subdivision budget");
  }
  r.value = t * in.value;
  r.err_estimate = std::abs(t) * in.error;
  r.terms = in.panels;
  return r;
}

}  // namespace sdream
