#include "sdream/special_functions.hpp"

#include <cmath>
#include <limits>

#include "sdream/detail/incomplete_gamma.hpp"

namespace sdream {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::NoConvergence: return "no_convergence";
    case ErrorKind::ToleranceNotMet: return "tolerance_not_met";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::DegenerateSaddle: return "degenerate_saddle";
    case ErrorKind::WrongBasin: return "wrong_basin";
  }
  return "unknown";
}

namespace {

constexpr double kMaclaurinRadius = 4.0;
constexpr double kContinuedFractionRadius = 2.0;
constexpr double kLogMaxDouble = 709.782712893384;

struct LongDoubleOps {
  static long double exp(long double v) { return std::exp(v); }
  static long double log(long double v) { return std::log(v); }
  static long double lgamma(long double v) { return std::lgamma(v); }
};

// Modified Lentz evaluation of z + (1/2)/(z + 1/(z + (3/2)/(z + ...))).
// Returns its reciprocal, i.e. sqrt(pi) e^{z^2} erfc(z) for Re z > 0.
template <class T>
T laplace_fraction(T z) {
  constexpr double tiny = 1e-300;
  T f = z;
  T c = z;
  T d = 0.0;
  for (int k = 1; k < 50000; ++k) {
    const double ak = 0.5 * k;
    d = z + ak * d;
    if (std::abs(d) == 0.0) d = tiny;
    d = 1.0 / d;
    c = z + ak / c;
    if (std::abs(c) == 0.0) c = tiny;
    const T delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return 1.0 / f;
  }
  fail(ErrorKind::NoConvergence, "erfc continued fraction did not converge");
}

bool in_fraction_sector(Complex z) {
  return z.real() >= std::abs(z.imag()) && std::abs(z) >= kContinuedFractionRadius;
}

}  // namespace

namespace detail {

Complex erf_maclaurin(Complex z) {
  using LC = std::complex<long double>;
  const LC w(z.real(), z.imag());
  const LC w2 = w * w;
  const long double r2 = std::abs(w2);
  LC term = w;
  LC sum = w;
  for (int n = 1; n < 1000; ++n) {
    term *= -w2 / static_cast<long double>(n);
    const LC c = term / static_cast<long double>(2 * n + 1);
    sum += c;
    if (n > r2 && std::abs(c) <= 1e-21L * std::abs(sum)) break;
  }
  return kTwoOverSqrtPi * Complex(static_cast<double>(sum.real()),
                                  static_cast<double>(sum.imag()));
}

Complex erfc_continued_fraction(Complex z) {
  if (!(z.real() > 0.0)) fail(ErrorKind::Domain, "continued fraction needs Re z > 0");
  return std::exp(-z * z) * laplace_fraction(z) / kSqrtPi;
}

// Real-function expansion of erf(x+iy) (Abramowitz & Stegun 7.1.29). Every
// exponential is folded so that no intermediate exceeds the result's scale.
Complex erf_real_expansion(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double x2 = x * x;
  const double c2 = std::cos(2.0 * x * y);
  const double s2 = std::sin(2.0 * x * y);

  double re = std::erf(x);
  double im = 0.0;
  if (x != 0.0) {
    const double ex2 = std::exp(-x2);
    const double sxy = std::sin(x * y);
    re += ex2 * sxy * sxy / (kPi * x);
    im += ex2 * s2 / (2.0 * kPi * x);
  } else {
    im += y / kPi;
  }

  double sr = 0.0;
  double si = 0.0;
  const int n_max = static_cast<int>(std::ceil(2.0 * std::abs(y) + 16.0));
  for (int n = 1; n <= n_max; ++n) {
    const double nd = n;
    const double base = -0.25 * nd * nd - x2;
    const double ep = std::exp(base + nd * y);
    const double em = std::exp(base - nd * y);
    const double ch = 0.5 * (ep + em);
    const double sh = 0.5 * (ep - em);
    const double g0 = std::exp(base);
    const double denom = nd * nd + 4.0 * x2;
    sr += (2.0 * x * g0 - 2.0 * x * ch * c2 + nd * sh * s2) / denom;
    si += (2.0 * x * ch * s2 + nd * sh * c2) / denom;
  }
  re += 2.0 / kPi * sr;
  im += 2.0 / kPi * si;
  return {re, im};
}

double erfcx(double x) {
  if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
  if (x >= kContinuedFractionRadius) return laplace_fraction(x) / kSqrtPi;
  return std::exp(x * x) * std::erfc(x);
}

Complex erfcx(Complex z) {
  if (z.imag() == 0.0) return erfcx(z.real());
  if (z.real() < 0.0) return 2.0 * std::exp(z * z) - erfcx(-z);
  if (in_fraction_sector(z)) return laplace_fraction(z) / kSqrtPi;
  return std::exp(z * z) * sdream::erfc(z);
}

double erfi_scaled(double x) {
  double sum = x * std::exp(-x * x);
  const int n_max = static_cast<int>(std::ceil(2.0 * std::abs(x) + 16.0));
  for (int n = 1; n <= n_max; ++n) {
    const double h = 0.5 * n;
    sum += (std::exp(-(h - x) * (h - x)) - std::exp(-(h + x) * (h + x))) / n;
  }
  return sum / kPi;
}

}  // namespace detail

Complex erf(Complex z) {
  if (z.imag() == 0.0) return {std::erf(z.real()), 0.0};
  if (std::abs(z) <= kMaclaurinRadius) return detail::erf_maclaurin(z);
  const bool flip = z.real() < 0.0;
  const Complex w = flip ? -z : z;
  const Complex r = w.real() >= std::abs(w.imag())
                        ? 1.0 - detail::erfc_continued_fraction(w)
                        : detail::erf_real_expansion(w);
  return flip ? -r : r;
}

Complex erfc(Complex z) {
  if (z.imag() == 0.0) return {std::erfc(z.real()), 0.0};
  if (z.real() < 0.0) return 2.0 - erfc(-z);
  if (in_fraction_sector(z)) return detail::erfc_continued_fraction(z);
  return 1.0 - erf(z);
}

double erfi(double x) {
  if (std::abs(x) <= 5.0) {
    // All terms positive: 2/sqrt(pi) sum x^{2n+1} / (n! (2n+1)).
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 500; ++n) {
      term *= x2 / n;
      const double c = term / (2 * n + 1);
      sum += c;
      if (std::abs(c) <= 1e-17 * std::abs(sum)) break;
    }
    return kTwoOverSqrtPi * sum;
  }
  const double scaled = detail::erfi_scaled(x);
  if (x * x + std::log(std::abs(scaled)) >= kLogMaxDouble) {
    fail(ErrorKind::Overflow, "erfi(x) overflows for |x| = " + std::to_string(std::abs(x)));
  }
  return scaled * std::exp(x * x);
}

double lower_gamma_half(double x) {
  if (x < 0.0) fail(ErrorKind::Domain, "lower_gamma_half requires x >= 0");
  return kSqrtPi * std::erf(std::sqrt(x));
}

double upper_gamma_int_regularized(GammaArgs args) {
  if (args.order < 0) fail(ErrorKind::Domain, "incomplete gamma order must be >= 0");
  if (!std::isfinite(args.cutoff)) fail(ErrorKind::Domain, "incomplete gamma cutoff must be finite");
  const long double q = detail::regularized_upper_gamma<long double, LongDoubleOps>(
      args.order, static_cast<long double>(args.cutoff), 1e-22L);
  const double out = static_cast<double>(q);
  if (!std::isfinite(out)) {
    fail(ErrorKind::Overflow, "regularized incomplete gamma overflows");
  }
  return out;
}

double upper_gamma_int(GammaArgs args) {
  const long double q = upper_gamma_int_regularized(args);
  const long double fact = std::tgamma(static_cast<long double>(args.order) + 1.0L);
  const double out = static_cast<double>(fact * q);
  if (!std::isfinite(out)) {
    fail(ErrorKind::Overflow, "Gamma(n+1, x) overflows for n = " + std::to_string(args.order));
  }
  return out;
}

double half_derivative_exp(double x) {
  if (x < 0.0) fail(ErrorKind::Domain, "half_derivative_exp requires x >= 0");
  if (x >= kLogMaxDouble) fail(ErrorKind::Overflow, "half_derivative_exp overflows");
  return std::erf(std::sqrt(x)) * std::exp(x);
}

Complex phi(Complex z) {
  if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
  return std::sqrt(2.0 * kPi * z) * erf(std::sqrt(z));
}

}  // namespace sdream
