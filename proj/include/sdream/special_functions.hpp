#pragma once

// Error-function family, integer-order incomplete gamma, and the
// half-derivative of the exponential. Real and complex arguments.

#include "sdream/core.hpp"

namespace sdream {

struct GammaArgs {
  int order = 0;        // n, evaluates Gamma(n+1, cutoff)
  double cutoff = 0.0;  // any sign
};

/// Complex error function. Maclaurin series inside |z| <= 4; outside, the
/// Laplace continued fraction near the real axis and a real-function
/// expansion near the imaginary axis.
Complex erf(Complex z);

Complex erfc(Complex z);

/// Imaginary error function -i erf(ix) for real x. Throws Overflow when
/// exp(x^2) is not representable.
double erfi(double x);

/// sqrt(pi) * erf(sqrt(x)), x >= 0.
double lower_gamma_half(double x);

/// Gamma(n+1, x) = n! e^{-x} sum_{k=0}^{n} x^k / k!.
double upper_gamma_int(GammaArgs args);

/// Gamma(n+1, x) / n!, finite for every n where the unregularized value
/// would overflow through n! alone.
double upper_gamma_int_regularized(GammaArgs args);

/// erf(sqrt(x)) * e^x, x >= 0.
double half_derivative_exp(double x);

/// sqrt(2 pi z) erf(sqrt(z)) on the principal branch. This is an entire
/// function of z with Taylor series
///   2^{3/2} sum_{n>=1} (-1)^{n-1} z^n / ((n-1)! (2n-1)),
/// so phi(t/e) ~ (2^{3/2}/e) t for small t.
Complex phi(Complex z);

namespace detail {

// Scaled complement e^{z^2} erfc(z).
Complex erfcx(Complex z);
double erfcx(double x);

// e^{-x^2} erfi(x) = 2 D(x) / sqrt(pi), D the Dawson integral.
double erfi_scaled(double x);

// Individual branches of the complex erf, exposed for overlap tests.
Complex erf_maclaurin(Complex z);
Complex erfc_continued_fraction(Complex z);  // requires Re z > 0
Complex erf_real_expansion(Complex z);

}  // namespace detail
}  // namespace sdream
