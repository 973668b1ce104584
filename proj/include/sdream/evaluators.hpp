#pragma once

// Reference evaluation of f(t,a) = t \int_0^1 (a x)^{-t x} dx and its
// relatives by convergent series and adaptive quadrature.

#include <string_view>

#include "sdream/core.hpp"
#include "sdream/quadrature.hpp"

namespace sdream {

/// Argument pair (t, a). The scale a must be nonzero; a < 0 selects the
/// branch log(a x) = ln|a x| - i pi.
class EvalPoint {
 public:
  EvalPoint(Complex t, double a);

  Complex t() const noexcept { return t_; }
  double a() const noexcept { return a_; }

 private:
  Complex t_;
  double a_;
};

enum class Method {
  Series,
  SeriesGeneral,
  SeriesShifted,
  Quadrature,
  Tilde,
  Limits,
};

std::string_view to_string(Method m);

struct MethodResult {
  Complex value{};
  Method method = Method::Quadrature;
  double err_estimate = 0.0;
  bool condition_flag = false;  // cancellation ratio above kCancellationLimit
  int terms = 0;                // series terms or quadrature panels
};

inline constexpr double kCancellationLimit = 1e12;

/// sum_{n>=1} t^n / n^n.
MethodResult f_series(Complex t);

/// (t/a) sum_{n>=0} (t/a)^n Gamma(n+1, -(n+1) ln a) / (n! (n+1)^{n+1}), a > 0.
MethodResult f_series_general(const EvalPoint& p);

/// sum_{n>=1} t^{n-1} / (n+d)^n, d > -1.
MethodResult f_series_shifted(Complex t, double d);

MethodResult f_quadrature(const EvalPoint& p, const QuadratureConfig& cfg = {});

/// f(t,a) together with df/dt = \int_0^1 (ax)^{-tx} (1 - t x log(ax)) dx.
struct ValueAndSlope {
  Complex value;
  Complex slope;
  double err_estimate;
};
ValueAndSlope f_quadrature_with_slope(const EvalPoint& p, const QuadratureConfig& cfg = {});

/// t \int_1^\infty (a x)^{-t x} dx for Re t > 0, a > 0.
MethodResult f_tilde(const EvalPoint& p, const QuadratureConfig& cfg = {});

/// F(t, lambda) = t \int_0^lambda x^{-t x} dx, reduced by x = lambda u to
/// f(lambda t, lambda).
MethodResult f_limits(Complex t, double lambda, const QuadratureConfig& cfg = {});

/// F(t, lambda) as the direct integral t \int_0^lambda x^{-t x} dx.
MethodResult f_limits_direct(Complex t, double lambda, const QuadratureConfig& cfg = {});

}  // namespace sdream
