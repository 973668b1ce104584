#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sdream {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kE = std::numbers::e;
inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kTwoOverSqrtPi = std::numbers::inv_sqrtpi * 2.0;
inline constexpr double kInvE = 1.0 / std::numbers::e;

/// Slope of the half-derivative approximation at the origin, 2^{3/2}/e ~ 1.04.
inline constexpr double kSmallTSlope = 2.0 * std::numbers::sqrt2 / std::numbers::e;

enum class ErrorKind {
  Domain,
  Overflow,
  NoConvergence,
  ToleranceNotMet,
  Divergence,
  DegenerateSaddle,
  WrongBasin,
};

const char* to_string(ErrorKind kind);

/// Every numerical failure in the library is reported through this type.
class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw NumericError(kind, what);
}

}  // namespace sdream
