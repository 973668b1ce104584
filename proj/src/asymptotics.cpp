#include "sdream/asymptotics.hpp"

#include <cmath>
#include <string>

#include "sdream/special_functions.hpp"

namespace sdream {

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::LargePosT: return "LargePosT";
    case RegimeTag::CriticalA: return "CriticalA";
    case RegimeTag::SmallA_PosT: return "SmallA_PosT";
    case RegimeTag::NegT_LargeA: return "NegT_LargeA";
    case RegimeTag::NegT_SmallA: return "NegT_SmallA";
    case RegimeTag::NegT_Marginal: return "NegT_Marginal";
    case RegimeTag::ComplexCalibrated: return "ComplexCalibrated";
    case RegimeTag::SmallT: return "SmallT";
  }
  return "unknown";
}

std::string_view to_string(FormulaId id) {
  switch (id) {
    case FormulaId::HalfDerivative: return "half_derivative";
    case FormulaId::Laplace: return "laplace";
    case FormulaId::LaplaceSecondOrder: return "laplace_second_order";
    case FormulaId::LaplaceQuarterShift: return "laplace_corrected";
    case FormulaId::InterpErf: return "interp_erf";
    case FormulaId::Critical: return "critical";
    case FormulaId::SmallAErfc: return "small_a";
    case FormulaId::SmallAExpansion: return "small_a_expansion";
    case FormulaId::TildeErfc: return "tilde_erfc";
    case FormulaId::NegTErfi: return "neg_t_erfi";
    case FormulaId::NegTLog: return "neg_t_log";
    case FormulaId::NegTCombined: return "neg_t_combined";
    case FormulaId::NegTSaddle: return "neg_t_saddle";
    case FormulaId::Calibrated: return "calibrated";
    case FormulaId::Weierstrass: return "weierstrass";
    case FormulaId::PowerLaw: return "power_law";
  }
  return "unknown";
}

namespace {

ApproxValue make(Complex v, RegimeTag r, FormulaId f) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    fail(ErrorKind::Overflow, std::string(to_string(f)) + " approximation overflowed");
  }
  return {v, r, f};
}

double positive_a(const EvalPoint& p) {
  if (!(p.a() > 0.0)) fail(ErrorKind::Domain, "approximation needs a > 0");
  return p.a();
}

bool is_real(Complex t) { return t.imag() == 0.0; }

// erfi(z) e^{-z^2}, kept finite for real z of any size.
Complex erfi_damped(Complex z) {
  if (is_real(z)) return detail::erfi_scaled(z.real());
  const Complex w(-z.imag(), z.real());  // i z
  return Complex(0.0, -1.0) * (std::exp(-z * z) - detail::erfcx(w));
}

}  // namespace

ApproxValue approx_half_derivative(Complex t) {
  return make(phi(t / kE) * std::exp(t / kE), RegimeTag::SmallT, FormulaId::HalfDerivative);
}

ApproxValue approx_laplace(const EvalPoint& p) {
  const double a = positive_a(p);
  const Complex u = p.t() / (kE * a);
  return make(std::sqrt(2.0 * kPi * u) * std::exp(u), RegimeTag::LargePosT, FormulaId::Laplace);
}

ApproxValue approx_laplace_corrected(Complex t) {
  return make(std::sqrt(2.0 * kPi * (t - 0.25) / kE) * std::exp(t / kE), RegimeTag::LargePosT,
              FormulaId::LaplaceQuarterShift);
}

ApproxValue approx_laplace_second_order(Complex t) {
  if (t == Complex(0.0, 0.0)) fail(ErrorKind::Domain, "second-order Laplace form needs t != 0");
  return make(std::sqrt(2.0 * kPi * t / kE) * (1.0 - kE / (24.0 * t)) * std::exp(t / kE),
              RegimeTag::LargePosT, FormulaId::LaplaceSecondOrder);
}

ApproxValue approx_interp_erf(const EvalPoint& p) {
  const double a = positive_a(p);
  const Complex t = p.t();
  if (is_real(t) && t.real() < 0.0) {
    // phi(-s) = -sqrt(2 pi s) erfi(sqrt s); fold e^{s} into the scaled erfi.
    const double s = -t.real() * a / kE;
    const double log_scale = s + t.real() / (kE * a);
    const double v = -std::sqrt(2.0 * kPi * s) * detail::erfi_scaled(std::sqrt(s)) *
                     std::exp(log_scale) / a;
    return make(v, RegimeTag::SmallT, FormulaId::InterpErf);
  }
  return make(phi(t * a / kE) * std::exp(t / (kE * a)) / a, RegimeTag::SmallT,
              FormulaId::InterpErf);
}

ApproxValue approx_critical(double t) {
  if (!(t > 0.0)) fail(ErrorKind::Domain, "critical form needs t > 0");
  return make(std::sqrt(kPi * t / 2.0) * std::exp(t), RegimeTag::CriticalA, FormulaId::Critical);
}

ApproxValue approx_small_a(const EvalPoint& p) {
  const double a = positive_a(p);
  const Complex t = p.t();
  if (!(t.real() > 0.0)) fail(ErrorKind::Domain, "erfc form needs Re t > 0");
  const double L = 1.0 + std::log(a);
  const Complex root = std::sqrt(t / 2.0);
  const Complex v = std::sqrt(kPi * t / 2.0) * std::exp(-t * std::log(a)) * detail::erfcx(-L * root);
  return make(v, RegimeTag::SmallA_PosT, FormulaId::SmallAErfc);
}

ApproxValue approx_small_a_expansion(const EvalPoint& p) {
  const double a = positive_a(p);
  const Complex t = p.t();
  const double L = 1.0 + std::log(a);
  if (std::abs(L) < 1e-8) fail(ErrorKind::DegenerateSaddle, "1 + ln a vanishes at a = 1/e");
  if (t == Complex(0.0, 0.0)) fail(ErrorKind::Domain, "expansion needs t != 0");
  const Complex v = -std::exp(-t * std::log(a)) * (1.0 - 1.0 / (2.0 * L * L * t)) / L;
  return make(v, RegimeTag::SmallA_PosT, FormulaId::SmallAExpansion);
}

ApproxValue approx_f_tilde(const EvalPoint& p) {
  const double a = positive_a(p);
  const Complex t = p.t();
  if (!(t.real() > 0.0)) fail(ErrorKind::Divergence, "integral over [1, inf) needs Re t > 0");
  const double L = 1.0 + std::log(a);
  const Complex v = std::sqrt(kPi * t / 2.0) * std::exp(-t * std::log(a)) *
                    detail::erfcx(L * std::sqrt(t / 2.0));
  return make(v, RegimeTag::LargePosT, FormulaId::TildeErfc);
}

ApproxValue approx_neg_t_erfi(const EvalPoint& p) {
  const double a = positive_a(p);
  const Complex t = p.t();
  if (!(t.real() < 0.0)) fail(ErrorKind::Domain, "erfi form needs Re t < 0");
  const double L = 1.0 + std::log(a);
  const Complex z = -L * std::sqrt(-t / 2.0);
  const Complex v = std::sqrt(-kPi * t / 2.0) * std::exp(-t * std::log(a)) * erfi_damped(z);
  const RegimeTag r = a > 1.0 ? RegimeTag::NegT_LargeA : RegimeTag::NegT_SmallA;
  return make(is_real(t) ? Complex(v.real(), 0.0) : v, r, FormulaId::NegTErfi);
}

SaddleSolution solve_saddle(double t, double a) {
  if (!(t < 0.0) || !(a > 0.0)) fail(ErrorKind::Domain, "saddle equation needs t < 0 and a > 0");
  const double s = -t;
  const double ratio = s / a;
  if (!(ratio > kE)) fail(ErrorKind::Domain, "seed needs -t/a > e");
  const double L = 1.0 + std::log(a);
  SaddleSolution out;
  out.seed = std::log(s) + std::log(std::log(ratio) - 1.0);
  // With w = y - L the equation reads ln w - w = ln(a e/s); the seed lies on
  // the branch w >= 1, which exists only for s/a >= e^2.
  const double target = std::log(a * kE / s);
  if (target > -1.0 + 1e-15) {
    fail(ErrorKind::NoConvergence, "saddle equation has no real root for -t/a < e^2");
  }
  const auto residual = [&](double w) { return s * std::exp(-(w + L)) * w - 1.0; };
  double w = std::max(out.seed - L, 1.0 + 1e-3);
  for (int it = 1; it <= 100; ++it) {
    const double h = std::log(w) - w - target;
    const double dh = 1.0 / w - 1.0;
    double next = w - h / dh;
    if (!(next > 1.0)) next = 0.5 * (w + 1.0);
    const double step = next - w;
    w = next;
    out.iterations = it;
    if (std::abs(residual(w)) < 1e-14 || std::abs(step) < 1e-15 * w) break;
  }
  out.y = w + L;
  out.residual = std::abs(residual(w));
  if (!(out.residual < 1e-12)) fail(ErrorKind::NoConvergence, "saddle iteration stalled");
  return out;
}

ApproxValue approx_neg_t_log(const EvalPoint& p) {
  const double a = positive_a(p);
  const Complex t = p.t();
  if (!(t.real() < 0.0)) fail(ErrorKind::Domain, "log form needs Re t < 0");
  const Complex ratio = -t / a;
  if (!(std::abs(ratio) > kE)) fail(ErrorKind::Domain, "log form needs -t/a > e");
  const Complex lr = std::log(ratio);
  const Complex v = -1.0 / (lr + std::log(lr - 1.0));
  const RegimeTag r = a > 1.0 ? RegimeTag::NegT_LargeA : RegimeTag::NegT_SmallA;
  return make(v, r, FormulaId::NegTLog);
}

ApproxValue approx_neg_t_combined(const EvalPoint& p) {
  const ApproxValue f1 = approx_neg_t_erfi(p);
  const ApproxValue f2 = approx_neg_t_log(p);
  return make(f1.value + f2.value, f1.regime, FormulaId::NegTCombined);
}

ApproxValue approx_neg_t_saddle(const EvalPoint& p) {
  const double a = positive_a(p);
  const Complex t = p.t();
  if (!is_real(t)) fail(ErrorKind::Domain, "saddle form needs real t");
  const SaddleSolution sol = solve_saddle(t.real(), a);
  const double K = sol.y - std::log(a);
  const double v = std::expm1(t.real() * K) / K;
  const RegimeTag r = a > 1.0 ? RegimeTag::NegT_LargeA : RegimeTag::NegT_SmallA;
  return make(v, r, FormulaId::NegTSaddle);
}

ApproxValue approx_calibrated_complex(const EvalPoint& p) {
  const double a = positive_a(p);
  if (!(a > 0.5)) fail(ErrorKind::Domain, "calibrated form needs a > 1/2");
  const double shift = 1.0 + kFrequencyShift * (a - 4.0);
  if (std::abs(shift) < 1e-6) fail(ErrorKind::Domain, "calibrated shift factor has a pole here");
  const Complex t = p.t();
  const Complex v = std::sqrt(2.0 * kPi * t / (kE * a)) * erf(std::sqrt(t * a / kE)) *
                    std::exp(t / (kE * a) / shift);
  return make(v, RegimeTag::ComplexCalibrated, FormulaId::Calibrated);
}

double modulation_ratio(double a) {
  if (!(a > 0.5)) fail(ErrorKind::Domain, "modulation ratio needs a > 1/2");
  return a * a;
}

double beat_frequency(double a) {
  if (!(a > 0.0)) fail(ErrorKind::Domain, "beat frequency needs a > 0");
  return (a - 1.0 / a) / kE;
}

double oscillation_period(double a) {
  if (!(a > 0.0)) fail(ErrorKind::Domain, "oscillation period needs a > 0");
  if (a < kInvE) return 2.0 * kPi / std::log(1.0 / a);
  return 2.0 * kPi * kE / a;
}

ApproxValue approx_weierstrass(Complex t) {
  const Complex h = t / (2.0 * kE);
  return make(std::exp(h) * std::sinh(h), RegimeTag::SmallT, FormulaId::Weierstrass);
}

ApproxValue approx_power_law(const EvalPoint& p) {
  const double a = positive_a(p);
  return make(std::exp(-p.t() * std::log(a)), RegimeTag::SmallA_PosT, FormulaId::PowerLaw);
}

Regime select_regime(const EvalPoint& p, const RegimeThresholds& th) {
  const double a = positive_a(p);
  const Complex t = p.t();
  const auto pick = [&](RegimeTag tag) { return Regime{tag, th}; };
  if (std::abs(t) <= th.small_t) return pick(RegimeTag::SmallT);
  if (std::abs(a - kInvE) < th.critical_window && t.real() > 0.0) return pick(RegimeTag::CriticalA);
  if (t.real() > th.large_t && a > kInvE) return pick(RegimeTag::LargePosT);
  if (a < kInvE && t.real() > th.small_a_t) return pick(RegimeTag::SmallA_PosT);
  // Below -large_t every a is covered; between -large_t and -small_t only
  // where f1 (a > 1) or f1 + f2 (saddle root exists) is accurate.
  const double ratio = -t.real() / a;
  const bool neg_near = t.real() < -th.small_t &&
                        (a > 1.0 + th.marginal_window || (a < 1.0 && ratio >= th.log_form_min_ratio));
  if (t.real() < -th.large_t || neg_near) {
    if (std::abs(a - 1.0) < th.marginal_window) return pick(RegimeTag::NegT_Marginal);
    return pick(a > 1.0 ? RegimeTag::NegT_LargeA : RegimeTag::NegT_SmallA);
  }
  if (std::abs(t.imag()) > th.complex_im && a > th.complex_min_a) {
    return pick(RegimeTag::ComplexCalibrated);
  }
  return pick(RegimeTag::SmallT);
}

ApproxValue approx_auto(const EvalPoint& p, const RegimeThresholds& th) {
  const Regime r = select_regime(p, th);
  const Complex t = p.t();
  const double a = p.a();
  const auto tagged = [&](ApproxValue v) {
    v.regime = r.tag;
    return v;
  };
  switch (r.tag) {
    case RegimeTag::SmallT:
      return tagged(approx_interp_erf(p));
    case RegimeTag::CriticalA:
    case RegimeTag::SmallA_PosT:
      return tagged(approx_small_a(p));
    case RegimeTag::LargePosT: {
      // Leading behavior depends on t/a only.
      return tagged(approx_laplace_corrected(t / a));
    }
    case RegimeTag::NegT_Marginal:
    case RegimeTag::NegT_LargeA:
    case RegimeTag::NegT_SmallA: {
      if (std::abs(t / a) >= th.log_form_min_ratio) return tagged(approx_neg_t_combined(p));
      return tagged(approx_neg_t_erfi(p));
    }
    case RegimeTag::ComplexCalibrated:
      return tagged(approx_calibrated_complex(p));
  }
  return tagged(approx_interp_erf(p));
}

}  // namespace sdream
