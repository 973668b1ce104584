#pragma once

// Closed-form approximations to f(t,a) and the regime table that picks one.
// L denotes 1 + ln a throughout; it vanishes at the crossover a = 1/e.

#include <string_view>

#include "sdream/core.hpp"
#include "sdream/evaluators.hpp"

namespace sdream {

enum class RegimeTag {
  LargePosT,
  CriticalA,
  SmallA_PosT,
  NegT_LargeA,
  NegT_SmallA,
  NegT_Marginal,
  ComplexCalibrated,
  SmallT,
};

std::string_view to_string(RegimeTag tag);

enum class FormulaId {
  HalfDerivative,
  Laplace,
  LaplaceSecondOrder,
  LaplaceQuarterShift,
  InterpErf,
  Critical,
  SmallAErfc,
  SmallAExpansion,
  TildeErfc,
  NegTErfi,
  NegTLog,
  NegTCombined,
  NegTSaddle,
  Calibrated,
  Weierstrass,
  PowerLaw,
};

std::string_view to_string(FormulaId id);

struct RegimeThresholds {
  double small_t = 2.0;            // |t| at or below: interpolation formula
  double large_t = 5.0;            // |Re t| above: asymptotic forms
  double small_a_t = 2.0;          // Re t above, for a < 1/e
  double critical_window = 0.02;   // |a - 1/e| below
  double marginal_window = 0.02;   // |a - 1| below, negative t
  double complex_im = 5.0;         // |Im t| above
  double complex_min_a = 0.5;
  double log_form_min_ratio = kE * kE;  // -t/a at which the saddle equation has a real root
};

struct Regime {
  RegimeTag tag = RegimeTag::SmallT;
  RegimeThresholds thresholds{};
};

struct ApproxValue {
  Complex value{};
  RegimeTag regime = RegimeTag::SmallT;
  FormulaId formula = FormulaId::InterpErf;
};

/// sqrt(2 pi t/e) erf(sqrt(t/e)) e^{t/e}.
ApproxValue approx_half_derivative(Complex t);

/// Leading Laplace value sqrt(2 pi t/(e a)) e^{t/(e a)}.
ApproxValue approx_laplace(const EvalPoint& p);

/// sqrt(2 pi (t - 1/4)/e) e^{t/e}.
ApproxValue approx_laplace_corrected(Complex t);
/// sqrt(2 pi t/e) (1 - e/(24 t)) e^{t/e}.
ApproxValue approx_laplace_second_order(Complex t);

/// phi(t a/e) e^{t/(e a)} / a.
ApproxValue approx_interp_erf(const EvalPoint& p);

/// sqrt(pi t/2) e^t, the half-Laplace value at a = 1/e.
ApproxValue approx_critical(double t);

/// sqrt(pi t/2) a^{-t} erfcx(-L sqrt(t/2)), finite through a = 1/e.
ApproxValue approx_small_a(const EvalPoint& p);
/// -a^{-t} (1 - 1/(2 L^2 t)) / L. Throws DegenerateSaddle when |L| < 1e-8.
ApproxValue approx_small_a_expansion(const EvalPoint& p);

/// sqrt(pi t/2) a^{-t} erfcx(L sqrt(t/2)) for the integral over [1, inf).
ApproxValue approx_f_tilde(const EvalPoint& p);

/// f1 = sqrt(-pi t/2) a^{-t} erfi(-L sqrt(-t/2)) e^{t L^2/2}, Re t < 0.
ApproxValue approx_neg_t_erfi(const EvalPoint& p);

struct SaddleSolution {
  double y = 0.0;
  double seed = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Root y* of t e^{-y} (L - y) = 1 on the branch continuing the seed
/// ln(-t) + ln(ln(-t/a) - 1). A real root needs -t/a >= e^2.
SaddleSolution solve_saddle(double t, double a);

/// f2 = -1/(ln(-t/a) + ln(ln(-t/a) - 1)); needs -t/a > e.
ApproxValue approx_neg_t_log(const EvalPoint& p);
/// f1 + f2.
ApproxValue approx_neg_t_combined(const EvalPoint& p);
/// (e^{t K} - 1)/K with K = y* - ln a from the exact saddle root.
ApproxValue approx_neg_t_saddle(const EvalPoint& p);

inline constexpr double kFrequencyShift = 1.047;

/// sqrt(2 pi t/(e a)) erf(sqrt(t a/e)) exp(t/(e a) / (1 + 1.047 (a - 4))), a > 1/2.
ApproxValue approx_calibrated_complex(const EvalPoint& p);

/// a^2.
double modulation_ratio(double a);
/// (a - 1/a)/e, about 2 delta/e at a = 1 + delta.
double beat_frequency(double a);
/// 2 pi/ln(1/a) for a < 1/e, 2 pi e/a otherwise.
double oscillation_period(double a);

/// e^{t/(2e)} sinh(t/(2e)); crude shape with zeros at 2 pi e n i.
ApproxValue approx_weierstrass(Complex t);

/// a^{-t}.
ApproxValue approx_power_law(const EvalPoint& p);

Regime select_regime(const EvalPoint& p, const RegimeThresholds& th = {});
ApproxValue approx_auto(const EvalPoint& p, const RegimeThresholds& th = {});

}  // namespace sdream
