#include <doctest.h>

#include <vector>

#include "sdream/asymptotics.hpp"
#include "support.hpp"

using namespace sdream;
using test::rel_diff;

TEST_CASE("closed forms at reference points") {
  CHECK(rel_diff(approx_laplace_corrected(10.0).value, 187.98582995771969) < 1e-13);
  CHECK(rel_diff(approx_laplace_corrected(1.0).value, 1.9021349973900011) < 1e-13);
  CHECK(rel_diff(approx_half_derivative(3.0).value, 6.8491465403122533) < 1e-13);
  CHECK(rel_diff(approx_laplace(EvalPoint(10.0, 2.0)).value, 21.392805957056763) < 1e-13);
  CHECK(rel_diff(approx_laplace_second_order(10.0).value, 188.22436602452007) < 1e-13);
  CHECK(rel_diff(approx_interp_erf(EvalPoint(3.0, 2.0)).value, 3.1180452023671092) < 1e-13);
  CHECK(rel_diff(approx_interp_erf(EvalPoint(-4.0, 1.5)).value, -4.128101096271095) < 1e-13);
  CHECK(rel_diff(approx_critical(7.0).value, 3636.3889705416364) < 1e-13);
  CHECK(rel_diff(approx_small_a(EvalPoint(30.0, 0.2)).value, 1.4173717730727048e+21) < 1e-12);
  CHECK(rel_diff(approx_small_a_expansion(EvalPoint(30.0, 0.2)).value, 1.4595922988268688e+21) <
        1e-12);
  CHECK(rel_diff(approx_f_tilde(EvalPoint(10.0, 2.0)).value, 0.00055846139980569023) < 1e-12);
  CHECK(rel_diff(approx_neg_t_erfi(EvalPoint(-20.0, 0.5)).value, -3.256575450574945e-6) < 1e-12);
  CHECK(rel_diff(approx_neg_t_erfi(EvalPoint(-20.0, 3.0)).value, -1681016049.2056961) < 1e-12);
  CHECK(rel_diff(approx_neg_t_log(EvalPoint(-1000.0, 0.5)).value, -0.10539508107835402) < 1e-13);
  CHECK(rel_diff(approx_neg_t_saddle(EvalPoint(-1000.0, 0.5)).value, -0.1023276740756227) < 1e-12);
  CHECK(rel_diff(approx_calibrated_complex(EvalPoint(Complex(2.0, 20.0), 2.0)).value,
                 {-3.0776176384072866, -1.777399436116576}) < 1e-12);
  CHECK(rel_diff(approx_weierstrass(Complex(3.0, 4.0)).value,
                 {-0.3505775461308181, 1.5001347084690197}) < 1e-13);
  CHECK(rel_diff(approx_power_law(EvalPoint(3.0, 0.5)).value, 8.0) < 1e-15);
}

TEST_CASE("formula tags") {
  CHECK(approx_small_a(EvalPoint(30.0, 0.2)).formula == FormulaId::SmallAErfc);
  CHECK(approx_neg_t_combined(EvalPoint(-50.0, 2.0)).formula == FormulaId::NegTCombined);
  CHECK(approx_neg_t_combined(EvalPoint(-50.0, 2.0)).regime == RegimeTag::NegT_LargeA);
  CHECK(to_string(RegimeTag::CriticalA) == "CriticalA");
  CHECK(to_string(FormulaId::LaplaceQuarterShift) == "laplace_corrected");
}

TEST_CASE("half-derivative form near t = 0") {
  for (double t : {1e-4, 1e-3, 1e-2}) {
    CAPTURE(t);
    CHECK(std::abs(approx_half_derivative(t).value.real() / t / kSmallTSlope - 1.0) < 0.02);
  }
}

TEST_CASE("erfc form is finite through a = 1/e") {
  const Complex at = approx_small_a(EvalPoint(20.0, kInvE)).value;
  const Complex below = approx_small_a(EvalPoint(20.0, kInvE * (1.0 - 1e-9))).value;
  const Complex above = approx_small_a(EvalPoint(20.0, kInvE * (1.0 + 1e-9))).value;
  CHECK(std::isfinite(at.real()));
  CHECK(rel_diff(below, at) < 1e-6);
  CHECK(rel_diff(above, at) < 1e-6);
  // At a = 1/e it reduces to the half-Laplace value.
  CHECK(rel_diff(at, approx_critical(20.0).value) < 1e-12);
  try {
    approx_small_a_expansion(EvalPoint(20.0, kInvE));
    FAIL("expected degenerate saddle");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateSaddle);
  }
}

TEST_CASE("small-a forms against quadrature") {
  for (double t : {20.0, 35.0, 50.0}) {
    const EvalPoint p(t, 0.2);
    const Complex ref = f_quadrature(p).value;
    CAPTURE(t);
    CHECK(rel_diff(approx_small_a(p).value, ref) < 0.12);
  }
  for (double a : {0.05, 0.1}) {
    const EvalPoint p(30.0, a);
    CHECK(rel_diff(approx_small_a(p).value, f_quadrature(p).value) < 0.05);
  }
  const EvalPoint q(10.0, 2.0);
  CHECK(rel_diff(approx_f_tilde(q).value, f_tilde(q).value) < 0.01);
}

TEST_CASE("large positive t") {
  CHECK(rel_diff(approx_laplace_corrected(30.0).value, f_series(30.0).value) < 0.005);
  double prev = 1.0;
  for (double t = 30.0; t <= 100.0; t += 10.0) {
    const double err = rel_diff(approx_laplace_corrected(t).value, f_series(t).value);
    CAPTURE(t);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("negative t") {
  const EvalPoint p(-1000.0, 0.5);
  const Complex ref = f_quadrature(p).value;
  CHECK(rel_diff(approx_neg_t_saddle(p).value, ref) < 0.05);
  CHECK(rel_diff(approx_neg_t_combined(EvalPoint(-50.0, 2.0)).value,
                 f_quadrature(EvalPoint(-50.0, 2.0)).value) < 0.02);
  CHECK(rel_diff(approx_neg_t_combined(EvalPoint(-10.0, 1.1)).value,
                 f_quadrature(EvalPoint(-10.0, 1.1)).value) < 0.05);
  CHECK(rel_diff(approx_neg_t_combined(EvalPoint(-15.0, 1.5)).value,
                 f_quadrature(EvalPoint(-15.0, 1.5)).value) < 0.05);
  CHECK_THROWS_AS(approx_neg_t_log(EvalPoint(-1.0, 1.0)), NumericError);
  CHECK_THROWS_AS(approx_neg_t_erfi(EvalPoint(1.0, 1.0)), NumericError);
}

TEST_CASE("saddle equation") {
  const SaddleSolution s = solve_saddle(-1000.0, 0.5);
  CHECK(std::abs(s.y - 9.0793802323173875) < 1e-11);
  CHECK(s.residual < 1e-12);
  CHECK(std::abs(s.seed - (std::log(1000.0) + std::log(std::log(2000.0) - 1.0))) < 1e-14);

  // Double root at -t/a = e^2.
  const SaddleSolution d = solve_saddle(-kE * kE, 1.0);
  CHECK(std::abs(d.y - 2.0) < 1e-6);

  try {
    solve_saddle(-5.0, 1.0);
    FAIL("expected no real root");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
  }
  CHECK_THROWS_AS(solve_saddle(-2.0, 1.0), NumericError);
  CHECK_THROWS_AS(solve_saddle(5.0, 1.0), NumericError);
}

TEST_CASE("oscillation constants") {
  CHECK(modulation_ratio(3.0) == 9.0);
  CHECK_THROWS_AS(modulation_ratio(0.4), NumericError);
  CHECK(oscillation_period(1.0) == doctest::Approx(2.0 * kPi * kE));
  CHECK(oscillation_period(0.25) == doctest::Approx(2.0 * kPi / std::log(4.0)));
  const double delta = 1e-4;
  CHECK(beat_frequency(1.0 + delta) == doctest::Approx(2.0 * delta / kE).epsilon(1e-3));
  CHECK(beat_frequency(1.0) == 0.0);
}

TEST_CASE("calibrated form") {
  // At a = 4 the shift factor is 1 and it coincides with the erf interpolation.
  const EvalPoint p(Complex(-3.0, 25.0), 4.0);
  CHECK(rel_diff(approx_calibrated_complex(p).value, approx_interp_erf(p).value) < 1e-13);
  CHECK_THROWS_AS(approx_calibrated_complex(EvalPoint(Complex(0.0, 10.0), 0.4)), NumericError);
  CHECK_THROWS_AS(approx_calibrated_complex(EvalPoint(Complex(0.0, 10.0), 4.0 - 1.0 / 1.047)),
                  NumericError);
}

TEST_CASE("regime table") {
  const auto tag = [](Complex t, double a) { return select_regime(EvalPoint(t, a)).tag; };
  CHECK(tag(1.5, 1.0) == RegimeTag::SmallT);
  CHECK(tag(-1.0, 0.1) == RegimeTag::SmallT);
  CHECK(tag(10.0, kInvE + 0.01) == RegimeTag::CriticalA);
  CHECK(tag(10.0, 1.0) == RegimeTag::LargePosT);
  CHECK(tag(3.0, 0.1) == RegimeTag::SmallA_PosT);
  CHECK(tag(-10.0, 2.0) == RegimeTag::NegT_LargeA);
  CHECK(tag(-10.0, 0.5) == RegimeTag::NegT_SmallA);
  CHECK(tag(-10.0, 1.01) == RegimeTag::NegT_Marginal);
  CHECK(tag(Complex(0.0, 20.0), 2.0) == RegimeTag::ComplexCalibrated);
  CHECK(tag(Complex(0.0, 20.0), 0.3) == RegimeTag::SmallT);
  CHECK(select_regime(EvalPoint(10.0, 1.0)).thresholds.large_t == 5.0);

  RegimeThresholds th;
  th.large_t = 20.0;
  CHECK(select_regime(EvalPoint(10.0, 1.0), th).tag == RegimeTag::SmallT);
  CHECK_THROWS_AS(select_regime(EvalPoint(1.0, -1.0)), NumericError);
}

TEST_CASE("automatic approximation tracks quadrature on real t") {
  // The crossover band around a = 1/e at moderate t is excluded.
  const std::vector<double> as = {0.1, 0.2, 0.8, 1.0, 1.5, 2.0, 3.0};
  double worst = 0.0;
  for (double a : as) {
    for (int i = 0; i < 25; ++i) {
      const double t = -30.0 + 60.0 * i / 24.0;
      const EvalPoint p(t, a);
      const Complex ref = f_quadrature(p).value;
      if (std::abs(ref) < 0.05) continue;
      const double err = rel_diff(approx_auto(p).value, ref);
      CAPTURE(a);
      CAPTURE(t);
      CHECK(err < 0.15);
      worst = std::max(worst, err);
    }
  }
  MESSAGE("worst relative error " << worst);
}
