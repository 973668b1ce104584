#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "sdream/evaluators.hpp"
#include "sdream/parallel.hpp"
#include "sdream/signal.hpp"
#include "support.hpp"

using namespace sdream;

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return x;
}

}  // namespace

TEST_CASE("local maxima") {
  const std::vector<double> v = {0, 2, 1, 3, 3, 1, 0, 5};
  const auto m = signal::local_maxima(v);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == 1);
  CHECK(m[1] == 3);
  CHECK(signal::local_maxima(std::vector<double>{1.0, 2.0}).empty());
}

TEST_CASE("maxima spacing of a sinusoid") {
  const auto x = linspace(0.0, 50.0, 5001);
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = std::cos(2.0 * kPi * x[i] / 3.7);
  CHECK(signal::mean_maxima_spacing(x, v) == doctest::Approx(3.7).epsilon(1e-3));
  CHECK(std::isnan(signal::mean_maxima_spacing(x, std::vector<double>(x.size(), 1.0))));
}

TEST_CASE("crossing period") {
  const auto x = linspace(-20.0, -1.0, 1901);
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = std::sin(kPi * x[i] + 0.3);
  CHECK(signal::crossing_period(x, v) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::isnan(signal::crossing_period(x, std::vector<double>(x.size(), 0.5))));
}

TEST_CASE("sign changes skip exact zeros") {
  const std::vector<double> v = {1.0, -1.0, 0.0, 2.0, -3.0};
  const auto c = signal::sign_changes(v);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == 0);
  CHECK(c[1] == 3);
}

TEST_CASE("moving average") {
  const std::vector<double> v = {1, 2, 3, 4, 5};
  const auto m = signal::moving_average(v, 3);
  REQUIRE(m.size() == 5);
  CHECK(m[0] == doctest::Approx(4.0 / 3.0));
  CHECK(m[2] == doctest::Approx(3.0));
  CHECK(m[4] == doctest::Approx(14.0 / 3.0));
  CHECK(signal::moving_average(v, 1) == v);
}

TEST_CASE("modulation counts separate two frequencies") {
  const auto x = linspace(0.0, 100.0, 20001);
  std::vector<double> v(x.size());
  // Slow period 20, fast period 2: ratio 10 in crossing counts.
  for (std::size_t i = 0; i < x.size(); ++i) {
    v[i] = 3.0 * std::sin(2.0 * kPi * x[i] / 20.0 + 0.1) + std::sin(2.0 * kPi * x[i] / 2.0 + 0.2);
  }
  const auto window = static_cast<std::size_t>(2.0 / (x[1] - x[0]));
  const auto counts = signal::modulation_counts(v, window);
  CHECK(counts.fast == doctest::Approx(100.0).epsilon(0.03));
  CHECK(counts.slow == doctest::Approx(10.0).epsilon(0.1));
  CHECK(counts.ratio == doctest::Approx(10.0).epsilon(0.15));
}

TEST_CASE("segment sampling") {
  const auto s = signal::sample_segment(Complex(-2.0, 0.0), Complex(-2.0, 10.0), 11, 1.0);
  REQUIRE(s.size() == 11);
  CHECK(test::rel_diff(s[5], f_quadrature(EvalPoint(Complex(-2.0, 5.0), 1.0)).value) == 0.0);
  CHECK(signal::sample_segment(1.0, 1.0, 50, 1.0).size() == 1);
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
  bool all_once = true;
  for (auto& h : hits) all_once = all_once && h.load() == 1;
  CHECK(all_once);
  CHECK_THROWS_AS(parallel_for(
                      100, [](std::size_t i) { if (i == 37) throw std::runtime_error("x"); }, 3),
                  std::runtime_error);
}
