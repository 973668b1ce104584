#pragma once

// Globally adaptive 21-point Gauss-Kronrod integration over a set of finite
// intervals. The value type only needs +, -, scaling by double and a
// magnitude() overload, so vector-valued integrands share the panel tree.

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "sdream/core.hpp"

namespace sdream {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 60;  // bisection depth limit per panel
  int max_panels = 20000;

  void validate() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

template <class V>
struct Integral {
  V value{};
  double error = 0.0;
  double abs_value = 0.0;  // integral of |f|, used for roundoff and conditioning
  int panels = 0;
  bool converged = false;
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(Complex v) { return std::abs(v); }

namespace gk21 {

// Kronrod abscissae on [0,1]; odd indices are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600567163955, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class V>
struct Panel {
  double lo;
  double hi;
  int depth;
  V value;
  double error;
  double abs_value;

  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class V, class F>
Panel<V> evaluate(F& f, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const V fc = f(center);
  V kronrod = fc * kKronrodWeights[10];
  V gauss{};
  double abs_sum = magnitude(fc) * kKronrodWeights[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kNodes[j];
    const V f1 = f(center - dx);
    const V f2 = f(center + dx);
    const V pair = f1 + f2;
    kronrod = kronrod + pair * kKronrodWeights[j];
    if (j % 2 == 1) gauss = gauss + pair * kGaussWeights[j / 2];
    abs_sum += (magnitude(f1) + magnitude(f2)) * kKronrodWeights[j];
  }
  Panel<V> p{lo, hi, depth, kronrod * half, magnitude(kronrod - gauss) * std::abs(half),
             abs_sum * std::abs(half)};
  if (!std::isfinite(magnitude(p.value)) || !std::isfinite(p.error)) {
    fail(ErrorKind::Overflow, "integrand is not finite on the integration panel");
  }
  return p;
}

}  // namespace gk21

template <class V, class F>
Integral<V> integrate(F&& f, std::span<const Interval> intervals, const QuadratureConfig& cfg) {
  cfg.validate();
  using P = gk21::Panel<V>;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const auto roundoff_floor = [](const P& p) { return 50.0 * eps * p.abs_value; };

  std::priority_queue<P> queue;
  V settled_value{};
  double settled_error = 0.0;
  double settled_abs = 0.0;
  V open_value{};
  double open_error = 0.0;
  double open_abs = 0.0;
  int panels = 0;
  bool limited = false;

  for (const Interval& iv : intervals) {
    P p = gk21::evaluate<V>(f, iv.lo, iv.hi, 0);
    open_value = open_value + p.value;
    open_error += p.error;
    open_abs += p.abs_value;
    queue.push(p);
    ++panels;
  }

  const auto target = [&] {
    return std::max(cfg.abs_tol, cfg.rel_tol * magnitude(settled_value + open_value));
  };

  while (!queue.empty() && settled_error + open_error > target()) {
    P worst = queue.top();
    queue.pop();
    open_value = open_value - worst.value;
    open_error -= worst.error;
    open_abs -= worst.abs_value;

    const bool at_roundoff = worst.error <= roundoff_floor(worst);
    if (at_roundoff || worst.depth >= cfg.max_subdivisions || panels + 1 > cfg.max_panels) {
      if (!at_roundoff) limited = true;
      settled_value = settled_value + worst.value;
      settled_error += worst.error;
      settled_abs += worst.abs_value;
      if (panels + 1 > cfg.max_panels) break;
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    for (const P& child : {gk21::evaluate<V>(f, worst.lo, mid, worst.depth + 1),
                           gk21::evaluate<V>(f, mid, worst.hi, worst.depth + 1)}) {
      open_value = open_value + child.value;
      open_error += child.error;
      open_abs += child.abs_value;
      queue.push(child);
    }
    ++panels;
  }

  // Re-sum from scratch to drop the drift of the running totals.
  Integral<V> out;
  out.value = settled_value;
  out.error = settled_error;
  out.abs_value = settled_abs;
  while (!queue.empty()) {
    const P& p = queue.top();
    out.value = out.value + p.value;
    out.error += p.error;
    out.abs_value += p.abs_value;
    queue.pop();
  }
  out.panels = panels;
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * magnitude(out.value));
  out.converged = out.error <= tol || !limited;
  return out;
}

}  // namespace sdream
