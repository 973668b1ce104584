#pragma once

// Q(n+1, x) = Gamma(n+1, x) / n! = e^{-x} sum_{k=0}^{n} x^k / k!, generic in
// the floating type so the series evaluator can run it in binary128.
// Ops provides static exp, log and lgamma for T.

#include <cstdlib>

namespace sdream::detail {

template <class T, class Ops>
T regularized_upper_gamma(int n, T x, T rel_eps) {
  const auto mag = [](T v) { return v < T(0) ? -v : v; };
  if (x == T(0)) return T(1);

  if (x > T(0)) {
    const T lx = Ops::log(x);
    if (x > T(n)) {
      // Poisson head, summed downward from k = n where terms are largest.
      T term = Ops::exp(-x + T(n) * lx - Ops::lgamma(T(n) + T(1)));
      T q = 0;
      for (int k = n; k >= 0; --k) {
        q += term;
        if (k > 0) term *= T(k) / x;
        if (term <= rel_eps * q) break;
      }
      return q;
    }
    // 1 - Poisson tail, summed upward from k = n + 1.
    T term = Ops::exp(-x + T(n + 1) * lx - Ops::lgamma(T(n) + T(2)));
    T tail = 0;
    for (int k = n + 1; k < n + 1000000; ++k) {
      tail += term;
      term *= x / T(k + 1);
      if (term <= rel_eps * tail) break;
    }
    return T(1) - tail;
  }

  const T s = -x;
  if (s >= T(n)) {
    // Terms grow in magnitude up to k = n; the last ones dominate.
    T mag_k = Ops::exp(s);
    T q = mag_k;
    for (int k = 1; k <= n; ++k) {
      mag_k *= s / T(k);
      q += (k % 2 == 0) ? mag_k : -mag_k;
    }
    return q;
  }
  // e^{s} times the alternating tail beyond k = n, whose terms decrease.
  T term = Ops::exp(s + T(n + 1) * Ops::log(s) - Ops::lgamma(T(n) + T(2)));
  if ((n + 1) % 2 != 0) term = -term;
  T tail = 0;
  for (int k = n + 1; k < n + 1000000; ++k) {
    tail += term;
    term *= -s / T(k + 1);
    if (mag(term) <= rel_eps * mag(tail)) break;
  }
  return T(1) - tail;
}

}  // namespace sdream::detail
