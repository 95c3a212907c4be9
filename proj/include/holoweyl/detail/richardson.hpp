#pragma once

#include <cmath>

namespace holoweyl {

namespace detail {

template <class F>
double central_difference(F&& f, double r, int k, double h) {
  if (k == 0) return f(r);
  double sum = 0;
  double binom = 1;
  for (int i = 0; i <= k; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * f(r + (0.5 * k - i) * h);
    binom = binom * (k - i) / (i + 1);
  }
  return sum / std::pow(h, k);
}

}  // namespace detail

template <class F>
double richardson_derivative(F&& f, double r, int k, double h) {
  if (k == 0) return f(r);
  const double d1 = detail::central_difference(f, r, k, h);
  const double d2 = detail::central_difference(f, r, k, h / 2);
  const double d4 = detail::central_difference(f, r, k, h / 4);
  const double r1 = (4 * d2 - d1) / 3;
  const double r2 = (4 * d4 - d2) / 3;
  return (16 * r2 - r1) / 15;
}

}  // namespace holoweyl
