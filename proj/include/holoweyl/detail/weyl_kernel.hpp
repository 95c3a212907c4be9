#pragma once

#include "holoweyl/exponents.hpp"
#include "holoweyl/rational.hpp"

#include <cstddef>
#include <vector>

namespace holoweyl::detail {

/// Normally ordered product of two Weyl monomials packed as [base | partial]
/// with `pairs` entries per half:
///
///   z^a d^b * z^c d^e = sum_k  prod_i C(b_i, k_i) (c_i)_(k_i)  z^(a+c-k) d^(b+e-k)
///
/// where k runs over 0 <= k_i <= min(b_i, c_i). Calls sink(monomial, coeff)
/// once per k; the k = 0 term (coefficient 1) is emitted first.
template <class Sink>
void weyl_monomial_product(const Exponents& left, const Exponents& right, std::size_t pairs,
                           Sink&& sink) {
  Exponents base = add_exponents(left, right);
  // Pairs whose partial on the left meets a variable on the right.
  boost::container::small_vector<std::size_t, 16> active;
  for (std::size_t i = 0; i < pairs; ++i)
    if (left[pairs + i] != 0 && right[i] != 0) active.push_back(i);
  sink(base, Integer(1));
  if (active.empty()) return;

  // coeff[a][k] = C(b, k) * c (c-1) ... (c-k+1) for the a-th active pair.
  std::vector<std::vector<Integer>> coeff(active.size());
  for (std::size_t a = 0; a < active.size(); ++a) {
    const std::size_t i = active[a];
    const unsigned b = left[pairs + i];
    const unsigned c = right[i];
    const unsigned kmax = b < c ? b : c;
    coeff[a].resize(kmax + 1);
    Integer binom = 1, falling = 1;
    coeff[a][0] = 1;
    for (unsigned k = 1; k <= kmax; ++k) {
      binom = binom * (b - k + 1) / k;
      falling *= (c - k + 1);
      coeff[a][k] = binom * falling;
    }
  }

  // Odometer over k vectors, skipping k = 0.
  std::vector<unsigned> k(active.size(), 0);
  Exponents mono = base;
  while (true) {
    std::size_t pos = 0;
    while (pos < active.size()) {
      const std::size_t i = active[pos];
      if (k[pos] + 1 < coeff[pos].size()) {
        ++k[pos];
        --mono[i];
        --mono[pairs + i];
        break;
      }
      mono[i] = Exponent(mono[i] + k[pos]);
      mono[pairs + i] = Exponent(mono[pairs + i] + k[pos]);
      k[pos] = 0;
      ++pos;
    }
    if (pos == active.size()) return;
    Integer c = 1;
    for (std::size_t a = 0; a < active.size(); ++a)
      if (k[a] != 0) c *= coeff[a][k[a]];
    sink(mono, c);
  }
}

}  // namespace holoweyl::detail
