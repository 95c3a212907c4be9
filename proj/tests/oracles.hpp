#pragma once

// Reference implementations that share no code with the library beyond the
// data types. They are slow and only meant for small inputs.

#include "holoweyl/commutative.hpp"
#include "holoweyl/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using holoweyl::Rational;
using holoweyl::VarTable;
using holoweyl::WeylPolynomial;

// A normally ordered word z^a d^b as two plain vectors.
struct Word {
  std::vector<int> a, b;
  auto operator<=>(const Word&) const = default;
};
using Sum = std::map<Word, Rational>;

inline void add_to(Sum& s, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = s.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) s.erase(it);
  }
}

// Right multiplication by a single generator, one commutation at a time:
// z^a d^b * z_k = z^(a+e_k) d^b + b_k z^a d^(b-e_k).
inline Sum times_var(const Sum& s, std::size_t k) {
  Sum out;
  for (const auto& [w, c] : s) {
    Word moved = w;
    ++moved.a[k];
    add_to(out, moved, c);
    if (w.b[k] > 0) {
      Word lower = w;
      --lower.b[k];
      add_to(out, lower, c * w.b[k]);
    }
  }
  return out;
}

inline Sum times_del(const Sum& s, std::size_t k) {
  Sum out;
  for (const auto& [w, c] : s) {
    Word moved = w;
    ++moved.b[k];
    add_to(out, moved, c);
  }
  return out;
}

inline Sum from_poly(const WeylPolynomial& p) {
  const std::size_t d = p.arity();
  Sum s;
  for (const auto& t : p.terms()) {
    Word w{std::vector<int>(d), std::vector<int>(d)};
    for (std::size_t k = 0; k < d; ++k) {
      w.a[k] = int(t.monomial[k]);
      w.b[k] = int(t.monomial[d + k]);
    }
    add_to(s, w, t.coeff);
  }
  return s;
}

inline WeylPolynomial to_poly(const Sum& s, const VarTable& table) {
  const std::size_t d = table.size();
  std::vector<WeylPolynomial::Term> terms;
  for (const auto& [w, c] : s) {
    holoweyl::WeylMonomial m(2 * d, 0);
    for (std::size_t k = 0; k < d; ++k) {
      m[k] = holoweyl::Exponent(w.a[k]);
      m[d + k] = holoweyl::Exponent(w.b[k]);
    }
    terms.push_back({m, c});
  }
  return WeylPolynomial(table, std::move(terms));
}

// P * Q, feeding the generators of each word of Q into P one by one.
inline WeylPolynomial multiply(const WeylPolynomial& p, const WeylPolynomial& q) {
  const std::size_t d = p.arity();
  const Sum left = from_poly(p);
  Sum total;
  for (const auto& [w, c] : from_poly(q)) {
    Sum acc = left;
    for (std::size_t k = 0; k < d; ++k)
      for (int e = 0; e < w.a[k]; ++e) acc = times_var(acc, k);
    for (std::size_t k = 0; k < d; ++k)
      for (int e = 0; e < w.b[k]; ++e) acc = times_del(acc, k);
    for (const auto& [w2, c2] : acc) add_to(total, w2, c2 * c);
  }
  return to_poly(total, p.table());
}

// Formal adjoint for operators whose partials all lie in `subset`: each word
// z^a d^b becomes (-d)^b z^a, normal ordered by `multiply`.
inline WeylPolynomial adjoint(const WeylPolynomial& p, const std::vector<std::size_t>& subset) {
  const VarTable& table = p.table();
  const std::size_t d = table.size();
  WeylPolynomial out(table);
  for (const auto& t : p.terms()) {
    holoweyl::WeylMonomial dpart(2 * d, 0), zpart(2 * d, 0);
    int sign = 1;
    for (std::size_t k = 0; k < d; ++k) {
      zpart[k] = t.monomial[k];
      dpart[d + k] = t.monomial[d + k];
      const bool in_subset = std::find(subset.begin(), subset.end(), k) != subset.end();
      if (in_subset && t.monomial[d + k] % 2) sign = -sign;
    }
    out += multiply(WeylPolynomial::monomial(table, dpart, t.coeff * sign),
                    WeylPolynomial::monomial(table, zpart));
  }
  return out;
}

// e^f P e^-f computed as z^a prod_k (d_k - df/dz_k)^(b_k).
inline WeylPolynomial conjugate(const WeylPolynomial& p, const holoweyl::CommutativePolynomial& f) {
  const VarTable& table = p.table();
  const std::size_t d = table.size();
  WeylPolynomial out(table);
  for (const auto& t : p.terms()) {
    holoweyl::WeylMonomial zpart(2 * d, 0);
    for (std::size_t k = 0; k < d; ++k) zpart[k] = t.monomial[k];
    WeylPolynomial acc = WeylPolynomial::monomial(table, zpart, t.coeff);
    for (std::size_t k = 0; k < d; ++k) {
      const WeylPolynomial shifted =
          WeylPolynomial::del(table, k) - WeylPolynomial::from_polynomial(table, f.derivative(k));
      for (int e = 0; e < int(t.monomial[d + k]); ++e) acc = multiply(acc, shifted);
    }
    out += acc;
  }
  return out;
}

// Krull dimension of a monomial ideal from the growth of its Hilbert function:
// H(s) = number of standard monomials of degree s is eventually a polynomial
// of degree dim - 1. Returns -1 for the unit ideal.
inline int hilbert_dimension(const std::vector<std::vector<int>>& gens, std::size_t vars, int top = 22) {
  auto standard = [&](const std::vector<int>& e) {
    for (const auto& g : gens) {
      bool divides = true;
      for (std::size_t k = 0; k < vars; ++k)
        if (g[k] > e[k]) divides = false;
      if (divides) return false;
    }
    return true;
  };
  std::vector<long long> h(std::size_t(top) + 1, 0);
  std::vector<int> e(vars, 0);
  // Enumerate every monomial of degree <= top.
  auto rec = [&](auto& self, std::size_t k, int left) -> void {
    if (k == vars) {
      if (standard(e)) ++h[std::size_t(top - left)];
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[k] = v;
      self(self, k + 1, left - v);
    }
    e[k] = 0;
  };
  rec(rec, 0, top);
  if (h[0] == 0) return -1;
  // Smallest k whose k-th differences vanish on the tail of H.
  const std::size_t from = std::size_t(top) / 2;
  std::vector<long long> diff(h.begin() + std::ptrdiff_t(from), h.end());
  for (int k = 0; k <= int(vars) + 1; ++k) {
    if (std::all_of(diff.begin(), diff.end(), [](long long v) { return v == 0; })) return k;
    std::vector<long long> next;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) next.push_back(diff[i + 1] - diff[i]);
    diff = std::move(next);
  }
  return int(vars) + 1;
}

// hilbert_dimension after splitting off variables that are generators
// (they contribute 0) and variables no generator mentions (they contribute 1
// each), so larger ambient rings stay cheap.
inline int hilbert_dimension_split(const std::vector<std::vector<int>>& gens, std::size_t vars, int top = 22) {
  std::vector<bool> linear(vars, false), used(vars, false);
  for (const auto& g : gens) {
    int deg = 0;
    std::size_t last = 0;
    for (std::size_t k = 0; k < vars; ++k)
      if (g[k]) {
        deg += g[k];
        last = k;
      }
    if (deg == 0) return -1;
    if (deg == 1) linear[last] = true;
  }
  std::vector<std::size_t> keep;
  int free_vars = 0;
  for (const auto& g : gens) {
    bool hits_linear = false;
    for (std::size_t k = 0; k < vars; ++k)
      if (g[k] && linear[k]) hits_linear = true;
    if (hits_linear) continue;
    for (std::size_t k = 0; k < vars; ++k)
      if (g[k]) used[k] = true;
  }
  for (std::size_t k = 0; k < vars; ++k) {
    if (linear[k]) continue;
    if (used[k])
      keep.push_back(k);
    else
      ++free_vars;
  }
  std::vector<std::vector<int>> rest;
  for (const auto& g : gens) {
    bool hits_linear = false;
    for (std::size_t k = 0; k < vars; ++k)
      if (g[k] && linear[k]) hits_linear = true;
    if (hits_linear) continue;
    std::vector<int> e;
    for (auto k : keep) e.push_back(g[k]);
    rest.push_back(e);
  }
  return free_vars + hilbert_dimension(rest, keep.size(), top);
}

// Composite Simpson rule for int_{S^1(r)} t^a exp(g(t)) |dt|.
inline double simpson_moment_s1(const std::vector<double>& x, const std::vector<double>& y, double r, int a1,
                                int a2, int intervals = 4000) {
  const double h = 2 * std::numbers::pi / intervals;
  double sum = 0;
  for (int i = 0; i <= intervals; ++i) {
    const double th = i * h;
    const double t1 = r * std::cos(th), t2 = r * std::sin(th);
    const double g = x[0] * t1 * t1 + x[1] * t1 * t2 + x[2] * t2 * t2 + y[0] * t1 + y[1] * t2;
    const double f = std::pow(t1, a1) * std::pow(t2, a2) * std::exp(g) * r;
    const double w = (i == 0 || i == intervals) ? 1 : (i % 2 ? 4 : 2);
    sum += w * f;
  }
  return sum * h / 3;
}

// Random operator over the table with at most `terms` terms and total degree
// at most `degree` in both base variables and partials.
inline WeylPolynomial random_operator(const VarTable& table, std::mt19937_64& rng, int terms, int degree) {
  const std::size_t d = table.size();
  std::uniform_int_distribution<std::size_t> slot(0, 2 * d - 1);
  std::uniform_int_distribution<int> deg(0, degree), coef(-5, 5);
  std::vector<WeylPolynomial::Term> out;
  for (int i = 0; i < terms; ++i) {
    holoweyl::WeylMonomial m(2 * d, 0);
    const int dd = deg(rng);
    for (int k = 0; k < dd; ++k) ++m[slot(rng)];
    const int num = coef(rng), den = 1 + std::abs(coef(rng));
    Rational c(num, den);
    c.canonicalize();
    out.push_back({m, c});
  }
  return WeylPolynomial(table, std::move(out));
}

}  // namespace oracle
