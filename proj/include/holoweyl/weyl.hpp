#pragma once

#include "holoweyl/commutative.hpp"
#include "holoweyl/exponents.hpp"
#include "holoweyl/rational.hpp"
#include "holoweyl/var_table.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace holoweyl {

/// Upper bound on the number of raw terms produced while expanding a
/// product; exceeding it throws ResourceExhausted.
inline constexpr std::size_t kDefaultTermLimit = 1'000'000;

/// A normally ordered word z^base d^partial, packed as [base | partial]:
/// entry k < d is the exponent of base variable k, entry d + k the exponent
/// of its partial.
using WeylMonomial = Exponents;

inline Exponent base_exponent(const WeylMonomial& m, std::size_t k) { return m[k]; }
inline Exponent partial_exponent(const WeylMonomial& m, std::size_t k) { return m[m.size() / 2 + k]; }

/// An element of the Weyl algebra over a VarTable with exact rational
/// coefficients, stored canonically: terms sorted by packed exponent vector,
/// no zero coefficients.
class WeylPolynomial {
 public:
  struct Term {
    WeylMonomial monomial;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  explicit WeylPolynomial(VarTable table);
  WeylPolynomial(VarTable table, std::vector<Term> terms);

  static WeylPolynomial constant(const VarTable& table, const Rational& c);
  static WeylPolynomial var(const VarTable& table, std::size_t slot);
  static WeylPolynomial del(const VarTable& table, std::size_t slot);
  static WeylPolynomial monomial(const VarTable& table, WeylMonomial m, const Rational& c = 1);
  /// Multiplication operator by a polynomial in the base variables.
  static WeylPolynomial from_polynomial(const VarTable& table, const CommutativePolynomial& f);

  const VarTable& table() const { return table_; }
  std::size_t arity() const { return table_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const WeylMonomial& m) const;
  std::size_t total_degree() const;

  /// True if no term carries a positive exponent on any of the given slots
  /// (checked for base variables, their partials, or both).
  bool free_of(std::span<const std::size_t> slots, bool base = true, bool partial = true) const;

  WeylPolynomial& operator+=(const WeylPolynomial& o);
  WeylPolynomial& operator-=(const WeylPolynomial& o);
  WeylPolynomial& operator*=(const Rational& c);

  friend WeylPolynomial operator+(WeylPolynomial a, const WeylPolynomial& b) { return a += b; }
  friend WeylPolynomial operator-(WeylPolynomial a, const WeylPolynomial& b) { return a -= b; }
  friend WeylPolynomial operator-(WeylPolynomial a) { return a *= Rational(-1); }
  friend WeylPolynomial operator*(WeylPolynomial a, const Rational& c) { return a *= c; }
  friend WeylPolynomial operator*(const Rational& c, WeylPolynomial a) { return a *= c; }
  friend WeylPolynomial operator*(const WeylPolynomial& a, const WeylPolynomial& b);

  friend bool operator==(const WeylPolynomial&, const WeylPolynomial&) = default;

 private:
  VarTable table_;
  std::vector<Term> terms_;
};

WeylPolynomial add(const WeylPolynomial& p, const WeylPolynomial& q);
WeylPolynomial mul(const WeylPolynomial& p, const WeylPolynomial& q,
                   std::size_t term_limit = kDefaultTermLimit);
WeylPolynomial commutator(const WeylPolynomial& p, const WeylPolynomial& q);

/// Transpose with respect to the listed base slots only: every word is
/// reversed and d_v -> -d_v for v in subset; other variables are treated as
/// parameters.
WeylPolynomial formal_adjoint(const WeylPolynomial& p, std::span<const std::size_t> subset);

/// Substitutes d_v -> d_v - df/dv for v in vars, expanding into normal order.
/// With vars covering every variable f depends on this is the conjugation
/// P -> e^f P e^-f, so it maps Ann(u) into Ann(e^f u). The substituted
/// factors are multiplied in slot order.
WeylPolynomial twist(const WeylPolynomial& p, const CommutativePolynomial& f,
                     std::span<const std::size_t> vars);

/// Embeds an operator of the Param table into the Full table of the same n.
WeylPolynomial lift(const WeylPolynomial& p, const VarTable& target);
/// Inverse of lift; throws if p involves t or dt.
WeylPolynomial restrict_to(const WeylPolynomial& p, const VarTable& target);

/// Principal part with partials replaced by commuting symbols, all terms kept.
CommutativePolynomial to_symbol_polynomial(const WeylPolynomial& p);

}  // namespace holoweyl
