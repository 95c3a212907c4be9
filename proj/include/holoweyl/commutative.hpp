#pragma once

#include "holoweyl/exponents.hpp"
#include "holoweyl/rational.hpp"
#include "holoweyl/var_table.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace holoweyl {

/// Named variables of a commutative polynomial ring over Q.
class PolynomialRing {
 public:
  explicit PolynomialRing(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const PolynomialRing& a, const PolynomialRing& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
};

using RingRef = std::shared_ptr<const PolynomialRing>;

RingRef make_ring(std::vector<std::string> names);
/// C[z_1..z_d] over the base variables of a table.
RingRef base_ring(const VarTable& table);
/// C[z_1..z_d, xi_1..xi_d]: base variables followed by their principal symbols,
/// in the same slot order, so a packed Weyl monomial is also a symbol monomial.
RingRef symbol_ring(const VarTable& table);

bool same_ring(const RingRef& a, const RingRef& b);

class CommutativePolynomial {
 public:
  struct Term {
    Exponents monomial;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  explicit CommutativePolynomial(RingRef ring);
  /// Sorts, merges equal monomials and drops zero coefficients.
  CommutativePolynomial(RingRef ring, std::vector<Term> terms);

  static CommutativePolynomial constant(RingRef ring, const Rational& c);
  static CommutativePolynomial variable(RingRef ring, std::size_t i);
  static CommutativePolynomial monomial(RingRef ring, Exponents e, const Rational& c = 1);

  const RingRef& ring() const { return ring_; }
  std::size_t arity() const { return ring_->size(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Exponents& e) const;
  std::size_t total_degree() const;
  /// Highest exponent of variable i.
  std::size_t degree(std::size_t i) const;

  CommutativePolynomial derivative(std::size_t i) const;
  double evaluate(std::span<const double> point) const;
  Rational evaluate(std::span<const Rational> point) const;

  CommutativePolynomial& operator+=(const CommutativePolynomial& o);
  CommutativePolynomial& operator-=(const CommutativePolynomial& o);
  CommutativePolynomial& operator*=(const Rational& c);

  friend CommutativePolynomial operator+(CommutativePolynomial a, const CommutativePolynomial& b) {
    return a += b;
  }
  friend CommutativePolynomial operator-(CommutativePolynomial a, const CommutativePolynomial& b) {
    return a -= b;
  }
  friend CommutativePolynomial operator-(CommutativePolynomial a) { return a *= Rational(-1); }
  friend CommutativePolynomial operator*(CommutativePolynomial a, const Rational& c) {
    return a *= c;
  }
  friend CommutativePolynomial operator*(const Rational& c, CommutativePolynomial a) {
    return a *= c;
  }
  friend CommutativePolynomial operator*(const CommutativePolynomial& a,
                                         const CommutativePolynomial& b);

  friend bool operator==(const CommutativePolynomial& a, const CommutativePolynomial& b);

  std::string to_string() const;

 private:
  void check_ring(const CommutativePolynomial& o) const;

  RingRef ring_;
  std::vector<Term> terms_;
};

/// Exact quotient a / b if b divides a in Q[vars], otherwise nullopt.
std::optional<CommutativePolynomial> exact_divide(const CommutativePolynomial& a,
                                                  const CommutativePolynomial& b);

/// Greatest common divisor over Q, normalized to have integer coprime
/// coefficients and a positive leading coefficient (lex order on slots).
/// gcd(0, 0) = 0.
CommutativePolynomial gcd(const CommutativePolynomial& a, const CommutativePolynomial& b);

}  // namespace holoweyl
