#pragma once

#include "holoweyl/budget.hpp"
#include "holoweyl/term_order.hpp"
#include "holoweyl/weyl.hpp"

#include <span>
#include <string>
#include <vector>

namespace holoweyl {

struct Reduction {
  WeylPolynomial remainder;
  /// p = sum_i quotients[i] * divisors[i] + remainder (left multiplication).
  std::vector<WeylPolynomial> quotients;
};

/// Deterministic left division: the highest reducible term is removed first,
/// using the first divisor (in list order) whose leading monomial divides it.
/// No term of the remainder is divisible by a leading monomial of the list.
/// Throws std::invalid_argument on an empty list or a zero divisor.
Reduction left_reduce(const WeylPolynomial& p, std::span<const WeylPolynomial> divisors,
                      const TermOrder& ord, const Budget& budget = {});

struct GroebnerOptions {
  Budget budget;
  /// Keep, for every basis element, its expression in the input generators.
  bool track_cofactors = false;
  std::string source;
};

/// Monic, inter-reduced left Groebner basis of a left ideal of the Weyl algebra.
class GroebnerBasis {
 public:
  GroebnerBasis(VarTable table, TermOrder order, std::vector<WeylPolynomial> generators,
                std::vector<WeylPolynomial> inputs, std::vector<std::vector<WeylPolynomial>> cofactors,
                std::string source);

  const VarTable& table() const { return table_; }
  const TermOrder& order() const { return order_; }
  const std::vector<WeylPolynomial>& generators() const { return generators_; }
  const std::vector<WeylPolynomial>& inputs() const { return inputs_; }
  /// cofactors()[k][i]: generators()[k] = sum_i cofactors()[k][i] * inputs()[i].
  /// Empty unless requested.
  const std::vector<std::vector<WeylPolynomial>>& cofactors() const { return cofactors_; }
  bool has_cofactors() const { return !cofactors_.empty(); }
  const std::string& source() const { return source_; }
  std::size_t size() const { return generators_.size(); }

  /// Leading monomials under order(), in basis order.
  std::vector<WeylMonomial> leading_monomials() const;
  WeylPolynomial normal_form(const WeylPolynomial& p, const Budget& budget = {}) const;
  bool contains(const WeylPolynomial& p, const Budget& budget = {}) const;

 private:
  VarTable table_;
  TermOrder order_;
  std::vector<WeylPolynomial> generators_;
  std::vector<WeylPolynomial> inputs_;
  std::vector<std::vector<WeylPolynomial>> cofactors_;
  std::string source_;
};

/// Throws ResourceExhausted when the budget runs out and
/// std::invalid_argument for an inadmissible order or a zero generator.
GroebnerBasis buchberger(std::span<const WeylPolynomial> gens, const TermOrder& ord,
                         const GroebnerOptions& options = {});

struct Membership {
  bool member = false;
  WeylPolynomial remainder;
  /// When member and a certificate was requested: p = sum_i certificate[i] * gens[i].
  std::vector<WeylPolynomial> certificate;
};

Membership ideal_membership(const WeylPolynomial& p, const GroebnerBasis& gb, bool want_certificate = false);
Membership ideal_membership(const WeylPolynomial& p, std::span<const WeylPolynomial> gens,
                            const TermOrder& ord, const GroebnerOptions& options = {});

struct IdealComparison {
  bool equal = false;
  std::vector<std::size_t> a_outside_b;  // indices of A not in <B>
  std::vector<std::size_t> b_outside_a;
};

IdealComparison compare_ideals(std::span<const WeylPolynomial> a, std::span<const WeylPolynomial> b,
                               const TermOrder& ord, const GroebnerOptions& options = {});
bool ideal_equal(std::span<const WeylPolynomial> a, std::span<const WeylPolynomial> b, const TermOrder& ord,
                 const GroebnerOptions& options = {});

}  // namespace holoweyl
