#pragma once

#include "holoweyl/budget.hpp"
#include "holoweyl/commutative.hpp"
#include "holoweyl/term_order.hpp"
#include "holoweyl/weyl.hpp"

#include <span>
#include <vector>

namespace holoweyl {

/// Reduced, monic Groebner basis of a polynomial ideal, sorted by ascending
/// leading monomial. The order's arity must equal the ring size.
std::vector<CommutativePolynomial> comm_buchberger(std::span<const CommutativePolynomial> gens,
                                                   const TermOrder& ord, const Budget& budget = {});

/// Remainder of p modulo the divisors (deterministic division, highest term
/// first). Zero for a member when the divisors form a Groebner basis.
CommutativePolynomial comm_normal_form(const CommutativePolynomial& p,
                                       std::span<const CommutativePolynomial> divisors, const TermOrder& ord,
                                       const Budget& budget = {});

/// Krull dimension of k[z_1..z_k]/<monomials>: the largest set of variables
/// containing no generator's support. -1 for the unit ideal. At most 64
/// variables.
int monomial_ideal_dimension(std::span<const Exponents> generators, std::size_t arity);

/// Dimension of the ideal via the leading monomials of its Groebner basis.
/// The zero ideal (no generators, or all zero) has dimension = ring size.
int krull_dimension(std::span<const CommutativePolynomial> gens, const TermOrder& ord,
                    const Budget& budget = {});
int krull_dimension(std::span<const CommutativePolynomial> gens, const RingRef& ring, const Budget& budget = {});

/// Generators of in_(0,e)(I) over symbol_ring(table): the initial forms of a
/// Groebner basis of I under the "char" order.
std::vector<CommutativePolynomial> char_ideal(std::span<const WeylPolynomial> gens, const Budget& budget = {});

struct HolonomicReport {
  std::size_t variables = 0;  // d, base variables of the table
  std::size_t ambient = 0;    // 2d, base plus symbol variables
  int dimension = 0;          // Krull dimension of the characteristic ideal
  bool holonomic = false;
  std::size_t basis_size = 0;
};

HolonomicReport is_holonomic(std::span<const WeylPolynomial> gens, const Budget& budget = {});

}  // namespace holoweyl
