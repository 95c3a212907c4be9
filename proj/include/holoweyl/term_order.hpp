#pragma once

#include "holoweyl/commutative.hpp"
#include "holoweyl/exponents.hpp"
#include "holoweyl/var_table.hpp"
#include "holoweyl/weyl.hpp"

#include "json.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace holoweyl {

enum class OrderKind { Lex, Grlex, Grevlex };

/// A monomial order on exponent vectors of fixed arity.
///
/// Comparison runs through a list of integer weight vectors first, then
/// through blocks of variables, each compared by lex, grlex or grevlex over
/// its own precedence list (highest variable first). Over a VarTable the
/// arity is 2d and slots follow the packed Weyl layout [base | partial], which
/// is also the layout of the symbol ring [base | xi], so one order serves
/// Weyl monomials and principal symbols alike.
class TermOrder {
 public:
  struct Block {
    OrderKind kind;
    std::vector<std::size_t> precedence;
  };

  static TermOrder plain(OrderKind kind, std::vector<std::size_t> precedence, std::string name = {});
  /// Weight vector first, ties broken by `tie`.
  static TermOrder weighted(std::vector<std::int64_t> weight, const TermOrder& tie, std::string name = {});
  /// (u, v) weight on [base | partial], ties broken by `tie`.
  static TermOrder weighted(std::span<const std::int64_t> u, std::span<const std::int64_t> v,
                            const TermOrder& tie, std::string name = {});
  /// The slots in `first` are compared before all others; each block uses the
  /// inner order restricted to it. `inner` must not carry weights.
  static TermOrder block(std::vector<std::size_t> first, const TermOrder& inner, std::string name = {});

  /// Named orders over a table (arity 2d):
  ///   lex, grlex, grevlex  partials (slot order) above base variables (slot order)
  ///   paper-s2             graded order with precedence
  ///                        xi_t[n+1] > ... > xi_t[1] > xi_x > xi_y > xi_r > t[n+1] > ... > t[1] > x > y > r
  ///   paper-s4             weight 1 on every t[i], 0 elsewhere, ties by grevlex
  ///   char                 weight (0, e): 0 on base, 1 on partials, ties by grevlex
  ///   pfaffian-grevlex     partials block (grevlex, dr > dx > dy), then base variables by grevlex
  ///   pfaffian-lex         the same blocks compared by lex
  static TermOrder preset(std::string_view name, const VarTable& table);
  static std::vector<std::string> preset_names();

  /// Plain orders over an arbitrary commutative ring (slot order = precedence).
  static TermOrder for_ring(OrderKind kind, std::size_t arity);

  std::size_t arity() const { return arity_; }
  const std::string& name() const { return name_; }
  const std::vector<std::vector<std::int64_t>>& weights() const { return weights_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  std::strong_ordering compare(const Exponents& a, const Exponents& b) const;

  /// Integer vector whose lexicographic order is this order.
  using Key = boost::container::small_vector<std::int32_t, 44>;
  Key key(const Exponents& e) const;
  bool less(const Exponents& a, const Exponents& b) const { return compare(a, b) < 0; }

  /// Every weight row satisfies u_i + v_i >= 0 (requires even arity).
  bool is_weyl_admissible() const;
  /// All weights nonnegative, hence a well-order.
  bool is_well_order() const;

  /// JSON descriptor using variable names of the table:
  ///   {"preset": "grevlex"}
  ///   {"kind": "grlex", "precedence": ["dt[2]", ...]}
  ///   {"weight": {"t[1]": 1, ...}, "tie": <descriptor>}
  ///   {"block": ["dx[1][1]", ...], "inner": <descriptor>}
  nlohmann::json to_json(const VarTable& table) const;
  static TermOrder from_json(const nlohmann::json& j, const VarTable& table);

 private:
  TermOrder() = default;

  std::string name_;
  std::size_t arity_ = 0;
  std::vector<std::vector<std::int64_t>> weights_;
  std::vector<Block> blocks_;
};

std::string_view to_string(OrderKind kind);
OrderKind parse_order_kind(std::string_view text);

/// Maximal term of p under ord. Throws std::domain_error on the zero operator.
std::pair<WeylMonomial, Rational> leading_term(const WeylPolynomial& p, const TermOrder& ord);
std::pair<Exponents, Rational> leading_term(const CommutativePolynomial& p, const TermOrder& ord);

/// Sum of the terms of maximal weight u.a + v.b, partials replaced by their
/// symbols. Requires u + v >= 0.
CommutativePolynomial initial_form(const WeylPolynomial& p, std::span<const std::int64_t> u,
                                   std::span<const std::int64_t> v);

/// The (0, e) weight vectors for a table.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> symbol_weights(const VarTable& table);

}  // namespace holoweyl
