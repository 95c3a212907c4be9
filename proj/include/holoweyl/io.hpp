#pragma once

#include "holoweyl/commutative.hpp"
#include "holoweyl/fb_operators.hpp"
#include "holoweyl/groebner.hpp"
#include "holoweyl/term_order.hpp"
#include "holoweyl/weyl.hpp"

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace holoweyl {

/// Version of the operator text grammar and JSON layout.
inline constexpr std::string_view kGrammarVersion = "holoweyl-grammar 1";

/// Text form: variables x[i][j], y[i], r, t[i]; partials dx[i][j], dy[i],
/// dr, dt[i]; integers and p/q; + - * ^ and parentheses. Products are taken
/// in the written order, so "dt[1]*t[1]" is t[1]*dt[1] + 1.
WeylPolynomial parse_operator(std::string_view text, const VarTable& table);
std::string to_text(const WeylPolynomial& p);

/// Commutative polynomials over a named ring (names as in ring->names()).
CommutativePolynomial parse_polynomial(std::string_view text, const RingRef& ring);
std::string to_text(const CommutativePolynomial& p);

nlohmann::json table_to_json(const VarTable& table);
VarTable table_from_json(const nlohmann::json& j);

/// {"table": {...}, "terms": [{"base": [...], "partial": [...], "coeff": "p/q"}]}
nlohmann::json to_json(const WeylPolynomial& p);
WeylPolynomial operator_from_json(const nlohmann::json& j);

/// {"family", "n", "table", "operators": [{"label", "text", "terms"}]}
nlohmann::json to_json(const OperatorFamily& fam);

/// An operator list read from an ops file. Accepts the family layout above,
/// {"table", "operators": ["text", ...]} or a single operator object.
struct OperatorList {
  VarTable table;
  std::vector<std::string> labels;
  std::vector<WeylPolynomial> operators;
};
OperatorList operator_list_from_json(const nlohmann::json& j);
nlohmann::json to_json(const OperatorList& list);

/// {"order", "table", "source", "generators": [...]}
nlohmann::json to_json(const GroebnerBasis& gb);

/// {"variables": [...], "polynomials": ["text", ...], "order"?}
struct CommutativeIdeal {
  RingRef ring;
  std::vector<CommutativePolynomial> polynomials;
};
CommutativeIdeal comm_ideal_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CommutativeIdeal& ideal);

}  // namespace holoweyl
