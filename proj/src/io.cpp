#include "holoweyl/io.hpp"

#include "holoweyl/errors.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <stdexcept>

namespace holoweyl {

namespace {

// Recursive-descent parser over any algebra with +, -, * and a scalar
// embedding. `atom` resolves identifiers.
template <class T>
class Parser {
 public:
  using Lookup = std::function<std::optional<T>(std::string_view)>;
  using Scalar = std::function<T(const Rational&)>;
  using Mul = std::function<T(const T&, const T&)>;

  Parser(std::string_view text, Lookup lookup, Scalar scalar, Mul mul)
      : s_(text), lookup_(std::move(lookup)), scalar_(std::move(scalar)), mul_(std::move(mul)) {}

  T parse() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    T v = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  T expr() {
    T v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  T term() {
    T v = unary();
    while (eat('*')) v = mul_(v, unary());
    skip();
    if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' ||
                             s_[pos_] == '_'))
      fail("missing '*' (juxtaposition is not allowed)");
    return v;
  }

  T unary() {
    if (eat('-')) return unary() * Rational(-1);
    if (eat('+')) return unary();
    return power();
  }

  T power() {
    T base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    unsigned long e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + unsigned(s_[pos_] - '0');
      if (e > 10000) fail("exponent too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a nonnegative integer exponent");
    T out = scalar_(Rational(1));
    for (unsigned long k = 0; k < e; ++k) out = mul_(out, base);
    return out;
  }

  Integer integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  T atom() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      T v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer();
      Integer den = 1;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          fail("expected a denominator");
        const std::size_t at = pos_;
        den = integer();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      Rational q(num, den);
      q.canonicalize();
      return scalar_(q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      while (pos_ < s_.size() && s_[pos_] == '[') {
        const std::size_t close = s_.find(']', pos_);
        if (close == std::string_view::npos) fail("unterminated '['");
        pos_ = close + 1;
      }
      std::string_view name = s_.substr(start, pos_ - start);
      auto v = lookup_(name);
      if (!v) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return *v;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Lookup lookup_;
  Scalar scalar_;
  Mul mul_;
};

std::string format_coefficient_term(std::string out, const Rational& coeff, const std::string& mono) {
  Rational c = coeff;
  const bool neg = c < 0;
  if (neg) c = -c;
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (mono.empty()) {
    out += to_string(c);
  } else {
    if (c != 1) out += to_string(c) + "*";
    out += mono;
  }
  return out;
}

std::vector<int> exponent_list(const WeylMonomial& m, std::size_t begin, std::size_t count) {
  std::vector<int> v;
  for (std::size_t k = 0; k < count; ++k) v.push_back(m[begin + k]);
  return v;
}

}  // namespace

WeylPolynomial parse_operator(std::string_view text, const VarTable& table) {
  Parser<WeylPolynomial> p(
      text,
      [&](std::string_view name) -> std::optional<WeylPolynomial> {
        auto hit = table.find(name);
        if (!hit) return std::nullopt;
        return hit->partial ? WeylPolynomial::del(table, hit->slot) : WeylPolynomial::var(table, hit->slot);
      },
      [&](const Rational& c) { return WeylPolynomial::constant(table, c); },
      [](const WeylPolynomial& a, const WeylPolynomial& b) { return mul(a, b); });
  return p.parse();
}

std::string to_text(const WeylPolynomial& p) {
  if (p.is_zero()) return "0";
  const VarTable& tab = p.table();
  const std::size_t d = tab.size();
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    std::string mono;
    auto emit = [&](const std::string& name, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    for (std::size_t k = 0; k < d; ++k) emit(tab.name(k), base_exponent(it->monomial, k));
    for (std::size_t k = 0; k < d; ++k) emit(tab.partial_name(k), partial_exponent(it->monomial, k));
    out = format_coefficient_term(std::move(out), it->coeff, mono);
  }
  return out;
}

CommutativePolynomial parse_polynomial(std::string_view text, const RingRef& ring) {
  Parser<CommutativePolynomial> p(
      text,
      [&](std::string_view name) -> std::optional<CommutativePolynomial> {
        auto i = ring->find(name);
        if (!i) {
          // accept the non-canonical spelling x[2][1] of a symmetric variable
          std::string canon(name);
          auto open = canon.find("][");
          if (open != std::string::npos && canon.front() != ']') {
            auto first = canon.rfind('[', open);
            std::string a = canon.substr(first + 1, open - first - 1);
            std::string b = canon.substr(open + 2, canon.size() - open - 3);
            i = ring->find(canon.substr(0, first) + "[" + b + "][" + a + "]");
          }
        }
        if (!i) return std::nullopt;
        return CommutativePolynomial::variable(ring, *i);
      },
      [&](const Rational& c) { return CommutativePolynomial::constant(ring, c); },
      [](const CommutativePolynomial& a, const CommutativePolynomial& b) { return a * b; });
  return p.parse();
}

std::string to_text(const CommutativePolynomial& p) { return p.to_string(); }

nlohmann::json table_to_json(const VarTable& table) {
  return {{"n", table.n()}, {"ring", std::string(to_string(table.ring()))}, {"variables", table.names()}};
}

VarTable table_from_json(const nlohmann::json& j) {
  VarTable t(j.at("n").get<int>(), parse_ring(j.at("ring").get<std::string>()));
  if (j.contains("variables") && j.at("variables").get<std::vector<std::string>>() != t.names())
    throw std::invalid_argument("variable list does not match the table layout");
  return t;
}

nlohmann::json to_json(const WeylPolynomial& p) {
  const std::size_t d = p.table().size();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms())
    terms.push_back({{"base", exponent_list(t.monomial, 0, d)},
                     {"partial", exponent_list(t.monomial, d, d)},
                     {"coeff", to_string(t.coeff)}});
  return {{"table", table_to_json(p.table())}, {"terms", terms}};
}

namespace {

WeylPolynomial terms_from_json(const nlohmann::json& terms, const VarTable& table) {
  const std::size_t d = table.size();
  std::vector<WeylPolynomial::Term> out;
  for (const auto& t : terms) {
    auto base = t.at("base").get<std::vector<int>>();
    auto partial = t.at("partial").get<std::vector<int>>();
    if (base.size() != d || partial.size() != d) throw std::invalid_argument("exponent vector length mismatch");
    WeylMonomial m(2 * d, 0);
    for (std::size_t k = 0; k < d; ++k) {
      if (base[k] < 0 || partial[k] < 0 || base[k] > 60000 || partial[k] > 60000)
        throw std::invalid_argument("exponent out of range");
      m[k] = Exponent(base[k]);
      m[d + k] = Exponent(partial[k]);
    }
    out.push_back({std::move(m), parse_rational(t.at("coeff").get<std::string>())});
  }
  return WeylPolynomial(table, std::move(out));
}

WeylPolynomial operator_entry(const nlohmann::json& e, const VarTable& table) {
  if (e.is_string()) return parse_operator(e.get<std::string>(), table);
  if (e.contains("terms")) return terms_from_json(e.at("terms"), table);
  if (e.contains("text")) return parse_operator(e.at("text").get<std::string>(), table);
  throw std::invalid_argument("operator entry needs 'terms' or 'text'");
}

}  // namespace

WeylPolynomial operator_from_json(const nlohmann::json& j) {
  VarTable table = table_from_json(j.at("table"));
  return operator_entry(j, table);
}

nlohmann::json to_json(const OperatorFamily& fam) {
  nlohmann::json ops = nlohmann::json::array();
  const std::size_t d = fam.table.size();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : fam.operators[i].terms())
      terms.push_back({{"base", exponent_list(t.monomial, 0, d)},
                       {"partial", exponent_list(t.monomial, d, d)},
                       {"coeff", to_string(t.coeff)}});
    ops.push_back({{"label", fam.labels[i]}, {"text", to_text(fam.operators[i])}, {"terms", terms}});
  }
  return {{"family", std::string(to_string(fam.family))},
          {"n", fam.n},
          {"table", table_to_json(fam.table)},
          {"operators", ops}};
}

OperatorList operator_list_from_json(const nlohmann::json& j) {
  VarTable table = table_from_json(j.at("table"));
  OperatorList out{table, {}, {}};
  if (!j.contains("operators")) {
    out.labels.push_back("op1");
    out.operators.push_back(operator_entry(j, table));
    return out;
  }
  std::size_t k = 0;
  for (const auto& e : j.at("operators")) {
    ++k;
    out.labels.push_back(e.is_object() && e.contains("label") ? e.at("label").get<std::string>()
                                                              : "op" + std::to_string(k));
    out.operators.push_back(operator_entry(e, table));
  }
  return out;
}

nlohmann::json to_json(const OperatorList& list) {
  nlohmann::json ops = nlohmann::json::array();
  for (std::size_t i = 0; i < list.operators.size(); ++i) {
    nlohmann::json e = to_json(list.operators[i]);
    e.erase("table");
    e["label"] = list.labels[i];
    e["text"] = to_text(list.operators[i]);
    ops.push_back(e);
  }
  return {{"table", table_to_json(list.table)}, {"operators", ops}};
}

nlohmann::json to_json(const GroebnerBasis& gb) {
  OperatorList list{gb.table(), {}, gb.generators()};
  for (std::size_t i = 0; i < gb.size(); ++i) list.labels.push_back("g" + std::to_string(i + 1));
  nlohmann::json j = to_json(list);
  j["order"] = gb.order().to_json(gb.table());
  j["source"] = gb.source();
  return j;
}

CommutativeIdeal comm_ideal_from_json(const nlohmann::json& j) {
  CommutativeIdeal out{make_ring(j.at("variables").get<std::vector<std::string>>()), {}};
  for (const auto& p : j.at("polynomials")) out.polynomials.push_back(parse_polynomial(p.get<std::string>(), out.ring));
  return out;
}

nlohmann::json to_json(const CommutativeIdeal& ideal) {
  nlohmann::json polys = nlohmann::json::array();
  for (const auto& p : ideal.polynomials) polys.push_back(to_text(p));
  return {{"variables", ideal.ring->names()}, {"polynomials", polys}};
}

}  // namespace holoweyl
