#include "holoweyl/term_order.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace holoweyl {

std::string_view to_string(OrderKind kind) {
  switch (kind) {
    case OrderKind::Lex:
      return "lex";
    case OrderKind::Grlex:
      return "grlex";
    case OrderKind::Grevlex:
      return "grevlex";
  }
  return "lex";
}

OrderKind parse_order_kind(std::string_view text) {
  if (text == "lex") return OrderKind::Lex;
  if (text == "grlex") return OrderKind::Grlex;
  if (text == "grevlex") return OrderKind::Grevlex;
  throw std::invalid_argument("unknown order kind '" + std::string(text) + "'");
}

namespace {

std::strong_ordering compare_block(const TermOrder::Block& blk, const Exponents& a, const Exponents& b) {
  if (blk.kind != OrderKind::Lex) {
    unsigned da = 0, db = 0;
    for (std::size_t i : blk.precedence) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da <=> db;
  }
  if (blk.kind == OrderKind::Grevlex) {
    for (auto it = blk.precedence.rbegin(); it != blk.precedence.rend(); ++it)
      if (a[*it] != b[*it]) return b[*it] <=> a[*it];
    return std::strong_ordering::equal;
  }
  for (std::size_t i : blk.precedence)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

void check_permutation(const std::vector<std::size_t>& p, std::size_t arity) {
  std::vector<bool> seen(arity, false);
  for (std::size_t i : p) {
    if (i >= arity || seen[i]) throw std::invalid_argument("order precedence is not a permutation");
    seen[i] = true;
  }
}

std::vector<std::size_t> iota_vec(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

// Partials in slot order, then base variables in slot order.
std::vector<std::size_t> default_precedence(const VarTable& table) {
  const std::size_t d = table.size();
  auto p = iota_vec(d, 2 * d);
  auto b = iota_vec(0, d);
  p.insert(p.end(), b.begin(), b.end());
  return p;
}

// Slot of a variable name in the packed layout: base, "d"-partial or "xi_"-symbol.
std::size_t packed_slot(const VarTable& table, std::string_view name) {
  std::string_view n = name;
  bool symbol = false;
  if (n.starts_with("xi_")) {
    symbol = true;
    n.remove_prefix(3);
  }
  auto hit = table.find(n);
  if (!hit || (symbol && hit->partial)) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  return (symbol || hit->partial) ? table.size() + hit->slot : hit->slot;
}

std::string packed_name(const VarTable& table, std::size_t slot) {
  const std::size_t d = table.size();
  return slot < d ? table.name(slot) : table.partial_name(slot - d);
}

}  // namespace

TermOrder TermOrder::plain(OrderKind kind, std::vector<std::size_t> precedence, std::string name) {
  TermOrder o;
  o.arity_ = precedence.size();
  check_permutation(precedence, o.arity_);
  o.blocks_.push_back(Block{kind, std::move(precedence)});
  o.name_ = name.empty() ? std::string(to_string(kind)) : std::move(name);
  return o;
}

TermOrder TermOrder::weighted(std::vector<std::int64_t> weight, const TermOrder& tie, std::string name) {
  if (weight.size() != tie.arity_) throw std::invalid_argument("weight vector has wrong length");
  TermOrder o = tie;
  o.weights_.insert(o.weights_.begin(), std::move(weight));
  o.name_ = name.empty() ? "weighted(" + tie.name_ + ")" : std::move(name);
  return o;
}

TermOrder TermOrder::weighted(std::span<const std::int64_t> u, std::span<const std::int64_t> v,
                              const TermOrder& tie, std::string name) {
  if (u.size() != v.size()) throw std::invalid_argument("weight vectors u and v differ in length");
  std::vector<std::int64_t> w(u.begin(), u.end());
  w.insert(w.end(), v.begin(), v.end());
  TermOrder o = weighted(std::move(w), tie, std::move(name));
  if (!o.is_weyl_admissible()) throw std::invalid_argument("weight (u, v) violates u + v >= 0");
  return o;
}

TermOrder TermOrder::block(std::vector<std::size_t> first, const TermOrder& inner, std::string name) {
  if (!inner.weights_.empty() || inner.blocks_.size() != 1)
    throw std::invalid_argument("block order needs a plain inner order");
  const Block& in = inner.blocks_.front();
  std::vector<bool> chosen(inner.arity_, false);
  for (std::size_t i : first) {
    if (i >= inner.arity_ || chosen[i]) throw std::invalid_argument("bad block variable list");
    chosen[i] = true;
  }
  Block a{in.kind, {}}, b{in.kind, {}};
  for (std::size_t i : in.precedence) (chosen[i] ? a : b).precedence.push_back(i);
  TermOrder o;
  o.arity_ = inner.arity_;
  o.blocks_ = {std::move(a), std::move(b)};
  o.name_ = name.empty() ? "block(" + inner.name_ + ")" : std::move(name);
  return o;
}

TermOrder TermOrder::for_ring(OrderKind kind, std::size_t arity) {
  return plain(kind, iota_vec(0, arity));
}

std::vector<std::string> TermOrder::preset_names() {
  return {"lex", "grlex", "grevlex", "paper-s2", "paper-s4", "char", "pfaffian-grevlex", "pfaffian-lex"};
}

TermOrder TermOrder::preset(std::string_view name, const VarTable& table) {
  const std::size_t d = table.size();
  if (name == "lex" || name == "grlex" || name == "grevlex")
    return plain(parse_order_kind(name), default_precedence(table), std::string(name));
  if (name == "paper-s2") {
    std::vector<std::size_t> p;
    if (table.has_t())
      for (int i = table.n() + 1; i >= 1; --i) p.push_back(d + table.t(i));
    for (auto k : table.slots(VarKind::X)) p.push_back(d + k);
    for (auto k : table.slots(VarKind::Y)) p.push_back(d + k);
    p.push_back(d + table.r());
    if (table.has_t())
      for (int i = table.n() + 1; i >= 1; --i) p.push_back(table.t(i));
    for (auto k : table.slots(VarKind::X)) p.push_back(k);
    for (auto k : table.slots(VarKind::Y)) p.push_back(k);
    p.push_back(table.r());
    return plain(OrderKind::Grlex, std::move(p), "paper-s2");
  }
  if (name == "paper-s4") {
    std::vector<std::int64_t> w(2 * d, 0);
    if (table.has_t())
      for (auto k : table.slots(VarKind::T)) w[k] = 1;
    return weighted(std::move(w), preset("grevlex", table), "paper-s4");
  }
  if (name == "char") {
    auto [u, v] = symbol_weights(table);
    return weighted(u, v, preset("grevlex", table), "char");
  }
  if (name == "pfaffian-grevlex" || name == "pfaffian-lex") {
    std::vector<std::size_t> partials;
    if (table.has_t())
      for (auto k : table.slots(VarKind::T)) partials.push_back(d + k);
    partials.push_back(d + table.r());
    for (auto k : table.slots(VarKind::X)) partials.push_back(d + k);
    for (auto k : table.slots(VarKind::Y)) partials.push_back(d + k);
    std::vector<std::size_t> p = partials;
    for (std::size_t k = 0; k < d; ++k) p.push_back(k);
    const OrderKind kind = name == "pfaffian-lex" ? OrderKind::Lex : OrderKind::Grevlex;
    return block(partials, plain(kind, std::move(p)), std::string(name));
  }
  throw std::invalid_argument("unknown order preset '" + std::string(name) + "'");
}

TermOrder::Key TermOrder::key(const Exponents& e) const {
  Key k;
  for (const auto& w : weights_) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < arity_; ++i) s += w[i] * e[i];
    k.push_back(std::int32_t(s));
  }
  for (const auto& blk : blocks_) {
    if (blk.kind != OrderKind::Lex) {
      std::int32_t deg = 0;
      for (std::size_t i : blk.precedence) deg += e[i];
      k.push_back(deg);
    }
    if (blk.kind == OrderKind::Grevlex) {
      for (auto it = blk.precedence.rbegin(); it != blk.precedence.rend(); ++it) k.push_back(-std::int32_t(e[*it]));
    } else {
      for (std::size_t i : blk.precedence) k.push_back(e[i]);
    }
  }
  return k;
}

std::strong_ordering TermOrder::compare(const Exponents& a, const Exponents& b) const {
  for (const auto& w : weights_) {
    std::int64_t wa = 0, wb = 0;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (w[i] == 0) continue;
      wa += w[i] * a[i];
      wb += w[i] * b[i];
    }
    if (wa != wb) return wa <=> wb;
  }
  for (const auto& blk : blocks_) {
    auto c = compare_block(blk, a, b);
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool TermOrder::is_weyl_admissible() const {
  if (arity_ % 2 != 0) return false;
  const std::size_t d = arity_ / 2;
  for (const auto& w : weights_)
    for (std::size_t i = 0; i < d; ++i)
      if (w[i] + w[d + i] < 0) return false;
  return true;
}

bool TermOrder::is_well_order() const {
  for (const auto& w : weights_)
    for (auto x : w)
      if (x < 0) return false;
  return true;
}

nlohmann::json TermOrder::to_json(const VarTable& table) const {
  using nlohmann::json;
  auto names = [&](const std::vector<std::size_t>& slots) {
    json a = json::array();
    for (auto s : slots) a.push_back(packed_name(table, s));
    return a;
  };
  json j;
  j["name"] = name_;
  json blocks = json::array();
  for (const auto& b : blocks_) blocks.push_back({{"kind", to_string(b.kind)}, {"precedence", names(b.precedence)}});
  j["blocks"] = blocks;
  json ws = json::array();
  for (const auto& w : weights_) {
    json row = json::object();
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] != 0) row[packed_name(table, i)] = w[i];
    ws.push_back(row);
  }
  j["weights"] = ws;
  return j;
}

TermOrder TermOrder::from_json(const nlohmann::json& j, const VarTable& table) {
  const std::size_t arity = 2 * table.size();
  if (j.is_string()) return preset(j.get<std::string>(), table);
  if (j.contains("preset")) return preset(j.at("preset").get<std::string>(), table);
  if (j.contains("weight")) {
    std::vector<std::int64_t> w(arity, 0);
    for (const auto& [k, v] : j.at("weight").items()) w[packed_slot(table, k)] = v.get<std::int64_t>();
    TermOrder tie = j.contains("tie") ? from_json(j.at("tie"), table) : preset("grevlex", table);
    TermOrder o = weighted(std::move(w), tie, j.value("name", std::string()));
    if (!o.is_weyl_admissible()) throw std::invalid_argument("weight violates u + v >= 0");
    return o;
  }
  if (j.contains("block")) {
    std::vector<std::size_t> first;
    for (const auto& n : j.at("block")) first.push_back(packed_slot(table, n.get<std::string>()));
    TermOrder inner = j.contains("inner") ? from_json(j.at("inner"), table) : preset("grevlex", table);
    return block(std::move(first), inner, j.value("name", std::string()));
  }
  if (j.contains("blocks")) {
    // Round trip of to_json.
    TermOrder o;
    o.arity_ = arity;
    o.name_ = j.value("name", std::string("custom"));
    std::vector<std::size_t> all;
    for (const auto& b : j.at("blocks")) {
      Block blk{parse_order_kind(b.at("kind").get<std::string>()), {}};
      for (const auto& n : b.at("precedence")) blk.precedence.push_back(packed_slot(table, n.get<std::string>()));
      all.insert(all.end(), blk.precedence.begin(), blk.precedence.end());
      o.blocks_.push_back(std::move(blk));
    }
    check_permutation(all, arity);
    if (all.size() != arity) throw std::invalid_argument("order blocks do not cover every variable");
    for (const auto& row : j.value("weights", nlohmann::json::array())) {
      std::vector<std::int64_t> w(arity, 0);
      for (const auto& [k, v] : row.items()) w[packed_slot(table, k)] = v.get<std::int64_t>();
      o.weights_.push_back(std::move(w));
    }
    if (!o.is_weyl_admissible()) throw std::invalid_argument("weight violates u + v >= 0");
    return o;
  }
  if (j.contains("kind")) {
    std::vector<std::size_t> p;
    if (j.contains("precedence")) {
      for (const auto& n : j.at("precedence")) p.push_back(packed_slot(table, n.get<std::string>()));
    } else {
      p = default_precedence(table);
    }
    if (p.size() != arity) throw std::invalid_argument("precedence must list every variable");
    return plain(parse_order_kind(j.at("kind").get<std::string>()), std::move(p), j.value("name", std::string()));
  }
  throw std::invalid_argument("unrecognized order descriptor");
}

std::pair<WeylMonomial, Rational> leading_term(const WeylPolynomial& p, const TermOrder& ord) {
  if (p.is_zero()) throw std::domain_error("leading term of the zero operator");
  if (ord.arity() != 2 * p.table().size()) throw std::invalid_argument("order arity does not match table");
  const auto* best = &p.terms().front();
  for (const auto& t : p.terms())
    if (ord.less(best->monomial, t.monomial)) best = &t;
  return {best->monomial, best->coeff};
}

std::pair<Exponents, Rational> leading_term(const CommutativePolynomial& p, const TermOrder& ord) {
  if (p.is_zero()) throw std::domain_error("leading term of the zero polynomial");
  if (ord.arity() != p.arity()) throw std::invalid_argument("order arity does not match ring");
  const auto* best = &p.terms().front();
  for (const auto& t : p.terms())
    if (ord.less(best->monomial, t.monomial)) best = &t;
  return {best->monomial, best->coeff};
}

CommutativePolynomial initial_form(const WeylPolynomial& p, std::span<const std::int64_t> u,
                                   std::span<const std::int64_t> v) {
  const std::size_t d = p.table().size();
  if (u.size() != d || v.size() != d) throw std::invalid_argument("weight vectors have wrong length");
  for (std::size_t i = 0; i < d; ++i)
    if (u[i] + v[i] < 0) throw std::invalid_argument("initial form needs u + v >= 0");
  std::vector<CommutativePolynomial::Term> top;
  std::int64_t best = 0;
  for (const auto& t : p.terms()) {
    std::int64_t w = 0;
    for (std::size_t i = 0; i < d; ++i) w += u[i] * t.monomial[i] + v[i] * t.monomial[d + i];
    if (top.empty() || w > best) {
      top.clear();
      best = w;
    }
    if (w == best) top.push_back({t.monomial, t.coeff});
  }
  return CommutativePolynomial(symbol_ring(p.table()), std::move(top));
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> symbol_weights(const VarTable& table) {
  return {std::vector<std::int64_t>(table.size(), 0), std::vector<std::int64_t>(table.size(), 1)};
}

}  // namespace holoweyl
