#include "holoweyl/weyl.hpp"

#include "holoweyl/detail/weyl_kernel.hpp"
#include "holoweyl/errors.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace holoweyl {

namespace {

using Term = WeylPolynomial::Term;

void normalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational c = terms[i].coeff;
    c.canonicalize();
    while (j < terms.size() && terms[j].monomial == terms[i].monomial) c += terms[j++].coeff;
    if (c != 0) {
      terms[out].monomial = std::move(terms[i].monomial);
      terms[out].coeff = c;
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].monomial < b[j].monomial)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].monomial < a[i].monomial) {
      out.push_back(b[j]);
      if (sign < 0) out.back().coeff = -out.back().coeff;
      ++j;
    } else {
      Rational c = sign < 0 ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back(Term{a[i].monomial, c});
      ++i;
      ++j;
    }
  }
  return out;
}

void check_same_table(const WeylPolynomial& a, const WeylPolynomial& b) {
  if (!(a.table() == b.table()))
    throw std::invalid_argument("operators belong to different variable tables");
}

}  // namespace

WeylPolynomial::WeylPolynomial(VarTable table) : table_(table) {}

WeylPolynomial::WeylPolynomial(VarTable table, std::vector<Term> terms)
    : table_(table), terms_(std::move(terms)) {
  const std::size_t len = 2 * table_.size();
  for (const auto& t : terms_)
    if (t.monomial.size() != len) throw std::invalid_argument("monomial length does not match table");
  normalize_terms(terms_);
}

WeylPolynomial WeylPolynomial::constant(const VarTable& table, const Rational& c) {
  return WeylPolynomial(table, {Term{WeylMonomial(2 * table.size(), 0), c}});
}

WeylPolynomial WeylPolynomial::var(const VarTable& table, std::size_t slot) {
  WeylMonomial m(2 * table.size(), 0);
  m.at(slot) = 1;
  return WeylPolynomial(table, {Term{m, 1}});
}

WeylPolynomial WeylPolynomial::del(const VarTable& table, std::size_t slot) {
  if (slot >= table.size()) throw std::out_of_range("slot outside table");
  WeylMonomial m(2 * table.size(), 0);
  m[table.size() + slot] = 1;
  return WeylPolynomial(table, {Term{m, 1}});
}

WeylPolynomial WeylPolynomial::monomial(const VarTable& table, WeylMonomial m, const Rational& c) {
  return WeylPolynomial(table, {Term{std::move(m), c}});
}

WeylPolynomial WeylPolynomial::from_polynomial(const VarTable& table, const CommutativePolynomial& f) {
  if (f.arity() != table.size())
    throw std::invalid_argument("polynomial is not over the base variables of the table");
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    WeylMonomial m(2 * table.size(), 0);
    std::copy(t.monomial.begin(), t.monomial.end(), m.begin());
    out.push_back(Term{std::move(m), t.coeff});
  }
  return WeylPolynomial(table, std::move(out));
}

Rational WeylPolynomial::coefficient(const WeylMonomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const WeylMonomial& k) { return t.monomial < k; });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return 0;
}

std::size_t WeylPolynomial::total_degree() const {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max(d, holoweyl::total_degree(t.monomial));
  return d;
}

bool WeylPolynomial::free_of(std::span<const std::size_t> slots, bool base, bool partial) const {
  const std::size_t d = table_.size();
  for (const auto& t : terms_)
    for (std::size_t s : slots) {
      if (base && t.monomial[s] != 0) return false;
      if (partial && t.monomial[d + s] != 0) return false;
    }
  return true;
}

WeylPolynomial& WeylPolynomial::operator+=(const WeylPolynomial& o) {
  check_same_table(*this, o);
  terms_ = merge(terms_, o.terms_, +1);
  return *this;
}

WeylPolynomial& WeylPolynomial::operator-=(const WeylPolynomial& o) {
  check_same_table(*this, o);
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

WeylPolynomial& WeylPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

WeylPolynomial operator*(const WeylPolynomial& a, const WeylPolynomial& b) { return mul(a, b); }

WeylPolynomial add(const WeylPolynomial& p, const WeylPolynomial& q) { return p + q; }

WeylPolynomial mul(const WeylPolynomial& p, const WeylPolynomial& q, std::size_t term_limit) {
  check_same_table(p, q);
  const std::size_t d = p.table().size();
  std::vector<Term> out;
  for (const auto& s : p.terms()) {
    for (const auto& t : q.terms()) {
      const Rational c = s.coeff * t.coeff;
      detail::weyl_monomial_product(s.monomial, t.monomial, d,
                                    [&](const WeylMonomial& m, const Integer& k) {
                                      out.push_back(Term{m, c * k});
                                    });
      if (out.size() > term_limit)
        throw ResourceExhausted("product expansion exceeds " + std::to_string(term_limit) + " terms");
    }
  }
  return WeylPolynomial(p.table(), std::move(out));
}

WeylPolynomial commutator(const WeylPolynomial& p, const WeylPolynomial& q) { return mul(p, q) - mul(q, p); }

WeylPolynomial formal_adjoint(const WeylPolynomial& p, std::span<const std::size_t> subset) {
  const std::size_t d = p.table().size();
  std::vector<bool> in_subset(d, false);
  for (std::size_t s : subset) {
    if (s >= d) throw std::out_of_range("adjoint slot outside table");
    in_subset[s] = true;
  }
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    // Split into the untouched word and the transposed factors d^b z^a.
    WeylMonomial kept(2 * d, 0), dels(2 * d, 0), vars(2 * d, 0);
    unsigned sign = 0;
    for (std::size_t k = 0; k < d; ++k) {
      if (in_subset[k]) {
        dels[d + k] = t.monomial[d + k];
        vars[k] = t.monomial[k];
        sign += t.monomial[d + k];
      } else {
        kept[k] = t.monomial[k];
        kept[d + k] = t.monomial[d + k];
      }
    }
    const Rational c = (sign % 2 == 0) ? t.coeff : Rational(-t.coeff);
    detail::weyl_monomial_product(dels, vars, d, [&](const WeylMonomial& m, const Integer& k) {
      out.push_back(Term{add_exponents(m, kept), c * k});
    });
  }
  return WeylPolynomial(p.table(), std::move(out));
}

WeylPolynomial twist(const WeylPolynomial& p, const CommutativePolynomial& f,
                     std::span<const std::size_t> vars) {
  const VarTable& table = p.table();
  const std::size_t d = table.size();
  if (f.arity() != d) throw std::invalid_argument("twist polynomial is not over the table's base variables");
  std::vector<bool> twisted(d, false);
  for (std::size_t v : vars) {
    if (v >= d) throw std::out_of_range("twist slot outside table");
    twisted[v] = true;
  }
  // (d_v - f_v)^k, cached per slot.
  std::map<std::pair<std::size_t, unsigned>, WeylPolynomial> powers;
  auto power = [&](std::size_t v, unsigned k) -> const WeylPolynomial& {
    auto key = std::make_pair(v, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    WeylPolynomial base = WeylPolynomial::del(table, v);
    if (twisted[v]) base -= WeylPolynomial::from_polynomial(table, f.derivative(v));
    WeylPolynomial acc = WeylPolynomial::constant(table, 1);
    for (unsigned i = 0; i < k; ++i) acc = mul(acc, base);
    return powers.emplace(key, std::move(acc)).first->second;
  };

  WeylPolynomial out(table);
  for (const auto& t : p.terms()) {
    WeylMonomial zpart(2 * d, 0);
    std::copy(t.monomial.begin(), t.monomial.begin() + std::ptrdiff_t(d), zpart.begin());
    WeylPolynomial acc = WeylPolynomial::monomial(table, zpart, t.coeff);
    for (std::size_t v = 0; v < d; ++v) {
      const unsigned k = t.monomial[d + v];
      if (k != 0) acc = mul(acc, power(v, k));
    }
    out += acc;
  }
  return out;
}

WeylPolynomial lift(const WeylPolynomial& p, const VarTable& target) {
  const VarTable& src = p.table();
  if (src.n() != target.n()) throw std::invalid_argument("lift between tables of different n");
  if (src.size() > target.size()) throw std::invalid_argument("lift target is smaller than source");
  const std::size_t ds = src.size(), dt = target.size();
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    WeylMonomial m(2 * dt, 0);
    for (std::size_t k = 0; k < ds; ++k) {
      m[k] = t.monomial[k];
      m[dt + k] = t.monomial[ds + k];
    }
    out.push_back(Term{std::move(m), t.coeff});
  }
  return WeylPolynomial(target, std::move(out));
}

WeylPolynomial restrict_to(const WeylPolynomial& p, const VarTable& target) {
  const VarTable& src = p.table();
  if (src.n() != target.n() || target.size() > src.size())
    throw std::invalid_argument("restriction target is not a subtable");
  const std::size_t ds = src.size(), dt = target.size();
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    for (std::size_t k = dt; k < ds; ++k)
      if (t.monomial[k] != 0 || t.monomial[ds + k] != 0)
        throw std::invalid_argument("operator involves variables outside the target table");
    WeylMonomial m(2 * dt, 0);
    for (std::size_t k = 0; k < dt; ++k) {
      m[k] = t.monomial[k];
      m[dt + k] = t.monomial[ds + k];
    }
    out.push_back(Term{std::move(m), t.coeff});
  }
  return WeylPolynomial(target, std::move(out));
}

CommutativePolynomial to_symbol_polynomial(const WeylPolynomial& p) {
  std::vector<CommutativePolynomial::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.monomial, t.coeff});
  return CommutativePolynomial(symbol_ring(p.table()), std::move(out));
}

}  // namespace holoweyl
