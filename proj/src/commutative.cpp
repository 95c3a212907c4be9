#include "holoweyl/commutative.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace holoweyl {

PolynomialRing::PolynomialRing(std::vector<std::string> names) : names_(std::move(names)) {}

std::optional<std::size_t> PolynomialRing::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

RingRef make_ring(std::vector<std::string> names) {
  return std::make_shared<const PolynomialRing>(std::move(names));
}

RingRef base_ring(const VarTable& table) { return make_ring(table.names()); }

RingRef symbol_ring(const VarTable& table) {
  auto names = table.names();
  for (std::size_t k = 0; k < table.size(); ++k) names.push_back(table.symbol_name(k));
  return make_ring(std::move(names));
}

bool same_ring(const RingRef& a, const RingRef& b) { return a == b || *a == *b; }

namespace {

using Term = CommutativePolynomial::Term;

bool term_less(const Term& a, const Term& b) { return a.monomial < b.monomial; }

void normalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), term_less);
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

}  // namespace

CommutativePolynomial::CommutativePolynomial(RingRef ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("null polynomial ring");
}

CommutativePolynomial::CommutativePolynomial(RingRef ring, std::vector<Term> terms)
    : ring_(std::move(ring)), terms_(std::move(terms)) {
  if (!ring_) throw std::invalid_argument("null polynomial ring");
  for (const auto& t : terms_)
    if (t.monomial.size() != ring_->size())
      throw std::invalid_argument("exponent vector length does not match ring");
  normalize_terms(terms_);
}

CommutativePolynomial CommutativePolynomial::constant(RingRef ring, const Rational& c) {
  Exponents e(ring->size(), 0);
  return CommutativePolynomial(ring, {Term{e, c}});
}

CommutativePolynomial CommutativePolynomial::variable(RingRef ring, std::size_t i) {
  Exponents e(ring->size(), 0);
  e.at(i) = 1;
  return CommutativePolynomial(ring, {Term{e, 1}});
}

CommutativePolynomial CommutativePolynomial::monomial(RingRef ring, Exponents e, const Rational& c) {
  return CommutativePolynomial(ring, {Term{std::move(e), c}});
}

bool CommutativePolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && is_one(terms_[0].monomial));
}

Rational CommutativePolynomial::coefficient(const Exponents& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponents& m) { return t.monomial < m; });
  if (it != terms_.end() && it->monomial == e) return it->coeff;
  return 0;
}

std::size_t CommutativePolynomial::total_degree() const {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max(d, holoweyl::total_degree(t.monomial));
  return d;
}

std::size_t CommutativePolynomial::degree(std::size_t i) const {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max<std::size_t>(d, t.monomial[i]);
  return d;
}

CommutativePolynomial CommutativePolynomial::derivative(std::size_t i) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.monomial[i] == 0) continue;
    Term d{t.monomial, t.coeff * t.monomial[i]};
    d.monomial[i] -= 1;
    out.push_back(std::move(d));
  }
  return CommutativePolynomial(ring_, std::move(out));
}

double CommutativePolynomial::evaluate(std::span<const double> point) const {
  if (point.size() != arity()) throw std::invalid_argument("evaluation point has wrong length");
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = to_double(t.coeff);
    for (std::size_t k = 0; k < t.monomial.size(); ++k)
      for (Exponent p = 0; p < t.monomial[k]; ++p) v *= point[k];
    sum += v;
  }
  return sum;
}

Rational CommutativePolynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != arity()) throw std::invalid_argument("evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t k = 0; k < t.monomial.size(); ++k)
      for (Exponent p = 0; p < t.monomial[k]; ++p) v *= point[k];
    sum += v;
  }
  return sum;
}

void CommutativePolynomial::check_ring(const CommutativePolynomial& o) const {
  if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("polynomials live in different rings");
}

CommutativePolynomial& CommutativePolynomial::operator+=(const CommutativePolynomial& o) {
  check_ring(o);
  terms_ = merge(terms_, o.terms_, +1);
  return *this;
}

CommutativePolynomial& CommutativePolynomial::operator-=(const CommutativePolynomial& o) {
  check_ring(o);
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

CommutativePolynomial& CommutativePolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

CommutativePolynomial operator*(const CommutativePolynomial& a, const CommutativePolynomial& b) {
  a.check_ring(b);
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) out.push_back(Term{add_exponents(s.monomial, t.monomial), s.coeff * t.coeff});
  return CommutativePolynomial(a.ring_, std::move(out));
}

bool operator==(const CommutativePolynomial& a, const CommutativePolynomial& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::string CommutativePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest lex term first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->coeff;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t k = 0; k < it->monomial.size(); ++k) {
      if (it->monomial[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(k);
      if (it->monomial[k] > 1) mono += "^" + std::to_string(it->monomial[k]);
    }
    if (mono.empty()) {
      out += holoweyl::to_string(c);
    } else {
      if (c != 1) out += holoweyl::to_string(c) + "*";
      out += mono;
    }
  }
  return out;
}

std::optional<CommutativePolynomial> exact_divide(const CommutativePolynomial& a,
                                                  const CommutativePolynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  CommutativePolynomial q(a.ring());
  CommutativePolynomial rem = a;
  const auto& lb = b.terms().back();
  while (!rem.is_zero()) {
    const auto& lr = rem.terms().back();
    if (!divides(lb.monomial, lr.monomial)) return std::nullopt;
    auto t = CommutativePolynomial::monomial(a.ring(), sub_exponents(lr.monomial, lb.monomial),
                                             lr.coeff / lb.coeff);
    rem -= t * b;
    q += t;
  }
  return q;
}

namespace {

// Coefficients of p viewed as a polynomial in variable v (v-exponent cleared).
std::map<std::size_t, CommutativePolynomial> coefficients_in(const CommutativePolynomial& p,
                                                             std::size_t v) {
  std::map<std::size_t, std::vector<Term>> buckets;
  for (const auto& t : p.terms()) {
    Term c = t;
    c.monomial[v] = 0;
    buckets[t.monomial[v]].push_back(std::move(c));
  }
  std::map<std::size_t, CommutativePolynomial> out;
  for (auto& [d, terms] : buckets) out.emplace(d, CommutativePolynomial(p.ring(), std::move(terms)));
  return out;
}

CommutativePolynomial power_of(const RingRef& ring, std::size_t v, std::size_t k) {
  Exponents e(ring->size(), 0);
  e[v] = Exponent(k);
  return CommutativePolynomial::monomial(ring, e);
}

// Integer coprime coefficients, positive leading (lex-highest) coefficient.
CommutativePolynomial normalize_unit(const CommutativePolynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  for (const auto& t : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& t : p.terms()) {
    Integer scaled = t.coeff.get_num() * (den_lcm / t.coeff.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.terms().back().coeff < 0) scale = -scale;
  return p * scale;
}

std::optional<std::size_t> main_variable(const CommutativePolynomial& a, const CommutativePolynomial& b) {
  std::optional<std::size_t> v;
  for (const auto* p : {&a, &b})
    for (const auto& t : p->terms())
      for (std::size_t k = 0; k < t.monomial.size(); ++k)
        if (t.monomial[k] != 0 && (!v || k > *v)) v = k;
  return v;
}

CommutativePolynomial gcd_impl(const CommutativePolynomial& a, const CommutativePolynomial& b);

CommutativePolynomial content_in(const CommutativePolynomial& p, std::size_t v) {
  CommutativePolynomial g(p.ring());
  for (const auto& [d, c] : coefficients_in(p, v)) {
    g = gcd_impl(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

CommutativePolynomial pseudo_remainder(CommutativePolynomial a, const CommutativePolynomial& b,
                                       std::size_t v) {
  const std::size_t k = b.degree(v);
  const auto bc = coefficients_in(b, v);
  const CommutativePolynomial lcb = bc.rbegin()->second;
  while (!a.is_zero() && a.degree(v) >= k) {
    const std::size_t m = a.degree(v);
    const CommutativePolynomial lca = coefficients_in(a, v).rbegin()->second;
    a = lcb * a - lca * power_of(a.ring(), v, m - k) * b;
  }
  return a;
}

CommutativePolynomial gcd_impl(const CommutativePolynomial& a, const CommutativePolynomial& b) {
  if (a.is_zero()) return normalize_unit(b);
  if (b.is_zero()) return normalize_unit(a);
  auto v = main_variable(a, b);
  if (!v) return CommutativePolynomial::constant(a.ring(), 1);
  if (a.degree(*v) == 0) return gcd_impl(a, content_in(b, *v));
  if (b.degree(*v) == 0) return gcd_impl(content_in(a, *v), b);

  const auto ca = content_in(a, *v);
  const auto cb = content_in(b, *v);
  auto pa = *exact_divide(a, ca);
  auto pb = *exact_divide(b, cb);
  const auto c = gcd_impl(ca, cb);
  if (pa.degree(*v) < pb.degree(*v)) std::swap(pa, pb);
  // Primitive polynomial remainder sequence.
  while (true) {
    auto rem = pseudo_remainder(pa, pb, *v);
    if (rem.is_zero()) break;
    if (rem.degree(*v) == 0) {
      pb = CommutativePolynomial::constant(a.ring(), 1);
      break;
    }
    pa = std::move(pb);
    pb = *exact_divide(rem, content_in(rem, *v));
  }
  return normalize_unit(c * pb);
}

}  // namespace

CommutativePolynomial gcd(const CommutativePolynomial& a, const CommutativePolynomial& b) {
  if (!same_ring(a.ring(), b.ring())) throw std::invalid_argument("gcd of polynomials in different rings");
  return gcd_impl(a, b);
}

}  // namespace holoweyl
