#include "holoweyl/groebner.hpp"

#include "holoweyl/detail/engine.hpp"

#include <stdexcept>

namespace holoweyl {

namespace {

using detail::OPoly;
using detail::OTerm;
using Engine = detail::GroebnerEngine<detail::WeylOps>;

OPoly to_ordered(const WeylPolynomial& p, const TermOrder& ord) {
  OPoly out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back(detail::make_term(ord, t.monomial, t.coeff));
  detail::sort_terms(out);
  return out;
}

WeylPolynomial from_ordered(const VarTable& table, const OPoly& p) {
  std::vector<WeylPolynomial::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p) terms.push_back({t.m, t.c});
  return WeylPolynomial(table, std::move(terms));
}

void check_inputs(std::span<const WeylPolynomial> gens, const TermOrder& ord, bool need_well_order) {
  if (gens.empty()) return;
  const VarTable& table = gens.front().table();
  for (const auto& g : gens)
    if (!(g.table() == table)) throw std::invalid_argument("generators belong to different tables");
  if (ord.arity() != 2 * table.size()) throw std::invalid_argument("order arity does not match table");
  if (!ord.is_weyl_admissible()) throw std::invalid_argument("order is not admissible for the Weyl algebra");
  if (need_well_order && !ord.is_well_order())
    throw std::invalid_argument("Buchberger needs a well-order (nonnegative weights)");
}

}  // namespace

Reduction left_reduce(const WeylPolynomial& p, std::span<const WeylPolynomial> divisors, const TermOrder& ord,
                      const Budget& budget) {
  if (divisors.empty()) throw std::invalid_argument("left_reduce needs at least one divisor");
  for (const auto& g : divisors)
    if (g.is_zero()) throw std::invalid_argument("left_reduce: zero divisor");
  check_inputs(divisors, ord, false);
  if (!(p.table() == divisors.front().table())) throw std::invalid_argument("operator and divisors differ in table");

  const VarTable& table = p.table();
  Engine engine(detail::WeylOps(table.size()), ord, budget, 0);
  std::vector<Engine::Element> set;
  for (const auto& g : divisors) {
    Engine::Element e;
    e.poly = to_ordered(g, ord);
    e.mask = detail::divmask(e.poly.back().m);
    set.push_back(std::move(e));
  }
  std::vector<std::pair<std::size_t, OTerm>> log;
  OPoly rem = engine.reduce(to_ordered(p, ord), nullptr, set, true, nullptr, &log);

  std::vector<std::vector<WeylPolynomial::Term>> q(divisors.size());
  for (auto& [k, t] : log) q[k].push_back({t.m, t.c});
  Reduction out{from_ordered(table, rem), {}};
  for (auto& terms : q) out.quotients.emplace_back(table, std::move(terms));
  return out;
}

GroebnerBasis::GroebnerBasis(VarTable table, TermOrder order, std::vector<WeylPolynomial> generators,
                             std::vector<WeylPolynomial> inputs,
                             std::vector<std::vector<WeylPolynomial>> cofactors, std::string source)
    : table_(table), order_(std::move(order)), generators_(std::move(generators)), inputs_(std::move(inputs)),
      cofactors_(std::move(cofactors)), source_(std::move(source)) {}

std::vector<WeylMonomial> GroebnerBasis::leading_monomials() const {
  std::vector<WeylMonomial> out;
  for (const auto& g : generators_) out.push_back(leading_term(g, order_).first);
  return out;
}

WeylPolynomial GroebnerBasis::normal_form(const WeylPolynomial& p, const Budget& budget) const {
  if (generators_.empty()) return p;
  return left_reduce(p, generators_, order_, budget).remainder;
}

bool GroebnerBasis::contains(const WeylPolynomial& p, const Budget& budget) const {
  return normal_form(p, budget).is_zero();
}

GroebnerBasis buchberger(std::span<const WeylPolynomial> gens, const TermOrder& ord,
                         const GroebnerOptions& options) {
  if (gens.empty()) throw std::invalid_argument("buchberger needs at least one generator");
  check_inputs(gens, ord, true);
  const VarTable& table = gens.front().table();
  std::vector<WeylPolynomial> inputs;
  std::vector<OPoly> ordered;
  for (const auto& g : gens) {
    inputs.push_back(g);
    ordered.push_back(to_ordered(g, ord));
  }
  const std::size_t tracked = options.track_cofactors ? gens.size() : 0;
  Engine engine(detail::WeylOps(table.size()), ord, options.budget, tracked);
  engine.run(std::move(ordered));
  auto reduced = engine.reduced_basis();

  std::vector<WeylPolynomial> generators;
  std::vector<std::vector<WeylPolynomial>> cofactors;
  for (const auto& e : reduced) {
    generators.push_back(from_ordered(table, e.poly));
    if (tracked) {
      std::vector<WeylPolynomial> row;
      for (const auto& c : e.cof) row.push_back(from_ordered(table, c));
      cofactors.push_back(std::move(row));
    }
  }
  return GroebnerBasis(table, ord, std::move(generators), std::move(inputs), std::move(cofactors),
                       options.source);
}

Membership ideal_membership(const WeylPolynomial& p, const GroebnerBasis& gb, bool want_certificate) {
  Membership m{false, WeylPolynomial(p.table()), {}};
  if (p.is_zero()) {
    m.member = true;
    if (want_certificate) m.certificate.assign(gb.inputs().size(), WeylPolynomial(p.table()));
    return m;
  }
  if (gb.generators().empty()) {
    m.remainder = p;
    return m;
  }
  Reduction red = left_reduce(p, gb.generators(), gb.order());
  m.remainder = red.remainder;
  m.member = red.remainder.is_zero();
  if (m.member && want_certificate) {
    if (!gb.has_cofactors()) throw std::logic_error("certificate requested from a basis without cofactors");
    m.certificate.assign(gb.inputs().size(), WeylPolynomial(p.table()));
    for (std::size_t k = 0; k < gb.size(); ++k) {
      if (red.quotients[k].is_zero()) continue;
      for (std::size_t i = 0; i < gb.inputs().size(); ++i)
        if (!gb.cofactors()[k][i].is_zero()) m.certificate[i] += mul(red.quotients[k], gb.cofactors()[k][i]);
    }
  }
  return m;
}

Membership ideal_membership(const WeylPolynomial& p, std::span<const WeylPolynomial> gens, const TermOrder& ord,
                            const GroebnerOptions& options) {
  if (p.is_zero()) {
    Membership m{true, p, {}};
    if (options.track_cofactors) m.certificate.assign(gens.size(), WeylPolynomial(p.table()));
    return m;
  }
  GroebnerBasis gb = buchberger(gens, ord, options);
  return ideal_membership(p, gb, options.track_cofactors);
}

IdealComparison compare_ideals(std::span<const WeylPolynomial> a, std::span<const WeylPolynomial> b,
                               const TermOrder& ord, const GroebnerOptions& options) {
  IdealComparison out;
  GroebnerBasis gb = buchberger(b, ord, options);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!gb.contains(a[i], options.budget)) out.a_outside_b.push_back(i);
  GroebnerBasis ga = buchberger(a, ord, options);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!ga.contains(b[i], options.budget)) out.b_outside_a.push_back(i);
  out.equal = out.a_outside_b.empty() && out.b_outside_a.empty();
  return out;
}

bool ideal_equal(std::span<const WeylPolynomial> a, std::span<const WeylPolynomial> b, const TermOrder& ord,
                 const GroebnerOptions& options) {
  return compare_ideals(a, b, ord, options).equal;
}

}  // namespace holoweyl
