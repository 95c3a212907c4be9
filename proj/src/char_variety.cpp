#include "holoweyl/char_variety.hpp"

#include "holoweyl/detail/engine.hpp"
#include "holoweyl/groebner.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace holoweyl {

namespace {

using detail::OPoly;
using detail::OTerm;

OPoly to_ordered(const CommutativePolynomial& p, const TermOrder& ord) {
  OPoly out;
  for (const auto& t : p.terms()) out.push_back(detail::make_term(ord, t.monomial, t.coeff));
  detail::sort_terms(out);
  return out;
}

// Minimum hitting set of the supports by branch and bound.
class HittingSet {
 public:
  explicit HittingSet(std::vector<std::uint64_t> sets) : sets_(std::move(sets)) {}

  int solve() {
    best_ = 65;
    search(0, 0);
    return best_;
  }

 private:
  void search(std::uint64_t chosen, int size) {
    if (size >= best_) return;
    // the uncovered set with fewest elements
    const std::uint64_t* pick = nullptr;
    int pick_size = 65;
    for (const auto& s : sets_) {
      if (s & chosen) continue;
      const int c = std::popcount(s);
      if (c < pick_size) {
        pick_size = c;
        pick = &s;
      }
    }
    if (!pick) {
      best_ = size;
      return;
    }
    if (size + 1 >= best_) return;
    std::uint64_t rest = *pick;
    while (rest) {
      const std::uint64_t bit = rest & (~rest + 1);
      rest &= rest - 1;
      search(chosen | bit, size + 1);
    }
  }

  std::vector<std::uint64_t> sets_;
  int best_ = 0;
};

}  // namespace

std::vector<CommutativePolynomial> comm_buchberger(std::span<const CommutativePolynomial> gens,
                                                   const TermOrder& ord, const Budget& budget) {
  if (gens.empty()) return {};
  const RingRef ring = gens.front().ring();
  if (ord.arity() != ring->size()) throw std::invalid_argument("order arity does not match ring");
  if (!ord.is_well_order()) throw std::invalid_argument("Buchberger needs a well-order");
  std::vector<OPoly> input;
  for (const auto& g : gens) {
    if (!same_ring(g.ring(), ring)) throw std::invalid_argument("generators belong to different rings");
    if (!g.is_zero()) input.push_back(to_ordered(g, ord));
  }
  if (input.empty()) return {};
  detail::GroebnerEngine<detail::CommutativeOps> engine(detail::CommutativeOps(ring->size()), ord, budget, 0);
  engine.run(std::move(input));
  std::vector<CommutativePolynomial> out;
  for (const auto& e : engine.reduced_basis()) {
    std::vector<CommutativePolynomial::Term> terms;
    for (const auto& t : e.poly) terms.push_back({t.m, t.c});
    out.emplace_back(ring, std::move(terms));
  }
  return out;
}

CommutativePolynomial comm_normal_form(const CommutativePolynomial& p,
                                       std::span<const CommutativePolynomial> divisors, const TermOrder& ord,
                                       const Budget& budget) {
  const RingRef& ring = p.ring();
  if (ord.arity() != ring->size()) throw std::invalid_argument("order arity does not match ring");
  detail::GroebnerEngine<detail::CommutativeOps> engine(detail::CommutativeOps(ring->size()), ord, budget, 0);
  std::vector<detail::GroebnerEngine<detail::CommutativeOps>::Element> set;
  for (const auto& g : divisors) {
    if (!same_ring(g.ring(), ring)) throw std::invalid_argument("divisors belong to a different ring");
    if (g.is_zero()) continue;
    detail::GroebnerEngine<detail::CommutativeOps>::Element e;
    e.poly = to_ordered(g, ord);
    e.mask = detail::divmask(e.poly.back().m);
    set.push_back(std::move(e));
  }
  if (set.empty()) return p;
  OPoly rem = engine.reduce(to_ordered(p, ord), nullptr, set, true);
  std::vector<CommutativePolynomial::Term> terms;
  for (const auto& t : rem) terms.push_back({t.m, t.c});
  return CommutativePolynomial(ring, std::move(terms));
}

int monomial_ideal_dimension(std::span<const Exponents> generators, std::size_t arity) {
  if (arity > 64) throw std::invalid_argument("monomial_ideal_dimension supports at most 64 variables");
  std::vector<std::uint64_t> sets;
  for (const auto& g : generators) {
    std::uint64_t s = 0;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (g[k]) s |= std::uint64_t(1) << k;
    if (s == 0) return -1;
    sets.push_back(s);
  }
  // keep only inclusion-minimal supports
  std::sort(sets.begin(), sets.end(),
            [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b) || (std::popcount(a) == std::popcount(b) && a < b); });
  std::vector<std::uint64_t> minimal;
  for (auto s : sets) {
    bool covered = false;
    for (auto m : minimal)
      if ((m & s) == m) {
        covered = true;
        break;
      }
    if (!covered) minimal.push_back(s);
  }
  return int(arity) - HittingSet(std::move(minimal)).solve();
}

int krull_dimension(std::span<const CommutativePolynomial> gens, const TermOrder& ord, const Budget& budget) {
  if (gens.empty()) throw std::invalid_argument("krull_dimension needs the ring; pass at least one generator");
  const std::size_t arity = gens.front().ring()->size();
  auto gb = comm_buchberger(gens, ord, budget);
  std::vector<Exponents> lms;
  for (const auto& g : gb) lms.push_back(leading_term(g, ord).first);
  return monomial_ideal_dimension(lms, arity);
}

int krull_dimension(std::span<const CommutativePolynomial> gens, const RingRef& ring, const Budget& budget) {
  bool all_zero = true;
  for (const auto& g : gens) all_zero = all_zero && g.is_zero();
  if (all_zero) return int(ring->size());
  return krull_dimension(gens, TermOrder::for_ring(OrderKind::Grevlex, ring->size()), budget);
}

namespace {

GroebnerBasis char_basis(std::span<const WeylPolynomial> gens, const Budget& budget) {
  if (gens.empty()) throw std::invalid_argument("char_ideal needs at least one generator");
  GroebnerOptions opts;
  opts.budget = budget;
  opts.source = "characteristic ideal";
  return buchberger(gens, TermOrder::preset("char", gens.front().table()), opts);
}

}  // namespace

std::vector<CommutativePolynomial> char_ideal(std::span<const WeylPolynomial> gens, const Budget& budget) {
  GroebnerBasis gb = char_basis(gens, budget);
  auto [u, v] = symbol_weights(gb.table());
  std::vector<CommutativePolynomial> out;
  for (const auto& g : gb.generators()) out.push_back(initial_form(g, u, v));
  return out;
}

HolonomicReport is_holonomic(std::span<const WeylPolynomial> gens, const Budget& budget) {
  GroebnerBasis gb = char_basis(gens, budget);
  const VarTable& tab = gb.table();
  // The tie order of "char" and grevlex on the symbol ring share the packed
  // layout, so the leading monomials of the initial forms are those of the
  // Weyl basis.
  HolonomicReport rep;
  rep.variables = tab.size();
  rep.ambient = 2 * tab.size();
  rep.basis_size = gb.size();
  rep.dimension = monomial_ideal_dimension(gb.leading_monomials(), rep.ambient);
  rep.holonomic = rep.dimension == int(rep.variables);
  return rep;
}

}  // namespace holoweyl
