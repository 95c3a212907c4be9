#pragma once

// Buchberger engine shared by the Weyl algebra, commutative polynomial rings
// and the rational-coefficient stage of the Pfaffian builder. Polynomials are
// kept as term vectors sorted ascending under the active order, so the
// leading term is back().

#include "holoweyl/budget.hpp"
#include "holoweyl/detail/weyl_kernel.hpp"
#include "holoweyl/errors.hpp"
#include "holoweyl/exponents.hpp"
#include "holoweyl/rational.hpp"
#include "holoweyl/term_order.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace holoweyl::detail {

struct OTerm {
  Exponents m;
  TermOrder::Key k;  // ord.key(m)
  Rational c;
};
using OPoly = std::vector<OTerm>;

inline OTerm make_term(const TermOrder& ord, Exponents m, Rational c) {
  TermOrder::Key k = ord.key(m);
  return OTerm{std::move(m), std::move(k), std::move(c)};
}

inline std::strong_ordering key_compare(const TermOrder::Key& a, const TermOrder::Key& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

inline TermOrder::Key key_add(const TermOrder::Key& a, const TermOrder::Key& b) {
  TermOrder::Key k(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) k[i] = a[i] + b[i];
  return k;
}

inline std::uint64_t divmask(const Exponents& e) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) mask |= std::uint64_t(1) << (i % 64);
  return mask;
}

/// a - b for ascending polynomials.
inline OPoly subtract(OPoly&& a, OPoly&& b) {
  OPoly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::strong_ordering c = std::strong_ordering::less;
    if (i == a.size())
      c = std::strong_ordering::greater;
    else if (j < b.size())
      c = key_compare(a[i].k, b[j].k);
    if (c < 0) {
      out.push_back(std::move(a[i++]));
    } else if (c > 0) {
      OTerm t = std::move(b[j++]);
      mpq_neg(t.c.get_mpq_t(), t.c.get_mpq_t());
      out.push_back(std::move(t));
    } else {
      a[i].c -= b[j].c;
      if (a[i].c != 0) out.push_back(std::move(a[i]));
      ++i;
      ++j;
    }
  }
  return out;
}

inline OPoly subtract(const OPoly& a, const OPoly& b) { return subtract(OPoly(a), OPoly(b)); }

/// Sorts ascending and merges equal monomials.
inline void sort_terms(OPoly& p) {
  std::sort(p.begin(), p.end(), [](const OTerm& a, const OTerm& b) { return key_compare(a.k, b.k) < 0; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i + 1;
    while (j < p.size() && p[j].m == p[i].m) p[i].c += p[j++].c;
    if (p[i].c != 0) {
      if (out != i) p[out] = std::move(p[i]);
      ++out;
    }
    i = j;
  }
  p.resize(out);
}

/// Product rule of the Weyl algebra with `pairs` (z, d) pairs.
class WeylOps {
 public:
  explicit WeylOps(std::size_t pairs) : pairs_(pairs) {}
  std::size_t arity() const { return 2 * pairs_; }

  /// c * m * g, ascending.
  OPoly left_multiply(const Exponents& m, const Rational& c, const OPoly& g, const TermOrder& ord) const {
    const TermOrder::Key mk = ord.key(m);
    OPoly main, corr;
    main.reserve(g.size());
    for (const auto& t : g) {
      const Rational ct = c * t.c;
      bool first = true;
      weyl_monomial_product(m, t.m, pairs_, [&](const Exponents& e, const Integer& k) {
        if (first) {
          main.push_back(OTerm{e, key_add(mk, t.k), ct});
          first = false;
        } else {
          corr.push_back(make_term(ord, e, ct * k));
        }
      });
    }
    if (corr.empty()) return main;
    sort_terms(corr);
    return add(std::move(main), std::move(corr));
  }

  static OPoly add(OPoly&& a, OPoly&& b) {
    OPoly out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      std::strong_ordering cmp = std::strong_ordering::less;
      if (i == a.size())
        cmp = std::strong_ordering::greater;
      else if (j < b.size())
        cmp = key_compare(a[i].k, b[j].k);
      if (cmp < 0) {
        out.push_back(std::move(a[i++]));
      } else if (cmp > 0) {
        out.push_back(std::move(b[j++]));
      } else {
        a[i].c += b[j].c;
        if (a[i].c != 0) out.push_back(std::move(a[i]));
        ++i;
        ++j;
      }
    }
    return out;
  }

  /// Bit k set when pair k (z_k or d_k) occurs; 0 means "unknown".
  std::uint64_t support(const OPoly& p) const {
    if (pairs_ > 64) return ~std::uint64_t(0);
    std::uint64_t s = 0;
    for (const auto& t : p)
      for (std::size_t k = 0; k < pairs_; ++k)
        if (t.m[k] != 0 || t.m[pairs_ + k] != 0) s |= std::uint64_t(1) << k;
    return s;
  }

  /// Buchberger's product criterion is only sound here when the two
  /// operators involve disjoint (z, d) pairs: then they commute.
  bool product_criterion(const OPoly& f, std::uint64_t sf, const OPoly& g, std::uint64_t sg) const {
    (void)f;
    (void)g;
    return pairs_ <= 64 && (sf & sg) == 0;
  }

 private:
  std::size_t pairs_;
};

/// Product rule of a commutative polynomial ring.
class CommutativeOps {
 public:
  explicit CommutativeOps(std::size_t arity) : arity_(arity) {}
  std::size_t arity() const { return arity_; }

  OPoly left_multiply(const Exponents& m, const Rational& c, const OPoly& g, const TermOrder& ord) const {
    const TermOrder::Key mk = ord.key(m);
    OPoly out;
    out.reserve(g.size());
    for (const auto& t : g) out.push_back(OTerm{add_exponents(m, t.m), key_add(mk, t.k), c * t.c});
    return out;
  }

  std::uint64_t support(const OPoly&) const { return 0; }

  bool product_criterion(const OPoly& f, std::uint64_t, const OPoly& g, std::uint64_t) const {
    return coprime(f.back().m, g.back().m);
  }

 private:
  std::size_t arity_;
};

template <class Ops>
class GroebnerEngine {
 public:
  struct Element {
    OPoly poly;
    std::vector<OPoly> cof;  // poly = sum_i cof[i] * input[i] when tracking
    std::uint64_t mask = 0;
    std::uint64_t support = 0;
  };

  struct Stats {
    std::size_t pairs_formed = 0;
    std::size_t pairs_reduced = 0;
    std::size_t product_skips = 0;
    std::size_t chain_skips = 0;
    std::size_t zero_reductions = 0;
  };

  GroebnerEngine(Ops ops, const TermOrder& ord, const Budget& budget, std::size_t tracked)
      : ops_(ops), ord_(ord), budget_(budget), tracked_(tracked),
        deadline_(std::chrono::steady_clock::now() + budget.wall_clock) {}

  const TermOrder& order() const { return ord_; }
  const Stats& stats() const { return stats_; }
  const std::vector<Element>& basis() const { return basis_; }

  OPoly from_terms(OPoly p) const {
    sort_terms(p);
    return p;
  }

  void check_budget(const OPoly& h) const {
    if (h.size() > budget_.max_terms)
      throw ResourceExhausted("intermediate operator exceeds " + std::to_string(budget_.max_terms) + " terms");
    if (std::chrono::steady_clock::now() > deadline_)
      throw ResourceExhausted("Groebner computation exceeded its wall-clock budget");
  }

  /// h <- h - c * m * g, and the same on cofactors.
  void subtract_multiple(OPoly& h, std::vector<OPoly>* hcof, const Exponents& m, const Rational& c,
                         const Element& g) const {
    h = subtract(std::move(h), ops_.left_multiply(m, c, g.poly, ord_));
    if (hcof)
      for (std::size_t i = 0; i < hcof->size(); ++i)
        if (!g.cof[i].empty())
          (*hcof)[i] = subtract(std::move((*hcof)[i]), ops_.left_multiply(m, c, g.cof[i], ord_));
  }

  /// First element (in list order) whose leading monomial divides m.
  std::optional<std::size_t> find_divisor(const std::vector<Element>& set, const Exponents& m,
                                          const std::vector<char>* skip = nullptr) const {
    const std::uint64_t mm = divmask(m);
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (skip && (*skip)[k]) continue;
      if ((set[k].mask & ~mm) != 0) continue;
      if (divides(set[k].poly.back().m, m)) return k;
    }
    return std::nullopt;
  }

  /// Left reduction of h modulo `set`. With full = false only the leading
  /// term is reduced away. Returns the remainder, ascending.
  OPoly reduce(OPoly h, std::vector<OPoly>* hcof, const std::vector<Element>& set, bool full,
               const std::vector<char>* skip = nullptr,
               std::vector<std::pair<std::size_t, OTerm>>* quotient_log = nullptr) const {
    if (full) return reduce_full(std::move(h), hcof, set, skip, quotient_log);
    while (!h.empty()) {
      check_budget(h);
      const OTerm& lt = h.back();
      auto k = find_divisor(set, lt.m, skip);
      if (!k) break;
      const Element& g = set[*k];
      Exponents q = sub_exponents(lt.m, g.poly.back().m);
      Rational c = lt.c / g.poly.back().c;
      if (quotient_log) quotient_log->push_back({*k, make_term(ord_, q, c)});
      subtract_multiple(h, hcof, q, c, g);
    }
    return h;
  }

  /// Full reduction as a heap merge: h and every subtracted multiple c*m*g
  /// are sorted streams consumed from the top, so each term is touched once.
  OPoly reduce_full(OPoly h, std::vector<OPoly>* hcof, const std::vector<Element>& set,
                    const std::vector<char>* skip,
                    std::vector<std::pair<std::size_t, OTerm>>* quotient_log) const {
    struct Stream {
      OPoly poly;
      std::size_t left;  // terms poly[0, left) are still pending
      bool negate;
    };
    std::vector<Stream> streams;
    std::vector<std::size_t> heap;  // stream indices, max-heap on the pending top term
    auto top = [&](std::size_t i) -> const OTerm& { return streams[i].poly[streams[i].left - 1]; };
    auto heap_less = [&](std::size_t a, std::size_t b) { return key_compare(top(a).k, top(b).k) < 0; };
    auto push_stream = [&](OPoly p, std::size_t left, bool negate) {
      if (left == 0) return;
      streams.push_back(Stream{std::move(p), left, negate});
      heap.push_back(streams.size() - 1);
      std::push_heap(heap.begin(), heap.end(), heap_less);
    };

    std::vector<std::pair<std::size_t, OTerm>> local_log;
    auto* log = quotient_log ? quotient_log : (hcof ? &local_log : nullptr);
    const std::size_t log_start = log ? log->size() : 0;

    const std::size_t hsize = h.size();
    push_stream(std::move(h), hsize, false);
    OPoly rem;  // collected descending
    std::size_t live_terms = hsize;
    std::size_t steps = 0;
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), heap_less);
      std::size_t si = heap.back();
      heap.pop_back();
      OTerm cur = std::move(streams[si].poly[streams[si].left - 1]);
      if (streams[si].negate) mpq_neg(cur.c.get_mpq_t(), cur.c.get_mpq_t());
      auto advance = [&](std::size_t i) {
        if (--streams[i].left > 0) {
          heap.push_back(i);
          std::push_heap(heap.begin(), heap.end(), heap_less);
        } else {
          OPoly().swap(streams[i].poly);
        }
      };
      advance(si);
      while (!heap.empty() && key_compare(top(heap.front()).k, cur.k) == 0) {
        std::pop_heap(heap.begin(), heap.end(), heap_less);
        std::size_t sj = heap.back();
        heap.pop_back();
        const OTerm& t = streams[sj].poly[streams[sj].left - 1];
        if (streams[sj].negate)
          cur.c -= t.c;
        else
          cur.c += t.c;
        advance(sj);
      }
      if ((++steps & 255) == 0) check_time();
      if (cur.c == 0) continue;
      auto k = find_divisor(set, cur.m, skip);
      if (!k) {
        rem.push_back(std::move(cur));
        continue;
      }
      const Element& g = set[*k];
      Exponents q = sub_exponents(cur.m, g.poly.back().m);
      Rational c = cur.c / g.poly.back().c;
      OPoly prod = ops_.left_multiply(q, c, g.poly, ord_);
      live_terms += prod.size();
      if (live_terms > budget_.max_terms * 8 || prod.size() > budget_.max_terms)
        throw ResourceExhausted("reduction exceeds the term budget (" + std::to_string(budget_.max_terms) + ")");
      if (log) log->push_back({*k, make_term(ord_, std::move(q), std::move(c))});
      // the leading term of prod cancels cur exactly
      const std::size_t left = prod.size() - 1;
      push_stream(std::move(prod), left, true);
    }
    if (hcof) {
      for (std::size_t e = log_start; e < log->size(); ++e) {
        const auto& [k, qt] = (*log)[e];
        const Element& g = set[k];
        for (std::size_t i = 0; i < hcof->size(); ++i)
          if (!g.cof[i].empty())
            (*hcof)[i] = subtract(std::move((*hcof)[i]), ops_.left_multiply(qt.m, qt.c, g.cof[i], ord_));
      }
      if (!quotient_log) log->clear();
    }
    std::reverse(rem.begin(), rem.end());
    check_budget(rem);
    return rem;
  }

  void check_time() const {
    if (std::chrono::steady_clock::now() > deadline_)
      throw ResourceExhausted("Groebner computation exceeded its wall-clock budget");
  }

  void make_monic(OPoly& p, std::vector<OPoly>* cof) const {
    if (p.empty()) return;
    const Rational inv = 1 / p.back().c;
    if (inv == 1) return;
    for (auto& t : p) t.c *= inv;
    if (cof)
      for (auto& q : *cof)
        for (auto& t : q) t.c *= inv;
  }

  /// Runs Buchberger's algorithm with the normal selection strategy.
  void run(std::vector<OPoly> gens) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<OPoly> cof;
      if (tracked_) {
        cof.assign(tracked_, OPoly{});
        cof[i].push_back(make_term(ord_, Exponents(ops_.arity(), 0), 1));
      }
      insert(std::move(gens[i]), std::move(cof));
    }
    while (!pairs_.empty()) {
      std::pop_heap(pairs_.begin(), pairs_.end(), PairAfter{});
      Pair p = std::move(pairs_.back());
      pairs_.pop_back();
      set_pending(p.i, p.j, false);
      if (chain_criterion(p)) {
        ++stats_.chain_skips;
        continue;
      }
      ++stats_.pairs_reduced;
      std::vector<OPoly> cof;
      OPoly s = spoly(p, tracked_ ? &cof : nullptr);
      insert(std::move(s), std::move(cof));
    }
  }

  /// Minimal, inter-reduced, monic basis sorted by ascending leading monomial.
  std::vector<Element> reduced_basis() const {
    std::vector<std::size_t> order(basis_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      auto c = key_compare(basis_[a].poly.back().k, basis_[b].poly.back().k);
      return c != 0 ? c < 0 : a < b;
    });
    std::vector<Element> kept;
    for (std::size_t idx : order) {
      const auto& lm = basis_[idx].poly.back().m;
      bool redundant = false;
      for (const auto& k : kept)
        if (divides(k.poly.back().m, lm)) {
          redundant = true;
          break;
        }
      if (!redundant) kept.push_back(basis_[idx]);
    }
    std::vector<char> skip(kept.size(), 0);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      skip[i] = 1;
      OPoly lead{kept[i].poly.back()};
      OPoly tail(kept[i].poly.begin(), kept[i].poly.end() - 1);
      std::vector<OPoly>* cof = tracked_ ? &kept[i].cof : nullptr;
      OPoly reduced_tail = reduce(std::move(tail), cof, kept, true, &skip);
      reduced_tail.push_back(std::move(lead.front()));
      kept[i].poly = std::move(reduced_tail);
      make_monic(kept[i].poly, cof);
      skip[i] = 0;
    }
    return kept;
  }

 private:
  struct Pair {
    std::size_t i, j;  // i < j
    Exponents lcm;
    TermOrder::Key key;
  };
  // heap comparator: smallest lcm first, then (j, i)
  struct PairAfter {
    bool operator()(const Pair& a, const Pair& b) const {
      auto c = key_compare(a.key, b.key);
      if (c != 0) return c > 0;
      return std::tie(a.j, a.i) > std::tie(b.j, b.i);
    }
  };

  bool pending(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return pending_[j][i] != 0;
  }
  void set_pending(std::size_t i, std::size_t j, bool v) {
    if (i > j) std::swap(i, j);
    pending_[j][i] = v ? 1 : 0;
  }

  bool chain_criterion(const Pair& p) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == p.i || k == p.j) continue;
      if (!divides(basis_[k].poly.back().m, p.lcm)) continue;
      if (pending(p.i, k) || pending(p.j, k)) continue;
      return true;
    }
    return false;
  }

  OPoly spoly(const Pair& p, std::vector<OPoly>* cof) const {
    const Element& f = basis_[p.i];
    const Element& g = basis_[p.j];
    const Exponents mf = sub_exponents(p.lcm, f.poly.back().m);
    const Exponents mg = sub_exponents(p.lcm, g.poly.back().m);
    const Rational cf = 1 / f.poly.back().c;
    const Rational cg = 1 / g.poly.back().c;
    OPoly a = ops_.left_multiply(mf, cf, f.poly, ord_);
    OPoly b = ops_.left_multiply(mg, cg, g.poly, ord_);
    if (cof) {
      cof->assign(tracked_, OPoly{});
      for (std::size_t i = 0; i < tracked_; ++i)
        (*cof)[i] = subtract(ops_.left_multiply(mf, cf, f.cof[i], ord_), ops_.left_multiply(mg, cg, g.cof[i], ord_));
    }
    return subtract(std::move(a), std::move(b));
  }

  void insert(OPoly h, std::vector<OPoly> cof) {
    h = reduce(std::move(h), tracked_ ? &cof : nullptr, basis_, true);
    if (h.empty()) {
      ++stats_.zero_reductions;
      return;
    }
    make_monic(h, tracked_ ? &cof : nullptr);
    if (basis_.size() >= budget_.max_basis)
      throw ResourceExhausted("Groebner basis exceeds " + std::to_string(budget_.max_basis) + " elements");
    Element e;
    e.mask = divmask(h.back().m);
    e.support = ops_.support(h);
    e.poly = std::move(h);
    e.cof = std::move(cof);
    const std::size_t j = basis_.size();
    basis_.push_back(std::move(e));
    pending_.emplace_back(j + 1, 0);
    for (std::size_t i = 0; i < j; ++i) {
      ++stats_.pairs_formed;
      if (ops_.product_criterion(basis_[i].poly, basis_[i].support, basis_[j].poly, basis_[j].support)) {
        ++stats_.product_skips;
        continue;
      }
      Exponents l = lcm_exponents(basis_[i].poly.back().m, basis_[j].poly.back().m);
      TermOrder::Key k = ord_.key(l);
      pairs_.push_back(Pair{i, j, std::move(l), std::move(k)});
      std::push_heap(pairs_.begin(), pairs_.end(), PairAfter{});
      set_pending(i, j, true);
    }
  }

  Ops ops_;
  TermOrder ord_;
  Budget budget_;
  std::size_t tracked_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<Element> basis_;
  std::vector<Pair> pairs_;
  std::vector<std::vector<char>> pending_;
  Stats stats_;
};

}  // namespace holoweyl::detail
