#include "holoweyl/pfaffian.hpp"

#include "holoweyl/errors.hpp"
#include "holoweyl/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace holoweyl {

RationalFunction RationalFunction::make(CommutativePolynomial num, CommutativePolynomial den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) return {num, CommutativePolynomial::constant(den.ring(), 1)};
  const CommutativePolynomial g = gcd(num, den);
  if (!g.is_constant()) {
    num = *exact_divide(num, g);
    den = *exact_divide(den, g);
  }
  const Rational lead = den.terms().back().coeff;
  num *= 1 / lead;
  den *= 1 / lead;
  return {std::move(num), std::move(den)};
}

double RationalFunction::evaluate(std::span<const double> point) const {
  return num.evaluate(point) / den.evaluate(point);
}

namespace {

Exponents partial_part(const WeylMonomial& m, std::size_t d) {
  Exponents e(d, 0);
  for (std::size_t k = 0; k < d; ++k) e[k] = m[d + k];
  return e;
}

Exponents base_part(const WeylMonomial& m, std::size_t d) {
  Exponents e(d, 0);
  for (std::size_t k = 0; k < d; ++k) e[k] = m[k];
  return e;
}

WeylMonomial pack_partial(const Exponents& p) {
  WeylMonomial m(2 * p.size(), 0);
  for (std::size_t k = 0; k < p.size(); ++k) m[p.size() + k] = p[k];
  return m;
}

// An operator sum_beta a_beta(z) d^beta, keyed by beta in the partial order.
struct PartialOrder {
  const TermOrder* ord;
  bool operator()(const Exponents& a, const Exponents& b) const {
    return ord->less(pack_partial(a), pack_partial(b));
  }
};
using Expansion = std::map<Exponents, CommutativePolynomial, PartialOrder>;

Expansion expand(const WeylPolynomial& p, const TermOrder& ord, const RingRef& ring) {
  const std::size_t d = p.table().size();
  Expansion out(PartialOrder{&ord});
  for (const auto& t : p.terms()) {
    auto beta = partial_part(t.monomial, d);
    auto it = out.find(beta);
    if (it == out.end()) it = out.emplace(beta, CommutativePolynomial(ring)).first;
    it->second += CommutativePolynomial::monomial(ring, base_part(t.monomial, d), t.coeff);
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// Divides every coefficient (and den) by the rational content they share.
void remove_content(Expansion& h, CommutativePolynomial& den) {
  Integer g = 0, l = 1;
  auto visit = [&](const CommutativePolynomial& p) {
    for (const auto& t : p.terms()) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
  };
  visit(den);
  for (const auto& [b, a] : h) visit(a);
  if (g == 0) return;
  const Rational scale(l, g);
  if (scale == 1) return;
  den *= scale;
  for (auto& [b, a] : h) a *= scale;
}

struct Divisor {
  Exponents gamma;
  CommutativePolynomial lead;  // coefficient of d^gamma
  WeylPolynomial op;
};

}  // namespace

RationalGB rational_gb(std::span<const WeylPolynomial> gens, const std::string& order, const Budget& budget) {
  if (order != "pfaffian-grevlex" && order != "pfaffian-lex")
    throw std::invalid_argument("rational_gb needs the pfaffian-grevlex or pfaffian-lex order");
  if (gens.empty()) throw std::invalid_argument("rational_gb needs at least one generator");
  const VarTable& tab = gens.front().table();
  const TermOrder ord = TermOrder::preset(order, tab);
  GroebnerOptions opts;
  opts.budget = budget;
  opts.source = "rational Groebner basis (" + order + ")";
  RationalGB out{buchberger(gens, ord, opts), {}, {}};
  const std::size_t d = tab.size();
  for (const auto& lm : out.basis.leading_monomials()) out.leading_partials.push_back(partial_part(lm, d));

  // Finite iff every partial has a pure power among the leading parts.
  std::vector<int> bound(d, -1);
  for (const auto& p : out.leading_partials) {
    std::size_t nonzero = 0, slot = 0;
    for (std::size_t k = 0; k < d; ++k)
      if (p[k]) {
        ++nonzero;
        slot = k;
      }
    if (nonzero == 0) throw NotHolonomic("the ideal contains a nonzero function: empty staircase");
    if (nonzero == 1 && (bound[slot] < 0 || p[slot] < bound[slot])) bound[slot] = p[slot];
  }
  for (std::size_t k = 0; k < d; ++k)
    if (bound[k] < 0)
      throw NotHolonomic("not holonomic at a generic point: no pure power of " + tab.partial_name(k) +
                         " is a leading partial monomial");

  auto standard = [&](const Exponents& e) {
    for (const auto& p : out.leading_partials)
      if (divides(p, e)) return false;
    return true;
  };
  // The standard set is closed under division, so grow it from 1 upward.
  std::set<Exponents> seen{Exponents(d, 0)};
  std::vector<Exponents> todo{Exponents(d, 0)};
  while (!todo.empty()) {
    Exponents e = std::move(todo.back());
    todo.pop_back();
    if (!standard(e)) continue;
    out.standard.push_back(e);
    for (std::size_t k = 0; k < d; ++k) {
      Exponents f = e;
      ++f[k];
      if (seen.insert(f).second) todo.push_back(std::move(f));
    }
  }
  std::sort(out.standard.begin(), out.standard.end(), PartialOrder{&out.basis.order()});
  return out;
}

PfaffianSystem pfaffian_matrices(const RationalGB& gb) {
  const VarTable& tab = gb.basis.table();
  const TermOrder& ord = gb.basis.order();
  const std::size_t d = tab.size();
  const RingRef ring = base_ring(tab);

  std::vector<Divisor> divisors;
  for (std::size_t i = 0; i < gb.basis.size(); ++i) {
    const auto& g = gb.basis.generators()[i];
    Expansion ex = expand(g, ord, ring);
    const auto& gamma = gb.leading_partials[i];
    divisors.push_back(Divisor{gamma, ex.at(gamma), g});
  }
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < gb.standard.size(); ++i) index[gb.standard[i]] = i;

  PfaffianSystem sys{tab, ord.name(), gb.standard, {}};
  const std::size_t rank = gb.standard.size();
  for (std::size_t v = 0; v < d; ++v) {
    std::vector<std::vector<RationalFunction>> mat;
    for (std::size_t i = 0; i < rank; ++i) {
      Exponents start = gb.standard[i];
      start[v] += 1;
      Expansion h(PartialOrder{&ord});
      h.emplace(start, CommutativePolynomial::constant(ring, 1));
      CommutativePolynomial den = CommutativePolynomial::constant(ring, 1);
      // Fraction-free reduction, highest reducible partial part first:
      // h <- c_g h - a_beta d^(beta - gamma) g, den <- c_g den.
      for (;;) {
        const Divisor* best = nullptr;
        Exponents beta;
        for (auto it = h.rbegin(); it != h.rend() && !best; ++it) {
          for (const auto& dv : divisors) {
            if (!divides(dv.gamma, it->first)) continue;
            if (!best || dv.lead.total_degree() < best->lead.total_degree() ||
                (dv.lead.total_degree() == best->lead.total_degree() && dv.lead.size() < best->lead.size()))
              best = &dv;
          }
          if (best) beta = it->first;
        }
        if (!best) break;
        const CommutativePolynomial a = h.at(beta);
        WeylPolynomial shift = WeylPolynomial::monomial(tab, pack_partial(sub_exponents(beta, best->gamma)));
        Expansion sub = expand(mul(shift, best->op), ord, ring);
        for (auto& [b, c] : h) c = best->lead * c;
        for (auto& [b, c] : sub) {
          auto it = h.find(b);
          if (it == h.end()) it = h.emplace(b, CommutativePolynomial(ring)).first;
          it->second -= a * c;
        }
        for (auto it = h.begin(); it != h.end();)
          it = it->second.is_zero() ? h.erase(it) : std::next(it);
        den = best->lead * den;
        remove_content(h, den);
      }
      std::vector<RationalFunction> row(rank, RationalFunction{CommutativePolynomial(ring), CommutativePolynomial::constant(ring, 1)});
      for (auto& [b, c] : h) row[index.at(b)] = RationalFunction::make(c, den);
      mat.push_back(std::move(row));
    }
    sys.matrices.push_back(std::move(mat));
  }
  return sys;
}

std::vector<double> PfaffianSystem::evaluate(std::size_t v, std::span<const double> point, double rel_threshold) const {
  const std::size_t r = rank();
  std::vector<double> out(r * r, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const auto& f = matrices[v][i][j];
      if (f.is_zero()) continue;
      double den = 0, mag = 0;
      for (const auto& t : f.den.terms()) {
        double term = to_double(t.coeff);
        for (std::size_t k = 0; k < point.size(); ++k)
          for (int e = 0; e < t.monomial[k]; ++e) term *= point[k];
        den += term;
        mag += std::abs(term);
      }
      if (std::abs(den) <= rel_threshold * mag)
        throw SingularLocus("denominator " + to_text(f.den) + " of P_" + table.name(v) + " vanishes at the point");
      out[i * r + j] = f.num.evaluate(point) / den;
    }
  return out;
}

WeylPolynomial PfaffianSystem::basis_operator(std::size_t i) const {
  return WeylPolynomial::monomial(table, pack_partial(basis.at(i)));
}

double integrability_residual(const PfaffianSystem& sys, std::span<const double> point) {
  const std::size_t d = sys.table.size();
  const std::size_t r = sys.rank();
  std::vector<std::vector<double>> P;
  for (std::size_t v = 0; v < d; ++v) P.push_back(sys.evaluate(v, point));
  auto derivative = [&](std::size_t v, std::size_t u) {
    // d/dz_u of P_v, entrywise
    std::vector<double> out(r * r);
    const double h = 1e-3 * std::max(1.0, std::abs(point[u]));
    for (std::size_t e = 0; e < r * r; ++e) {
      auto f = [&](double z) {
        std::vector<double> p(point.begin(), point.end());
        p[u] = z;
        return sys.evaluate(v, p)[e];
      };
      out[e] = richardson_derivative(f, point[u], 1, h);
    }
    return out;
  };
  auto product = [&](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(r * r, 0.0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < r; ++j) c[i * r + j] += a[i * r + k] * b[k * r + j];
    return c;
  };
  double worst = 0;
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = u + 1; v < d; ++v) {
      const auto duPv = derivative(v, u);
      const auto dvPu = derivative(u, v);
      const auto PvPu = product(P[v], P[u]);
      const auto PuPv = product(P[u], P[v]);
      double scale = 1, res = 0;
      for (std::size_t e = 0; e < r * r; ++e) {
        res = std::max(res, std::abs(duPv[e] + PvPu[e] - dvPu[e] - PuPv[e]));
        scale = std::max({scale, std::abs(duPv[e]), std::abs(PvPu[e]), std::abs(dvPu[e]), std::abs(PuPv[e])});
      }
      worst = std::max(worst, res / scale);
    }
  return worst;
}

std::vector<double> base_vector(const PfaffianSystem& sys, const FbPoint& point) {
  if (sys.table != VarTable(point.n, Ring::Param)) throw std::invalid_argument("point does not match the system");
  int degree = 2;
  for (std::size_t i = 0; i < sys.rank(); ++i) degree = std::max(degree, moment_degree(sys.basis_operator(i)));
  MomentEvaluator ev(point, degree);
  std::vector<double> out;
  for (std::size_t i = 0; i < sys.rank(); ++i) out.push_back(apply_operator_numeric(sys.basis_operator(i), ev).value);
  return out;
}

namespace {

std::vector<double> rk4(const PfaffianSystem& sys, std::span<const double> from, std::span<const double> to,
                        std::vector<double> f, int steps) {
  const std::size_t d = sys.table.size();
  const std::size_t r = sys.rank();
  std::vector<double> dir(d);
  for (std::size_t k = 0; k < d; ++k) dir[k] = to[k] - from[k];
  auto rhs = [&](double s, const std::vector<double>& y) {
    std::vector<double> z(d);
    for (std::size_t k = 0; k < d; ++k) z[k] = from[k] + s * dir[k];
    std::vector<double> out(r, 0.0);
    for (std::size_t v = 0; v < d; ++v) {
      if (dir[v] == 0) continue;
      const auto P = sys.evaluate(v, z);
      for (std::size_t i = 0; i < r; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < r; ++j) acc += P[i * r + j] * y[j];
        out[i] += dir[v] * acc;
      }
    }
    return out;
  };
  const double h = 1.0 / steps;
  auto axpy = [&](const std::vector<double>& y, double a, const std::vector<double>& k) {
    std::vector<double> out(r);
    for (std::size_t i = 0; i < r; ++i) out[i] = y[i] + a * k[i];
    return out;
  };
  for (int s = 0; s < steps; ++s) {
    const double t = s * h;
    const auto k1 = rhs(t, f);
    const auto k2 = rhs(t + h / 2, axpy(f, h / 2, k1));
    const auto k3 = rhs(t + h / 2, axpy(f, h / 2, k2));
    const auto k4 = rhs(t + h, axpy(f, h, k3));
    for (std::size_t i = 0; i < r; ++i) f[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return f;
}

double relative_change(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return den > 0 ? num / den : num;
}

}  // namespace

OdeResult ode_continue(const PfaffianSystem& sys, std::span<const double> from, std::span<const double> base,
                       std::span<const double> to, int steps, double tol, int max_steps) {
  const std::size_t d = sys.table.size();
  if (from.size() != d || to.size() != d || base.size() != sys.rank())
    throw std::invalid_argument("ode_continue: dimension mismatch");
  OdeResult res;
  std::vector<double> f0(base.begin(), base.end());
  if (std::equal(from.begin(), from.end(), to.begin())) {
    res.value = f0;
    res.converged = true;
    return res;
  }
  int n = std::max(1, steps);
  std::vector<double> prev = rk4(sys, from, to, f0, n);
  while (n < max_steps) {
    n *= 2;
    auto cur = rk4(sys, from, to, f0, n);
    res.change = relative_change(cur, prev);
    prev = std::move(cur);
    if (res.change < tol) {
      res.converged = true;
      break;
    }
  }
  res.value = std::move(prev);
  res.steps = n;
  return res;
}

OdeResult ode_continue_path(const PfaffianSystem& sys, const std::vector<std::vector<double>>& points,
                            std::span<const double> base, int steps, double tol) {
  if (points.empty()) throw std::invalid_argument("empty path");
  OdeResult res;
  res.value.assign(base.begin(), base.end());
  res.converged = true;
  for (std::size_t i = 1; i < points.size(); ++i) {
    OdeResult leg = ode_continue(sys, points[i - 1], res.value, points[i], steps, tol);
    res.value = std::move(leg.value);
    res.steps += leg.steps;
    res.change = std::max(res.change, leg.change);
    res.converged = res.converged && leg.converged;
  }
  return res;
}

std::vector<double> default_base_point() { return {0.1, -0.05, 0.2, 0.3, -0.1, 1.0}; }

nlohmann::json to_json(const PfaffianSystem& sys) {
  nlohmann::json basis = nlohmann::json::array();
  for (std::size_t i = 0; i < sys.rank(); ++i) basis.push_back(to_text(sys.basis_operator(i)));
  nlohmann::json mats = nlohmann::json::object();
  for (std::size_t v = 0; v < sys.matrices.size(); ++v) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : sys.matrices[v]) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& f : row) r.push_back({{"num", to_text(f.num)}, {"den", to_text(f.den)}});
      rows.push_back(r);
    }
    mats[sys.table.name(v)] = rows;
  }
  return {{"table", table_to_json(sys.table)}, {"order", sys.order}, {"rank", sys.rank()}, {"basis", basis},
          {"matrices", mats}};
}

}  // namespace holoweyl
