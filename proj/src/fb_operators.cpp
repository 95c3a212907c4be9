#include "holoweyl/fb_operators.hpp"

#include <stdexcept>

namespace holoweyl {

namespace {

struct Builder {
  VarTable tab;

  WeylPolynomial c(const Rational& v) const { return WeylPolynomial::constant(tab, v); }
  WeylPolynomial x(int i, int j) const { return WeylPolynomial::var(tab, tab.x(i, j)); }
  WeylPolynomial dx(int i, int j) const { return WeylPolynomial::del(tab, tab.x(i, j)); }
  WeylPolynomial y(int i) const { return WeylPolynomial::var(tab, tab.y(i)); }
  WeylPolynomial dy(int i) const { return WeylPolynomial::del(tab, tab.y(i)); }
  WeylPolynomial r() const { return WeylPolynomial::var(tab, tab.r()); }
  WeylPolynomial dr() const { return WeylPolynomial::del(tab, tab.r()); }
  WeylPolynomial t(int i) const { return WeylPolynomial::var(tab, tab.t(i)); }
  WeylPolynomial dt(int i) const { return WeylPolynomial::del(tab, tab.t(i)); }
  int m() const { return tab.n() + 1; }

  // d_{t_j} - dg/dt_j
  WeylPolynomial twisted_dt(int j) const {
    WeylPolynomial out = dt(j) - y(j) - x(j, j) * t(j);
    for (int k = 1; k <= m(); ++k) out -= x(j, k) * t(k);
    return out;
  }
};

std::string pair_label(std::string_view head, int i, int j) {
  return std::string(head) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}
std::string index_label(std::string_view head, int i) {
  return std::string(head) + "(" + std::to_string(i) + ")";
}

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
}

// Operators shared by annFB and genJ, which differ only by the dt terms.
void push_fb_operators(const Builder& b, OperatorFamily& fam, bool with_dt) {
  const int m = b.m();
  for (int i = 1; i <= m; ++i)
    for (int j = i; j <= m; ++j) {
      fam.labels.push_back(pair_label("mixed", i, j));
      fam.operators.push_back(b.dx(i, j) - b.dy(i) * b.dy(j));
    }
  {
    WeylPolynomial tr = -(b.r() * b.r());
    for (int i = 1; i <= m; ++i) tr += b.dx(i, i);
    fam.labels.push_back("trace");
    fam.operators.push_back(tr);
  }
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      WeylPolynomial q = b.x(i, j) * b.dx(i, i) + Rational(2) * (b.x(j, j) - b.x(i, i)) * b.dx(i, j) -
                         b.x(i, j) * b.dx(j, j);
      for (int k = 1; k <= m; ++k) {
        if (k == i || k == j) continue;
        q += b.x(k, j) * b.dx(i, k) - b.x(i, k) * b.dx(j, k);
      }
      q += b.y(j) * b.dy(i) - b.y(i) * b.dy(j);
      if (with_dt) q += b.dt(i) * b.dy(j) - b.dt(j) * b.dy(i);
      fam.labels.push_back(pair_label("rot", i, j));
      fam.operators.push_back(q);
    }
  WeylPolynomial e = b.r() * b.dr() - b.c(b.tab.n());
  for (int i = 1; i <= m; ++i)
    for (int j = i; j <= m; ++j) e -= Rational(2) * b.x(i, j) * b.dx(i, j);
  for (int i = 1; i <= m; ++i) e -= b.y(i) * b.dy(i);
  if (with_dt)
    for (int i = 1; i <= m; ++i) e += b.dt(i) * b.dy(i);
  fam.labels.push_back("euler");
  fam.operators.push_back(e);
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::AnnFB: return "annFB";
    case Family::AnnMU: return "annMU";
    case Family::GenJ0: return "genJ0";
    case Family::GenJ: return "genJ";
  }
  return "";
}

Family parse_family(std::string_view text) {
  for (Family f : {Family::AnnFB, Family::AnnMU, Family::GenJ0, Family::GenJ})
    if (to_string(f) == text) return f;
  throw std::invalid_argument("unknown family '" + std::string(text) + "'");
}

std::optional<std::size_t> OperatorFamily::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  return std::nullopt;
}

const WeylPolynomial& OperatorFamily::at(std::string_view label) const {
  auto i = index_of(label);
  if (!i) throw std::out_of_range("no operator labelled '" + std::string(label) + "'");
  return operators[*i];
}

OperatorFamily ann_fb(int n) {
  check_n(n);
  Builder b{VarTable(n, Ring::Param)};
  OperatorFamily fam{Family::AnnFB, n, b.tab, {}, {}};
  push_fb_operators(b, fam, false);
  return fam;
}

OperatorFamily gen_j(int n) {
  check_n(n);
  Builder b{VarTable(n, Ring::Full)};
  OperatorFamily fam{Family::GenJ, n, b.tab, {}, {}};
  for (int i = 1; i <= b.m(); ++i) {
    fam.labels.push_back(index_label("ty", i));
    fam.operators.push_back(b.t(i) - b.dy(i));
  }
  push_fb_operators(b, fam, true);
  return fam;
}

OperatorFamily ann_mu(int n) {
  check_n(n);
  Builder b{VarTable(n, Ring::Full)};
  const int m = b.m();
  OperatorFamily fam{Family::AnnMU, n, b.tab, {}, {}};
  for (int i = 1; i <= m; ++i)
    for (int j = i; j <= m; ++j) {
      fam.labels.push_back(pair_label("dx", i, j));
      fam.operators.push_back(b.dx(i, j));
    }
  for (int i = 1; i <= m; ++i) {
    fam.labels.push_back(index_label("dy", i));
    fam.operators.push_back(b.dy(i));
  }
  WeylPolynomial s = -(b.r() * b.r());
  for (int i = 1; i <= m; ++i) s += b.t(i) * b.t(i);
  fam.labels.push_back("sphere");
  fam.operators.push_back(s);
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      fam.labels.push_back(pair_label("rot", i, j));
      fam.operators.push_back(b.t(i) * b.dt(j) - b.t(j) * b.dt(i));
    }
  WeylPolynomial e = b.r() * b.dr() + b.c(1);
  for (int i = 1; i <= m; ++i) e += b.t(i) * b.dt(i);
  fam.labels.push_back("euler");
  fam.operators.push_back(e);
  return fam;
}

OperatorFamily gen_j0(int n) {
  check_n(n);
  Builder b{VarTable(n, Ring::Full)};
  const int m = b.m();
  OperatorFamily fam{Family::GenJ0, n, b.tab, {}, {}};
  for (int i = 1; i <= m; ++i)
    for (int j = i; j <= m; ++j) {
      fam.labels.push_back(pair_label("dx", i, j));
      fam.operators.push_back(b.dx(i, j) - b.t(i) * b.t(j));
    }
  for (int i = 1; i <= m; ++i) {
    fam.labels.push_back(index_label("dy", i));
    fam.operators.push_back(b.dy(i) - b.t(i));
  }
  WeylPolynomial s = -(b.r() * b.r());
  for (int i = 1; i <= m; ++i) s += b.t(i) * b.t(i);
  fam.labels.push_back("sphere");
  fam.operators.push_back(s);
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      fam.labels.push_back(pair_label("rot", i, j));
      fam.operators.push_back(b.t(i) * b.twisted_dt(j) - b.t(j) * b.twisted_dt(i));
    }
  WeylPolynomial e = b.r() * b.dr() + b.c(1);
  for (int i = 1; i <= m; ++i) e += b.t(i) * b.twisted_dt(i);
  fam.labels.push_back("euler");
  fam.operators.push_back(e);
  return fam;
}

OperatorFamily make_family(Family f, int n) {
  switch (f) {
    case Family::AnnFB: return ann_fb(n);
    case Family::AnnMU: return ann_mu(n);
    case Family::GenJ0: return gen_j0(n);
    case Family::GenJ: return gen_j(n);
  }
  throw std::invalid_argument("unknown family");
}

std::size_t family_count(Family f, int n) {
  const std::size_t m = std::size_t(n) + 1;
  const std::size_t sym = m * (m + 1) / 2;  // pairs i <= j
  const std::size_t rot = m * (m - 1) / 2;  // pairs i < j
  switch (f) {
    case Family::AnnFB: return sym + 1 + rot + 1;
    case Family::GenJ: return m + sym + 1 + rot + 1;
    case Family::AnnMU:
    case Family::GenJ0: return sym + m + 1 + rot + 1;
  }
  return 0;
}

CommutativePolynomial g_poly(int n) {
  check_n(n);
  VarTable tab(n, Ring::Full);
  RingRef ring = base_ring(tab);
  const int m = n + 1;
  auto v = [&](std::size_t slot) { return CommutativePolynomial::variable(ring, slot); };
  CommutativePolynomial g(ring);
  for (int i = 1; i <= m; ++i)
    for (int j = i; j <= m; ++j) g += v(tab.x(i, j)) * v(tab.t(i)) * v(tab.t(j));
  for (int i = 1; i <= m; ++i) g += v(tab.y(i)) * v(tab.t(i));
  return g;
}

std::vector<DerivedSphereOp> derived_sphere_ops(int n) {
  check_n(n);
  OperatorFamily mu = ann_mu(n);
  Builder b{mu.table};
  const int m = b.m();
  const std::size_t euler = *mu.index_of("euler");
  const std::size_t sphere = *mu.index_of("sphere");
  std::vector<DerivedSphereOp> out;
  for (int k = 1; k <= m; ++k) {
    DerivedSphereOp d{k, b.r() * b.r() * b.dt(k) + b.t(k) * b.r() * b.dr() - b.t(k),
                      std::vector<WeylPolynomial>(mu.size(), WeylPolynomial(mu.table))};
    d.combination[euler] = b.t(k);
    d.combination[sphere] = -b.dt(k);
    // t_i (t_i d_k - t_k d_i) for i != k, in terms of rot(min, max)
    for (int i = 1; i <= m; ++i) {
      if (i == k) continue;
      const std::size_t idx = *mu.index_of(i < k ? pair_label("rot", i, k) : pair_label("rot", k, i));
      d.combination[idx] = i < k ? b.t(i) : -b.t(i);
    }
    out.push_back(std::move(d));
  }
  return out;
}

DtDecomposition dt_decompose(const WeylPolynomial& p) {
  const VarTable& tab = p.table();
  if (!tab.has_t()) return {{}, p};
  const int m = tab.n() + 1;
  DtDecomposition out{std::vector<WeylPolynomial>(std::size_t(m), WeylPolynomial(tab)), WeylPolynomial(tab)};
  WeylPolynomial rest = p;
  while (!rest.is_zero()) {
    // Terms containing some dt: peel one d_{t_j} off the left; the
    // commutation correction has lower dt degree, so this terminates.
    bool progressed = false;
    for (const auto& term : rest.terms()) {
      for (int j = 1; j <= m; ++j) {
        const std::size_t slot = tab.t(j);
        if (partial_exponent(term.monomial, slot) == 0) continue;
        WeylMonomial mono = term.monomial;
        mono[tab.size() + slot] -= 1;
        WeylPolynomial u = WeylPolynomial::monomial(tab, mono, term.coeff);
        out.u[std::size_t(j - 1)] += u;
        rest -= WeylPolynomial::del(tab, slot) * u;
        progressed = true;
        break;
      }
      if (progressed) break;
      out.remainder += WeylPolynomial::monomial(tab, term.monomial, term.coeff);
      rest -= WeylPolynomial::monomial(tab, term.monomial, term.coeff);
      progressed = true;
      break;
    }
  }
  return out;
}

std::vector<LiftCheck> lift_checks(int n) {
  OperatorFamily fb = ann_fb(n);
  OperatorFamily j = gen_j(n);
  std::vector<LiftCheck> out;
  for (std::size_t i = 0; i < fb.size(); ++i) {
    WeylPolynomial diff = j.at(fb.labels[i]) - lift(fb.operators[i], j.table);
    LiftCheck c{fb.labels[i], diff, dt_decompose(diff), false};
    WeylPolynomial back(j.table);
    for (int k = 1; k <= n + 1; ++k)
      back += WeylPolynomial::del(j.table, j.table.t(k)) * c.decomposition.u[std::size_t(k - 1)];
    c.ok = c.decomposition.remainder.is_zero() && back == c.difference;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace holoweyl
