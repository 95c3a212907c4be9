#include "holoweyl/verify.hpp"

#include "holoweyl/char_variety.hpp"
#include "holoweyl/errors.hpp"
#include "holoweyl/fb_operators.hpp"
#include "holoweyl/groebner.hpp"
#include "holoweyl/io.hpp"
#include "holoweyl/pfaffian.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace holoweyl {

using nlohmann::json;

json to_json(const VerificationReport& r) {
  json j;
  j["check"] = r.check;
  j["parameters"] = r.parameters;
  j["status"] = r.status;
  j["residual"] = r.residual;
  if (!r.certificate.empty()) j["certificate"] = r.certificate;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

namespace {

WeylMonomial zero_monomial(const VarTable& tab) { return WeylMonomial(2 * tab.size(), 0); }

WeylPolynomial t_power(const VarTable& tab, std::span<const int> alpha) {
  WeylMonomial m = zero_monomial(tab);
  for (std::size_t i = 0; i < alpha.size(); ++i) m[tab.t(int(i) + 1)] = Exponent(alpha[i]);
  return WeylPolynomial::monomial(tab, m);
}

WeylPolynomial dy_power(const VarTable& tab, std::span<const int> alpha) {
  WeylMonomial m = zero_monomial(tab);
  for (std::size_t i = 0; i < alpha.size(); ++i) m[tab.size() + tab.y(int(i) + 1)] = Exponent(alpha[i]);
  return WeylPolynomial::monomial(tab, m);
}

std::vector<WeylPolynomial> t_dy_generators(const VarTable& tab) {
  std::vector<WeylPolynomial> out;
  for (int i = 1; i <= tab.n() + 1; ++i)
    out.push_back(WeylPolynomial::var(tab, tab.t(i)) - WeylPolynomial::del(tab, tab.y(i)));
  return out;
}

// All exponent vectors of the given length and total degree <= max_degree,
// by degree, then lexicographically.
std::vector<std::vector<int>> multi_indices(std::size_t length, int max_degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(length, 0);
  for (int deg = 0; deg <= max_degree; ++deg) {
    std::function<void(std::size_t, int)> fill = [&](std::size_t k, int left) {
      if (k + 1 == length) {
        a[k] = left;
        out.push_back(a);
        return;
      }
      for (int e = left; e >= 0; --e) {
        a[k] = e;
        fill(k + 1, left - e);
      }
    };
    fill(0, deg);
  }
  return out;
}

void check_alpha(std::span<const int> alpha, int n) {
  if (alpha.size() != std::size_t(n + 1)) throw std::invalid_argument("alpha needs n+1 entries");
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("alpha entries must be nonnegative");
}

void require_quadrature_n(int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("numeric checks need n = 1 or 2");
}

json point_json(const FbPoint& p) { return p.values; }

double relative(double value, double scale) { return scale > 0 ? std::abs(value) / scale : std::abs(value); }

GroebnerOptions options_for(const Budget& budget, std::string source) {
  GroebnerOptions o;
  o.budget = budget;
  o.source = std::move(source);
  return o;
}

}  // namespace

VerificationReport check_congruence_t_alpha(std::span<const int> alpha, int n, const Budget& budget) {
  check_alpha(alpha, n);
  const VarTable tab(n, Ring::Full);
  const auto ideal = t_dy_generators(tab);
  VerificationReport rep;
  rep.check = "congruence_t_alpha";
  rep.parameters = {{"n", n}, {"alpha", std::vector<int>(alpha.begin(), alpha.end())}};
  auto red = left_reduce(t_power(tab, alpha) - dy_power(tab, alpha), ideal, TermOrder::preset("paper-s4", tab), budget);
  rep.residual = double(red.remainder.size());
  rep.status = red.remainder.is_zero() ? "pass" : "fail";
  if (!red.remainder.is_zero()) rep.details["remainder"] = to_text(red.remainder);
  return rep;
}

VerificationReport check_congruence_all(int n, int max_degree, const Budget& budget) {
  VerificationReport rep;
  rep.check = "congruence_t_alpha";
  rep.parameters = {{"n", n}, {"max_degree", max_degree}};
  std::size_t count = 0;
  json failures = json::array();
  for (const auto& a : multi_indices(std::size_t(n + 1), max_degree)) {
    auto one = check_congruence_t_alpha(a, n, budget);
    ++count;
    rep.residual = std::max(rep.residual, one.residual);
    if (!one.passed()) failures.push_back(a);
  }
  rep.status = failures.empty() ? "pass" : "fail";
  rep.details["checked"] = count;
  if (!failures.empty()) rep.details["failures"] = failures;
  return rep;
}

VerificationReport check_commuting_lemma(std::span<const int> alpha, std::string_view label, int n,
                                         const Budget& budget) {
  check_alpha(alpha, n);
  const OperatorFamily j = gen_j(n);
  const VarTable& tab = j.table;
  const auto ideal = t_dy_generators(tab);
  VerificationReport rep;
  rep.check = "commuting_lemma";
  rep.parameters = {{"n", n}, {"alpha", std::vector<int>(alpha.begin(), alpha.end())}, {"label", label}};
  WeylPolynomial lhs = mul(t_power(tab, alpha) - dy_power(tab, alpha), j.at(label), budget.max_terms);
  auto red = left_reduce(lhs, ideal, TermOrder::preset("paper-s4", tab), budget);
  rep.residual = double(red.remainder.size());
  rep.status = red.remainder.is_zero() ? "pass" : "fail";
  if (!red.remainder.is_zero()) rep.details["remainder"] = to_text(red.remainder);
  return rep;
}

VerificationReport check_commuting_all(std::string_view label, int n, int max_degree, const Budget& budget) {
  VerificationReport rep;
  rep.check = "commuting_lemma";
  rep.parameters = {{"n", n}, {"label", label}, {"max_degree", max_degree}};
  std::size_t count = 0;
  json failures = json::array();
  for (const auto& a : multi_indices(std::size_t(n + 1), max_degree)) {
    auto one = check_commuting_lemma(a, label, n, budget);
    ++count;
    rep.residual = std::max(rep.residual, one.residual);
    if (!one.passed()) failures.push_back(a);
  }
  rep.status = failures.empty() ? "pass" : "fail";
  rep.details["checked"] = count;
  if (!failures.empty()) rep.details["failures"] = failures;
  return rep;
}

namespace {

// Every element of a lies in <b>, each backed by re-expanded cofactors.
// Returns the indices that are not members or whose certificate is wrong.
std::vector<std::size_t> certified_inclusion(const std::vector<WeylPolynomial>& a,
                                             const std::vector<WeylPolynomial>& b, const TermOrder& ord,
                                             const Budget& budget) {
  GroebnerOptions o = options_for(budget, "certificate basis");
  o.track_cofactors = true;
  GroebnerBasis gb = buchberger(b, ord, o);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Membership m = ideal_membership(a[i], gb, true);
    WeylPolynomial sum(a[i].table());
    if (m.member)
      for (std::size_t k = 0; k < b.size(); ++k) sum += mul(m.certificate[k], b[k], budget.max_terms);
    if (!m.member || !(sum == a[i])) bad.push_back(i);
  }
  return bad;
}

}  // namespace

VerificationReport check_J_equals_K(int n, std::optional<std::string> drop, bool certificates,
                                    const Budget& budget) {
  const OperatorFamily j0 = gen_j0(n);
  OperatorFamily k = gen_j(n);
  VerificationReport rep;
  rep.check = "j_equals_k";
  rep.parameters = {{"n", n}, {"order", "grevlex"}};
  if (drop) {
    auto idx = k.index_of(*drop);
    if (!idx) throw std::invalid_argument("genJ has no operator labelled '" + *drop + "'");
    k.labels.erase(k.labels.begin() + std::ptrdiff_t(*idx));
    k.operators.erase(k.operators.begin() + std::ptrdiff_t(*idx));
    rep.parameters["dropped"] = *drop;
  }
  const TermOrder ord = TermOrder::preset("grevlex", k.table);
  json j0_out = json::array(), k_out = json::array();
  if (certificates) {
    for (auto i : certified_inclusion(j0.operators, k.operators, ord, budget)) j0_out.push_back(j0.labels[i]);
    for (auto i : certified_inclusion(k.operators, j0.operators, ord, budget)) k_out.push_back(k.labels[i]);
    rep.certificate = "cofactors re-expanded for " + std::to_string(j0.size() + k.size()) + " generators";
  } else {
    auto cmp = compare_ideals(j0.operators, k.operators, ord, options_for(budget, "J = K"));
    for (auto i : cmp.a_outside_b) j0_out.push_back(j0.labels[i]);
    for (auto i : cmp.b_outside_a) k_out.push_back(k.labels[i]);
    rep.certificate = "cross-membership by grevlex Groebner bases";
  }
  const bool equal = j0_out.empty() && k_out.empty();
  rep.details["equal"] = equal;
  rep.details["genJ0_outside_genJ"] = j0_out;
  rep.details["genJ_outside_genJ0"] = k_out;
  rep.residual = double(j0_out.size() + k_out.size());
  rep.status = (drop ? !equal : equal) ? "pass" : "fail";
  return rep;
}

VerificationReport check_integration_theorem(int n, bool elimination, const Budget& budget) {
  VerificationReport rep;
  rep.check = "integration_theorem";
  rep.parameters = {{"n", n}};
  bool ok = true;

  json lifts = json::array();
  for (const auto& c : lift_checks(n)) {
    std::size_t dt_terms = 0;
    for (const auto& u : c.decomposition.u) dt_terms += u.size();
    lifts.push_back({{"label", c.label}, {"ok", c.ok}, {"u_terms", dt_terms}});
    if (!c.ok) {
      ok = false;
      rep.residual += double(c.decomposition.remainder.size());
    }
  }
  rep.details["lifts"] = lifts;

  if (elimination && n == 1) {
    const OperatorFamily j = gen_j(n);
    const OperatorFamily fb = ann_fb(n);
    GroebnerBasis gj = buchberger(j.operators, TermOrder::preset("paper-s4", j.table), options_for(budget, "J"));
    GroebnerBasis gfb = buchberger(fb.operators, TermOrder::preset("grevlex", fb.table), options_for(budget, "annFB"));
    const auto t_slots = j.table.slots(VarKind::T);
    std::size_t eliminated = 0, nonzero = 0;
    for (const auto& g : gj.generators()) {
      if (!g.free_of(t_slots)) continue;
      ++eliminated;
      if (!gfb.contains(restrict_to(g, fb.table), budget)) ++nonzero;
    }
    rep.details["elimination"] = {{"basis_size", gj.size()}, {"t_free", eliminated}, {"outside_annFB", nonzero}};
    rep.residual += double(nonzero);
    ok = ok && nonzero == 0 && eliminated > 0;
  } else {
    rep.details["elimination"] = "not run";
  }
  rep.status = ok ? "pass" : "fail";
  rep.certificate = "dt decompositions of genJ - lift(annFB)";
  return rep;
}

VerificationReport check_holonomic_conjecture(int n, const Budget& budget) {
  const OperatorFamily fb = ann_fb(n);
  HolonomicReport h = is_holonomic(fb.operators, budget);
  VerificationReport rep;
  rep.check = "holonomic";
  rep.parameters = {{"n", n}, {"family", "annFB"}};
  rep.residual = std::abs(double(h.dimension) - double(h.variables));
  rep.status = h.holonomic ? "pass" : "fail";
  rep.details = {{"variables", h.variables},
                 {"ambient", h.ambient},
                 {"dimension", h.dimension},
                 {"basis_size", h.basis_size},
                 {"operators", fb.size()}};
  rep.certificate = "leading monomials of the char-order Groebner basis";
  return rep;
}

VerificationReport check_twist_reconstruction(int n) {
  const OperatorFamily mu = ann_mu(n);
  const OperatorFamily j0 = gen_j0(n);
  std::vector<std::size_t> slots(mu.table.size());
  for (std::size_t s = 0; s < slots.size(); ++s) slots[s] = s;
  const CommutativePolynomial g = g_poly(n);
  VerificationReport rep;
  rep.check = "twist_reconstruction";
  rep.parameters = {{"n", n}};
  json mismatches = json::array();
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (!(twist(mu.operators[i], g, slots) == j0.at(mu.labels[i]))) mismatches.push_back(mu.labels[i]);
  rep.residual = double(mismatches.size());
  rep.status = mismatches.empty() ? "pass" : "fail";
  rep.details["operators"] = mu.size();
  if (!mismatches.empty()) rep.details["mismatches"] = mismatches;
  return rep;
}

VerificationReport check_derived_sphere_ops(int n, const Budget& budget) {
  const OperatorFamily mu = ann_mu(n);
  GroebnerBasis gb = buchberger(mu.operators, TermOrder::preset("grevlex", mu.table), options_for(budget, "annMU"));
  VerificationReport rep;
  rep.check = "derived_sphere_ops";
  rep.parameters = {{"n", n}};
  json ops = json::array();
  bool ok = true;
  for (const auto& d : derived_sphere_ops(n)) {
    WeylPolynomial sum(mu.table);
    for (std::size_t i = 0; i < mu.size(); ++i) sum += mul(d.combination[i], mu.operators[i], budget.max_terms);
    const bool expands = sum == d.op;
    const bool member = gb.contains(d.op, budget);
    ops.push_back({{"k", d.k}, {"operator", to_text(d.op)}, {"combination", expands}, {"member", member}});
    if (!expands || !member) {
      ok = false;
      rep.residual += 1;
    }
  }
  rep.details["operators"] = ops;
  rep.status = ok ? "pass" : "fail";
  rep.certificate = "explicit left combination of annMU generators";
  return rep;
}

VerificationReport check_char_dimension_annmu(int n, const Budget& budget) {
  const OperatorFamily mu = ann_mu(n);
  auto ci = char_ideal(mu.operators, budget);
  const int dim = krull_dimension(ci, symbol_ring(mu.table), budget);
  VerificationReport rep;
  rep.check = "char_dimension_annmu";
  rep.parameters = {{"n", n}};
  rep.residual = std::abs(double(dim) - double(mu.table.size()));
  rep.status = dim == int(mu.table.size()) ? "pass" : "fail";
  rep.details = {{"dimension", dim}, {"variables", mu.table.size()}, {"generators", ci.size()}};
  return rep;
}

namespace {

struct SymbolIdeals {
  std::vector<CommutativePolynomial> i1;  // I'
  std::vector<Exponents> i2;              // I''
};

SymbolIdeals symbol_ideals(const VarTable& tab) {
  const RingRef ring = symbol_ring(tab);
  const std::size_t d = tab.size();
  const int m = tab.n() + 1;
  auto v = [&](std::size_t k) { return CommutativePolynomial::variable(ring, k); };
  auto mono = [&](std::initializer_list<std::pair<std::size_t, int>> f) {
    Exponents e(2 * d, 0);
    for (auto [k, p] : f) e[k] = Exponent(e[k] + p);
    return e;
  };
  SymbolIdeals s;
  for (auto k : tab.slots(VarKind::X)) {
    s.i1.push_back(v(d + k));
    s.i2.push_back(mono({{d + k, 1}}));
  }
  for (auto k : tab.slots(VarKind::Y)) {
    s.i1.push_back(v(d + k));
    s.i2.push_back(mono({{d + k, 1}}));
  }
  const std::size_t r = tab.r();
  CommutativePolynomial sphere = -(v(r) * v(r));
  for (int i = 1; i <= m; ++i) sphere += v(tab.t(i)) * v(tab.t(i));
  s.i1.push_back(sphere);
  s.i2.push_back(mono({{tab.t(m), 2}}));
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      s.i1.push_back(v(tab.t(i)) * v(d + tab.t(j)) - v(tab.t(j)) * v(d + tab.t(i)));
      s.i2.push_back(mono({{tab.t(i), 1}, {d + tab.t(j), 1}}));
    }
  for (int i = 1; i <= m; ++i) {
    s.i1.push_back(v(r) * v(r) * v(d + tab.t(i)) + v(tab.t(i)) * v(r) * v(d + r));
    s.i2.push_back(mono({{r, 2}, {d + tab.t(i), 1}}));
  }
  return s;
}

}  // namespace

VerificationReport check_char_inclusion(int n, const Budget& budget) {
  const OperatorFamily mu = ann_mu(n);
  auto ci = char_ideal(mu.operators, budget);
  const TermOrder ord = TermOrder::preset("grevlex", mu.table);
  const SymbolIdeals s = symbol_ideals(mu.table);
  VerificationReport rep;
  rep.check = "char_inclusion";
  rep.parameters = {{"n", n}};
  json outside = json::array();
  for (const auto& g : s.i1)
    if (!comm_normal_form(g, ci, ord, budget).is_zero()) outside.push_back(to_text(g));
  rep.residual = double(outside.size());
  rep.status = outside.empty() ? "pass" : "fail";
  rep.details = {{"symbols", s.i1.size()}, {"char_generators", ci.size()}};
  if (!outside.empty()) rep.details["outside"] = outside;
  return rep;
}

VerificationReport check_symbol_dimensions(int n, const Budget& budget) {
  const VarTable tab(n, Ring::Full);
  const SymbolIdeals s = symbol_ideals(tab);
  const TermOrder ord = TermOrder::preset("paper-s2", tab);
  auto gb = comm_buchberger(s.i1, ord, budget);
  std::vector<Exponents> lms;
  for (const auto& g : gb) lms.push_back(leading_term(g, ord).first);
  std::size_t missing = 0;
  for (const auto& e : s.i2)
    if (std::none_of(lms.begin(), lms.end(), [&](const Exponents& lm) { return divides(lm, e); })) ++missing;
  const int d1 = monomial_ideal_dimension(lms, 2 * tab.size());
  const int d2 = monomial_ideal_dimension(s.i2, 2 * tab.size());
  const int d = int(tab.size());
  VerificationReport rep;
  rep.check = "symbol_dimensions";
  rep.parameters = {{"n", n}, {"order", "paper-s2"}};
  rep.details = {{"variables", d},
                 {"dim_I1", d1},
                 {"dim_I2", d2},
                 {"I2_outside_leading_ideal", missing},
                 {"basis_size", gb.size()}};
  rep.residual = std::abs(double(d1 - d)) + std::abs(double(d2 - d)) + double(missing);
  rep.status = rep.residual == 0 ? "pass" : "fail";
  return rep;
}

VerificationReport check_initial_ideal_t(int n, const Budget& budget) {
  const VarTable tab(n, Ring::Full);
  const TermOrder ord = TermOrder::preset("paper-s4", tab);
  GroebnerBasis gb = buchberger(t_dy_generators(tab), ord, options_for(budget, "D{t - dy}"));
  std::vector<WeylMonomial> want;
  for (int i = 1; i <= n + 1; ++i) {
    WeylMonomial m = zero_monomial(tab);
    m[tab.t(i)] = 1;
    want.push_back(m);
  }
  auto got = gb.leading_monomials();
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  VerificationReport rep;
  rep.check = "initial_ideal_t";
  rep.parameters = {{"n", n}, {"order", "paper-s4"}};
  rep.status = got == want ? "pass" : "fail";
  rep.residual = got == want ? 0 : 1;
  json lm = json::array();
  for (const auto& m : gb.leading_monomials()) lm.push_back(to_text(WeylPolynomial::monomial(tab, m)));
  rep.details["leading_monomials"] = lm;
  return rep;
}

std::vector<FbPoint> random_points(int n, int count, std::uint64_t seed) {
  require_quadrature_n(n);
  std::mt19937_64 rng(seed);
  auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  const VarTable tab(n, Ring::Param);
  std::vector<FbPoint> out;
  for (int c = 0; c < count; ++c) {
    std::vector<double> x(tab.x_count()), y(tab.dim());
    for (auto& v : x) v = 2 * unit() - 1;
    for (auto& v : y) v = 2 * unit() - 1;
    const double r = 0.5 + 1.5 * unit();
    out.push_back(FbPoint::make(n, x, y, r));
  }
  return out;
}

FbPoint regression_point(int n) {
  require_quadrature_n(n);
  if (n == 1) {
    const double x[] = {0.3, -0.2, 0.1}, y[] = {0.5, -0.4};
    return FbPoint::make(1, x, y, 1.0);
  }
  const double x[] = {0.3, -0.2, 0.1, 0.1, 0.05, -0.25}, y[] = {0.5, -0.4, 0.2};
  return FbPoint::make(2, x, y, 1.0);
}

VerificationReport check_numeric_annihilation(const FbPoint& p, double tol) {
  const OperatorFamily fb = ann_fb(p.n);
  int degree = 0;
  for (const auto& op : fb.operators) degree = std::max(degree, moment_degree(op));
  MomentEvaluator ev(p, degree);
  VerificationReport rep;
  rep.check = "numeric_annihilation";
  rep.parameters = {{"n", p.n}, {"point", point_json(p)}, {"tol", tol}};
  bool ok = ev.converged();
  json ops = json::array();
  for (std::size_t i = 0; i < fb.size(); ++i) {
    NumericApplication a = apply_operator_numeric(fb.operators[i], ev);
    const double rel = relative(a.value, a.scale);
    const bool mixed = fb.labels[i].starts_with("mixed");
    const bool pass = mixed ? a.value == 0.0 : rel <= tol;
    ok = ok && pass;
    rep.residual = std::max(rep.residual, rel);
    ops.push_back({{"label", fb.labels[i]}, {"value", a.value}, {"scale", a.scale}, {"pass", pass}});
  }
  rep.details = {{"operators", ops}, {"resolution", ev.resolution()}, {"converged", ev.converged()}};
  rep.status = ok ? "pass" : "fail";
  return rep;
}

VerificationReport check_surface_measure(int n, double tol) {
  require_quadrature_n(n);
  const VarTable tab(n, Ring::Param);
  const std::vector<double> x(tab.x_count(), 0.0), y(tab.dim(), 0.0);
  VerificationReport rep;
  rep.check = "surface_measure";
  rep.parameters = {{"n", n}, {"tol", tol}};
  bool ok = true;
  json areas = json::array();
  for (double r : {0.5, 1.0, 2.0}) {
    const double exact = n == 1 ? 2 * std::numbers::pi * r : 4 * std::numbers::pi * r * r;
    const double f = quadrature_F(FbPoint::make(n, x, y, r)).value;
    const double rel = std::abs(f - exact) / exact;
    ok = ok && rel <= tol;
    rep.residual = std::max(rep.residual, rel);
    areas.push_back({{"r", r}, {"F", f}, {"exact", exact}, {"relative_error", rel}});
  }
  const OperatorFamily fb = ann_fb(n);
  json ops = json::array();
  for (auto [label, r] : {std::pair<std::string, double>{"euler", 1.0}, {"trace", 2.0}}) {
    NumericApplication a = apply_operator_numeric(fb.at(label), FbPoint::make(n, x, y, r));
    const double rel = relative(a.value, a.scale);
    ok = ok && rel <= tol;
    rep.residual = std::max(rep.residual, rel);
    ops.push_back({{"label", label}, {"r", r}, {"value", a.value}, {"scale", a.scale}});
  }
  rep.details = {{"areas", areas}, {"operators", ops}};
  rep.status = ok ? "pass" : "fail";
  return rep;
}

VerificationReport check_quadrature_consistency(int n, double tol) {
  const FbPoint p = regression_point(n);
  QuadratureResult q = quadrature_F(p);
  std::vector<int> a(std::size_t(n + 1), 0);
  a[0] = a[1] = 1;
  VerificationReport rep;
  rep.check = "quadrature_consistency";
  rep.parameters = {{"n", n}, {"point", point_json(p)}, {"tol", tol}};
  rep.residual = q.change;
  rep.status = q.converged && q.change < tol ? "pass" : "fail";
  rep.details = {{"F", q.value}, {"resolution", q.resolution}, {"moment_t1_t2", moment(a, p)}};
  return rep;
}

VerificationReport check_distributional_annihilation(const WeylPolynomial& P, const WeylPolynomial& phi, double r0,
                                                     int n, double tol) {
  require_quadrature_n(n);
  const VarTable tab(n, Ring::Param);
  const std::vector<double> x(tab.x_count(), 0.0), y(tab.dim(), 0.0);
  NumericApplication a = distributional_pairing(P, phi, FbPoint::make(n, x, y, r0));
  VerificationReport rep;
  rep.check = "distributional_annihilation";
  rep.parameters = {{"n", n}, {"operator", to_text(P)}, {"phi", to_text(phi)}, {"r0", r0}, {"tol", tol}};
  rep.residual = relative(a.value, a.scale);
  rep.status = rep.residual <= tol ? "pass" : "fail";
  rep.details = {{"value", a.value}, {"scale", a.scale}};
  return rep;
}

VerificationReport check_distributional_family(int n, double tol) {
  require_quadrature_n(n);
  const OperatorFamily mu = ann_mu(n);
  std::vector<std::string> phis = {"1", "t[1]^2", "t[1]^3*t[2]", "t[1]^2*t[2]^2 + t[2]^4 - 3*t[1]", "t[1]^5*t[2]^3"};
  if (n == 2) {
    phis.push_back("t[1]*t[2]*t[3]");
    phis.push_back("t[3]^4 - t[1]^2*t[3]^2 + 2*t[2]");
  }
  VerificationReport rep;
  rep.check = "distributional_annihilation";
  rep.parameters = {{"n", n}, {"tol", tol}, {"r0", {1.0, 1.3}}};
  bool ok = true;
  json ops = json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    double worst = 0;
    for (const auto& text : phis)
      for (double r0 : {1.0, 1.3}) {
        auto one = check_distributional_annihilation(mu.operators[i], parse_operator(text, mu.table), r0, n, tol);
        worst = std::max(worst, one.residual);
        ok = ok && one.passed();
      }
    rep.residual = std::max(rep.residual, worst);
    ops.push_back({{"label", mu.labels[i]}, {"residual", worst}});
  }
  rep.details = {{"operators", ops}, {"phi", phis}};
  rep.status = ok ? "pass" : "fail";
  return rep;
}

namespace {

double max_relative(std::span<const double> a, std::span<const double> b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(std::abs(b[i]), 1e-300));
  return worst;
}

FbPoint fb_point(std::span<const double> v) {
  return FbPoint::make(1, v.subspan(0, 3), v.subspan(3, 2), v[5]);
}

}  // namespace

std::vector<VerificationReport> check_pfaffian(const PfaffianCheckOptions& opts) {
  const OperatorFamily fb = ann_fb(1);
  std::vector<VerificationReport> out;

  RationalGB gb = rational_gb(fb.operators, "pfaffian-grevlex", opts.budget);
  {
    VerificationReport rep;
    rep.check = "pfaffian_rank";
    rep.parameters = {{"n", 1}, {"order", "pfaffian-grevlex"}};
    json basis = json::array();
    for (const auto& s : gb.standard) {
      WeylMonomial m(2 * fb.table.size(), 0);
      std::copy(s.begin(), s.end(), m.begin() + std::ptrdiff_t(fb.table.size()));
      basis.push_back(to_text(WeylPolynomial::monomial(fb.table, m)));
    }
    rep.details = {{"rank", gb.standard.size()}, {"standard", basis}, {"basis_size", gb.basis.size()}};
    out.push_back(rep);
  }
  {
    VerificationReport rep;
    rep.check = "pfaffian_rank_stability";
    rep.parameters = {{"n", 1}, {"orders", {"pfaffian-grevlex", "pfaffian-lex"}}};
    RationalGB lex = rational_gb(fb.operators, "pfaffian-lex", opts.budget);
    rep.details = {{"grevlex", gb.standard.size()}, {"lex", lex.standard.size()}};
    rep.residual = std::abs(double(gb.standard.size()) - double(lex.standard.size()));
    rep.status = rep.residual == 0 ? "pass" : "fail";
    out.push_back(rep);
  }

  const PfaffianSystem sys = pfaffian_matrices(gb);
  {
    VerificationReport rep;
    rep.check = "pfaffian_integrability";
    rep.parameters = {{"n", 1}, {"seed", opts.seed}, {"points", opts.points}};
    json pts = json::array();
    for (const auto& p : random_points(1, opts.points, opts.seed)) {
      const double res = integrability_residual(sys, p.values);
      rep.residual = std::max(rep.residual, res);
      pts.push_back({{"point", p.values}, {"residual", res}});
    }
    rep.details["points"] = pts;
    rep.status = rep.residual < 1e-8 ? "pass" : "fail";
    out.push_back(rep);
  }

  const std::vector<double> base_pt = default_base_point();
  const std::vector<double> base = base_vector(sys, fb_point(base_pt));
  std::vector<double> end_a = base_pt, end_b = base_pt;
  // x11 - x22 vanishes on part of the singular locus; every path keeps x11 < x22.
  end_a[3] += 0.5;
  end_b[0] -= 0.3;
  end_b[1] -= 0.2;
  end_b[2] += 0.1;
  end_b[4] += 0.4;
  end_b[5] += 0.25;
  {
    VerificationReport rep;
    rep.check = "pfaffian_ode";
    rep.parameters = {{"n", 1}, {"base", base_pt}};
    json paths = json::array();
    bool ok = true;
    for (const auto& end : {end_a, end_b}) {
      OdeResult res = ode_continue(sys, base_pt, base, end);
      const double q = quadrature_F(fb_point(end)).value;
      const double rel = std::abs(res.value[0] - q) / std::abs(q);
      ok = ok && res.converged && rel <= 1e-5;
      rep.residual = std::max(rep.residual, rel);
      paths.push_back({{"to", end}, {"ode", res.value[0]}, {"quadrature", q}, {"steps", res.steps}});
    }
    rep.details["paths"] = paths;
    rep.status = ok ? "pass" : "fail";
    out.push_back(rep);
  }
  {
    VerificationReport rep;
    rep.check = "pfaffian_path_independence";
    std::vector<double> via = base_pt;
    via[0] -= 0.2;
    via[2] += 0.05;
    via[3] += 0.4;
    via[5] += 0.1;
    rep.parameters = {{"n", 1}, {"to", end_b}, {"via", via}};
    OdeResult direct = ode_continue(sys, base_pt, base, end_b);
    OdeResult bent = ode_continue_path(sys, {base_pt, via, end_b}, base);
    rep.residual = max_relative(bent.value, direct.value);
    rep.status = direct.converged && bent.converged && rep.residual <= 1e-6 ? "pass" : "fail";
    out.push_back(rep);
  }
  {
    VerificationReport rep;
    rep.check = "pfaffian_reversibility";
    rep.parameters = {{"n", 1}, {"to", end_a}};
    OdeResult fwd = ode_continue(sys, base_pt, base, end_a);
    OdeResult back = ode_continue(sys, end_a, fwd.value, base_pt);
    rep.residual = max_relative(back.value, base);
    rep.status = fwd.converged && back.converged && rep.residual <= 1e-7 ? "pass" : "fail";
    out.push_back(rep);
  }
  {
    VerificationReport rep;
    rep.check = "pfaffian_singular_locus";
    const std::vector<double> locus = {0.2, 0.0, 0.2, 0.0, 0.0, 1.0};
    rep.parameters = {{"n", 1}, {"point", locus}};
    json behaviour = json::array();
    for (std::size_t v = 0; v < sys.matrices.size(); ++v) {
      try {
        auto m = sys.evaluate(v, locus);
        double worst = 0;
        for (double e : m) worst = std::max(worst, std::abs(e));
        behaviour.push_back({{"variable", fb.table.name(v)}, {"finite", std::isfinite(worst)}, {"max_entry", worst}});
      } catch (const SingularLocus& e) {
        behaviour.push_back({{"variable", fb.table.name(v)}, {"singular", e.what()}});
      }
    }
    rep.details["matrices"] = behaviour;
    out.push_back(rep);
  }
  return out;
}

std::vector<std::string> suite_names() { return {"symbolic", "numeric", "pfaffian", "all"}; }

std::vector<VerificationReport> run_checks(
    const std::vector<std::pair<std::string, std::function<VerificationReport()>>>& tasks, int jobs) {
  std::vector<VerificationReport> out(tasks.size());
  auto run_one = [&](std::size_t i) {
    try {
      out[i] = tasks[i].second();
    } catch (const ResourceExhausted& e) {
      out[i].check = tasks[i].first;
      out[i].status = "resource";
      out[i].details["message"] = e.what();
    } catch (const std::exception& e) {
      out[i].check = tasks[i].first;
      out[i].status = "error";
      out[i].details["message"] = e.what();
    }
  };
  const std::size_t workers = std::min<std::size_t>(std::size_t(std::max(jobs, 1)), tasks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) run_one(i);
    });
  pool.clear();
  return out;
}

namespace {

using Task = std::pair<std::string, std::function<VerificationReport()>>;

void symbolic_tasks(std::vector<Task>& tasks, const SuiteOptions& o) {
  const int n = o.n;
  const Budget b = o.budget;
  tasks.push_back({"twist_reconstruction", [=] { return check_twist_reconstruction(n); }});
  tasks.push_back({"congruence_t_alpha", [=] { return check_congruence_all(n, 6, b); }});
  for (const auto& label : gen_j(n).labels)
    tasks.push_back({"commuting_lemma", [=] { return check_commuting_all(label, n, 3, b); }});
  tasks.push_back({"j_equals_k", [=] { return check_J_equals_K(n, std::nullopt, o.certificates, b); }});
  if (n == 1) tasks.push_back({"j_equals_k", [=] { return check_J_equals_K(n, "euler", false, b); }});
  tasks.push_back({"integration_theorem", [=] { return check_integration_theorem(n, true, b); }});
  tasks.push_back({"holonomic", [=] { return check_holonomic_conjecture(n, b); }});
  tasks.push_back({"derived_sphere_ops", [=] { return check_derived_sphere_ops(n, b); }});
  tasks.push_back({"char_dimension_annmu", [=] { return check_char_dimension_annmu(n, b); }});
  tasks.push_back({"char_inclusion", [=] { return check_char_inclusion(n, b); }});
  tasks.push_back({"symbol_dimensions", [=] { return check_symbol_dimensions(n, b); }});
  tasks.push_back({"initial_ideal_t", [=] { return check_initial_ideal_t(n, b); }});
}

void numeric_tasks(std::vector<Task>& tasks, const SuiteOptions& o) {
  const int n = o.n;
  require_quadrature_n(n);
  tasks.push_back({"surface_measure", [=] { return check_surface_measure(n); }});
  tasks.push_back({"quadrature_consistency", [=] { return check_quadrature_consistency(n); }});
  const auto points = random_points(n, o.points, o.seed);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const FbPoint p = points[i];
    const std::uint64_t seed = o.seed;
    const double tol = o.tol;
    tasks.push_back({"numeric_annihilation", [=] {
                       auto rep = check_numeric_annihilation(p, tol);
                       rep.parameters["seed"] = seed;
                       rep.parameters["index"] = i;
                       return rep;
                     }});
  }
  tasks.push_back({"distributional_annihilation", [=] { return check_distributional_family(n); }});
}

}  // namespace

std::vector<VerificationReport> run_suite(std::string_view suite, const SuiteOptions& opts) {
  const bool all = suite == "all";
  if (!all && suite != "symbolic" && suite != "numeric" && suite != "pfaffian")
    throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  std::vector<Task> tasks;
  if (all || suite == "symbolic") symbolic_tasks(tasks, opts);
  if (all || suite == "numeric") numeric_tasks(tasks, opts);
  std::vector<VerificationReport> out = run_checks(tasks, opts.jobs);
  if (all || suite == "pfaffian") {
    if (opts.n != 1) throw std::invalid_argument("the pfaffian suite is implemented for n = 1");
    PfaffianCheckOptions po;
    po.seed = opts.seed;
    po.budget = opts.budget;
    try {
      for (auto& r : check_pfaffian(po)) out.push_back(std::move(r));
    } catch (const ResourceExhausted& e) {
      VerificationReport r;
      r.check = "pfaffian";
      r.status = "resource";
      r.details["message"] = e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace holoweyl
