#include "holoweyl/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace holoweyl {

namespace {

void check_n(int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("quadrature is implemented for n = 1 and n = 2");
}

// All multi-indices over n+1 coordinates with total degree <= max_degree.
std::vector<std::vector<int>> multi_indices(int n, int max_degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(std::size_t(n + 1), 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos == a.size()) {
      out.push_back(a);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      a[pos] = e;
      self(self, pos + 1, left - e);
    }
    a[pos] = 0;
  };
  rec(rec, 0, max_degree);
  return out;
}

double monomial_value(std::span<const int> a, const std::array<double, 3>& t) {
  double v = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int e = 0; e < a[i]; ++e) v *= t[i];
  return v;
}

}  // namespace

FbPoint FbPoint::make(int n, std::span<const double> x, std::span<const double> y, double r) {
  VarTable tab(n, Ring::Param);
  if (x.size() != tab.x_count() || y.size() != tab.dim())
    throw std::invalid_argument("point has the wrong number of x or y entries for n = " + std::to_string(n));
  FbPoint p{n, {}};
  p.values.assign(x.begin(), x.end());
  p.values.insert(p.values.end(), y.begin(), y.end());
  p.values.push_back(r);
  return p;
}

double FbPoint::x(int i, int j) const { return values[VarTable(n, Ring::Param).x(i, j)]; }
double FbPoint::y(int i) const { return values[VarTable(n, Ring::Param).y(i)]; }

int default_resolution(int n) { return n == 1 ? 32 : 16; }
int max_resolution(int n) { return n == 1 ? 8192 : 512; }

SphereGrid make_sphere_grid(int n, double r, int resolution) {
  check_n(n);
  if (!(r > 0)) throw std::invalid_argument("radius must be positive");
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  SphereGrid g{n, r, resolution, {}, {}};
  const double pi = std::numbers::pi;
  if (n == 1) {
    const double w = 2 * pi * r / resolution;
    for (int k = 0; k < resolution; ++k) {
      const double a = 2 * pi * k / resolution;
      g.nodes.push_back({r * std::cos(a), r * std::sin(a), 0.0});
      g.weights.push_back(w);
    }
    return g;
  }
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(std::size_t(resolution)), &gsl_integration_glfixed_table_free);
  const int nphi = 2 * resolution;
  const double wphi = 2 * pi / nphi;
  for (int i = 0; i < resolution; ++i) {
    double u = 0, wu = 0;
    gsl_integration_glfixed_point(-1.0, 1.0, std::size_t(i), &u, &wu, table.get());
    const double s = std::sqrt(std::max(0.0, 1 - u * u));
    for (int k = 0; k < nphi; ++k) {
      const double phi = 2 * pi * k / nphi;
      g.nodes.push_back({r * s * std::cos(phi), r * s * std::sin(phi), r * u});
      g.weights.push_back(r * r * wu * wphi);
    }
  }
  return g;
}

double fb_exponent(const FbPoint& p, std::span<const double> t) {
  const int m = p.n + 1;
  double g = 0;
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j <= m; ++j) g += p.x(i, j) * t[std::size_t(i - 1)] * t[std::size_t(j - 1)];
    g += p.y(i) * t[std::size_t(i - 1)];
  }
  return g;
}

namespace {

double integrate_F(const FbPoint& p, int resolution) {
  SphereGrid g = make_sphere_grid(p.n, p.r(), resolution);
  long double sum = 0;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) sum += g.weights[k] * std::exp(fb_exponent(p, g.nodes[k]));
  return double(sum);
}

}  // namespace

QuadratureResult quadrature_F(const FbPoint& p, double tol) {
  check_n(p.n);
  QuadratureResult res;
  int m = default_resolution(p.n);
  double prev = integrate_F(p, m);
  while (m < max_resolution(p.n)) {
    m *= 2;
    const double cur = integrate_F(p, m);
    res.change = std::abs(cur - prev) / std::abs(cur);
    prev = cur;
    if (res.change < tol) {
      res.converged = true;
      break;
    }
  }
  res.value = prev;
  res.resolution = m;
  return res;
}

MomentEvaluator::MomentEvaluator(FbPoint p, int max_degree, double tol) : p_(std::move(p)) {
  check_n(p_.n);
  const auto indices = multi_indices(p_.n, max_degree);
  // the largest radius used by moment_dr with k <= 4
  const double radii[2] = {p_.r(), p_.r() * (1 + 2e-3)};
  int m = default_resolution(p_.n);
  std::vector<double> prev[2];
  for (int s = 0; s < 2; ++s) prev[s] = moments_at(radii[s], m, max_degree);
  while (m < max_resolution(p_.n)) {
    m *= 2;
    bool ok = true;
    for (int s = 0; s < 2; ++s) {
      auto cur = moments_at(radii[s], m, max_degree);
      const double f = std::abs(cur[0]);
      for (std::size_t i = 0; i < cur.size(); ++i) {
        int deg = 0;
        for (int e : indices[i]) deg += e;
        const double scale = f * std::pow(radii[s], deg);
        if (std::abs(cur[i] - prev[s][i]) > tol * scale) ok = false;
      }
      prev[s] = std::move(cur);
    }
    if (ok) {
      converged_ = true;
      break;
    }
  }
  resolution_ = m;
}

std::vector<double> MomentEvaluator::moments_at(double r, int resolution, int max_degree) const {
  SphereGrid g = make_sphere_grid(p_.n, r, resolution);
  const auto indices = multi_indices(p_.n, max_degree);
  std::vector<long double> acc(indices.size(), 0.0L);
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const double w = g.weights[k] * std::exp(fb_exponent(p_, g.nodes[k]));
    for (std::size_t i = 0; i < indices.size(); ++i) acc[i] += w * monomial_value(indices[i], g.nodes[k]);
  }
  return std::vector<double>(acc.begin(), acc.end());
}

double MomentEvaluator::moment(std::span<const int> a, double r) const {
  if (a.size() != std::size_t(p_.n + 1)) throw std::invalid_argument("moment index has the wrong length");
  std::pair<std::vector<int>, double> key{std::vector<int>(a.begin(), a.end()), r};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  auto git = grids_.find(r);
  if (git == grids_.end()) git = grids_.emplace(r, make_sphere_grid(p_.n, r, resolution_)).first;
  const SphereGrid& g = git->second;
  FbPoint at = p_;
  at.values.back() = r;
  long double acc = 0;
  for (std::size_t k = 0; k < g.nodes.size(); ++k)
    acc += g.weights[k] * std::exp(fb_exponent(at, g.nodes[k])) * monomial_value(a, g.nodes[k]);
  const double sum = double(acc);
  cache_.emplace(std::move(key), sum);
  return sum;
}

double MomentEvaluator::moment_dr(std::span<const int> a, int k) const {
  if (k == 0) return moment(a);
  return richardson_derivative([&](double r) { return moment(a, r); }, p_.r(), k, 1e-3 * p_.r());
}

double moment(std::span<const int> a, const FbPoint& p) {
  int deg = 0;
  for (int e : a) deg += e;
  return MomentEvaluator(p, deg).moment(a);
}

namespace {

void check_param(const WeylPolynomial& P, int n) {
  if (P.table() != VarTable(n, Ring::Param))
    throw std::invalid_argument("operator must live in the Param table of the same n");
}

// moment index and r-derivative order of a term
std::pair<std::vector<int>, int> moment_of(const VarTable& tab, const WeylMonomial& m) {
  std::vector<int> a(tab.dim(), 0);
  int k = 0;
  for (std::size_t s = 0; s < tab.size(); ++s) {
    const int e = partial_exponent(m, s);
    if (e == 0) continue;
    auto [i, j] = tab.indices(s);
    switch (tab.kind(s)) {
      case VarKind::X:
        a[std::size_t(i - 1)] += e;
        a[std::size_t(j - 1)] += e;
        break;
      case VarKind::Y: a[std::size_t(i - 1)] += e; break;
      case VarKind::R: k = e; break;
      case VarKind::T: throw std::invalid_argument("t is not a parameter variable");
    }
  }
  return {a, k};
}

double coefficient_value(const WeylMonomial& m, const Rational& c, std::span<const double> values) {
  double v = to_double(c);
  for (std::size_t s = 0; s < values.size(); ++s)
    for (int e = 0; e < base_exponent(m, s); ++e) v *= values[s];
  return v;
}

}  // namespace

int moment_degree(const WeylPolynomial& P) {
  int best = 0;
  for (const auto& t : P.terms()) {
    auto [a, k] = moment_of(P.table(), t.monomial);
    int deg = 0;
    for (int e : a) deg += e;
    best = std::max(best, deg);
  }
  return best;
}

NumericApplication apply_operator_numeric(const WeylPolynomial& P, const FbPoint& p) {
  MomentEvaluator ev(p, std::max(2, moment_degree(P)));
  return apply_operator_numeric(P, ev);
}

NumericApplication apply_operator_numeric(const WeylPolynomial& P, const MomentEvaluator& ev) {
  check_param(P, ev.point().n);
  NumericApplication out;
  for (const auto& t : P.terms()) {
    auto [a, k] = moment_of(P.table(), t.monomial);
    const double contribution = coefficient_value(t.monomial, t.coeff, ev.point().values) * ev.moment_dr(a, k);
    out.value += contribution;
    out.scale = std::max(out.scale, std::abs(contribution));
  }
  return out;
}

NumericApplication distributional_pairing(const WeylPolynomial& P, const WeylPolynomial& phi, const FbPoint& p) {
  const VarTable tab(p.n, Ring::Full);
  if (P.table() != tab || phi.table() != tab) throw std::invalid_argument("operator and test function need the Full table");
  const auto tslots = tab.slots(VarKind::T);
  std::vector<std::size_t> others;
  for (std::size_t s = 0; s < tab.size(); ++s)
    if (tab.kind(s) != VarKind::T) others.push_back(s);
  if (!phi.free_of(others) || !phi.free_of(tslots, false, true))
    throw std::invalid_argument("test function must be a polynomial in t");

  const WeylPolynomial adj = formal_adjoint(P, tslots);
  const std::size_t d = tab.size();
  const int resolution = 64;
  NumericApplication out;
  for (const auto& term : adj.terms()) {
    bool vanishes = false;
    for (std::size_t s : others)
      if (tab.kind(s) != VarKind::R && partial_exponent(term.monomial, s) > 0) vanishes = true;
    if (vanishes) continue;
    // psi = (t^alpha d_t^beta) phi: the partial-free part of the normally ordered product
    WeylMonomial word(2 * d, 0);
    for (std::size_t s : tslots) {
      word[s] = term.monomial[s];
      word[d + s] = term.monomial[d + s];
    }
    const WeylPolynomial prod = mul(WeylPolynomial::monomial(tab, word), phi);
    std::vector<std::pair<std::vector<int>, double>> psi;
    for (const auto& pt : prod.terms()) {
      bool has_partial = false;
      for (std::size_t s = 0; s < d; ++s) has_partial = has_partial || partial_exponent(pt.monomial, s) > 0;
      if (has_partial) continue;
      std::vector<int> a;
      for (std::size_t s : tslots) a.push_back(base_exponent(pt.monomial, s));
      psi.push_back({a, to_double(pt.coeff)});
    }
    auto integrate = [&](double r, bool absolute) {
      SphereGrid g = make_sphere_grid(p.n, r, resolution);
      long double sum = 0;
      for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        double v = 0;
        for (const auto& [a, c] : psi) {
          const double m = c * monomial_value(a, g.nodes[k]);
          v += absolute ? std::abs(m) : m;
        }
        sum += g.weights[k] * v;
      }
      return double(sum);
    };
    auto H = [&](double r) { return integrate(r, false); };
    double coef = to_double(term.coeff);
    for (std::size_t s : others) {
      const double value = tab.kind(s) == VarKind::R ? p.r() : p.values[s];
      for (int e = 0; e < base_exponent(term.monomial, s); ++e) coef *= value;
    }
    const int k = partial_exponent(term.monomial, tab.r());
    out.value += coef * richardson_derivative(H, p.r(), k, 1e-3 * p.r());
    out.scale = std::max(out.scale, std::abs(coef) * integrate(p.r(), true) / std::pow(p.r(), k));
  }
  return out;
}

}  // namespace holoweyl
