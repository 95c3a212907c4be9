#pragma once

#include "holoweyl/var_table.hpp"
#include "holoweyl/weyl.hpp"

#include <array>
#include <map>
#include <span>
#include <vector>

namespace holoweyl {

/// A parameter point (x, y, r) of the Fisher-Bingham integral, stored in the
/// base-slot order of the Param table.
struct FbPoint {
  int n = 1;
  std::vector<double> values;

  /// x is row-major upper triangular (x[1][1], x[1][2], ...), y has n+1 entries.
  static FbPoint make(int n, std::span<const double> x, std::span<const double> y, double r);
  double r() const { return values.back(); }
  double x(int i, int j) const;
  double y(int i) const;
};

/// Product rule on the sphere S^n(r) with positive weights summing to its
/// surface area: the trapezoid rule in the angle for n = 1 (resolution =
/// number of angles) and Gauss-Legendre in cos(theta) times the trapezoid
/// rule in phi for n = 2 (resolution = number of Gauss nodes, 2x as many
/// angles).
struct SphereGrid {
  int n = 1;
  double r = 1;
  int resolution = 0;
  std::vector<std::array<double, 3>> nodes;  // unused coordinates are 0
  std::vector<double> weights;
};

SphereGrid make_sphere_grid(int n, double r, int resolution);
int default_resolution(int n);
int max_resolution(int n);

/// Exponent g(t) = sum_{i<=j} x_ij t_i t_j + sum_i y_i t_i.
double fb_exponent(const FbPoint& p, std::span<const double> t);

struct QuadratureResult {
  double value = 0;
  int resolution = 0;
  bool converged = false;
  double change = 0;  // relative change at the last doubling
};

/// F(x, y, r) with resolution doubling until the relative change is below tol.
QuadratureResult quadrature_F(const FbPoint& p, double tol = 1e-12);

/// Moments M_a(r) = int_{S^n(r)} t^a exp(g) |dt| at a fixed point. The grid
/// resolution is chosen once (doubling until every moment of degree <= the
/// given bound has converged) and reused for every radius, so two requests
/// for the same (a, r) return the identical double.
class MomentEvaluator {
 public:
  MomentEvaluator(FbPoint p, int max_degree, double tol = 1e-12);

  const FbPoint& point() const { return p_; }
  int resolution() const { return resolution_; }
  bool converged() const { return converged_; }

  double moment(std::span<const int> a) const { return moment(a, p_.r()); }
  double moment(std::span<const int> a, double r) const;
  /// d^k/dr^k M_a at the point's radius: central differences with step
  /// 1e-3 r and two Richardson levels.
  double moment_dr(std::span<const int> a, int k) const;

 private:
  std::vector<double> moments_at(double r, int resolution, int max_degree) const;

  FbPoint p_;
  int resolution_ = 0;
  bool converged_ = false;
  mutable std::map<std::pair<std::vector<int>, double>, double> cache_;
  mutable std::map<double, SphereGrid> grids_;
};

double moment(std::span<const int> a, const FbPoint& p);

struct NumericApplication {
  double value = 0;
  double scale = 0;  // largest absolute monomial contribution
};

/// (P F)(point) for P in the Param table: d_x and d_y map to moments exactly,
/// d_r acts by finite differences on r -> moment.
NumericApplication apply_operator_numeric(const WeylPolynomial& P, const FbPoint& p);
NumericApplication apply_operator_numeric(const WeylPolynomial& P, const MomentEvaluator& ev);

/// Maximum total t-degree of the moments P needs.
int moment_degree(const WeylPolynomial& P);

/// <P mu_r, phi> for P over the Full table: the formal adjoint over t acts on
/// phi, what remains of r and d_r acts on r -> int_{S^n(r)} (...) |dt| by
/// finite differences. Terms with d_x or d_y vanish; x and y coefficients
/// are evaluated at the given point (its r is r0). The scale is the largest
/// |coefficient| * int |psi| |dt| / r^k over the terms, which stays honest
/// when symmetry makes every signed contribution vanish.
NumericApplication distributional_pairing(const WeylPolynomial& P, const WeylPolynomial& phi, const FbPoint& p);

/// k-th derivative of f at r by central differences (step h) with two
/// Richardson levels.
template <class F>
double richardson_derivative(F&& f, double r, int k, double h);

}  // namespace holoweyl

#include "holoweyl/detail/richardson.hpp"
