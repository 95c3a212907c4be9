#pragma once

#include "holoweyl/budget.hpp"
#include "holoweyl/commutative.hpp"
#include "holoweyl/groebner.hpp"
#include "holoweyl/quadrature.hpp"

#include "json.hpp"

#include <span>
#include <string>
#include <vector>

namespace holoweyl {

/// num/den over the base ring of a table, with the common gcd removed and the
/// denominator scaled so that its lex-leading coefficient is 1.
struct RationalFunction {
  CommutativePolynomial num;
  CommutativePolynomial den;

  static RationalFunction make(CommutativePolynomial num, CommutativePolynomial den);
  bool is_zero() const { return num.is_zero(); }
  double evaluate(std::span<const double> point) const;
};

/// A Groebner basis of R*I, R the Weyl algebra with rational-function
/// coefficients, read off a Weyl basis of I under a block order with the
/// partials first. `standard` lists the partial exponent vectors outside
/// the staircase of the leading partial parts.
struct RationalGB {
  GroebnerBasis basis;
  std::vector<Exponents> leading_partials;
  std::vector<Exponents> standard;  // sorted ascending under the partial order
};

/// order: "pfaffian-grevlex" or "pfaffian-lex". Throws NotHolonomic when the
/// staircase is infinite.
RationalGB rational_gb(std::span<const WeylPolynomial> gens, const std::string& order = "pfaffian-grevlex",
                       const Budget& budget = {});

struct PfaffianSystem {
  VarTable table;
  std::string order;
  std::vector<Exponents> basis;  // standard partial monomials
  /// matrices[v][i][j]: d/dz_v (d^basis[i] F) = sum_j matrices[v][i][j] * d^basis[j] F
  std::vector<std::vector<std::vector<RationalFunction>>> matrices;

  std::size_t rank() const { return basis.size(); }
  /// Row-major rank x rank matrix P_v at a point; throws SingularLocus when a
  /// denominator is below rel_threshold times the sum of its term magnitudes.
  std::vector<double> evaluate(std::size_t v, std::span<const double> point, double rel_threshold = 1e-10) const;
  /// The operator d^basis[i] over the table.
  WeylPolynomial basis_operator(std::size_t i) const;
};

PfaffianSystem pfaffian_matrices(const RationalGB& gb);

/// max over u < v and entries of |d_u P_v + P_v P_u - d_v P_u - P_u P_v|,
/// divided by the largest magnitude among the four terms (at least 1). The
/// derivatives are central differences with two Richardson levels.
double integrability_residual(const PfaffianSystem& sys, std::span<const double> point);

/// (d^s F)(point) for every standard monomial s, by quadrature.
std::vector<double> base_vector(const PfaffianSystem& sys, const FbPoint& point);

struct OdeResult {
  std::vector<double> value;
  int steps = 0;
  double change = 0;  // relative change at the last halving
  bool converged = false;
};

/// RK4 along the straight segment from -> to, starting with `steps` steps
/// and halving the step until the endpoint changes by less than tol
/// (relative). Every stage point is checked against the singular locus.
OdeResult ode_continue(const PfaffianSystem& sys, std::span<const double> from, std::span<const double> base,
                       std::span<const double> to, int steps = 64, double tol = 1e-8, int max_steps = 1 << 16);

/// Piecewise-linear path through the given points.
OdeResult ode_continue_path(const PfaffianSystem& sys, const std::vector<std::vector<double>>& points,
                            std::span<const double> base, int steps = 64, double tol = 1e-8);

/// The default base point (x11, x12, x22, y1, y2, r) for n = 1.
std::vector<double> default_base_point();

nlohmann::json to_json(const PfaffianSystem& sys);

}  // namespace holoweyl
