#pragma once

#include "holoweyl/commutative.hpp"
#include "holoweyl/weyl.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace holoweyl {

enum class Family { AnnFB, AnnMU, GenJ0, GenJ };

std::string_view to_string(Family f);
Family parse_family(std::string_view text);

/// A named operator family with stable labels:
///   annFB, genJ   mixed(i,j), trace, rot(i,j), euler (genJ starts with ty(i))
///   annMU, genJ0  dx(i,j), dy(i), sphere, rot(i,j), euler
struct OperatorFamily {
  Family family;
  int n;
  VarTable table;
  std::vector<std::string> labels;
  std::vector<WeylPolynomial> operators;

  std::size_t size() const { return operators.size(); }
  std::optional<std::size_t> index_of(std::string_view label) const;
  const WeylPolynomial& at(std::string_view label) const;
};

/// Annihilators of the Fisher-Bingham integral F(x, y, r), Param table.
OperatorFamily ann_fb(int n);
/// Annihilators of the surface measure on the sphere of radius r, Full table.
OperatorFamily ann_mu(int n);
/// Generators of J: the annMU operators after d_t -> d_t - dg/dt, built
/// from their closed form.
OperatorFamily gen_j0(int n);
/// The second generating set of J.
OperatorFamily gen_j(int n);
OperatorFamily make_family(Family f, int n);

/// Closed-form operator count of a family.
std::size_t family_count(Family f, int n);

/// g = sum_{i<=j} x_ij t_i t_j + sum_i y_i t_i over the Full base ring.
CommutativePolynomial g_poly(int n);

/// r^2 d_{t_k} + t_k r d_r - t_k expressed through annMU generators.
struct DerivedSphereOp {
  int k;
  WeylPolynomial op;
  /// op = sum_i combination[i] * annMU(n)[i] (left multiplication).
  std::vector<WeylPolynomial> combination;
};
std::vector<DerivedSphereOp> derived_sphere_ops(int n);

/// Writes p as sum_j dt_j * u[j] + remainder with the remainder free of dt.
/// A zero remainder certifies p in sum_j dt_j D.
struct DtDecomposition {
  std::vector<WeylPolynomial> u;  // indexed by j-1
  WeylPolynomial remainder;
};
DtDecomposition dt_decompose(const WeylPolynomial& p);

/// genJ(label) - lift(annFB(label)) decomposed along the dt_j.
struct LiftCheck {
  std::string label;
  WeylPolynomial difference;
  DtDecomposition decomposition;
  bool ok = false;
};
std::vector<LiftCheck> lift_checks(int n);

}  // namespace holoweyl
