#pragma once

#include "holoweyl/budget.hpp"
#include "holoweyl/exponents.hpp"
#include "holoweyl/quadrature.hpp"
#include "holoweyl/weyl.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace holoweyl {

/// One mechanized check. status is "pass", "fail", "resource" (budget
/// exhausted) or "error"; the residual is reported in every case.
struct VerificationReport {
  std::string check;
  nlohmann::json parameters = nlohmann::json::object();
  std::string status = "pass";
  double residual = 0;
  std::string certificate;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return status == "pass"; }
};

nlohmann::json to_json(const VerificationReport& r);

/// t^alpha - dy^alpha reduces to 0 modulo D{t_i - dy_i}; alpha has n+1 entries.
VerificationReport check_congruence_t_alpha(std::span<const int> alpha, int n, const Budget& budget = {});
/// Every alpha with |alpha| <= max_degree, aggregated.
VerificationReport check_congruence_all(int n, int max_degree, const Budget& budget = {});

/// (t^alpha - dy^alpha) P reduces to 0 modulo D{t_i - dy_i} for the genJ
/// operator with this label.
VerificationReport check_commuting_lemma(std::span<const int> alpha, std::string_view label, int n,
                                         const Budget& budget = {});
/// Every alpha with |alpha| <= max_degree for one label, aggregated.
VerificationReport check_commuting_all(std::string_view label, int n, int max_degree, const Budget& budget = {});

/// <genJ0(n)> = <genJ(n)> by cross-membership under grevlex. With a dropped
/// label the generator is removed from genJ first (the expected outcome is
/// then inequality, which counts as a pass). With certificates every
/// membership is backed by explicit cofactors, re-expanded and compared.
VerificationReport check_J_equals_K(int n, std::optional<std::string> drop = std::nullopt,
                                    bool certificates = false, const Budget& budget = {});

/// (a) genJ(label) - lift(annFB(label)) lies in sum_j dt_j D for every label;
/// (b) for n = 1 only: every element of the paper-s4 basis of J free of t
/// and dt reduces to 0 modulo the annFB ideal.
VerificationReport check_integration_theorem(int n, bool elimination = true, const Budget& budget = {});

VerificationReport check_holonomic_conjecture(int n, const Budget& budget = {});

/// genJ0(n) equals the twist of annMU(n) by g, operator by operator.
VerificationReport check_twist_reconstruction(int n);

/// r^2 dt_k + t_k r dr - t_k: expansion of the stated combination and
/// membership in <annMU(n)> by a Groebner basis.
VerificationReport check_derived_sphere_ops(int n, const Budget& budget = {});

/// Krull dimension of the characteristic ideal of annMU(n) equals the number
/// of base variables of the Full table.
VerificationReport check_char_dimension_annmu(int n, const Budget& budget = {});

/// The symbols xi_x, xi_y, sum t^2 - r^2, t_i xi_tj - t_j xi_ti and
/// r^2 xi_ti + t_i r xi_r lie in the characteristic ideal of annMU(n).
VerificationReport check_char_inclusion(int n, const Budget& budget = {});

/// Dimension of the ideal I' of those symbols and of the monomial ideal I''
/// of their leading monomials under paper-s2; both must equal the number of
/// base variables, and I'' must lie in the leading ideal of I'.
VerificationReport check_symbol_dimensions(int n, const Budget& budget = {});

/// The paper-s4 leading ideal of D{t_i - dy_i} is generated by the t_i.
VerificationReport check_initial_ideal_t(int n, const Budget& budget = {});

/// Parameter points with x, y entries uniform in [-1, 1] and r in [0.5, 2].
/// The mapping from the mt19937_64 stream is fixed, so the points only
/// depend on the seed.
std::vector<FbPoint> random_points(int n, int count, std::uint64_t seed);

/// The fixed regression point for n = 1 or 2.
FbPoint regression_point(int n);

/// Every annFB(n) operator at one point: |value| <= tol * scale, mixed
/// operators exactly 0.
VerificationReport check_numeric_annihilation(const FbPoint& p, double tol = 1e-6);

/// F(0, 0, r) against the surface area and euler/trace at x = y = 0.
VerificationReport check_surface_measure(int n, double tol = 1e-10);

/// F at the regression point: converged doubling ladder with relative change
/// below tol, plus the values of F and one mixed moment.
VerificationReport check_quadrature_consistency(int n, double tol = 1e-10);

/// <P mu_r, phi> = 0 for an annMU operator P and a polynomial phi in t.
VerificationReport check_distributional_annihilation(const WeylPolynomial& P, const WeylPolynomial& phi, double r0,
                                                     int n, double tol = 1e-8);
/// Every annMU(n) operator against a fixed list of test polynomials.
VerificationReport check_distributional_family(int n, double tol = 1e-8);

struct PfaffianCheckOptions {
  int points = 3;
  std::uint64_t seed = 42;
  Budget budget;
};
/// Rank, rank stability across pfaffian-grevlex and pfaffian-lex,
/// integrability, continuation against quadrature on two paths, path
/// independence and reversibility, for n = 1.
std::vector<VerificationReport> check_pfaffian(const PfaffianCheckOptions& opts = {});

struct SuiteOptions {
  int n = 1;
  int points = 5;
  std::uint64_t seed = 42;
  double tol = 1e-6;
  int jobs = 1;
  bool certificates = false;
  Budget budget;
};

std::vector<std::string> suite_names();

/// Runs "symbolic", "numeric", "pfaffian" or "all". Reports come back in a
/// fixed order whatever the number of jobs.
std::vector<VerificationReport> run_suite(std::string_view suite, const SuiteOptions& opts);

/// Runs the tasks on up to `jobs` threads; results keep task order. Task
/// exceptions become "resource" or "error" reports.
std::vector<VerificationReport> run_checks(const std::vector<std::pair<std::string, std::function<VerificationReport()>>>& tasks,
                                           int jobs);

}  // namespace holoweyl
