#include "holoweyl/errors.hpp"
#include "holoweyl/fb_operators.hpp"
#include "holoweyl/io.hpp"
#include "holoweyl/verify.hpp"

#include <gtest/gtest.h>

using namespace holoweyl;

namespace {

void expect_pass(const VerificationReport& r) {
  EXPECT_TRUE(r.passed()) << to_json(r).dump();
  EXPECT_TRUE(to_json(r).contains("residual"));
}

}  // namespace

TEST(Congruence, Examples) {
  const std::array<int, 2> e1{1, 0}, a21{2, 1};
  expect_pass(check_congruence_t_alpha(e1, 1));
  expect_pass(check_congruence_t_alpha(a21, 1));
  EXPECT_EQ(check_congruence_t_alpha(a21, 1).residual, 0.0);
}

TEST(Congruence, AllSmallDegrees) {
  for (int n = 1; n <= 3; ++n) expect_pass(check_congruence_all(n, 6));
}

TEST(CommutingLemma, Examples) {
  const std::array<int, 2> e1{1, 0}, a11{1, 1}, a30{3, 0};
  expect_pass(check_commuting_lemma(e1, "rot(1,2)", 1));
  expect_pass(check_commuting_lemma(a11, "euler", 1));
  expect_pass(check_commuting_lemma(a30, "ty(1)", 1));
}

TEST(CommutingLemma, EveryLabelUpToN3) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& label : gen_j(n).labels) expect_pass(check_commuting_all(label, n, 3));
}

TEST(JEqualsK, N1AndDroppedGenerator) {
  expect_pass(check_J_equals_K(1));
  expect_pass(check_J_equals_K(1, std::nullopt, true));
  const auto dropped = check_J_equals_K(1, std::string("euler"));
  expect_pass(dropped);
  EXPECT_EQ(dropped.details.value("equal", true), false) << to_json(dropped).dump();
}

TEST(IntegrationTheorem, N1BothDirections) { expect_pass(check_integration_theorem(1)); }

TEST(IntegrationTheorem, LiftsUpToN3) {
  for (int n = 2; n <= 3; ++n) expect_pass(check_integration_theorem(n, false));
}

TEST(Holonomic, N1) { expect_pass(check_holonomic_conjecture(1)); }

TEST(Twist, UpToN3) {
  for (int n = 1; n <= 3; ++n) expect_pass(check_twist_reconstruction(n));
}

TEST(SphereProposition, DerivedOpsAndDimensions) {
  for (int n = 1; n <= 3; ++n) expect_pass(check_derived_sphere_ops(n));
  expect_pass(check_char_dimension_annmu(1));
  for (int n = 1; n <= 2; ++n) {
    expect_pass(check_char_inclusion(n));
    expect_pass(check_symbol_dimensions(n));
    expect_pass(check_initial_ideal_t(n));
  }
}

TEST(Numeric, RandomPointsAreSeededAndInRange) {
  const auto a = random_points(2, 5, 42), b = random_points(2, 5, 42), c = random_points(2, 5, 43);
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].values, b[i].values);
    EXPECT_EQ(a[i].values.size(), 10u);
    for (std::size_t k = 0; k + 1 < a[i].values.size(); ++k) {
      EXPECT_GE(a[i].values[k], -1.0);
      EXPECT_LE(a[i].values[k], 1.0);
    }
    EXPECT_GE(a[i].r(), 0.5);
    EXPECT_LE(a[i].r(), 2.0);
  }
  EXPECT_NE(a[0].values, c[0].values);
}

TEST(Numeric, AnnihilationSurfaceAndConsistency) {
  for (int n = 1; n <= 2; ++n) {
    for (const auto& p : random_points(n, 5, 42)) expect_pass(check_numeric_annihilation(p, 1e-6));
    expect_pass(check_surface_measure(n, 1e-10));
    expect_pass(check_quadrature_consistency(n, 1e-10));
  }
}

TEST(Numeric, DistributionalFamily) {
  expect_pass(check_distributional_family(1));
  expect_pass(check_distributional_family(2));
}

TEST(Suites, ReportsKeepTheirOrderAcrossJobCounts) {
  SuiteOptions one;
  SuiteOptions four;
  four.jobs = 4;
  const auto a = run_suite("numeric", one), b = run_suite("numeric", four);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
    EXPECT_TRUE(a[i].passed()) << to_json(a[i]).dump();
  }
  EXPECT_THROW(run_suite("nonsense", one), std::invalid_argument);
}

TEST(Suites, ExceptionsBecomeReports) {
  std::vector<std::pair<std::string, std::function<VerificationReport()>>> tasks;
  tasks.emplace_back("ok", [] {
    VerificationReport r;
    r.check = "ok";
    return r;
  });
  tasks.emplace_back("budget", []() -> VerificationReport { throw ResourceExhausted("budget"); });
  tasks.emplace_back("broken", []() -> VerificationReport { throw std::runtime_error("boom"); });
  const auto out = run_checks(tasks, 2);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].status, "pass");
  EXPECT_EQ(out[1].status, "resource");
  EXPECT_EQ(out[2].status, "error");
}
