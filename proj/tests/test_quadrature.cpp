#include "holoweyl/fb_operators.hpp"
#include "holoweyl/io.hpp"
#include "holoweyl/pfaffian.hpp"
#include "holoweyl/quadrature.hpp"
#include "holoweyl/verify.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace holoweyl;

namespace {

constexpr double kPi = std::numbers::pi;

// Values of F and one moment at the regression points, from mpmath.quad at
// 30 significant digits, independent of this library.
constexpr double kF1 = 8.57252407571864259034601243612;
constexpr double kM11 = -0.412280315585920187993284574847;
constexpr double kF2 = 14.494321171035637124;
constexpr double kFBase = 7.4872105810255039533115409795;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(SphereGrid, WeightsAndNodes) {
  for (int n = 1; n <= 2; ++n)
    for (double r : {0.5, 1.0, 2.0}) {
      const auto grid = make_sphere_grid(n, r, default_resolution(n));
      double total = 0;
      for (double w : grid.weights) {
        EXPECT_GT(w, 0);
        total += w;
      }
      const double area = n == 1 ? 2 * kPi * r : 4 * kPi * r * r;
      EXPECT_LT(rel(total, area), 1e-12);
      for (const auto& t : grid.nodes) EXPECT_NEAR(t[0] * t[0] + t[1] * t[1] + t[2] * t[2], r * r, 1e-14 * r * r);
    }
}

TEST(QuadratureF, SurfaceAreaAtTheOrigin) {
  for (double r : {0.5, 1.0, 2.0}) {
    const std::vector<double> x1(3, 0), y1(2, 0), x2(6, 0), y2(3, 0);
    EXPECT_LT(rel(quadrature_F(FbPoint::make(1, x1, y1, r)).value, 2 * kPi * r), 1e-12);
    EXPECT_LT(rel(quadrature_F(FbPoint::make(2, x2, y2, r)).value, 4 * kPi * r * r), 1e-12);
  }
}

TEST(QuadratureF, RegressionPointsAgainstIndependentQuadrature) {
  const auto q1 = quadrature_F(regression_point(1));
  EXPECT_TRUE(q1.converged);
  EXPECT_LT(rel(q1.value, kF1), 1e-12);
  const auto q2 = quadrature_F(regression_point(2));
  EXPECT_TRUE(q2.converged);
  EXPECT_LT(rel(q2.value, kF2), 1e-12);
  const auto base = default_base_point();
  const auto pb = FbPoint::make(1, std::span(base).subspan(0, 3), std::span(base).subspan(3, 2), base[5]);
  EXPECT_LT(rel(quadrature_F(pb).value, kFBase), 1e-12);
  // Composite Simpson as a second, cruder check.
  const auto p = regression_point(1);
  const std::vector<double> x{p.x(1, 1), p.x(1, 2), p.x(2, 2)}, y{p.y(1), p.y(2)};
  EXPECT_LT(rel(oracle::simpson_moment_s1(x, y, 1.0, 0, 0), kF1), 1e-10);
}

TEST(QuadratureF, HalvingResolutionChangesLittle) {
  for (int n = 1; n <= 2; ++n) {
    const auto p = regression_point(n);
    const auto q = quadrature_F(p);
    ASSERT_TRUE(q.converged);
    EXPECT_LT(q.change, 1e-10);
  }
}

TEST(Moments, Examples) {
  const auto p = regression_point(1);
  const std::array<int, 2> a20{2, 0}, a02{0, 2}, a11{1, 1}, a10{1, 0};
  const double F = quadrature_F(p).value;
  EXPECT_LT(rel(moment(a20, p) + moment(a02, p), p.r() * p.r() * F), 1e-12);
  EXPECT_LT(rel(moment(a11, p), kM11), 1e-12);
  const std::vector<double> x0(3, 0), y0(2, 0);
  EXPECT_NEAR(moment(a10, FbPoint::make(1, x0, y0, 1.3)), 0.0, 1e-14);
  const std::vector<double> x{p.x(1, 1), p.x(1, 2), p.x(2, 2)}, y{p.y(1), p.y(2)};
  EXPECT_LT(rel(moment(a11, p), oracle::simpson_moment_s1(x, y, 1.0, 1, 1)), 1e-10);
}

TEST(Moments, RadialDerivativeMatchesExactFormula) {
  // dM_a/dr = [(|a| + n) M_a + 2 sum x_ij M_(a+e_i+e_j) + sum y_i M_(a+e_i)] / r
  for (const auto& p : random_points(1, 3, 99)) {
    const MomentEvaluator ev(p, 6);
    for (const auto& a : std::vector<std::array<int, 2>>{{0, 0}, {1, 0}, {1, 2}}) {
      auto M = [&](int i, int j) {
        const std::array<int, 2> b{a[0] + i, a[1] + j};
        return ev.moment(b);
      };
      const double r = p.r();
      const double exact = ((a[0] + a[1] + 1) * M(0, 0) + 2 * (p.x(1, 1) * M(2, 0) + p.x(1, 2) * M(1, 1) +
                                                                p.x(2, 2) * M(0, 2)) +
                            p.y(1) * M(1, 0) + p.y(2) * M(0, 1)) /
                           r;
      EXPECT_NEAR(ev.moment_dr(a, 1), exact, 1e-8 * (std::abs(exact) + M(0, 0)));
    }
  }
}

TEST(Moments, CachedValuesAreIdentical) {
  const MomentEvaluator ev(regression_point(1), 4);
  const std::array<int, 2> a{1, 1};
  EXPECT_EQ(ev.moment(a, 1.2), ev.moment(a, 1.2));
  EXPECT_EQ(ev.moment(a), MomentEvaluator(regression_point(1), 4).moment(a));
}

TEST(ApplyNumeric, TraceAndEulerAtTheOrigin) {
  const auto fb = ann_fb(1);
  const std::vector<double> x0(3, 0), y0(2, 0);
  const auto at2 = FbPoint::make(1, x0, y0, 2.0);
  const auto trace = apply_operator_numeric(fb.at("trace"), at2);
  EXPECT_LE(std::abs(trace.value), 1e-10 * trace.scale);
  EXPECT_LT(rel(trace.scale, 16 * kPi), 1e-12);
  const auto at1 = FbPoint::make(1, x0, y0, 1.0);
  const auto euler = apply_operator_numeric(fb.at("euler"), at1);
  EXPECT_LE(std::abs(euler.value), 1e-10 * euler.scale);
}

TEST(ApplyNumeric, RotationAtTheRegressionPoint) {
  const auto r = apply_operator_numeric(ann_fb(1).at("rot(1,2)"), regression_point(1));
  EXPECT_LE(std::abs(r.value), 1e-8 * r.scale);
  EXPECT_GT(r.scale, 0);
}

TEST(ApplyNumeric, MixedFamilyIsExactlyZero) {
  for (int n = 1; n <= 2; ++n) {
    const auto fb = ann_fb(n);
    for (const auto& p : random_points(n, 3, 5))
      for (std::size_t k = 0; k < fb.size(); ++k)
        if (fb.labels[k].starts_with("mixed")) {
          EXPECT_EQ(apply_operator_numeric(fb.operators[k], p).value, 0.0);
        }
  }
}

TEST(ApplyNumeric, NonAnnihilatorIsDetected) {
  const auto p = regression_point(1);
  const auto r = apply_operator_numeric(parse_operator("dx[1][1] - dy[2]^2", VarTable(1, Ring::Param)), p);
  EXPECT_GT(std::abs(r.value), 1e-3 * r.scale);
}

TEST(Distributional, Examples) {
  const VarTable t1(1, Ring::Full);
  const auto mu = ann_mu(1);
  const std::vector<double> x0(3, 0), y0(2, 0);
  const auto p = FbPoint::make(1, x0, y0, 1.0);
  const auto phi = parse_operator("t[1]^3*t[2]", t1);
  const auto sphere = distributional_pairing(mu.at("sphere"), phi, p);
  EXPECT_LE(std::abs(sphere.value), 1e-14 * std::max(1.0, sphere.scale));
  const auto rot = distributional_pairing(mu.at("rot(1,2)"), phi, p);
  EXPECT_LE(std::abs(rot.value), 1e-8 * rot.scale);
  const auto euler = distributional_pairing(mu.at("euler"), parse_operator("t[1]^2", t1), p);
  EXPECT_LE(std::abs(euler.value), 1e-8 * euler.scale);
  EXPECT_GT(euler.scale, 0);
  // A shifted euler operator does not annihilate the measure.
  const auto bad = distributional_pairing(mu.at("euler") + parse_operator("1", t1), parse_operator("t[1]^2", t1), p);
  EXPECT_GT(std::abs(bad.value), 1e-3 * bad.scale);
}
