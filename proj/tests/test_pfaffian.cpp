#include "holoweyl/errors.hpp"
#include "holoweyl/fb_operators.hpp"
#include "holoweyl/io.hpp"
#include "holoweyl/pfaffian.hpp"
#include "holoweyl/quadrature.hpp"
#include "holoweyl/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>

using namespace holoweyl;

namespace {

const VarTable kParam1(1, Ring::Param);

FbPoint to_point(std::span<const double> v) { return FbPoint::make(1, v.subspan(0, 3), v.subspan(3, 2), v[5]); }

double rel_diff(std::span<const double> a, std::span<const double> b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return num / den;
}

class PfaffianN1 : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    gb_ = std::make_unique<RationalGB>(rational_gb(ann_fb(1).operators));
    sys_ = std::make_unique<PfaffianSystem>(pfaffian_matrices(*gb_));
  }
  static void TearDownTestSuite() {
    sys_.reset();
    gb_.reset();
  }
  static std::unique_ptr<RationalGB> gb_;
  static std::unique_ptr<PfaffianSystem> sys_;
};

std::unique_ptr<RationalGB> PfaffianN1::gb_;
std::unique_ptr<PfaffianSystem> PfaffianN1::sys_;

}  // namespace

TEST(RationalFunctionTest, NormalizesGcdAndSign) {
  const auto ring = base_ring(kParam1);
  const auto num = parse_polynomial("x[1][1]^2 - x[2][2]^2", ring);
  const auto den = parse_polynomial("-2*x[1][1] + 2*x[2][2]", ring);
  const auto f = RationalFunction::make(num, den);
  EXPECT_EQ(f.den.total_degree(), 0u);
  const std::vector<double> pt{0.3, 0.1, 0.7, 0, 0, 1};
  EXPECT_NEAR(f.evaluate(pt), -(0.3 + 0.7) / 2, 1e-15);
}

TEST_F(PfaffianN1, StaircaseIsFiniteWithRankFour) {
  // The Fisher-Bingham system on S^n has holonomic rank 2n + 2.
  EXPECT_EQ(gb_->standard.size(), 4u);
  EXPECT_EQ(sys_->rank(), 4u);
  EXPECT_TRUE(is_one(sys_->basis.front()));
}

TEST_F(PfaffianN1, ConstantRowForY1) {
  // d_y1 applied to F: if d_y1 is standard, row 0 of P_y1 is its unit vector.
  const std::size_t y1 = kParam1.y(1);
  Exponents dy1(kParam1.size(), 0);
  dy1[y1] = 1;
  const auto it = std::find(sys_->basis.begin(), sys_->basis.end(), dy1);
  ASSERT_NE(it, sys_->basis.end());
  const auto j = std::size_t(it - sys_->basis.begin());
  const auto P = sys_->evaluate(y1, default_base_point());
  for (std::size_t k = 0; k < sys_->rank(); ++k) EXPECT_EQ(P[k], k == j ? 1.0 : 0.0);
}

TEST_F(PfaffianN1, IntegrableAtRandomPoints) {
  for (const auto& p : random_points(1, 3, 42)) {
    // Random points may sit near the singular locus; skip those.
    try {
      EXPECT_LT(integrability_residual(*sys_, p.values), 1e-8);
    } catch (const SingularLocus&) {
    }
  }
  EXPECT_LT(integrability_residual(*sys_, default_base_point()), 1e-8);
}

TEST_F(PfaffianN1, MatricesMatchQuadratureDerivatives) {
  // P_v applied to the base vector reproduces d_v of each basis derivative.
  const auto base = default_base_point();
  const auto vec = base_vector(*sys_, to_point(base));
  const MomentEvaluator ev(to_point(base), 8);
  for (std::size_t v = 0; v < kParam1.size(); ++v) {
    const auto P = sys_->evaluate(v, base);
    for (std::size_t i = 0; i < sys_->rank(); ++i) {
      double lhs = 0;
      for (std::size_t j = 0; j < sys_->rank(); ++j) lhs += P[i * sys_->rank() + j] * vec[j];
      const auto op = mul(WeylPolynomial::del(kParam1, v), sys_->basis_operator(i));
      const auto direct = apply_operator_numeric(op, ev);
      EXPECT_NEAR(lhs, direct.value, 1e-7 * direct.scale) << v << " " << i;
    }
  }
}

TEST_F(PfaffianN1, ContinuationMatchesQuadrature) {
  const auto base = default_base_point();
  const auto vec = base_vector(*sys_, to_point(base));
  auto end = base;
  end[3] += 0.5;
  const auto res = ode_continue(*sys_, base, vec, end, 64, 1e-8);
  EXPECT_TRUE(res.converged);
  EXPECT_LT(std::abs(res.value[0] - quadrature_F(to_point(end)).value) / res.value[0], 1e-5);
}

TEST_F(PfaffianN1, ZeroLengthPathLeavesTheVector) {
  const auto base = default_base_point();
  const std::vector<double> vec{1.5, -2.0, 0.25, 3.0};
  const auto res = ode_continue(*sys_, base, vec, base, 16);
  EXPECT_EQ(res.value, vec);
}

TEST_F(PfaffianN1, ReversibleAndPathIndependent) {
  const auto base = default_base_point();
  const auto vec = base_vector(*sys_, to_point(base));
  std::vector<double> end{-0.2, -0.25, 0.3, 0.3, 0.3, 1.25};
  const auto there = ode_continue(*sys_, base, vec, end, 64, 1e-10);
  const auto back = ode_continue(*sys_, end, there.value, base, 64, 1e-10);
  EXPECT_LT(rel_diff(back.value, vec), 1e-7);
  std::vector<double> via{-0.1, -0.05, 0.25, 0.7, -0.1, 1.1};
  const auto bent = ode_continue_path(*sys_, {base, via, end}, vec, 64, 1e-10);
  EXPECT_LT(rel_diff(bent.value, there.value), 1e-6);
  EXPECT_LT(rel_diff(there.value, base_vector(*sys_, to_point(end))), 1e-5);
}

TEST_F(PfaffianN1, SingularLocusIsReported) {
  const std::vector<double> bad{0.2, 0.0, 0.2, 0.0, 0.0, 1.0};
  bool any_singular = false;
  for (std::size_t v = 0; v < kParam1.size(); ++v) {
    try {
      sys_->evaluate(v, bad);
    } catch (const SingularLocus&) {
      any_singular = true;
    }
  }
  EXPECT_TRUE(any_singular);
  // Crossing x11 = x22 with x12 = 0 and y = 0 aborts the continuation.
  auto from = default_base_point();
  std::vector<double> to{0.3, 0.0, 0.2, 0.0, 0.0, 1.0};
  from[1] = 0;
  from[3] = from[4] = 0;
  const auto vec = base_vector(*sys_, to_point(from));
  EXPECT_THROW(ode_continue(*sys_, from, vec, to, 64), SingularLocus);
}

TEST_F(PfaffianN1, JsonCarriesTheMatrices) {
  const auto j = to_json(*sys_);
  EXPECT_EQ(j["basis"].size(), 4u);
  EXPECT_EQ(j["matrices"].size(), kParam1.size());
}

TEST(RationalGBTest, SinglePartialIsNotHolonomic) {
  EXPECT_THROW(rational_gb(std::vector{parse_operator("dy[1]", kParam1)}), NotHolonomic);
}

TEST(RationalGBTest, RankAgreesAcrossOrders) {
  const auto lex = rational_gb(ann_fb(1).operators, "pfaffian-lex");
  EXPECT_EQ(lex.standard.size(), 4u);
}
