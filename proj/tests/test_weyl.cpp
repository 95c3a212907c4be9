#include "holoweyl/errors.hpp"
#include "holoweyl/fb_operators.hpp"
#include "holoweyl/io.hpp"
#include "holoweyl/weyl.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace holoweyl;

namespace {

const VarTable kFull1(1, Ring::Full);
const VarTable kParam1(1, Ring::Param);

WeylPolynomial op(std::string_view text, const VarTable& table = kFull1) { return parse_operator(text, table); }

std::vector<std::size_t> t_slots(const VarTable& table) { return table.slots(VarKind::T); }

}  // namespace

TEST(VarTable, LayoutAndCounts) {
  EXPECT_EQ(kParam1.size(), 6u);
  EXPECT_EQ(kFull1.size(), 8u);
  EXPECT_EQ(VarTable(2, Ring::Param).size(), 10u);
  EXPECT_EQ(VarTable(2, Ring::Full).size(), 13u);
  EXPECT_EQ(kFull1.x(1, 1), 0u);
  EXPECT_EQ(kFull1.x(1, 2), 1u);
  EXPECT_EQ(kFull1.x(2, 1), 1u);
  EXPECT_EQ(kFull1.x(2, 2), 2u);
  EXPECT_EQ(kFull1.y(1), 3u);
  EXPECT_EQ(kFull1.r(), 5u);
  EXPECT_EQ(kFull1.t(2), 7u);
  EXPECT_EQ(kFull1.name(1), "x[1][2]");
  EXPECT_EQ(kFull1.partial_name(7), "dt[2]");
  EXPECT_THROW(kParam1.t(1), std::out_of_range);
}

TEST(Weyl, AddExamples) {
  EXPECT_TRUE((op("x[1][1]*dx[1][1]") + op("-x[1][1]*dx[1][1]")).is_zero());
  EXPECT_EQ(op("dx[1][1]") + op("dx[2][2]"), op("dx[1][1] + dx[2][2]"));
  EXPECT_EQ(op("dx[1][1]*x[1][1]") + WeylPolynomial(kFull1), op("x[1][1]*dx[1][1] + 1"));
  EXPECT_THROW(add(op("r"), parse_operator("r", kParam1)), std::invalid_argument);
}

TEST(Weyl, MulExamples) {
  EXPECT_EQ(mul(op("dt[1]"), op("t[1]")), op("t[1]*dt[1] + 1"));
  EXPECT_EQ(mul(op("dt[1]^2"), op("t[1]")), op("t[1]*dt[1]^2 + 2*dt[1]"));
  const auto rot = op("t[1]*dt[2] - t[2]*dt[1]");
  const auto sphere = op("t[1]^2 + t[2]^2 - r^2");
  EXPECT_TRUE((mul(rot, sphere) - mul(sphere, rot)).is_zero());
  EXPECT_TRUE((oracle::multiply(rot, sphere) - oracle::multiply(sphere, rot)).is_zero());
}

TEST(Weyl, CommutatorExamples) {
  EXPECT_EQ(commutator(op("dt[1]"), op("t[1]")), op("1"));
  EXPECT_TRUE(commutator(op("dx[1][1]"), op("y[1]")).is_zero());
  const auto expected = oracle::multiply(op("r*dr"), op("r^2")) - oracle::multiply(op("r^2"), op("r*dr"));
  EXPECT_EQ(expected, op("2*r^2"));
  EXPECT_EQ(commutator(op("r*dr"), op("r^2")), expected);
}

TEST(Weyl, GeneratorRelationsInEveryTable) {
  for (int n = 1; n <= 2; ++n)
    for (Ring ring : {Ring::Param, Ring::Full}) {
      const VarTable table(n, ring);
      for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table.size(); ++j) {
          const auto di = WeylPolynomial::del(table, i), zj = WeylPolynomial::var(table, j);
          const auto expected = WeylPolynomial::constant(table, i == j ? 1 : 0);
          EXPECT_EQ(commutator(di, zj), expected);
          EXPECT_TRUE(commutator(WeylPolynomial::var(table, i), zj).is_zero());
          EXPECT_TRUE(commutator(di, WeylPolynomial::del(table, j)).is_zero());
        }
    }
}

TEST(Weyl, MulMatchesIteratedCommutation) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = oracle::random_operator(kFull1, rng, 4, 4);
    const auto q = oracle::random_operator(kFull1, rng, 4, 4);
    ASSERT_EQ(mul(p, q), oracle::multiply(p, q)) << to_text(p) << " | " << to_text(q);
  }
}

TEST(Weyl, RingAxioms) {
  std::mt19937_64 rng(11);
  const auto one = WeylPolynomial::constant(kFull1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = oracle::random_operator(kFull1, rng, 3, 3);
    const auto b = oracle::random_operator(kFull1, rng, 3, 3);
    const auto c = oracle::random_operator(kFull1, rng, 3, 3);
    EXPECT_EQ(mul(mul(a, b), c), mul(a, mul(b, c)));
    EXPECT_EQ(mul(a, b + c), mul(a, b) + mul(a, c));
    EXPECT_EQ(mul(a + b, c), mul(a, c) + mul(b, c));
    EXPECT_EQ(mul(one, a), a);
    EXPECT_EQ(mul(a, one), a);
  }
}

TEST(Weyl, TermLimitIsEnforced) {
  const auto p = op("(dt[1] + dt[2] + dr)^6");
  const auto q = op("(t[1] + t[2] + r)^6");
  EXPECT_THROW(mul(p, q, 10), ResourceExhausted);
}

TEST(Weyl, AdjointExamples) {
  const auto t = t_slots(kFull1);
  EXPECT_EQ(formal_adjoint(op("dt[1]"), t), op("-dt[1]"));
  const auto rot = op("t[1]*dt[2] - t[2]*dt[1]");
  EXPECT_EQ(formal_adjoint(rot, t), -rot);
  EXPECT_EQ(formal_adjoint(rot, t), oracle::adjoint(rot, t));
  const auto sphere = op("t[1]^2 + t[2]^2 - r^2");
  EXPECT_EQ(formal_adjoint(sphere, t), sphere);
}

TEST(Weyl, AdjointAgainstOracleAndInvolution) {
  std::mt19937_64 rng(3);
  const auto t = t_slots(kFull1);
  std::uniform_int_distribution<int> e(0, 3), c(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    // Operators in t, dt with r as a parameter.
    WeylPolynomial p(kFull1);
    for (int k = 0; k < 3; ++k) {
      WeylMonomial m(16, 0);
      m[kFull1.t(1)] = Exponent(e(rng));
      m[kFull1.t(2)] = Exponent(e(rng));
      m[kFull1.r()] = Exponent(e(rng));
      m[8 + kFull1.t(1)] = Exponent(e(rng));
      m[8 + kFull1.t(2)] = Exponent(e(rng));
      p += WeylPolynomial::monomial(kFull1, m, c(rng));
    }
    EXPECT_EQ(formal_adjoint(p, t), oracle::adjoint(p, t)) << to_text(p);
    EXPECT_EQ(formal_adjoint(formal_adjoint(p, t), t), p);
  }
}

TEST(Weyl, TwistExamples) {
  const auto g = g_poly(1);
  std::vector<std::size_t> all(kFull1.size());
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(twist(op("dx[1][1]"), g, all), op("dx[1][1] - t[1]^2"));
  EXPECT_EQ(twist(op("5"), g, all), op("5"));
  EXPECT_EQ(twist(ann_mu(1).at("euler"), g, all), gen_j0(1).at("euler"));
}

TEST(Weyl, TwistAgainstConjugationOracle) {
  std::mt19937_64 rng(5);
  const auto g = g_poly(1);
  std::vector<std::size_t> all(kFull1.size());
  std::iota(all.begin(), all.end(), 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracle::random_operator(kFull1, rng, 3, 3);
    EXPECT_EQ(twist(p, g, all), oracle::conjugate(p, g)) << to_text(p);
  }
}

TEST(Weyl, TwistIsMultiplicativeAndTrivialForZero) {
  std::mt19937_64 rng(9);
  const auto g = g_poly(1);
  const CommutativePolynomial zero(g.ring());
  std::vector<std::size_t> all(kFull1.size());
  std::iota(all.begin(), all.end(), 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracle::random_operator(kFull1, rng, 3, 3);
    const auto q = oracle::random_operator(kFull1, rng, 3, 3);
    EXPECT_EQ(twist(mul(p, q), g, all), mul(twist(p, g, all), twist(q, g, all)));
    EXPECT_EQ(twist(p, zero, all), p);
  }
}

TEST(Weyl, LiftAndRestrict) {
  const auto p = parse_operator("x[1][2]*dx[1][1] + 2*(x[2][2]-x[1][1])*dx[1][2]", kParam1);
  const auto lifted = lift(p, kFull1);
  EXPECT_EQ(lifted, op("x[1][2]*dx[1][1] + 2*(x[2][2]-x[1][1])*dx[1][2]"));
  EXPECT_EQ(restrict_to(lifted, kParam1), p);
  EXPECT_THROW(restrict_to(op("t[1]*dr"), kParam1), std::invalid_argument);
}

TEST(Io, ParseExampleAndPrecedence) {
  const auto p = parse_operator("x[1][2]*dx[1][1] + 2*(x[2][2]-x[1][1])*dx[1][2]", kParam1);
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(op("dt[1]*t[1]"), op("t[1]*dt[1] + 1"));
  EXPECT_EQ(op("-2^2"), op("-4"));
  EXPECT_EQ(op("x[2][1]"), op("x[1][2]"));
  EXPECT_EQ(op("3/6*r"), op("1/2*r"));
}

TEST(Io, ParseErrorsCarryPositions) {
  auto position = [](std::string_view text) -> std::ptrdiff_t {
    try {
      parse_operator(text, kFull1);
    } catch (const ParseError& e) {
      return std::ptrdiff_t(e.position());
    }
    return -1;
  };
  EXPECT_EQ(position("x[1][1]**2"), 8);
  EXPECT_EQ(position("x[1][1] y[1]"), 8);
  EXPECT_EQ(position("t[3]"), 0);
  EXPECT_GE(position("(r + 1"), 6);
  EXPECT_GE(position("1/0"), 0);
  EXPECT_EQ(position("r + "), 4);
}

TEST(Io, TextAndJsonRoundTrip) {
  for (Family f : {Family::AnnFB, Family::AnnMU, Family::GenJ0, Family::GenJ})
    for (int n = 1; n <= 3; ++n) {
      const auto fam = make_family(f, n);
      for (const auto& p : fam.operators) {
        EXPECT_EQ(parse_operator(to_text(p), fam.table), p);
        EXPECT_EQ(operator_from_json(to_json(p)), p);
      }
      const auto list = operator_list_from_json(to_json(fam));
      EXPECT_EQ(list.operators, fam.operators);
      EXPECT_EQ(list.labels, fam.labels);
    }
}

TEST(Io, JsonLayout) {
  const auto j = to_json(op("1/2*t[1]*dt[2]"));
  EXPECT_EQ(j["table"]["n"], 1);
  EXPECT_EQ(j["table"]["ring"], "Full");
  ASSERT_EQ(j["terms"].size(), 1u);
  EXPECT_EQ(j["terms"][0]["coeff"], "1/2");
  EXPECT_EQ(j["terms"][0]["base"].size(), 8u);
  EXPECT_EQ(j["terms"][0]["partial"][7], 1);
}
