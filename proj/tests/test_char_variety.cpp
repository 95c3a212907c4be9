#include "holoweyl/char_variety.hpp"
#include "holoweyl/fb_operators.hpp"
#include "holoweyl/io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace holoweyl;

namespace {

const VarTable kFull1(1, Ring::Full);
const VarTable kParam1(1, Ring::Param);

CommutativePolynomial sym(std::string_view text, const VarTable& table = kFull1) {
  return parse_polynomial(text, symbol_ring(table));
}

// The symbols generating I' at n = 1.
std::vector<CommutativePolynomial> i_prime_1() {
  return {sym("xi_x[1][1]"),
          sym("xi_x[1][2]"),
          sym("xi_x[2][2]"),
          sym("xi_y[1]"),
          sym("xi_y[2]"),
          sym("t[1]^2 + t[2]^2 - r^2"),
          sym("t[1]*xi_t[2] - t[2]*xi_t[1]"),
          sym("r^2*xi_t[1] + t[1]*r*xi_r"),
          sym("r^2*xi_t[2] + t[2]*r*xi_r")};
}

}  // namespace

TEST(CommBuchberger, MatchesSympyOnTextbookIdeals) {
  // Reduced bases computed with sympy.groebner.
  const auto ring = make_ring({"x", "y"});
  const std::vector gens{parse_polynomial("x^3 - 2*x*y", ring), parse_polynomial("x^2*y - 2*y^2 + x", ring)};
  const auto grlex = comm_buchberger(gens, TermOrder::for_ring(OrderKind::Grlex, 2));
  std::vector expected{parse_polynomial("x^2", ring), parse_polynomial("x*y", ring),
                       parse_polynomial("y^2 - 1/2*x", ring)};
  auto sorted = [](std::vector<CommutativePolynomial> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.to_string() < b.to_string(); });
    return v;
  };
  EXPECT_EQ(sorted(grlex), sorted(expected));

  const std::vector gens2{parse_polynomial("x^2 + y^2 - 1", ring), parse_polynomial("x*y - 1", ring)};
  const auto lex = comm_buchberger(gens2, TermOrder::for_ring(OrderKind::Lex, 2));
  EXPECT_EQ(sorted(lex), sorted({parse_polynomial("x + y^3 - y", ring), parse_polynomial("y^4 - y^2 + 1", ring)}));
}

TEST(CommBuchberger, MonomialIdealIsItsOwnBasis) {
  const auto ring = symbol_ring(kFull1);
  const auto ord = TermOrder::preset("paper-s2", kFull1);
  std::vector<CommutativePolynomial> mono;
  for (const auto& g : i_prime_1()) {
    const auto [m, c] = leading_term(g, ord);
    mono.push_back(CommutativePolynomial::monomial(ring, m));
  }
  std::sort(mono.begin(), mono.end(), [&](const auto& a, const auto& b) {
    return ord.less(a.terms()[0].monomial, b.terms()[0].monomial);
  });
  mono.erase(std::unique(mono.begin(), mono.end()), mono.end());
  auto gb = comm_buchberger(mono, ord);
  EXPECT_EQ(gb.size(), mono.size());
  for (const auto& m : mono) EXPECT_NE(std::find(gb.begin(), gb.end(), m), gb.end());
  const auto one = comm_buchberger(std::vector{CommutativePolynomial::constant(ring, 1)}, ord);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].is_constant());
}

TEST(CommBuchberger, IPrimeLeadingTermsUnderPaperS2) {
  const auto ord = TermOrder::preset("paper-s2", kFull1);
  const auto gb = comm_buchberger(i_prime_1(), ord);
  std::vector<Exponents> lms;
  for (const auto& g : gb) lms.push_back(leading_term(g, ord).first);
  auto has = [&](std::string_view text) {
    const auto m = sym(text).terms()[0].monomial;
    return std::find(lms.begin(), lms.end(), m) != lms.end();
  };
  for (const char* m : {"xi_x[1][1]", "xi_x[1][2]", "xi_x[2][2]", "xi_y[1]", "xi_y[2]", "t[1]*xi_t[2]",
                        "r^2*xi_t[1]", "t[2]^2"})
    EXPECT_TRUE(has(m)) << m;
  // r^2 xi_t[2] is a leading monomial of a generator; it lies in the leading ideal.
  const auto r2xt2 = sym("r^2*xi_t[2]").terms()[0].monomial;
  EXPECT_TRUE(std::any_of(lms.begin(), lms.end(), [&](const auto& m) { return divides(m, r2xt2); }));
}

TEST(KrullDimension, Examples) {
  const auto ring = symbol_ring(kFull1);
  EXPECT_EQ(krull_dimension(std::vector<CommutativePolynomial>{}, ring), 16);
  std::vector<CommutativePolynomial> xis;
  for (std::size_t k = 0; k < 8; ++k) xis.push_back(CommutativePolynomial::variable(ring, 8 + k));
  EXPECT_EQ(krull_dimension(xis, ring), 8);
  EXPECT_EQ(krull_dimension(std::vector{CommutativePolynomial::constant(ring, 2)}, ring), -1);
  const auto pring = symbol_ring(kParam1);
  EXPECT_EQ(krull_dimension(std::vector{CommutativePolynomial::variable(pring, 6)}, pring), 11);
}

TEST(KrullDimension, IDoublePrimeAtN1) {
  const auto ord = TermOrder::preset("paper-s2", kFull1);
  std::vector<Exponents> mono;
  std::vector<std::vector<int>> plain;
  for (const auto& g : i_prime_1()) {
    const auto m = leading_term(g, ord).first;
    mono.push_back(m);
    plain.emplace_back(m.begin(), m.end());
  }
  EXPECT_EQ(monomial_ideal_dimension(mono, 16), 8);
  EXPECT_EQ(oracle::hilbert_dimension_split(plain, 16), 8);
  EXPECT_EQ(krull_dimension(i_prime_1(), ord), 8);
}

TEST(KrullDimension, IndependentSetsAgreeWithHilbertGrowth) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t vars = 2 + rng() % 5;
    const int count = int(rng() % 5);
    std::vector<Exponents> gens;
    std::vector<std::vector<int>> plain;
    for (int g = 0; g < count; ++g) {
      Exponents e(vars, 0);
      const int deg = 1 + int(rng() % 3);
      for (int k = 0; k < deg; ++k) ++e[rng() % vars];
      gens.push_back(e);
      plain.emplace_back(e.begin(), e.end());
    }
    EXPECT_EQ(monomial_ideal_dimension(gens, vars), oracle::hilbert_dimension(plain, vars)) << trial;
  }
}

TEST(CharIdeal, SinglePartial) {
  const auto ch = char_ideal(std::vector{parse_operator("dx[1][1]", kFull1)});
  ASSERT_EQ(ch.size(), 1u);
  EXPECT_EQ(ch[0], sym("xi_x[1][1]"));
}

TEST(CharIdeal, ContainsTheSphereSymbols) {
  const auto ch = char_ideal(ann_mu(1).operators);
  const auto ord = TermOrder::preset("grevlex", kFull1);
  for (const auto& s : i_prime_1()) EXPECT_TRUE(comm_normal_form(s, ch, ord).is_zero()) << s.to_string();
  EXPECT_FALSE(comm_normal_form(sym("t[1]"), ch, ord).is_zero());
  EXPECT_EQ(krull_dimension(ch, ord), 8);
}

TEST(CharIdeal, InclusionAtN2) {
  const VarTable t2(2, Ring::Full);
  const auto ch = char_ideal(ann_mu(2).operators);
  const auto ord = TermOrder::preset("grevlex", t2);
  for (const char* s : {"xi_x[1][3]", "xi_y[3]", "t[1]^2 + t[2]^2 + t[3]^2 - r^2", "t[1]*xi_t[3] - t[3]*xi_t[1]",
                        "r^2*xi_t[2] + t[2]*r*xi_r"})
    EXPECT_TRUE(comm_normal_form(sym(s, t2), ch, ord).is_zero()) << s;
}

TEST(CharIdeal, AnnFBAtN1HasDimensionSix) {
  const auto ch = char_ideal(ann_fb(1).operators);
  EXPECT_EQ(krull_dimension(ch, symbol_ring(kParam1)), 6);
}

TEST(Holonomic, AnnFB) {
  const auto r1 = is_holonomic(ann_fb(1).operators);
  EXPECT_TRUE(r1.holonomic);
  EXPECT_EQ(r1.variables, 6u);
  EXPECT_EQ(r1.ambient, 12u);
  EXPECT_EQ(r1.dimension, 6);
  const auto r2 = is_holonomic(ann_fb(2).operators);
  EXPECT_TRUE(r2.holonomic);
  EXPECT_EQ(r2.variables, 10u);
  EXPECT_EQ(r2.dimension, 10);
}

TEST(Holonomic, SinglePartialIsNot) {
  const auto r = is_holonomic(std::vector{parse_operator("dx[1][1]", kParam1)});
  EXPECT_FALSE(r.holonomic);
  EXPECT_EQ(r.dimension, 11);
}

TEST(Holonomic, BernsteinBound) {
  const std::vector<std::vector<WeylPolynomial>> ideals{
      ann_fb(1).operators,
      ann_mu(1).operators,
      gen_j(1).operators,
      {parse_operator("dx[1][1]", kParam1), parse_operator("x[1][2]*dy[1] - 1", kParam1)},
      {parse_operator("r*dr - 2", kParam1)},
  };
  for (const auto& gens : ideals) {
    const auto rep = is_holonomic(gens);
    EXPECT_GE(rep.dimension, int(rep.variables));
  }
}
