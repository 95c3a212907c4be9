#include "holoweyl/fb_operators.hpp"
#include "holoweyl/io.hpp"
#include "holoweyl/term_order.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace holoweyl;

namespace {

const VarTable kFull1(1, Ring::Full);

WeylPolynomial op(std::string_view text, const VarTable& table = kFull1) { return parse_operator(text, table); }

WeylMonomial lm(std::string_view text, const TermOrder& ord) { return leading_term(op(text), ord).first; }

CommutativePolynomial sym(std::string_view text, const VarTable& table = kFull1) {
  return parse_polynomial(text, symbol_ring(table));
}

}  // namespace

TEST(TermOrder, PaperS2PrecedenceOnTSymbols) {
  const auto ord = TermOrder::preset("paper-s2", kFull1);
  EXPECT_EQ(ord.compare(lm("dt[2]", ord), lm("dt[1]", ord)), std::strong_ordering::greater);
  EXPECT_EQ(ord.compare(lm("dt[1]", ord), lm("dx[1][1]", ord)), std::strong_ordering::greater);
  EXPECT_EQ(ord.compare(lm("dx[2][2]", ord), lm("dy[1]", ord)), std::strong_ordering::greater);
  EXPECT_EQ(ord.compare(lm("dr", ord), lm("t[2]", ord)), std::strong_ordering::greater);
  EXPECT_EQ(ord.compare(lm("t[1]", ord), lm("x[1][1]", ord)), std::strong_ordering::greater);
  EXPECT_EQ(ord.compare(lm("y[2]", ord), lm("r", ord)), std::strong_ordering::greater);
}

TEST(TermOrder, EqualMonomialsCompareEqual) {
  for (const auto& name : TermOrder::preset_names()) {
    const auto ord = TermOrder::preset(name, kFull1);
    const auto m = lm("x[1][2]*t[1]^2*dt[2]*dr", ord);
    EXPECT_EQ(ord.compare(m, m), std::strong_ordering::equal) << name;
  }
}

TEST(TermOrder, PaperS4WeightBeatsDegree) {
  const auto ord = TermOrder::preset("paper-s4", kFull1);
  EXPECT_EQ(ord.compare(lm("t[1]*dy[1]", ord), lm("dy[1]^2", ord)), std::strong_ordering::greater);
  const auto [m, c] = leading_term(op("t[1] - dy[1]"), ord);
  EXPECT_EQ(m, lm("t[1]", ord));
  EXPECT_EQ(c, 1);
}

TEST(TermOrder, LeadingTermExamples) {
  const auto grlex = TermOrder::preset("grlex", kFull1);
  const auto grevlex = TermOrder::preset("grevlex", kFull1);
  const auto lex = TermOrder::preset("lex", kFull1);
  const auto p = op("dx[1][1] - dy[1]^2");
  EXPECT_EQ(leading_term(p, grlex).first, lm("dy[1]^2", grlex));
  EXPECT_EQ(leading_term(p, grlex).second, -1);
  EXPECT_EQ(leading_term(p, grevlex).first, lm("dy[1]^2", grevlex));
  EXPECT_EQ(leading_term(p, lex).first, lm("dx[1][1]", lex));
  const auto [m, c] = leading_term(op("7/3"), grevlex);
  EXPECT_TRUE(is_one(m));
  EXPECT_EQ(c, Rational(7, 3));
  EXPECT_THROW(leading_term(WeylPolynomial(kFull1), grevlex), std::domain_error);
}

TEST(TermOrder, StrictTotalTransitiveAndKeyConsistent) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> e(0, 2);
  auto random_monomial = [&] {
    WeylMonomial m(16, 0);
    for (auto& v : m) v = Exponent(e(rng) * e(rng) / 2);
    return m;
  };
  for (const auto& name : TermOrder::preset_names()) {
    const auto ord = TermOrder::preset(name, kFull1);
    for (int trial = 0; trial < 300; ++trial) {
      const auto a = random_monomial(), b = random_monomial(), c = random_monomial();
      const auto ab = ord.compare(a, b);
      EXPECT_EQ(ab == std::strong_ordering::equal, a == b) << name;
      EXPECT_EQ(ord.compare(b, a), 0 <=> ab) << name;
      if (ab < 0 && ord.compare(b, c) < 0) {
        EXPECT_TRUE(ord.compare(a, c) < 0) << name;
      }
      const auto ka = ord.key(a), kb = ord.key(b);
      EXPECT_EQ(std::lexicographical_compare_three_way(ka.begin(), ka.end(), kb.begin(), kb.end()), ab) << name;
    }
  }
}

TEST(TermOrder, LeadingMonomialIsMultiplicative) {
  std::mt19937_64 rng(23);
  for (const auto& name : TermOrder::preset_names()) {
    const auto ord = TermOrder::preset(name, kFull1);
    ASSERT_TRUE(ord.is_weyl_admissible()) << name;
    for (int trial = 0; trial < 15; ++trial) {
      const auto p = oracle::random_operator(kFull1, rng, 3, 3);
      const auto q = oracle::random_operator(kFull1, rng, 3, 3);
      if (p.is_zero() || q.is_zero()) continue;
      const auto lp = leading_term(p, ord), lq = leading_term(q, ord);
      const auto lpq = leading_term(mul(p, q), ord);
      WeylMonomial product = lp.first;
      for (std::size_t k = 0; k < product.size(); ++k) product[k] += lq.first[k];
      EXPECT_EQ(lpq.first, product) << name;
      EXPECT_EQ(lpq.second, lp.second * lq.second) << name;
    }
  }
}

TEST(TermOrder, InitialFormExamples) {
  const auto [u, v] = symbol_weights(kFull1);
  EXPECT_EQ(initial_form(op("t[1]^2 + t[2]^2 - r^2"), u, v), sym("t[1]^2 + t[2]^2 - r^2"));
  EXPECT_EQ(initial_form(op("r*dr + t[1]*dt[1] + t[2]*dt[2] + 1"), u, v),
            sym("r*xi_r + t[1]*xi_t[1] + t[2]*xi_t[2]"));
  EXPECT_EQ(initial_form(op("t[1]*dt[2] - t[2]*dt[1]"), u, v), sym("t[1]*xi_t[2] - t[2]*xi_t[1]"));
}

TEST(TermOrder, InitialFormUnderCancellation) {
  const auto [u, v] = symbol_weights(kFull1);
  const auto p = op("dt[1]^2 + t[1]*dt[2] + 1");
  const auto q = op("-dt[1]^2 + dr");
  EXPECT_TRUE((initial_form(p, u, v) + initial_form(q, u, v)).is_zero());
  // The top parts cancel, so the sum's initial form is the next weight level.
  EXPECT_EQ(initial_form(p + q, u, v), sym("t[1]*xi_t[2] + xi_r"));
  const auto a = op("dt[1]^2 + t[2]"), b = op("dr^2 + 3");
  EXPECT_EQ(initial_form(a + b, u, v), initial_form(a, u, v) + initial_form(b, u, v));
}

TEST(TermOrder, InadmissibleWeightsAreDetected) {
  std::vector<std::int64_t> u(8, 0), v(8, 0);
  u[kFull1.t(1)] = -1;
  EXPECT_THROW(TermOrder::weighted(u, v, TermOrder::preset("grevlex", kFull1)), std::invalid_argument);
  std::vector<std::int64_t> w(u);
  w.insert(w.end(), v.begin(), v.end());
  EXPECT_FALSE(TermOrder::weighted(w, TermOrder::preset("grevlex", kFull1)).is_weyl_admissible());
  v[kFull1.t(1)] = 1;
  const auto good = TermOrder::weighted(u, v, TermOrder::preset("grevlex", kFull1));
  EXPECT_TRUE(good.is_weyl_admissible());
  EXPECT_THROW(initial_form(op("t[1]"), u, std::vector<std::int64_t>(8, 0)), std::invalid_argument);
}

TEST(TermOrder, JsonDescriptorRoundTrip) {
  const VarTable t2(2, Ring::Full);
  for (const auto& name : TermOrder::preset_names()) {
    const auto ord = TermOrder::preset(name, t2);
    const auto back = TermOrder::from_json(ord.to_json(t2), t2);
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> e(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
      WeylMonomial a(26, 0), b(26, 0);
      for (auto& x : a) x = Exponent(e(rng) / 2 + e(rng) / 2);
      for (auto& x : b) x = Exponent(e(rng) / 2 + e(rng) / 2);
      EXPECT_EQ(ord.compare(a, b), back.compare(a, b)) << name;
    }
  }
  const auto custom = TermOrder::from_json(
      nlohmann::json::parse(R"({"weight": {"t[1]": 1, "t[2]": 1, "t[3]": 1}, "tie": {"preset": "grevlex"}})"), t2);
  const auto s4 = TermOrder::preset("paper-s4", t2);
  const auto t1 = leading_term(parse_operator("t[1]", t2), s4).first;
  const auto dx3 = leading_term(parse_operator("dx[1][1]^3", t2), s4).first;
  EXPECT_EQ(custom.compare(t1, dx3), std::strong_ordering::greater);
  EXPECT_EQ(custom.compare(t1, dx3), s4.compare(t1, dx3));
}

TEST(TermOrder, UnknownPresetIsRejected) {
  EXPECT_THROW(TermOrder::preset("no-such-order", kFull1), std::invalid_argument);
}
