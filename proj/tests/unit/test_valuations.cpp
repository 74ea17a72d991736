#include "doctest.h"
#include "support.hpp"

using namespace plskel;
using namespace support;

namespace {

Context padic2(std::size_t m = 2) { return make_ctx({2, 3}, m, {CoeffMode::PAdic, 2}); }

LaurentPoly T(std::size_t n, std::size_t i) { return LaurentPoly::variable(n, i); }
LaurentPoly K(std::size_t n, const Rational& c) { return LaurentPoly::constant(n, c); }

}  // namespace

TEST_CASE("laurent arithmetic") {
  auto x = T(2, 0), y = T(2, 1);
  auto p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK((p - p).is_zero());
  CHECK(x.pow(-2) * x.pow(2) == K(2, 1));
  CHECK(p.substitute({y, x}) == y * y - x * x);
  CHECK(monomial_transform(x * y, {{1, 1}, {0, 1}}) == LaurentPoly::monomial(2, {1, 2}));
}

TEST_CASE("gauss examples") {
  auto c = padic2();
  const auto& reg = c.reg();
  auto f = T(1, 0) + K(1, 2);
  CHECK(gauss_eval(reg, f, GaussPoint{{{gs(c, 1)}}}) == gs(c, 1));
  CHECK(gauss_eval(reg, K(1, 1), GaussPoint{{{gs(c, 3)}}}) == gs(c, 1));
  GenScalar r = gs(c, 1, {-1});
  CHECK(gauss_eval(reg, f, GaussPoint{{{r}}}) == r);
  // Tiny r: the constant 2 dominates with |2| = 1/2.
  CHECK(gauss_eval(reg, f, GaussPoint{{{gs(c, Rational(1, 8))}}}) == gs(c, Rational(1, 2)));
  CHECK_FALSE(gauss_eval(reg, LaurentPoly::zero(1), GaussPoint{{{r}}}).has_value());

  auto triv = make_ctx();
  CHECK(gauss_eval(triv.reg(), f, GaussPoint{{{gs(triv, Rational(1, 8))}}}) == gs(triv, 1));
  CHECK(coeff_abs(reg, 12) == gs(c, Rational(1, 4)));
  CHECK(coeff_abs(triv.reg(), 12) == gs(triv, 1));
}

TEST_CASE("gauss_sharp examples") {
  auto c = padic2();
  GaussPoint x{{{gs(c, 2, {1})}}};
  CHECK(gauss_sharp(x) == GaussPoint{{{gs(c, 2)}}});
  GaussPoint s{{pt(c, {2, 3})}};
  CHECK(gauss_sharp(s) == s);
  GaussPoint y{{{gs(c, 1, {-1}), gs(c, 3, {0})}}};
  CHECK(gauss_sharp(y) == GaussPoint{{pt(c, {1, 3})}});
}

TEST_CASE("abhyankar examples") {
  auto c = padic2();
  const auto& reg = c.reg();
  GaussPoint x{{{gs(c, 2, {1}), gs(c, 3)}}};
  CHECK(abhyankar_check(reg, {T(2, 0), T(2, 1)}, x, default_probes(2, 2)));
  CHECK_FALSE(abhyankar_check(reg, {T(2, 0), T(2, 0)}, x, {T(2, 0) - T(2, 1)}));
  GaussPoint x1{{{gs(c, 3)}}};
  CHECK(abhyankar_check(reg, {T(1, 0) * T(1, 0)}, x1, default_probes(1, 3)));
  try {
    abhyankar_check(reg, {LaurentPoly::zero(2), T(2, 1)}, x, default_probes(2, 2));
    FAIL("zero component accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroComponent);
  }
  CHECK(value_rank(reg, {gs(c, 2, {1}), gs(c, 3)}) == 1);
  CHECK(value_rank(reg, {gs(c, 2, {1}), gs(c, 3, {0, 1})}) == 2);
  CHECK(value_rank(reg, {gs(c, 2), gs(c, 3)}) == 0);
}

TEST_CASE("default probes") {
  auto p = default_probes(2, 1);
  // 1, S1, S2 and the 3 sums plus 3 differences.
  CHECK(p.size() == 9);
  CHECK(p[0] == K(2, 1));
  CHECK(default_probes(1, 2).size() == 3 + 6);
}

TEST_CASE("pushforward examples") {
  auto c = padic2();
  const auto& reg = c.reg();
  GaussPoint r{{log_pt(c, {{Rational(1, 2), 0}})}};
  CHECK(pushforward_monomial(reg, {{2}}, {ParamExp::one(2)}, r) == GaussPoint{{pt(c, {2})}});
  GaussPoint x{{{gs(c, 2, {1}), gs(c, 3, {0, -1})}}};
  CHECK(pushforward_monomial(reg, {{1, 0}, {0, 1}}, {ParamExp::one(2), ParamExp::one(2)}, x) == x);
  CHECK(pushforward_monomial(reg, {{1, 1}}, {ParamExp::one(2)}, GaussPoint{{pt(c, {2, 3})}}) ==
        GaussPoint{{pt(c, {6})}});
  CHECK(pushforward_monomial(reg, {{1}}, {pe(c, 3)}, GaussPoint{{pt(c, {2})}}) == GaussPoint{{pt(c, {6})}});
}

TEST_CASE("in_standard_skeleton examples") {
  auto c = padic2();
  const auto& reg = c.reg();
  GaussPoint x{{{gs(c, 2, {1}), gs(c, 3)}}};
  CHECK(in_standard_skeleton(reg, x, default_probes(2, 2)));
  CHECK(in_standard_skeleton(reg, x, {}));
  // Evaluator P -> |P(T1, T1)| at x.
  Evaluator dup = [&](const LaurentPoly& p) { return gauss_eval(reg, p.substitute({T(2, 0), T(2, 0)}), x); };
  CHECK_FALSE(in_standard_skeleton(reg, 2, dup, {T(2, 0) - T(2, 1)}));
  CHECK(in_standard_skeleton(reg, 2, dup, {T(2, 0) + T(2, 1) * Rational(2)}));
}

TEST_CASE("max_value") {
  auto c = padic2();
  CHECK_FALSE(max_value(c.reg(), {std::nullopt, std::nullopt}).has_value());
  CHECK(max_value(c.reg(), {std::nullopt, gs(c, 2), gs(c, 2, {-1})}) == gs(c, 2));
}
