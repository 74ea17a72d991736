#include "doctest.h"
#include "support.hpp"

using namespace plskel;
using namespace support;

TEST_CASE("registry validation") {
  CHECK_NOTHROW(Registry::create({2, 3}, 0));
  CHECK_NOTHROW(Registry::create({2, Rational(3, 2)}, 0));

  try {
    Registry::create({2, 4}, 0);
    FAIL("dependent generators accepted");
  } catch (const DependentGeneratorsError& e) {
    CHECK(e.code() == ErrorCode::DependentGenerators);
    CHECK(e.subset() == RationalVector{2, 4});
  }

  CHECK_THROWS_AS(Registry::create({2, 3}, 0, {CoeffMode::PAdic, 5}), Error);
  CHECK_THROWS_AS(Registry::create({2, 3}, 0, {CoeffMode::PAdic, 4}), Error);
  CHECK_THROWS_AS(Registry::create({1}, 0), Error);
  CHECK_THROWS_AS(Registry::create({Rational(1, 2)}, 0), Error);
  CHECK_THROWS_AS(Registry::create({}, 0), Error);
  CHECK_NOTHROW(Registry::create({2, 3}, 1, {CoeffMode::PAdic, 3}));
}

TEST_CASE("group membership") {
  auto c = make_ctx({2, 3}, 0);
  auto p = c.reg().param_of(Rational(8, 9));
  CHECK(p.exps == RationalVector{3, -2});
  CHECK(c.reg().value_of(p) == Rational(8, 9));
  CHECK_FALSE(c.reg().try_param_of(5));
  CHECK_THROWS_AS(c.reg().param_of(5), Error);

  auto d = make_ctx({2, Rational(3, 2)}, 0);
  CHECK(d.reg().param_of(3).exps == RationalVector{1, 1});
}

TEST_CASE("compare examples") {
  auto c = make_ctx({2, 3}, 2);
  const Registry& reg = c.reg();
  GenScalar a = standard_scalar(reg, ParamExp{{Rational(1, 2), 0}});
  GenScalar b = standard_scalar(reg, ParamExp{{Rational(1, 3), 0}}) + standard_scalar(reg, ParamExp{{Rational(1, 6), 0}});
  CHECK(reg.compare(a, b) == std::strong_ordering::equal);
  CHECK(reg.compare(gs(c, Rational(2, 3)), gs(c, 1)) == std::strong_ordering::less);
  CHECK(reg.compare(gs(c, 1, {1, 0}), gs(c, 1, {0, 0})) == std::strong_ordering::greater);
  CHECK(reg.compare(gs(c, 1, {0, 1}), gs(c, 1, {0, 0})) == std::strong_ordering::greater);
  CHECK(reg.compare(gs(c, 1, {-1, 5}), gs(c, 1, {0, -9})) == std::strong_ordering::less);
  // A positive infinitesimal stays below every standard value above 1.
  CHECK(reg.less(gs(c, 1, {1000, 0}), standard_scalar(reg, ParamExp{{Rational(1, 1000), 0}})));
}

TEST_CASE("near-ties between generators are decided exactly") {
  auto c = make_ctx({2, 3}, 0);
  const Registry& reg = c.reg();
  // 3^12 vs 2^19: 531441 > 524288
  CHECK(reg.sign(LogConst(ParamExp{{-19, 12}})) > 0);
  // 2^84 vs 3^53: 84 log 2 = 58.2243..., 53 log 3 = 58.2266...
  CHECK(reg.sign(LogConst(ParamExp{{84, -53}})) < 0);
  // The c0 axis: e vs 2 and e vs 3.
  CHECK(reg.sign(LogConst(1, {-1, 0})) > 0);
  CHECK(reg.sign(LogConst(1, {0, -1})) < 0);
  CHECK(reg.sign(LogConst::zero(2)) == 0);
}

TEST_CASE("sharp and flat") {
  auto c = make_ctx({2, 3}, 2);
  auto x = gs(c, 2, {1});
  CHECK(sharp(x) == LogConst(c.reg().param_of(2)));
  CHECK(flat(x) == RationalVector{1, 0});
  auto y = standard_scalar(c.reg(), ParamExp{{Rational(1, 3), 0}});
  y.inf = {-2, 5};
  CHECK(sharp(y) == LogConst(ParamExp{{Rational(1, 3), 0}}));
  CHECK(flat(y) == RationalVector{-2, 5});
  CHECK(from_sharp_flat(sharp(y), flat(y)) == y);
  CHECK(flat(gs(c, 1)) == RationalVector{0, 0});
}

TEST_CASE("order properties on random triples") {
  auto c = make_ctx({2, 3, 5}, 2);
  const Registry& reg = c.reg();
  Rng rng(11);
  auto random_scalar = [&] {
    GenScalar x = GenScalar::zero(3, 2);
    for (auto& q : x.std.coeffs) q = rng.rational(-4, 4, 5);
    if (rng.uniform(0, 3) == 0) x.std.c0 = rng.rational(-2, 2, 3);
    for (auto& q : x.inf) q = rng.uniform(0, 2) == 0 ? rng.rational(-3, 3) : Rational(0);
    return x;
  };
  for (int i = 0; i < 300; ++i) {
    auto a = random_scalar(), b = random_scalar(), d = random_scalar();
    auto ab = reg.compare(a, b);
    CHECK(reg.compare(b, a) == 0 <=> ab);
    CHECK(reg.compare(a + d, b + d) == ab);
    if (ab < 0 && reg.compare(b, d) < 0) CHECK(reg.compare(a, d) < 0);
    CHECK((reg.compare(a, b) == 0) == (a == b));

    auto [lo, hi] = reg.bounds(a);
    CHECK(reg.compare(standard_scalar(reg, lo), a) <= 0);
    CHECK(reg.compare(a, standard_scalar(reg, hi)) <= 0);

    if (reg.compare(a.std, b.std) < 0) {
      auto s = reg.between(a.std, b.std);
      CHECK(reg.compare(a.std, LogConst(s)) < 0);
      CHECK(reg.compare(LogConst(s), b.std) < 0);
    }
  }
}

TEST_CASE("registry mismatch") {
  auto c = make_ctx({2, 3}, 1);
  GenScalar wrong = GenScalar::zero(2, 3);
  CHECK_THROWS_AS(c.reg().check(wrong), Error);
  try {
    c.reg().compare(wrong, gs(c, 1));
    FAIL("mismatch not detected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RegistryMismatch);
  }
}

TEST_CASE("rational helpers") {
  Rational q;
  CHECK(parse_rational("-6/4", q));
  CHECK(q == Rational(-3, 2));
  CHECK(to_string(q) == "-3/2");
  CHECK(to_string(Rational(4)) == "4");
  CHECK_FALSE(parse_rational("1/0", q));
  CHECK_FALSE(parse_rational("x", q));
  CHECK_FALSE(parse_rational("", q));
  CHECK(rational_rank({{1, 2}, {2, 4}, {0, 1}}) == 2);
}
