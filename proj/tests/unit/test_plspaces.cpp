#include "doctest.h"
#include "support.hpp"

using namespace plskel;
using namespace support;

namespace {

PLMap inversion(const Context& c, const Definable& x) { return PLMap::affine(x, {mono(c, 1, {-1})}); }

PLMap swap2(const Context& c, const Definable& x) { return PLMap::affine(x, {mono(c, 1, {0, 1}), mono(c, 1, {1, 0})}); }

}  // namespace

TEST_CASE("compose examples") {
  auto c = make_ctx();
  Rational h(1, 2);
  Definable x = def(box(c, {{h, 2}}));
  PLMap inv = inversion(c, x);
  PLMap id = PLMap::affine(x, identity_map(c.rank(), 1));
  CHECK(agree(c, compose(c, id, inv), inv));
  CHECK(agree(c, compose(c, inv, inv), id));

  Definable line = Definable::ambient(1);
  PLMap sq = PLMap::affine(line, {mono(c, 1, {2})});
  PLMap dbl = PLMap::affine(line, {mono(c, 2, {1})});
  PLMap expected = PLMap::affine(line, {mono(c, 4, {2})});
  CHECK(agree(c, compose(c, sq, dbl), expected));
  CHECK_FALSE(agree(c, compose(c, dbl, sq), expected));

  PLMap to2 = PLMap::affine(line, {mono(c, 1, {1}), mono(c, 1, {1})});
  CHECK_THROWS_AS(compose(c, to2, to2), Error);
}

TEST_CASE("image_pl examples") {
  auto c = make_ctx();
  Rational h(1, 2);
  Definable x = def(box(c, {{h, 2}}));
  CHECK(equivalent(c, image_pl(c, inversion(c, x)), x));

  PLMap max_map;
  max_map.source = x;
  max_map.target_dim = 1;
  max_map.pieces.push_back({cell(1, {atom(c, {1}, Rel::Le, 1)}), {mono(c, 1, {-1})}});
  max_map.pieces.push_back({cell(1, {atom(c, {1}, Rel::Ge, 1)}), {mono(c, 1, {1})}});
  CHECK_NOTHROW(validate(c, max_map));
  CHECK(equivalent(c, image_pl(c, max_map), def(box(c, {{1, 2}}))));

  Definable sq = def(box(c, {{h, 2}, {h, 2}}));
  PLMap constant = PLMap::affine(sq, {mono(c, 3, {0, 0})});
  CHECK(equivalent(c, image_pl(c, constant), def(point_cell(c, {pe(c, 3)}))));

  try {
    image_pl(c, PLMap::affine(def(cell(1, {atom(c, {1}, Rel::Le, 2)})), {mono(c, 1, {1})}));
    FAIL("non-compact source accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonCompactSource);
  }
}

TEST_CASE("validate rejects disagreeing pieces and gaps") {
  auto c = make_ctx();
  Definable x = def(box(c, {{Rational(1, 2), 2}}));
  PLMap bad;
  bad.source = x;
  bad.target_dim = 1;
  bad.pieces.push_back({cell(1, {atom(c, {1}, Rel::Le, 1)}), {mono(c, 1, {1})}});
  bad.pieces.push_back({cell(1, {atom(c, {1}, Rel::Ge, 1)}), {mono(c, 2, {1})}});
  CHECK_THROWS_AS(validate(c, bad), Error);

  PLMap gap = bad;
  gap.pieces.pop_back();
  CHECK_THROWS_AS(validate(c, gap), Error);
}

TEST_CASE("actions") {
  auto c = make_ctx();
  Rational h(1, 2);
  Definable x = def(box(c, {{h, 2}}));
  auto a = make_action(c, x, {inversion(c, x)});
  CHECK(a.order() == 2);
  CHECK(a.table[1][1] == 0);
  CHECK(a.inverse[1] == 1);

  // x -> 2x does not preserve the interval.
  try {
    make_action(c, x, {PLMap::affine(x, {mono(c, 2, {1})})});
    FAIL("non-automorphism accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAnAction);
  }

  Definable sq = def(box(c, {{h, 2}, {h, 2}}));
  auto s = make_action(c, sq, {swap2(c, sq)});
  CHECK(s.order() == 2);
  // Swap plus the inversion of both coordinates generate a group of order 4.
  PLMap both = PLMap::affine(sq, {mono(c, 1, {-1, 0}), mono(c, 1, {0, -1})});
  auto k = make_action(c, sq, {swap2(c, sq), both});
  CHECK(k.order() == 4);
}

TEST_CASE("orbit examples") {
  auto c = make_ctx({2, 3}, 1);
  Rational h(1, 2);
  Definable sq = def(box(c, {{h, 2}, {h, 2}}));
  auto s = make_action(c, sq, {swap2(c, sq)});
  auto o1 = orbit(c, s, GenPoint{pt(c, {1, 2})});
  REQUIRE(o1.size() == 2);
  CHECK(o1[1] == GenPoint{pt(c, {2, 1})});
  auto o2 = orbit(c, s, GenPoint{pt(c, {Rational(3, 2), Rational(3, 2)})});
  CHECK(o2.size() == 1);

  Definable x = def(box(c, {{h, 2}}));
  auto inv = make_action(c, x, {inversion(c, x)});
  auto o3 = orbit(c, inv, GenPoint{{gs(c, 1, {1})}});
  REQUIRE(o3.size() == 2);
  CHECK(o3[1] == GenPoint{{gs(c, 1, {-1})}});

  try {
    orbit(c, inv, GenPoint{{gs(c, 3)}});
    FAIL("point outside accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointOutsideSource);
  }
}

TEST_CASE("quotient of the interval by inversion") {
  auto c = make_ctx();
  Rational h(1, 2);
  Definable x = def(box(c, {{h, 2}}));
  auto a = make_action(c, x, {inversion(c, x)});
  auto q = quotient(c, a);

  // Fixed part {t = 1}.
  bool fixed = false;
  for (const auto& p : q.parts)
    if (p.pattern.size == 1) fixed = fixed || equivalent(c, def(p.cell), def(point_cell(c, {pe(c, 1)})));
  CHECK(fixed);

  // The fundamental chart is [1/2, 1]; its translate is [1, 2].
  REQUIRE(q.charts.size() == 2);
  CHECK(equivalent(c, q.charts[0].set, def(box(c, {{h, 1}}))));
  CHECK(equivalent(c, q.charts[1].set, def(box(c, {{1, 2}}))));

  // Projection: identity on [1/2,1], inversion on [1,2].
  CHECK(project_point(c, q, pt(c, {Rational(3, 4)})) == pt(c, {Rational(3, 4)}));
  CHECK(project_point(c, q, pt(c, {Rational(3, 2)})) == pt(c, {Rational(2, 3)}));
}

TEST_CASE("quotient of the square by the swap") {
  auto c = make_ctx();
  Rational h(1, 2);
  Definable sq = def(box(c, {{h, 2}, {h, 2}}));
  auto a = make_action(c, sq, {swap2(c, sq)});
  auto q = quotient(c, a);
  Definable lower = intersect(c, sq, def(cell(2, {atom(c, {1, -1}, Rel::Le, 1)})));
  CHECK(equivalent(c, q.charts[0].set, lower));
  Definable diagonal = intersect(c, sq, def(cell(2, {atom(c, {1, -1}, Rel::Eq, 1)})));
  Definable fixed = Definable::empty(2);
  for (const auto& p : q.parts)
    if (p.pattern.size == 1) fixed.cells.push_back(p.cell);
  CHECK(equivalent(c, fixed, diagonal));
}

TEST_CASE("quotient by the trivial group") {
  auto c = make_ctx();
  Definable sq = def(box(c, {{Rational(1, 2), 2}, {1, 3}}));
  auto a = make_action(c, sq, {});
  auto q = quotient(c, a);
  REQUIRE(q.charts.size() == 1);
  CHECK(equivalent(c, q.charts[0].set, sq));
  for (const auto& p : q.parts) CHECK(p.projection == identity_map(c.rank(), 2));
}

TEST_CASE("quotient by the point reflection needs a cut chart") {
  auto c = make_ctx();
  Rational h(1, 2);
  Definable sq = def(box(c, {{h, 2}, {h, 2}}));
  PLMap both = PLMap::affine(sq, {mono(c, 1, {-1, 0}), mono(c, 1, {0, -1})});
  auto a = make_action(c, sq, {both});
  auto q = quotient(c, a);
  Definable covered = Definable::empty(2);
  for (const auto& ch : q.charts) {
    CHECK(injective_on(c, a, ch.set));
    covered = unite(covered, ch.set);
  }
  CHECK(equivalent(c, covered, sq));
  CHECK_FALSE(injective_on(c, a, def(cell(2, {atom(c, {1, 0}, Rel::Le, 1), atom(c, {1, 0}, Rel::Ge, h),
                                               atom(c, {0, 1}, Rel::Ge, h), atom(c, {0, 1}, Rel::Le, 2)}))));
}
