#include "doctest.h"
#include "support.hpp"

using namespace plskel;
using namespace support;

TEST_CASE("is_empty examples") {
  auto c = make_ctx();
  CHECK(is_empty(c, cell(1, {atom(c, {1}, Rel::Le, 1), atom(c, {1}, Rel::Ge, 2)})));
  // 2 x1 <= 1 and x1 >= 1/4
  CHECK_FALSE(is_empty(c, cell(1, {Atom{mono(c, 2, {1}), Rel::Le}, atom(c, {1}, Rel::Ge, Rational(1, 4))})));
  CHECK(is_empty(c, cell(2, {atom(c, {1, 1}, Rel::Le, 1), atom(c, {1, 0}, Rel::Ge, 2), atom(c, {0, 1}, Rel::Ge, 2)})));
  CHECK(is_empty(c, Definable::empty(2)));
  CHECK_FALSE(is_empty(c, Definable::ambient(0)));
  // Strictness matters at a touching point.
  CHECK_FALSE(is_empty(c, cell(1, {atom(c, {1}, Rel::Le, 2), atom(c, {1}, Rel::Ge, 2)})));
  CHECK(is_empty(c, cell(1, {atom(c, {1}, Rel::Lt, 2), atom(c, {1}, Rel::Ge, 2)})));
}

TEST_CASE("dimension examples") {
  auto c = make_ctx();
  Rational h(1, 2);
  CHECK(dimension(c, box(c, {{h, 2}, {h, 2}})) == 2);
  // x2 = x1^2 and 1 <= x1 <= 2
  Cell parabola = cell(2, {Atom{mono(c, 1, {-2, 1}), Rel::Eq}, atom(c, {1, 0}, Rel::Ge, 1), atom(c, {1, 0}, Rel::Le, 2)});
  CHECK(dimension(c, parabola) == 1);
  CHECK_FALSE(dimension(c, Definable::empty(2)).has_value());
  // Implicit equality from two opposite inequalities.
  CHECK(dimension(c, cell(2, {atom(c, {1, -1}, Rel::Le, 1), atom(c, {1, -1}, Rel::Ge, 1)})) == 1);
  CHECK(dimension(c, point_cell(c, {pe(c, 2), pe(c, 3)})) == 0);
}

TEST_CASE("boundary examples") {
  auto c = make_ctx();
  Rational h(1, 2);
  auto b = boundary(c, box(c, {{h, 2}}));
  Definable expected{{cell(1, {atom(c, {1}, Rel::Eq, h)}), cell(1, {atom(c, {1}, Rel::Eq, 2)})}, 1};
  CHECK(equivalent(c, b, expected));
  CHECK(is_empty(c, boundary(c, cell(1, {atom(c, {1}, Rel::Eq, 1)}))));
  CHECK(equivalent(c, boundary(c, cell(1, {atom(c, {1}, Rel::Le, 2)})), def(cell(1, {atom(c, {1}, Rel::Eq, 2)}))));
  CHECK_THROWS_AS(boundary(c, cell(1, {atom(c, {1}, Rel::Lt, 2)})), Error);
  CHECK_THROWS_AS(boundary(c, cell(1, {atom(c, {1}, Rel::Le, 1), atom(c, {1}, Rel::Ge, 2)})), Error);
  try {
    boundary(c, cell(1, {atom(c, {1}, Rel::Lt, 2)}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StrictAtomPresent);
  }
}

TEST_CASE("decompose examples") {
  auto c = make_ctx();
  auto d1 = decompose(c, {mono(c, 1, {1})}, Definable::ambient(1));
  CHECK(d1.cells.size() == 3);
  CHECK(equivalent(c, def(d1.cells[0]), def(cell(1, {atom(c, {1}, Rel::Le, 1)}))));
  CHECK(equivalent(c, def(d1.cells[1]), def(cell(1, {atom(c, {1}, Rel::Eq, 1)}))));
  CHECK(equivalent(c, def(d1.cells[2]), def(cell(1, {atom(c, {1}, Rel::Ge, 1)}))));

  auto d0 = decompose(c, {}, Definable::ambient(3));
  REQUIRE(d0.cells.size() == 1);
  CHECK(equivalent(c, def(d0.cells[0]), Definable::ambient(3)));

  Rational h(1, 2);
  Definable square = def(box(c, {{h, 2}, {h, 2}}));
  auto d9 = decompose(c, {mono(c, 1, {1, 0}), mono(c, 1, {1, 1})}, square);
  CHECK(d9.cells.size() == 9);
  Definable all = Definable::empty(2);
  for (const auto& oc : d9.open_cells) all.cells.push_back(oc);
  CHECK(equivalent(c, all, square));
  for (std::size_t i = 0; i < d9.open_cells.size(); ++i)
    for (std::size_t j = i + 1; j < d9.open_cells.size(); ++j)
      CHECK(is_empty(c, d9.open_cells[i] & d9.open_cells[j]));

  Limits tight;
  tight.family_cap = 2;
  Context small{c.registry, tight};
  CHECK_THROWS_AS(decompose(small, {mono(c, 1, {1, 0}), mono(c, 1, {0, 1}), mono(c, 2, {1, 1})}, Definable::ambient(2)),
                  Error);
}

TEST_CASE("image_affine examples") {
  auto c = make_ctx();
  Definable sq = def(box(c, {{1, 2}, {1, 2}}));
  auto img = image_affine(c, sq, {mono(c, 1, {1, 1})});
  CHECK(equivalent(c, img, def(box(c, {{1, 4}}))));
  CHECK(equivalent(c, image_affine(c, sq, identity_map(c.rank(), 2)), sq));
  CHECK(is_empty(c, image_affine(c, Definable::empty(2), {mono(c, 1, {1, 1})})));
  // Constant map onto a point.
  auto pt_img = image_affine(c, sq, {mono(c, 3, {0, 0}), mono(c, 2, {0, 0})});
  CHECK(equivalent(c, pt_img, def(point_cell(c, {pe(c, 3), pe(c, 2)}))));
}

TEST_CASE("member examples") {
  auto c = make_ctx({2, 3}, 1);
  CHECK(member(c, def(box(c, {{1, 2}})), {gs(c, Rational(3, 2))}));
  CHECK(member(c, def(cell(1, {atom(c, {1}, Rel::Lt, 1)})), {gs(c, 1, {-1})}));
  CHECK_FALSE(member(c, def(cell(1, {atom(c, {1}, Rel::Ge, 1)})), {gs(c, 1, {-1})}));
  GenScalar wrong = GenScalar::zero(2, 3);
  CHECK_THROWS_AS(member(c, Definable::ambient(1), {wrong}), Error);
}

TEST_CASE("boolean algebra and closure") {
  auto c = make_ctx();
  Definable a = def(cell(1, {atom(c, {1}, Rel::Lt, 2)}));
  Definable b = def(cell(1, {atom(c, {1}, Rel::Gt, 1)}));
  CHECK(equivalent(c, complement(c, complement(c, a)), a));
  CHECK(equivalent(c, intersect(c, a, b), def(cell(1, {atom(c, {1}, Rel::Lt, 2), atom(c, {1}, Rel::Gt, 1)}))));
  CHECK(subset(c, intersect(c, a, b), a));
  CHECK_FALSE(subset(c, a, b));
  CHECK(equivalent(c, closure(c, a), def(cell(1, {atom(c, {1}, Rel::Le, 2)}))));
  CHECK(is_compact(c, def(box(c, {{1, 2}}))));
  CHECK_FALSE(is_compact(c, a));
  CHECK_FALSE(is_compact(c, def(cell(1, {atom(c, {1}, Rel::Lt, 2), atom(c, {1}, Rel::Ge, 1)}))));
  CHECK(is_bounded(c, def(cell(1, {atom(c, {1}, Rel::Lt, 2), atom(c, {1}, Rel::Ge, 1)}))));

  Limits tight;
  tight.cell_cap = 2;
  Context small{c.registry, tight};
  Definable many{{cell(1, {atom(c, {1}, Rel::Eq, 1)}), cell(1, {atom(c, {1}, Rel::Eq, 2)}),
                  cell(1, {atom(c, {1}, Rel::Eq, 3)})},
                 1};
  try {
    complement(small, many);
    FAIL("cap not enforced");
  } catch (const Error& e) {
    CHECK(e.is_resource_cap());
  }
}

TEST_CASE("relative interior") {
  auto c = make_ctx();
  Cell k = cell(2, {atom(c, {1, 0}, Rel::Le, 2), atom(c, {1, 0}, Rel::Ge, 2), atom(c, {0, 1}, Rel::Le, 3),
                    atom(c, {0, 1}, Rel::Ge, 1)});
  Cell ri = relative_interior(c, k);
  CHECK(dimension(c, ri) == 1);
  CHECK_FALSE(member(c, def(ri), pt(c, {2, 1})));
  CHECK(member(c, def(ri), pt(c, {2, 2})));
}
