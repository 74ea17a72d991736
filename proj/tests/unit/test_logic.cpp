#include "doctest.h"
#include "support.hpp"

using namespace plskel;
using namespace support;

namespace {

Formula fa(const Atom& a) { return Formula::of(a); }

}  // namespace

TEST_CASE("qe examples") {
  auto c = make_ctx();
  // exists y (x <= y and y <= 2), context (x, y)
  Formula f = Formula::exists(1, Formula::conj({fa(atom(c, {1, -1}, Rel::Le, 1)), fa(atom(c, {0, 1}, Rel::Le, 2))}, 2));
  Formula r = qe(c, f);
  CHECK(r.is_quantifier_free());
  CHECK(equivalent(c, to_definable(c, r), def(cell(2, {atom(c, {1, 0}, Rel::Le, 2)}))));

  // exists y (y^2 = x)
  Formula sq = Formula::exists(1, fa(atom(c, {-1, 2}, Rel::Eq, 1)));
  CHECK(qe(c, sq).kind == Formula::Kind::True);

  // forall y (y >= x)
  Formula all = Formula::forall(1, fa(atom(c, {-1, 1}, Rel::Ge, 1)));
  CHECK(qe(c, all).kind == Formula::Kind::False);

  // forall y (y <= 1 -> y <= x)   is   x >= 1
  Formula imp = Formula::forall(
      1, Formula::disj({Formula::negation(fa(atom(c, {0, 1}, Rel::Le, 1))), fa(atom(c, {-1, 1}, Rel::Le, 1))}, 2));
  CHECK(equivalent(c, to_definable(c, qe(c, imp)), def(cell(2, {atom(c, {1, 0}, Rel::Ge, 1)}))));
}

TEST_CASE("qe respects the cell cap") {
  auto c = make_ctx();
  Limits tight;
  tight.cell_cap = 1;
  Context small{c.registry, tight};
  Formula f = Formula::disj({fa(atom(c, {1}, Rel::Lt, 1)), fa(atom(c, {1}, Rel::Gt, 2))}, 1);
  try {
    qe(small, f);
    FAIL("cap not enforced");
  } catch (const Error& e) {
    CHECK(e.is_resource_cap());
  }
}

TEST_CASE("eval examples") {
  auto c = make_ctx({2, 3}, 1);
  GenPoint g{{gs(c, 2, {1})}};
  CHECK(eval(c, fa(atom(c, {1}, Rel::Le, 4)), g));
  CHECK(eval(c, fa(atom(c, {1}, Rel::Gt, 2)), g));
  CHECK_FALSE(eval(c, fa(atom(c, {1}, Rel::Eq, 2)), g));
  try {
    eval(c, Formula::exists(0, fa(atom(c, {1}, Rel::Eq, 2))), g);
    FAIL("quantified formula evaluated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotQuantifierFree);
  }
}

TEST_CASE("sample_type examples") {
  auto c = make_ctx({2, 3}, 2);
  auto g1 = sample_type(c, def(cell(1, {atom(c, {1}, Rel::Ge, 2)})));
  CHECK(g1 == GenPoint{{gs(c, 2)}});
  auto g2 = sample_type(c, def(cell(1, {atom(c, {1}, Rel::Lt, 1)})));
  CHECK(g2 == GenPoint{{gs(c, 1, {-1, 0})}});
  Definable open{{cell(1, {atom(c, {1}, Rel::Gt, 1), atom(c, {1}, Rel::Lt, 2)})}, 1};
  auto g3 = sample_type(c, open);
  CHECK(member(c, open, g3.coords));
  CHECK(g3.is_standard());
  CHECK(g3.coords[0] == standard_scalar(c.reg(), ParamExp{{Rational(1, 2), 0}}));

  CHECK_THROWS_AS(sample_type(c, def(cell(1, {atom(c, {1}, Rel::Lt, 1), atom(c, {1}, Rel::Gt, 2)}))), Error);

  auto c0 = make_ctx({2, 3}, 0);
  try {
    sample_type(c0, def(cell(1, {atom(c0, {1}, Rel::Lt, 1)})));
    FAIL("missing infinitesimal axis not reported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientInfRank);
  }

  // Two strict one-sided cuts need two axes.
  Definable quadrant = def(cell(2, {atom(c, {1, 0}, Rel::Gt, 1), atom(c, {0, 1}, Rel::Lt, 3)}));
  auto g4 = sample_type(c, quadrant);
  CHECK(member(c, quadrant, g4.coords));
  CHECK_FALSE(member(c, complement(c, quadrant), g4.coords));
}

TEST_CASE("restriction_ultrafilter examples") {
  auto c = make_ctx({2, 3}, 1);
  Definable le1 = def(cell(1, {atom(c, {1}, Rel::Le, 1)}));
  Definable gt1 = def(cell(1, {atom(c, {1}, Rel::Gt, 1)}));
  for (auto g : {GenPoint{{gs(c, 1)}}, GenPoint{{gs(c, 1, {1})}}, GenPoint{{gs(c, 4)}}}) {
    auto r = restriction_ultrafilter(c, g, {le1, gt1});
    CHECK(r.membership[0] != r.membership[1]);
    CHECK(r.containing_atoms.size() == 1);
  }
  auto empty = restriction_ultrafilter(c, GenPoint{{gs(c, 3)}}, {Definable::empty(1)});
  CHECK(empty.membership == std::vector<bool>{false});
  CHECK(empty.containing_atoms.size() == 1);

  auto r = restriction_ultrafilter(c, GenPoint{{gs(c, 3)}},
                                   {def(cell(1, {atom(c, {1}, Rel::Le, 2)})), def(cell(1, {atom(c, {1}, Rel::Le, 4)}))});
  CHECK(r.membership == std::vector<bool>{false, true});
  REQUIRE(r.containing_atoms.size() == 1);
  CHECK(r.atoms[r.containing_atoms[0]] == std::vector<bool>{false, true});
}

TEST_CASE("free variables and atom counts") {
  auto c = make_ctx();
  Formula f = Formula::exists(1, Formula::conj({fa(atom(c, {1, -1, 0}, Rel::Le, 1)), fa(atom(c, {0, 0, 1}, Rel::Le, 2))}, 3));
  CHECK(f.free_vars() == std::vector<std::size_t>{0, 2});
  CHECK(f.atom_count() == 2);
  CHECK_FALSE(f.is_quantifier_free());
}
