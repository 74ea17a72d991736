#pragma once

#include <vector>

#include "plskel/logic.hpp"

namespace plskel {

struct PLPiece {
  Cell domain;
  AffineMap map;

  friend bool operator==(const PLPiece&, const PLPiece&) = default;
};

// Piecewise monomial map on `source`. Piece domains cover the source and the
// maps agree wherever two domains overlap.
struct PLMap {
  std::vector<PLPiece> pieces;
  Definable source;
  std::size_t target_dim = 0;

  static PLMap affine(Definable source, AffineMap map);
  std::size_t source_dim() const { return source.dim; }
};

// Throws ValidationError when a piece has the wrong arity, the pieces leave
// part of the source uncovered, or two pieces disagree on an overlap.
void validate(const Context& ctx, const PLMap& f);

std::vector<GenScalar> eval(const Context& ctx, const PLMap& f, const std::vector<GenScalar>& point);
GenPoint eval(const Context& ctx, const PLMap& f, const GenPoint& point);

// Same values at every point of the common source (disagreement sets empty).
bool agree(const Context& ctx, const PLMap& f, const PLMap& g);

// f after g.
PLMap compose(const Context& ctx, const PLMap& f, const PLMap& g);

Definable image_pl(const Context& ctx, const PLMap& f);

// Finite group of PL automorphisms of a compact space. elements[0] is the
// identity; table[a][b] is the index of elements[a] after elements[b].
struct GroupAction {
  Definable space;
  std::vector<PLMap> elements;
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::size_t> inverse;

  std::size_t order() const { return elements.size(); }
};

// Closes the generators under composition, checking that each one maps the
// space onto itself. Throws NotAnAction otherwise, or when the generated group
// has more than `max_order` elements.
GroupAction make_action(const Context& ctx, Definable space, const std::vector<PLMap>& generators,
                        std::size_t max_order = 48);

// Orbit size m and, for each group element g, the 1-based lexicographic rank
// of g(x) inside the orbit of x.
struct OrbitPattern {
  std::size_t size = 0;
  std::vector<std::size_t> phi;

  friend bool operator==(const OrbitPattern&, const OrbitPattern&) = default;
};

struct QuotientPart {
  Cell cell;               // relatively open cell
  std::size_t base = 0;    // the fundamental part this one is a translate of
  std::size_t element = 0; // cell = elements[element](parts[base].cell)
  OrbitPattern pattern;
  AffineMap projection;    // onto parts[base]: the lexicographically least orbit point
};

struct Chart {
  Definable set;           // compact, the projection is injective on it
  std::size_t base = 0;    // index of a fundamental chart
  std::size_t element = 0; // set = elements[element](charts[base].set)
};

struct QuotientPresentation {
  std::vector<QuotientPart> parts;
  std::vector<std::vector<std::size_t>> image_part;  // image_part[v][g]: index of g(parts[v])
  std::vector<Chart> charts;
};

QuotientPresentation quotient(const Context& ctx, const GroupAction& action);

// Image of a point of X under the quotient projection.
std::vector<GenScalar> project_point(const Context& ctx, const QuotientPresentation& q,
                                     const std::vector<GenScalar>& point);

// { y in X : p(y) = c } for a standard value c.
Definable fiber(const Context& ctx, const QuotientPresentation& q, const std::vector<ParamExp>& c);

// Whether no two distinct points of v lie in one orbit.
bool injective_on(const Context& ctx, const GroupAction& action, const Definable& v);

// Image of a subset of X under one group element.
Definable translate(const Context& ctx, const GroupAction& action, std::size_t element, const Definable& v);

std::vector<GenPoint> orbit(const Context& ctx, const GroupAction& action, const GenPoint& p);

// Lexicographic comparison of points in H^n.
std::strong_ordering lex_compare(const Registry& reg, const std::vector<GenScalar>& a,
                                 const std::vector<GenScalar>& b);

}  // namespace plskel
