#pragma once

#include <optional>
#include <vector>

#include "plskel/linear.hpp"
#include "plskel/scalars.hpp"

namespace plskel {

// Shared state for every geometric operation: the parameter registry and the
// blowup caps.
struct Context {
  RegistryPtr registry;
  Limits limits;

  const Registry& reg() const { return *registry; }
  std::size_t rank() const { return registry->rank(); }
};

// x |-> a * prod x_i^{exps[i]}.
struct AffineForm {
  ParamExp constant;
  RationalVector exps;

  static AffineForm unit(std::size_t rank, std::size_t dim) { return {ParamExp::one(rank), RationalVector(dim)}; }
  static AffineForm coordinate(std::size_t rank, std::size_t dim, std::size_t i) {
    auto f = unit(rank, dim);
    f.exps[i] = 1;
    return f;
  }

  std::size_t dim() const { return exps.size(); }
  bool is_constant() const { return is_zero(exps); }

  // Pointwise product / quotient / power of monomials.
  AffineForm& operator*=(const AffineForm& o);
  AffineForm& operator/=(const AffineForm& o);
  friend AffineForm operator*(AffineForm a, const AffineForm& b) { return a *= b; }
  friend AffineForm operator/(AffineForm a, const AffineForm& b) { return a /= b; }
  AffineForm pow(const Rational& q) const;
  AffineForm inverse() const { return pow(Rational(-1)); }

  // Value at a generalized point (log scale).
  GenScalar at(const Registry& reg, const std::vector<GenScalar>& point) const;
  // This form after substituting x = map(x'), where map has dim() components.
  AffineForm compose(const std::vector<AffineForm>& map) const;

  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

using AffineMap = std::vector<AffineForm>;

AffineMap identity_map(std::size_t rank, std::size_t dim);
AffineMap compose(const AffineMap& outer, const AffineMap& inner);
std::vector<GenScalar> apply(const Registry& reg, const AffineMap& map, const std::vector<GenScalar>& point);

enum class Rel { Lt, Le, Eq, Ge, Gt };

inline bool is_strict(Rel r) { return r == Rel::Lt || r == Rel::Gt; }

// form (rel) 1
struct Atom {
  AffineForm form;
  Rel rel = Rel::Le;

  LinConstraint to_constraint() const;
  static Atom from_constraint(const LinConstraint& c);
  // Disjunction equivalent to the negation.
  std::vector<Atom> negation() const;
  bool holds(const Registry& reg, const std::vector<GenScalar>& point) const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// Conjunction of atoms. Only non-strict atoms: a closed cell (a c-cell when
// nonempty). May be empty; callers that need the strict notion ask is_empty.
struct Cell {
  std::vector<Atom> atoms;
  std::size_t dim = 0;

  static Cell ambient(std::size_t dim) { return Cell{{}, dim}; }
  bool is_closed() const;
  LinSystem system() const;
  static Cell from_system(const LinSystem& sys, std::size_t dim);
  Cell operator&(const Cell& o) const;
  bool holds(const Registry& reg, const std::vector<GenScalar>& point) const;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Finite union of cells (disjunctive normal form).
struct Definable {
  std::vector<Cell> cells;
  std::size_t dim = 0;

  static Definable empty(std::size_t dim) { return Definable{{}, dim}; }
  static Definable ambient(std::size_t dim) { return Definable{{Cell::ambient(dim)}, dim}; }
  static Definable of(Cell c) {
    auto n = c.dim;
    return Definable{{std::move(c)}, n};
  }
  bool is_polytope() const;  // only non-strict atoms

  friend bool operator==(const Definable&, const Definable&) = default;
};

struct CellDecomposition {
  // Closed sign cells (non-strict atoms only), and their relatively open
  // counterparts, which partition the target.
  std::vector<Cell> cells;
  std::vector<Cell> open_cells;
  // incidence[i]: indices j != i with cells[j] contained in the boundary of cells[i].
  std::vector<std::vector<std::size_t>> incidence;
};

// --- Boolean algebra -------------------------------------------------------

bool is_empty(const Context& ctx, const Cell& c);
bool is_empty(const Context& ctx, const Definable& d);

// Simplified cell (merged parallel atoms), or nullopt when empty.
std::optional<Cell> tidy(const Context& ctx, const Cell& c);
Definable prune(const Context& ctx, const Definable& d);

Definable unite(const Definable& a, const Definable& b);
Definable intersect(const Context& ctx, const Definable& a, const Definable& b);
Definable subtract(const Context& ctx, const Definable& a, const Definable& b);
Definable complement(const Context& ctx, const Definable& d);
bool subset(const Context& ctx, const Definable& a, const Definable& b);
bool equivalent(const Context& ctx, const Definable& a, const Definable& b);

// Replaces strict atoms by their non-strict versions. For a nonempty cell
// this is the topological closure.
Cell closure(const Cell& c);
Definable closure(const Context& ctx, const Definable& d);

// --- Geometry --------------------------------------------------------------

// nullopt stands for -infinity (empty set).
std::optional<std::size_t> dimension(const Context& ctx, const Cell& c);
std::optional<std::size_t> dimension(const Context& ctx, const Definable& d);

Definable boundary(const Context& ctx, const Cell& c);

CellDecomposition decompose(const Context& ctx, const std::vector<AffineForm>& family, const Definable& target);

// Non-constant forms with pairwise distinct level-1 hyperplanes.
std::vector<AffineForm> distinct_hyperplanes(const std::vector<AffineForm>& forms);

// Nonempty cells base & {f_i (<|=|>) 1 for every form}, in sign order.
std::vector<Cell> open_sign_cells(const Context& ctx, const std::vector<AffineForm>& forms, const Cell& base);

// A nonempty closed cell with every atom that is not an implicit equality made
// strict.
Cell relative_interior(const Context& ctx, const Cell& c);

Definable image_affine(const Context& ctx, const Definable& d, const AffineMap& map);
// { x : map(x) in d }
Cell preimage(const Cell& c, const AffineMap& map);
Definable preimage(const Definable& d, const AffineMap& map);

bool member(const Context& ctx, const Definable& d, const std::vector<GenScalar>& point);

// Every coordinate bounded above and below on every (nonempty) cell.
bool is_bounded(const Context& ctx, const Definable& d);
bool is_compact(const Context& ctx, const Definable& d);

// The set { x : x = point } for a point with coordinates in Delta^Q.
Cell point_cell(const Context& ctx, const std::vector<ParamExp>& point);

}  // namespace plskel
