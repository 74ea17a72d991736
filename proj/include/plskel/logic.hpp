#pragma once

#include <vector>

#include "plskel/polytopes.hpp"

namespace plskel {

// First-order formula over the ordered-group language with Delta-parameters.
// Every atom is indexed by the full variable context [0, dim); quantifiers
// bind one context variable.
struct Formula {
  enum class Kind { True, False, Atom, And, Or, Not, Exists, Forall };

  Kind kind = Kind::True;
  std::size_t dim = 0;
  Atom atom;                  // Kind::Atom
  std::vector<Formula> args;  // And/Or: any number; Not/Exists/Forall: one
  std::size_t var = 0;        // Exists/Forall

  static Formula truth(std::size_t dim) { return {Kind::True, dim, {}, {}, 0}; }
  static Formula falsity(std::size_t dim) { return {Kind::False, dim, {}, {}, 0}; }
  static Formula of(Atom a);
  static Formula conj(std::vector<Formula> fs, std::size_t dim);
  static Formula disj(std::vector<Formula> fs, std::size_t dim);
  static Formula negation(Formula f);
  static Formula exists(std::size_t var, Formula f);
  static Formula forall(std::size_t var, Formula f);
  static Formula of(const Definable& d);

  bool is_quantifier_free() const;
  std::vector<std::size_t> free_vars() const;
  std::size_t atom_count() const;

  friend bool operator==(const Formula&, const Formula&) = default;
};

// Realization of a type: one generalized scalar per coordinate.
struct GenPoint {
  std::vector<GenScalar> coords;

  std::size_t dim() const { return coords.size(); }
  bool is_standard() const;
  friend bool operator==(const GenPoint&, const GenPoint&) = default;
};

GenPoint standard_point(const Registry& reg, const std::vector<ParamExp>& coords);

// Quantifier elimination by innermost Fourier-Motzkin; forall goes through
// not-exists-not. The result is a disjunction of conjunctions of atoms.
Formula qe(const Context& ctx, const Formula& f);

// Quantifier-free formula -> Definable (DNF, empty disjuncts pruned).
Definable to_definable(const Context& ctx, const Formula& f);

// Truth at a generalized point; the formula must be quantifier-free.
bool eval(const Context& ctx, const Formula& f, const GenPoint& g);

// A generalized point of a nonempty definable set. Standard witnesses are
// preferred; strict one-sided cuts get a fresh infinitesimal axis.
GenPoint sample_type(const Context& ctx, const Definable& d);

struct UltrafilterRestriction {
  std::vector<bool> membership;               // g in fam[i]
  std::vector<std::vector<bool>> atoms;       // sign patterns of nonempty atoms of the algebra
  std::vector<std::size_t> containing_atoms;  // indices into `atoms` whose atom contains g
};

UltrafilterRestriction restriction_ultrafilter(const Context& ctx, const GenPoint& g,
                                               const std::vector<Definable>& fam);

}  // namespace plskel
