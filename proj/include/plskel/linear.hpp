#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plskel/scalars.hpp"

namespace plskel {

// Caps that turn blowup into a ResourceCap error instead of a hang.
struct Limits {
  std::size_t cell_cap = 10000;   // DNF cells per Definable / formula
  std::size_t row_cap = 20000;    // constraints alive during one elimination
  std::size_t family_cap = 10;    // forms per sign enumeration (3^k cells)
};

// Work counters reported by the CLI. Per thread; reset by the caller.
struct Counters {
  std::uint64_t eliminations = 0;
  std::uint64_t feasibility_checks = 0;
  std::uint64_t rows_generated = 0;
};
Counters& counters();

enum class LinKind { Lt, Le, Eq };

// coeffs . y + constant  (<, <=, =)  0, in log coordinates y = log x.
struct LinConstraint {
  RationalVector coeffs;
  LogConst constant;
  LinKind kind = LinKind::Le;

  bool is_trivial() const { return is_zero(coeffs); }
  friend bool operator==(const LinConstraint&, const LinConstraint&) = default;
};

using LinSystem = std::vector<LinConstraint>;

// Scales by a positive factor so the first nonzero coefficient is +-1
// (equalities: +1).
void normalize(LinConstraint& c);

// Truth of a constraint without variables.
bool trivial_holds(const Registry& reg, const LinConstraint& c);

// Normalizes, drops true trivial rows, merges parallel rows (keeping the
// tightest, turning opposite non-strict pairs that pinch into equalities).
// nullopt when a contradiction is found on the way.
std::optional<LinSystem> simplify(const Registry& reg, LinSystem sys);

// Fourier-Motzkin elimination of one variable (equalities are used for
// substitution first). The variable's column stays, with zeros.
// nullopt means infeasible.
std::optional<LinSystem> eliminate(const Registry& reg, LinSystem sys, std::size_t var, const Limits& limits);

// Eliminates every variable whose flag is set.
std::optional<LinSystem> project(const Registry& reg, LinSystem sys, const std::vector<bool>& drop,
                                 const Limits& limits);

bool feasible(const Registry& reg, const LinSystem& sys, const Limits& limits);

// Value of coeffs . point + constant in H.
GenScalar evaluate(const Registry& reg, const LinConstraint& c, const std::vector<GenScalar>& point);
bool satisfied(const Registry& reg, const LinConstraint& c, const std::vector<GenScalar>& point);

// Logical negation as a disjunction of constraints.
std::vector<LinConstraint> negate(const LinConstraint& c);

}  // namespace plskel
