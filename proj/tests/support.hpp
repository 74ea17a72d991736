#pragma once

#include <random>

#include "plskel/plspaces.hpp"
#include "plskel/session.hpp"
#include "plskel/valuations.hpp"

namespace support {

using namespace plskel;

// a/b in lowest terms.
inline Rational ratio(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

inline Context make_ctx(RationalVector gens = {2, 3}, std::size_t inf_rank = 2, CoeffValuation val = {}) {
  return Context{Registry::create(std::move(gens), inf_rank, val), {}};
}

inline ParamExp pe(const Context& c, const Rational& v) { return c.reg().param_of(v); }

// x^exps (rel) bound, i.e. the atom (x^exps / bound) (rel) 1.
inline Atom atom(const Context& c, RationalVector exps, Rel rel, const Rational& bound) {
  return Atom{AffineForm{-pe(c, bound), std::move(exps)}, rel};
}

inline Cell cell(std::size_t n, std::vector<Atom> atoms) { return Cell{std::move(atoms), n}; }
inline Definable def(Cell c) { return Definable::of(std::move(c)); }

inline GenScalar gs(const Context& c, const Rational& value, RationalVector inf = {}) {
  GenScalar x = standard_scalar(c.reg(), pe(c, value));
  for (std::size_t i = 0; i < inf.size(); ++i) x.inf[i] = inf[i];
  return x;
}

inline std::vector<GenScalar> pt(const Context& c, const std::vector<Rational>& values) {
  std::vector<GenScalar> out;
  for (const auto& v : values) out.push_back(gs(c, v));
  return out;
}

// Standard point with coordinates prod g_j^{e_ij}, given by log-exponents.
inline std::vector<GenScalar> log_pt(const Context& c, const std::vector<RationalVector>& exps) {
  std::vector<GenScalar> out;
  for (const auto& e : exps) out.push_back(standard_scalar(c.reg(), ParamExp{e}));
  return out;
}

// Box prod [lo_i, hi_i].
inline Cell box(const Context& c, const std::vector<std::pair<Rational, Rational>>& sides) {
  const std::size_t n = sides.size();
  Cell out{{}, n};
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n);
    e[i] = 1;
    out.atoms.push_back(atom(c, e, Rel::Ge, sides[i].first));
    out.atoms.push_back(atom(c, e, Rel::Le, sides[i].second));
  }
  return out;
}

inline AffineForm mono(const Context& c, const Rational& a, RationalVector exps) {
  return AffineForm{pe(c, a), std::move(exps)};
}

// Test-side evaluation of an atom at a standard point given by log-exponent
// vectors; independent of the library's LinConstraint machinery.
inline int sign_at(const Context& c, const AffineForm& f, const std::vector<GenScalar>& point) {
  GenScalar v = GenScalar::standard(LogConst(f.constant), c.reg().inf_rank());
  for (std::size_t i = 0; i < point.size(); ++i) v += point[i] * f.exps[i];
  return c.reg().sign(v);
}

inline bool holds_at(const Context& c, const Atom& a, const std::vector<GenScalar>& point) {
  int s = sign_at(c, a.form, point);
  switch (a.rel) {
    case Rel::Lt: return s < 0;
    case Rel::Le: return s <= 0;
    case Rel::Eq: return s == 0;
    case Rel::Ge: return s >= 0;
    case Rel::Gt: return s > 0;
  }
  return false;
}

inline bool in_definable(const Context& c, const Definable& d, const std::vector<GenScalar>& point) {
  for (const auto& cl : d.cells) {
    bool all = true;
    for (const auto& a : cl.atoms) all = all && holds_at(c, a, point);
    if (all) return true;
  }
  return false;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }
  Rational rational(long lo, long hi, long max_den = 3) {
    long den = uniform(1, max_den);
    return ratio(uniform(lo * den, hi * den), den);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Random atom over generators {2,3}: small integer exponents, constant
// 2^a 3^b with small integer a, b.
inline Atom random_atom(const Context& c, Rng& rng, std::size_t n, bool allow_strict = true) {
  RationalVector e(n);
  do {
    for (auto& q : e) q = rng.uniform(-2, 2);
  } while (is_zero(e));
  ParamExp k = ParamExp::one(c.rank());
  for (auto& q : k.exps) q = rng.uniform(-2, 2);
  static const Rel all[] = {Rel::Lt, Rel::Le, Rel::Eq, Rel::Ge, Rel::Gt};
  static const Rel closed[] = {Rel::Le, Rel::Ge, Rel::Le, Rel::Ge, Rel::Eq};
  Rel r = allow_strict ? all[rng.uniform(0, 4)] : closed[rng.uniform(0, 4)];
  if (r == Rel::Eq && rng.uniform(0, 2) != 0) r = Rel::Le;  // keep most sets full-dimensional
  return Atom{AffineForm{k, e}, r};
}

inline Definable random_definable(const Context& c, Rng& rng, std::size_t n, std::size_t max_atoms) {
  Definable d = Definable::empty(n);
  std::size_t atoms = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_atoms)));
  std::size_t cells = static_cast<std::size_t>(rng.uniform(1, std::min<long>(3, static_cast<long>(atoms))));
  for (std::size_t i = 0; i < cells; ++i) d.cells.push_back(Cell::ambient(n));
  for (std::size_t i = 0; i < atoms; ++i) d.cells[i % cells].atoms.push_back(random_atom(c, rng, n));
  return d;
}

// Grid of standard points with log-coordinates in {-3..3} * (log 2)/2 + {-1..1} * log 3.
inline std::vector<std::vector<GenScalar>> grid(const Context& c, std::size_t n, Rng& rng, std::size_t count) {
  std::vector<std::vector<GenScalar>> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<RationalVector> coords;
    for (std::size_t i = 0; i < n; ++i) coords.push_back({ratio(rng.uniform(-6, 6), 2), rng.uniform(-1, 1)});
    out.push_back(log_pt(c, coords));
  }
  return out;
}

}  // namespace support
