#include "plskel/logic.hpp"

#include <algorithm>
#include <set>

namespace plskel {

Formula Formula::of(Atom a) {
  Formula f{Kind::Atom, a.form.dim(), std::move(a), {}, 0};
  return f;
}

Formula Formula::conj(std::vector<Formula> fs, std::size_t dim) {
  if (fs.empty()) return truth(dim);
  if (fs.size() == 1) return std::move(fs.front());
  return {Kind::And, dim, {}, std::move(fs), 0};
}

Formula Formula::disj(std::vector<Formula> fs, std::size_t dim) {
  if (fs.empty()) return falsity(dim);
  if (fs.size() == 1) return std::move(fs.front());
  return {Kind::Or, dim, {}, std::move(fs), 0};
}

Formula Formula::negation(Formula f) {
  auto dim = f.dim;
  return {Kind::Not, dim, {}, {std::move(f)}, 0};
}

Formula Formula::exists(std::size_t var, Formula f) {
  if (var >= f.dim) throw Error(ErrorCode::DimensionMismatch, "quantified variable outside context");
  auto dim = f.dim;
  return {Kind::Exists, dim, {}, {std::move(f)}, var};
}

Formula Formula::forall(std::size_t var, Formula f) {
  if (var >= f.dim) throw Error(ErrorCode::DimensionMismatch, "quantified variable outside context");
  auto dim = f.dim;
  return {Kind::Forall, dim, {}, {std::move(f)}, var};
}

Formula Formula::of(const Definable& d) {
  std::vector<Formula> disjuncts;
  for (const auto& c : d.cells) {
    std::vector<Formula> atoms;
    for (const auto& a : c.atoms) atoms.push_back(Formula::of(a));
    disjuncts.push_back(conj(std::move(atoms), d.dim));
  }
  return disj(std::move(disjuncts), d.dim);
}

bool Formula::is_quantifier_free() const {
  if (kind == Kind::Exists || kind == Kind::Forall) return false;
  return std::all_of(args.begin(), args.end(), [](const Formula& f) { return f.is_quantifier_free(); });
}

namespace {

void collect_free(const Formula& f, std::vector<bool>& bound, std::set<std::size_t>& out) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      for (std::size_t i = 0; i < f.atom.form.exps.size(); ++i)
        if (sgn(f.atom.form.exps[i]) != 0 && !bound[i]) out.insert(i);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool was = bound[f.var];
      bound[f.var] = true;
      collect_free(f.args.front(), bound, out);
      bound[f.var] = was;
      return;
    }
    default:
      for (const auto& a : f.args) collect_free(a, bound, out);
  }
}

}  // namespace

std::vector<std::size_t> Formula::free_vars() const {
  std::vector<bool> bound(dim, false);
  std::set<std::size_t> out;
  collect_free(*this, bound, out);
  return {out.begin(), out.end()};
}

std::size_t Formula::atom_count() const {
  if (kind == Kind::Atom) return 1;
  std::size_t n = 0;
  for (const auto& a : args) n += a.atom_count();
  return n;
}

bool GenPoint::is_standard() const {
  return std::all_of(coords.begin(), coords.end(), [](const GenScalar& x) { return x.is_standard(); });
}

GenPoint standard_point(const Registry& reg, const std::vector<ParamExp>& coords) {
  GenPoint g;
  for (const auto& c : coords) g.coords.push_back(standard_scalar(reg, c));
  return g;
}

// ---------------------------------------------------------------------------
// Quantifier elimination on DNFs of linear systems

namespace {

using Dnf = std::vector<LinSystem>;

class Eliminator {
 public:
  Eliminator(const Context& ctx, std::size_t dim) : ctx_(ctx), dim_(dim) {}

  // DNF of f (or of not f when `negated`).
  Dnf run(const Formula& f, bool negated) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::True: return negated ? Dnf{} : Dnf{LinSystem{}};
      case K::False: return negated ? Dnf{LinSystem{}} : Dnf{};
      case K::Atom: {
        if (f.atom.form.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "atom outside formula context");
        auto c = f.atom.to_constraint();
        Dnf out;
        if (!negated) {
          push(out, LinSystem{c});
        } else {
          for (auto& n : negate(c)) push(out, LinSystem{n});
        }
        return out;
      }
      case K::Not: return run(f.args.front(), !negated);
      case K::And:
      case K::Or: {
        bool product = (f.kind == K::And) != negated;
        Dnf acc = product ? Dnf{LinSystem{}} : Dnf{};
        for (const auto& a : f.args) {
          Dnf part = run(a, negated);
          acc = product ? conjoin(acc, part) : disjoin(std::move(acc), std::move(part));
          if (product && acc.empty()) break;
        }
        return acc;
      }
      case K::Exists:
      case K::Forall: {
        // exists v g  |->  project(g);  forall v g  |->  not project(not g).
        bool is_exists = f.kind == K::Exists;
        Dnf body = run(f.args.front(), !is_exists);
        Dnf projected = eliminate_var(body, f.var);
        bool positive = is_exists != negated;
        return positive ? projected : complement(projected);
      }
    }
    return {};
  }

  Dnf complement(const Dnf& d) {
    Dnf acc{LinSystem{}};
    for (const auto& conj : d) {
      Dnf next;
      for (const auto& partial : acc)
        for (const auto& row : conj)
          for (auto& n : negate(row)) {
            LinSystem s = partial;
            s.push_back(std::move(n));
            push(next, std::move(s));
          }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    return acc;
  }

 private:
  void push(Dnf& out, LinSystem s) {
    auto simplified = simplify(ctx_.reg(), std::move(s));
    if (!simplified || !feasible(ctx_.reg(), *simplified, ctx_.limits)) return;
    if (std::find(out.begin(), out.end(), *simplified) != out.end()) return;
    out.push_back(std::move(*simplified));
    if (out.size() > ctx_.limits.cell_cap) throw Error(ErrorCode::ResourceCap, "DNF cell cap exceeded in QE");
  }

  Dnf conjoin(const Dnf& a, const Dnf& b) {
    Dnf out;
    for (const auto& x : a)
      for (const auto& y : b) {
        LinSystem s = x;
        s.insert(s.end(), y.begin(), y.end());
        push(out, std::move(s));
      }
    return out;
  }

  Dnf disjoin(Dnf a, Dnf b) {
    for (auto& s : b)
      if (std::find(a.begin(), a.end(), s) == a.end()) a.push_back(std::move(s));
    if (a.size() > ctx_.limits.cell_cap) throw Error(ErrorCode::ResourceCap, "DNF cell cap exceeded in QE");
    return a;
  }

  Dnf eliminate_var(const Dnf& d, std::size_t var) {
    Dnf out;
    for (const auto& conj : d) {
      auto r = eliminate(ctx_.reg(), conj, var, ctx_.limits);
      if (r) push(out, std::move(*r));
    }
    return out;
  }

  const Context& ctx_;
  std::size_t dim_;
};

Formula formula_of(const Dnf& d, std::size_t dim) {
  std::vector<Formula> disjuncts;
  for (const auto& conj : d) {
    if (conj.empty()) return Formula::truth(dim);
    std::vector<Formula> atoms;
    for (const auto& row : conj) atoms.push_back(Formula::of(Atom::from_constraint(row)));
    disjuncts.push_back(Formula::conj(std::move(atoms), dim));
  }
  return Formula::disj(std::move(disjuncts), dim);
}

}  // namespace

Formula qe(const Context& ctx, const Formula& f) {
  Eliminator e(ctx, f.dim);
  return formula_of(e.run(f, false), f.dim);
}

Definable to_definable(const Context& ctx, const Formula& f) {
  Eliminator e(ctx, f.dim);
  Definable out = Definable::empty(f.dim);
  for (const auto& conj : e.run(f, false)) out.cells.push_back(Cell::from_system(conj, f.dim));
  return out;
}

bool eval(const Context& ctx, const Formula& f, const GenPoint& g) {
  using K = Formula::Kind;
  if (g.dim() != f.dim) throw Error(ErrorCode::DimensionMismatch, "point arity differs from formula context");
  switch (f.kind) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return f.atom.holds(ctx.reg(), g.coords);
    case K::Not: return !eval(ctx, f.args.front(), g);
    case K::And:
      return std::all_of(f.args.begin(), f.args.end(), [&](const Formula& a) { return eval(ctx, a, g); });
    case K::Or:
      return std::any_of(f.args.begin(), f.args.end(), [&](const Formula& a) { return eval(ctx, a, g); });
    case K::Exists:
    case K::Forall: throw Error(ErrorCode::NotQuantifierFree, "eval needs a quantifier-free formula");
  }
  return false;
}

// ---------------------------------------------------------------------------
// Types

GenPoint sample_type(const Context& ctx, const Definable& d) {
  const Registry& reg = ctx.reg();
  const std::size_t n = d.dim;
  std::optional<LinSystem> sys;
  for (const auto& c : d.cells) {
    auto s = simplify(reg, c.system());
    if (s && feasible(reg, *s, ctx.limits)) {
      sys = std::move(s);
      break;
    }
  }
  if (!sys) throw Error(ErrorCode::EmptyDefinable, "sample_type of an empty set");

  // projections[k]: the cell projected onto coordinates 0..k.
  std::vector<LinSystem> projections(n);
  if (n > 0) projections[n - 1] = *sys;
  for (std::size_t k = n; k-- > 1;) {
    auto next = eliminate(reg, projections[k], k, ctx.limits);
    if (!next) throw Error(ErrorCode::EmptyDefinable, "projection became infeasible");
    projections[k - 1] = std::move(*next);
  }

  GenPoint g;
  std::size_t next_axis = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<GenScalar> equal, lower, upper;
    bool lower_strict = false, upper_strict = false;
    for (const auto& row : projections[k]) {
      const Rational& a = row.coeffs[k];
      if (sgn(a) == 0) continue;
      GenScalar rest = GenScalar::standard(row.constant, reg.inf_rank());
      for (std::size_t i = 0; i < k; ++i)
        if (sgn(row.coeffs[i]) != 0) rest += g.coords[i] * row.coeffs[i];
      GenScalar bound = rest * (Rational(-1) / a);
      bool strict = row.kind == LinKind::Lt;
      if (row.kind == LinKind::Eq) {
        equal = bound;
      } else if (sgn(a) > 0) {
        auto c = upper ? reg.compare(bound, *upper) : std::strong_ordering::less;
        if (c < 0 || (c == 0 && strict)) {
          upper = bound;
          upper_strict = strict;
        }
      } else {
        auto c = lower ? reg.compare(bound, *lower) : std::strong_ordering::greater;
        if (c > 0 || (c == 0 && strict)) {
          lower = bound;
          lower_strict = strict;
        }
      }
    }
    GenScalar value = GenScalar::zero(reg.rank(), reg.inf_rank());
    if (equal) {
      value = *equal;
    } else if (lower && !lower_strict) {
      value = *lower;
    } else if (upper && !upper_strict) {
      value = *upper;
    } else if (lower && upper) {
      value = (*lower + *upper) * Rational(1, 2);
    } else if (lower || upper) {
      if (next_axis >= reg.inf_rank())
        throw Error(ErrorCode::InsufficientInfRank,
                    "needs at least " + std::to_string(next_axis + 1) + " infinitesimal axes");
      value = lower ? *lower : *upper;
      value.inf[next_axis] += lower ? 1 : -1;
      ++next_axis;
    }
    g.coords.push_back(std::move(value));
  }
  return g;
}

UltrafilterRestriction restriction_ultrafilter(const Context& ctx, const GenPoint& g,
                                               const std::vector<Definable>& fam) {
  UltrafilterRestriction out;
  for (const auto& d : fam) {
    if (d.dim != g.dim()) throw Error(ErrorCode::DimensionMismatch, "family member dimension");
    out.membership.push_back(member(ctx, d, g.coords));
  }
  const std::size_t n = g.dim();
  // Atoms of the generated algebra: nonempty intersections of members or complements.
  std::vector<std::pair<std::vector<bool>, Definable>> partial{{{}, Definable::ambient(n)}};
  for (const auto& d : fam) {
    std::vector<std::pair<std::vector<bool>, Definable>> next;
    for (auto& [pattern, set] : partial) {
      auto inside = intersect(ctx, set, d);
      if (!is_empty(ctx, inside)) {
        auto p = pattern;
        p.push_back(true);
        next.emplace_back(std::move(p), std::move(inside));
      }
      auto outside = subtract(ctx, set, d);
      if (!is_empty(ctx, outside)) {
        auto p = pattern;
        p.push_back(false);
        next.emplace_back(std::move(p), std::move(outside));
      }
    }
    partial = std::move(next);
  }
  for (std::size_t i = 0; i < partial.size(); ++i) {
    out.atoms.push_back(partial[i].first);
    if (member(ctx, partial[i].second, g.coords)) out.containing_atoms.push_back(i);
  }
  return out;
}

}  // namespace plskel
