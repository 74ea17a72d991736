#include "plskel/polytopes.hpp"

#include <algorithm>
#include <functional>

namespace plskel {

// ---------------------------------------------------------------------------
// AffineForm

AffineForm& AffineForm::operator*=(const AffineForm& o) {
  if (o.exps.size() != exps.size()) throw Error(ErrorCode::DimensionMismatch, "form dimensions differ");
  constant += o.constant;
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] += o.exps[i];
  return *this;
}

AffineForm& AffineForm::operator/=(const AffineForm& o) {
  if (o.exps.size() != exps.size()) throw Error(ErrorCode::DimensionMismatch, "form dimensions differ");
  constant -= o.constant;
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] -= o.exps[i];
  return *this;
}

AffineForm AffineForm::pow(const Rational& q) const {
  AffineForm out = *this;
  out.constant *= q;
  for (auto& e : out.exps) e *= q;
  return out;
}

GenScalar AffineForm::at(const Registry& reg, const std::vector<GenScalar>& point) const {
  if (point.size() != exps.size()) throw Error(ErrorCode::DimensionMismatch, "point arity");
  reg.check(constant);
  GenScalar v = standard_scalar(reg, constant);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    reg.check(point[i]);
    if (sgn(exps[i]) != 0) v += point[i] * exps[i];
  }
  return v;
}

AffineForm AffineForm::compose(const std::vector<AffineForm>& map) const {
  if (map.size() != exps.size()) throw Error(ErrorCode::DimensionMismatch, "map arity");
  if (map.empty()) return *this;
  AffineForm out{constant, RationalVector(map.front().dim())};
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (sgn(exps[i]) == 0) continue;
    out *= map[i].pow(exps[i]);
  }
  return out;
}

AffineMap identity_map(std::size_t rank, std::size_t dim) {
  AffineMap m;
  for (std::size_t i = 0; i < dim; ++i) m.push_back(AffineForm::coordinate(rank, dim, i));
  return m;
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  AffineMap out;
  out.reserve(outer.size());
  for (const auto& f : outer) out.push_back(f.compose(inner));
  return out;
}

std::vector<GenScalar> apply(const Registry& reg, const AffineMap& map, const std::vector<GenScalar>& point) {
  std::vector<GenScalar> out;
  out.reserve(map.size());
  for (const auto& f : map) out.push_back(f.at(reg, point));
  return out;
}

// ---------------------------------------------------------------------------
// Atom / Cell

LinConstraint Atom::to_constraint() const {
  LinConstraint c{form.exps, LogConst(form.constant), LinKind::Le};
  switch (rel) {
    case Rel::Lt: c.kind = LinKind::Lt; break;
    case Rel::Le: c.kind = LinKind::Le; break;
    case Rel::Eq: c.kind = LinKind::Eq; break;
    case Rel::Ge:
    case Rel::Gt:
      for (auto& q : c.coeffs) q = -q;
      c.constant = -c.constant;
      c.kind = rel == Rel::Ge ? LinKind::Le : LinKind::Lt;
      break;
  }
  return c;
}

Atom Atom::from_constraint(const LinConstraint& c) {
  Atom a{AffineForm{c.constant.to_param(), c.coeffs}, Rel::Le};
  a.rel = c.kind == LinKind::Lt ? Rel::Lt : c.kind == LinKind::Eq ? Rel::Eq : Rel::Le;
  return a;
}

std::vector<Atom> Atom::negation() const {
  switch (rel) {
    case Rel::Lt: return {{form, Rel::Ge}};
    case Rel::Le: return {{form, Rel::Gt}};
    case Rel::Ge: return {{form, Rel::Lt}};
    case Rel::Gt: return {{form, Rel::Le}};
    case Rel::Eq: return {{form, Rel::Lt}, {form, Rel::Gt}};
  }
  return {};
}

bool Atom::holds(const Registry& reg, const std::vector<GenScalar>& point) const {
  int s = reg.sign(form.at(reg, point));
  switch (rel) {
    case Rel::Lt: return s < 0;
    case Rel::Le: return s <= 0;
    case Rel::Eq: return s == 0;
    case Rel::Ge: return s >= 0;
    case Rel::Gt: return s > 0;
  }
  return false;
}

bool Cell::is_closed() const {
  return std::none_of(atoms.begin(), atoms.end(), [](const Atom& a) { return is_strict(a.rel); });
}

LinSystem Cell::system() const {
  LinSystem sys;
  sys.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (a.form.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "atom dimension differs from cell");
    sys.push_back(a.to_constraint());
  }
  return sys;
}

Cell Cell::from_system(const LinSystem& sys, std::size_t dim) {
  Cell c{{}, dim};
  for (const auto& row : sys) c.atoms.push_back(Atom::from_constraint(row));
  return c;
}

Cell Cell::operator&(const Cell& o) const {
  if (o.dim != dim) throw Error(ErrorCode::DimensionMismatch, "cell dimensions differ");
  Cell out = *this;
  for (const auto& a : o.atoms)
    if (std::find(out.atoms.begin(), out.atoms.end(), a) == out.atoms.end()) out.atoms.push_back(a);
  return out;
}

bool Cell::holds(const Registry& reg, const std::vector<GenScalar>& point) const {
  return std::all_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.holds(reg, point); });
}

bool Definable::is_polytope() const {
  return std::all_of(cells.begin(), cells.end(), [](const Cell& c) { return c.is_closed(); });
}

// ---------------------------------------------------------------------------
// Boolean algebra

bool is_empty(const Context& ctx, const Cell& c) {
  return !feasible(ctx.reg(), c.system(), ctx.limits);
}

bool is_empty(const Context& ctx, const Definable& d) {
  return std::all_of(d.cells.begin(), d.cells.end(), [&](const Cell& c) { return is_empty(ctx, c); });
}

std::optional<Cell> tidy(const Context& ctx, const Cell& c) {
  auto sys = simplify(ctx.reg(), c.system());
  if (!sys || !feasible(ctx.reg(), *sys, ctx.limits)) return std::nullopt;
  return Cell::from_system(*sys, c.dim);
}

Definable prune(const Context& ctx, const Definable& d) {
  Definable out = Definable::empty(d.dim);
  for (const auto& c : d.cells)
    if (auto t = tidy(ctx, c)) out.cells.push_back(std::move(*t));
  return out;
}

Definable unite(const Definable& a, const Definable& b) {
  if (a.dim != b.dim) throw Error(ErrorCode::DimensionMismatch, "union of different dimensions");
  Definable out = a;
  out.cells.insert(out.cells.end(), b.cells.begin(), b.cells.end());
  return out;
}

Definable intersect(const Context& ctx, const Definable& a, const Definable& b) {
  if (a.dim != b.dim) throw Error(ErrorCode::DimensionMismatch, "intersection of different dimensions");
  Definable out = Definable::empty(a.dim);
  for (const auto& x : a.cells)
    for (const auto& y : b.cells) {
      if (auto t = tidy(ctx, x & y)) out.cells.push_back(std::move(*t));
      if (out.cells.size() > ctx.limits.cell_cap) throw Error(ErrorCode::ResourceCap, "DNF cell cap exceeded");
    }
  return out;
}

Definable subtract(const Context& ctx, const Definable& a, const Definable& b) {
  if (a.dim != b.dim) throw Error(ErrorCode::DimensionMismatch, "difference of different dimensions");
  Definable out = Definable::empty(a.dim);
  for (const auto& start : a.cells) {
    auto first = tidy(ctx, start);
    if (!first) continue;
    std::vector<Cell> current{*first};
    for (const auto& removed : b.cells) {
      std::vector<Cell> next;
      for (const auto& cur : current) {
        if (is_empty(ctx, cur & removed)) {
          next.push_back(cur);
          continue;
        }
        // cur minus removed as the disjoint union of cur & a1 & .. & a(i-1) & not(ai).
        Cell prefix = cur;
        for (const auto& atom : removed.atoms) {
          for (const auto& neg : atom.negation()) {
            Cell piece = prefix;
            piece.atoms.push_back(neg);
            if (auto t = tidy(ctx, piece)) next.push_back(std::move(*t));
            if (next.size() + out.cells.size() > ctx.limits.cell_cap)
              throw Error(ErrorCode::ResourceCap, "DNF cell cap exceeded");
          }
          prefix.atoms.push_back(atom);
        }
      }
      current = std::move(next);
      if (current.empty()) break;
    }
    out.cells.insert(out.cells.end(), current.begin(), current.end());
  }
  return out;
}

Definable complement(const Context& ctx, const Definable& d) {
  return subtract(ctx, Definable::ambient(d.dim), d);
}

bool subset(const Context& ctx, const Definable& a, const Definable& b) {
  return is_empty(ctx, subtract(ctx, a, b));
}

bool equivalent(const Context& ctx, const Definable& a, const Definable& b) {
  return subset(ctx, a, b) && subset(ctx, b, a);
}

Cell closure(const Cell& c) {
  Cell out = c;
  for (auto& a : out.atoms) {
    if (a.rel == Rel::Lt) a.rel = Rel::Le;
    if (a.rel == Rel::Gt) a.rel = Rel::Ge;
  }
  return out;
}

Definable closure(const Context& ctx, const Definable& d) {
  Definable out = Definable::empty(d.dim);
  for (const auto& c : d.cells)
    if (!is_empty(ctx, c)) out.cells.push_back(closure(c));
  return out;
}

// ---------------------------------------------------------------------------
// Dimension / boundary

std::optional<std::size_t> dimension(const Context& ctx, const Cell& c) {
  auto sys = simplify(ctx.reg(), c.system());
  if (!sys || !feasible(ctx.reg(), *sys, ctx.limits)) return std::nullopt;
  std::vector<RationalVector> equalities;
  for (std::size_t i = 0; i < sys->size(); ++i) {
    const auto& row = (*sys)[i];
    if (row.kind == LinKind::Eq) {
      equalities.push_back(row.coeffs);
    } else if (row.kind == LinKind::Le) {
      // Implicit equality iff the strict version is infeasible.
      LinSystem probe = *sys;
      probe[i].kind = LinKind::Lt;
      if (!feasible(ctx.reg(), probe, ctx.limits)) equalities.push_back(row.coeffs);
    }
  }
  return c.dim - rational_rank(std::move(equalities));
}

std::optional<std::size_t> dimension(const Context& ctx, const Definable& d) {
  std::optional<std::size_t> best;
  for (const auto& c : d.cells) {
    auto k = dimension(ctx, c);
    if (k && (!best || *k > *best)) best = k;
  }
  return best;
}

Definable boundary(const Context& ctx, const Cell& c) {
  if (!c.is_closed()) throw Error(ErrorCode::StrictAtomPresent, "boundary needs a closed cell");
  if (is_empty(ctx, c)) throw Error(ErrorCode::EmptyCell, "boundary of an empty cell");
  // phi_i <= 1 for every atom; equalities contribute both directions.
  LinSystem rows;
  for (const auto& a : c.atoms) {
    auto row = a.to_constraint();
    if (row.kind == LinKind::Eq) {
      row.kind = LinKind::Le;
      rows.push_back(row);
      for (auto& q : row.coeffs) q = -q;
      row.constant = -row.constant;
    }
    rows.push_back(row);
  }
  Definable out = Definable::empty(c.dim);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    LinSystem probe = rows;
    probe[j].kind = LinKind::Lt;
    if (!feasible(ctx.reg(), probe, ctx.limits)) continue;  // identically 1 on the cell
    LinSystem face = rows;
    face[j].kind = LinKind::Eq;
    out.cells.push_back(Cell::from_system(face, c.dim));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

// Hyperplane key: the form scaled so its first nonzero exponent is 1.
AffineForm hyperplane_key(const AffineForm& f) {
  auto it = std::find_if(f.exps.begin(), f.exps.end(), [](const Rational& q) { return sgn(q) != 0; });
  return f.pow(1 / *it);
}

}  // namespace

std::vector<AffineForm> distinct_hyperplanes(const std::vector<AffineForm>& forms) {
  std::vector<AffineForm> keys, out;
  for (const auto& f : forms) {
    if (f.is_constant()) continue;
    auto k = hyperplane_key(f);
    if (std::find(keys.begin(), keys.end(), k) != keys.end()) continue;
    keys.push_back(k);
    out.push_back(f);
  }
  return out;
}

std::vector<Cell> open_sign_cells(const Context& ctx, const std::vector<AffineForm>& forms, const Cell& base) {
  std::vector<Cell> out;
  if (is_empty(ctx, base)) return out;
  const Rel rels[3] = {Rel::Lt, Rel::Eq, Rel::Gt};
  std::function<void(const Cell&, std::size_t)> walk = [&](const Cell& so_far, std::size_t i) {
    if (i == forms.size()) {
      out.push_back(so_far);
      if (out.size() > ctx.limits.cell_cap) throw Error(ErrorCode::ResourceCap, "sign cell cap");
      return;
    }
    for (const Rel r : rels) {
      Cell next = so_far;
      next.atoms.push_back({forms[i], r});
      if (!is_empty(ctx, next)) walk(next, i + 1);
    }
  };
  walk(base, 0);
  return out;
}

Cell relative_interior(const Context& ctx, const Cell& c) {
  Cell out{{}, c.dim};
  for (std::size_t i = 0; i < c.atoms.size(); ++i) {
    Atom a = c.atoms[i];
    if (a.rel == Rel::Le || a.rel == Rel::Ge) {
      Cell probe = c;
      probe.atoms[i].rel = a.rel == Rel::Le ? Rel::Lt : Rel::Gt;
      if (is_empty(ctx, probe)) {
        a.rel = Rel::Eq;
      } else {
        a.rel = probe.atoms[i].rel;
      }
    }
    out.atoms.push_back(std::move(a));
  }
  return out;
}

CellDecomposition decompose(const Context& ctx, const std::vector<AffineForm>& family, const Definable& target) {
  const std::size_t n = target.dim;
  for (const auto& f : family)
    if (f.dim() != n) throw Error(ErrorCode::DimensionMismatch, "family form dimension");

  // A single-cell target is intersected with every sign cell; a general target
  // contributes its own forms so that each open sign cell lies inside or
  // outside it.
  std::vector<AffineForm> forms = family;
  std::optional<Cell> target_cell;
  if (target.cells.size() == 1) {
    target_cell = target.cells.front();
  } else {
    for (const auto& c : target.cells)
      for (const auto& a : c.atoms) forms.push_back(a.form);
  }
  forms = distinct_hyperplanes(forms);
  if (forms.size() > ctx.limits.family_cap)
    throw Error(ErrorCode::ResourceCap, "sign enumeration over " + std::to_string(forms.size()) + " forms");

  CellDecomposition out;
  const Rel open_rels[3] = {Rel::Lt, Rel::Eq, Rel::Gt};
  const Rel closed_rels[3] = {Rel::Le, Rel::Eq, Rel::Ge};
  std::vector<int> signs;
  Cell base = target_cell ? *target_cell : Cell::ambient(n);

  std::function<void(const Cell&)> walk = [&](const Cell& open_so_far) {
    if (signs.size() == forms.size()) {
      if (!target_cell && is_empty(ctx, intersect(ctx, Definable::of(open_so_far), target))) return;
      Cell closed = base;
      for (std::size_t i = 0; i < forms.size(); ++i) closed.atoms.push_back({forms[i], closed_rels[signs[i]]});
      out.open_cells.push_back(open_so_far);
      out.cells.push_back(closed);
      if (out.cells.size() > ctx.limits.cell_cap) throw Error(ErrorCode::ResourceCap, "decomposition cell cap");
      return;
    }
    for (int s = 0; s < 3; ++s) {
      Cell next = open_so_far;
      next.atoms.push_back({forms[signs.size()], open_rels[s]});
      if (is_empty(ctx, next)) continue;
      signs.push_back(s);
      walk(next);
      signs.pop_back();
    }
  };
  if (!is_empty(ctx, base)) walk(base);

  out.incidence.resize(out.cells.size());
  for (std::size_t i = 0; i < out.cells.size(); ++i)
    for (std::size_t j = 0; j < out.cells.size(); ++j)
      if (i != j && subset(ctx, Definable::of(out.cells[j]), Definable::of(out.cells[i])))
        out.incidence[i].push_back(j);
  return out;
}

// ---------------------------------------------------------------------------
// Images and membership

Definable image_affine(const Context& ctx, const Definable& d, const AffineMap& map) {
  const std::size_t n = d.dim;
  const std::size_t m = map.size();
  for (const auto& f : map)
    if (f.dim() != n) throw Error(ErrorCode::DimensionMismatch, "map component dimension");
  Definable out = Definable::empty(m);
  std::vector<bool> drop(n + m, false);
  std::fill(drop.begin(), drop.begin() + static_cast<long>(n), true);
  for (const auto& cell : d.cells) {
    // Graph of the map over the cell, in (y, z) log coordinates.
    LinSystem sys;
    for (auto row : cell.system()) {
      row.coeffs.resize(n + m);
      sys.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < m; ++j) {
      LinConstraint g;
      g.coeffs = RationalVector(n + m);
      for (std::size_t i = 0; i < n; ++i) g.coeffs[i] = -map[j].exps[i];
      g.coeffs[n + j] = 1;
      g.constant = -LogConst(map[j].constant);
      g.kind = LinKind::Eq;
      sys.push_back(std::move(g));
    }
    auto projected = project(ctx.reg(), std::move(sys), drop, ctx.limits);
    if (!projected) continue;
    LinSystem image;
    for (auto& row : *projected) {
      LinConstraint r;
      r.coeffs.assign(row.coeffs.begin() + static_cast<long>(n), row.coeffs.end());
      r.constant = row.constant;
      r.kind = row.kind;
      image.push_back(std::move(r));
    }
    out.cells.push_back(Cell::from_system(image, m));
  }
  return out;
}

Cell preimage(const Cell& c, const AffineMap& map) {
  if (map.size() != c.dim) throw Error(ErrorCode::DimensionMismatch, "preimage map arity");
  const std::size_t n = map.empty() ? 0 : map.front().dim();
  Cell out{{}, n};
  for (const auto& a : c.atoms) out.atoms.push_back({a.form.compose(map), a.rel});
  return out;
}

Definable preimage(const Definable& d, const AffineMap& map) {
  const std::size_t n = map.empty() ? 0 : map.front().dim();
  Definable out = Definable::empty(n);
  for (const auto& c : d.cells) out.cells.push_back(preimage(c, map));
  return out;
}

bool member(const Context& ctx, const Definable& d, const std::vector<GenScalar>& point) {
  if (point.size() != d.dim) throw Error(ErrorCode::DimensionMismatch, "point arity");
  for (const auto& x : point) ctx.reg().check(x);
  return std::any_of(d.cells.begin(), d.cells.end(), [&](const Cell& c) { return c.holds(ctx.reg(), point); });
}

bool is_bounded(const Context& ctx, const Definable& d) {
  for (const auto& c : d.cells) {
    auto sys = simplify(ctx.reg(), c.system());
    if (!sys || !feasible(ctx.reg(), *sys, ctx.limits)) continue;
    for (std::size_t i = 0; i < d.dim; ++i) {
      std::vector<bool> drop(d.dim, true);
      drop[i] = false;
      auto proj = project(ctx.reg(), *sys, drop, ctx.limits);
      if (!proj) break;
      bool lower = false, upper = false;
      for (const auto& row : *proj) {
        int s = sgn(row.coeffs[i]);
        if (row.kind == LinKind::Eq && s != 0) lower = upper = true;
        if (s > 0) upper = true;
        if (s < 0) lower = true;
      }
      if (!lower || !upper) return false;
    }
  }
  return true;
}

bool is_compact(const Context& ctx, const Definable& d) {
  return is_bounded(ctx, d) && subset(ctx, closure(ctx, d), d);
}

Cell point_cell(const Context& ctx, const std::vector<ParamExp>& point) {
  const std::size_t n = point.size();
  Cell c{{}, n};
  for (std::size_t i = 0; i < n; ++i) {
    ctx.reg().check(point[i]);
    AffineForm f = AffineForm::coordinate(ctx.rank(), n, i);
    f.constant = -point[i];
    c.atoms.push_back({f, Rel::Eq});
  }
  return c;
}

}  // namespace plskel
