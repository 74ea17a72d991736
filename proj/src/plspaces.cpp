#include "plskel/plspaces.hpp"

#include <algorithm>
#include <map>

namespace plskel {

namespace {

void check_map(const PLMap& f, const AffineMap& map) {
  if (map.size() != f.target_dim) throw Error(ErrorCode::DimensionMismatch, "piece map has wrong target arity");
  for (const auto& c : map)
    if (c.dim() != f.source.dim) throw Error(ErrorCode::DimensionMismatch, "piece map has wrong source arity");
}

// Cells of `where` meeting the piece domain and on which the two maps differ
// in some coordinate.
bool maps_differ_somewhere(const Context& ctx, const Definable& where, const Cell& domain, const AffineMap& a,
                           const AffineMap& b) {
  for (const auto& base : where.cells) {
    Cell region = base & domain;
    if (is_empty(ctx, region)) continue;
    for (std::size_t k = 0; k < a.size(); ++k) {
      AffineForm ratio = a[k] / b[k];
      if (ratio.is_constant() && ratio.constant.is_one()) continue;
      for (Rel r : {Rel::Lt, Rel::Gt}) {
        Cell probe = region;
        probe.atoms.push_back({ratio, r});
        if (!is_empty(ctx, probe)) return true;
      }
    }
  }
  return false;
}

Definable pieces_union(const PLMap& f) {
  Definable d = Definable::empty(f.source.dim);
  for (const auto& p : f.pieces) d.cells.push_back(p.domain);
  return d;
}

}  // namespace

PLMap PLMap::affine(Definable source, AffineMap map) {
  PLMap f;
  f.target_dim = map.size();
  f.pieces.push_back({Cell::ambient(source.dim), std::move(map)});
  f.source = std::move(source);
  return f;
}

void validate(const Context& ctx, const PLMap& f) {
  for (const auto& p : f.pieces) {
    if (p.domain.dim != f.source.dim) throw Error(ErrorCode::ValidationError, "piece domain dimension");
    try {
      check_map(f, p.map);
    } catch (const Error& e) {
      throw Error(ErrorCode::ValidationError, e.what());
    }
  }
  if (!is_empty(ctx, subtract(ctx, f.source, pieces_union(f))))
    throw Error(ErrorCode::ValidationError, "pieces do not cover the source");
  for (std::size_t i = 0; i < f.pieces.size(); ++i)
    for (std::size_t j = i + 1; j < f.pieces.size(); ++j) {
      Cell overlap = f.pieces[i].domain & f.pieces[j].domain;
      if (maps_differ_somewhere(ctx, f.source, overlap, f.pieces[i].map, f.pieces[j].map))
        throw Error(ErrorCode::ValidationError,
                    "pieces " + std::to_string(i) + " and " + std::to_string(j) + " disagree on their overlap");
    }
}

std::vector<GenScalar> eval(const Context& ctx, const PLMap& f, const std::vector<GenScalar>& point) {
  if (!member(ctx, f.source, point)) throw Error(ErrorCode::PointOutsideSource, "point is not in the source");
  for (const auto& p : f.pieces)
    if (p.domain.holds(ctx.reg(), point)) return apply(ctx.reg(), p.map, point);
  throw Error(ErrorCode::PointOutsideSource, "no piece contains the point");
}

GenPoint eval(const Context& ctx, const PLMap& f, const GenPoint& point) {
  return GenPoint{eval(ctx, f, point.coords)};
}

bool agree(const Context& ctx, const PLMap& f, const PLMap& g) {
  if (f.source.dim != g.source.dim || f.target_dim != g.target_dim) return false;
  for (const auto& p : f.pieces)
    for (const auto& q : g.pieces)
      if (maps_differ_somewhere(ctx, f.source, p.domain & q.domain, p.map, q.map)) return false;
  return true;
}

PLMap compose(const Context& ctx, const PLMap& f, const PLMap& g) {
  if (g.target_dim != f.source.dim) throw Error(ErrorCode::DimensionMismatch, "composition arity");
  PLMap out;
  out.source = g.source;
  out.target_dim = f.target_dim;
  for (const auto& gp : g.pieces)
    for (const auto& fp : f.pieces) {
      Cell domain = gp.domain & preimage(fp.domain, gp.map);
      if (is_empty(ctx, intersect(ctx, g.source, Definable::of(domain)))) continue;
      out.pieces.push_back({std::move(domain), plskel::compose(fp.map, gp.map)});
    }
  return out;
}

Definable image_pl(const Context& ctx, const PLMap& f) {
  if (!is_compact(ctx, f.source)) throw Error(ErrorCode::NonCompactSource, "image_pl needs a compact source");
  Definable out = Definable::empty(f.target_dim);
  for (const auto& p : f.pieces) {
    auto part = intersect(ctx, f.source, Definable::of(p.domain));
    out = unite(out, image_affine(ctx, part, p.map));
  }
  return prune(ctx, out);
}

// ---------------------------------------------------------------------------
// Group actions

GroupAction make_action(const Context& ctx, Definable space, const std::vector<PLMap>& generators,
                        std::size_t max_order) {
  if (!is_compact(ctx, space)) throw Error(ErrorCode::NonCompactSource, "acted-on space must be compact");
  const std::size_t n = space.dim;
  GroupAction action;
  action.space = space;
  action.elements.push_back(PLMap::affine(space, identity_map(ctx.rank(), n)));

  auto find = [&](const PLMap& f) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < action.elements.size(); ++i)
      if (agree(ctx, action.elements[i], f)) return i;
    return std::nullopt;
  };

  for (const auto& g : generators) {
    if (g.source.dim != n || g.target_dim != n)
      throw Error(ErrorCode::NotAnAction, "generator is not a self-map of the space");
    if (!equivalent(ctx, g.source, space)) throw Error(ErrorCode::NotAnAction, "generator source differs from the space");
    validate(ctx, g);
    if (!equivalent(ctx, image_pl(ctx, g), space))
      throw Error(ErrorCode::NotAnAction, "generator does not map the space onto itself");
    if (!find(g)) action.elements.push_back(g);
  }

  // Closure under composition; the table fills in as elements appear.
  for (std::size_t a = 0; a < action.elements.size(); ++a) {
    for (std::size_t b = 0; b < action.elements.size(); ++b) {
      PLMap c = compose(ctx, action.elements[a], action.elements[b]);
      if (!find(c)) {
        if (action.elements.size() >= max_order)
          throw Error(ErrorCode::NotAnAction, "generated group exceeds order " + std::to_string(max_order));
        action.elements.push_back(std::move(c));
      }
    }
  }
  const std::size_t order = action.elements.size();
  action.table.assign(order, std::vector<std::size_t>(order));
  action.inverse.assign(order, order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      auto c = find(compose(ctx, action.elements[a], action.elements[b]));
      if (!c) throw Error(ErrorCode::NotAnAction, "composition left the element set");
      action.table[a][b] = *c;
      if (*c == 0) action.inverse[a] = b;
    }
  for (std::size_t a = 0; a < order; ++a)
    if (action.inverse[a] == order) throw Error(ErrorCode::NotAnAction, "element without inverse");
  return action;
}

std::strong_ordering lex_compare(const Registry& reg, const std::vector<GenScalar>& a,
                                 const std::vector<GenScalar>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto c = reg.compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<GenPoint> orbit(const Context& ctx, const GroupAction& action, const GenPoint& p) {
  std::vector<GenPoint> out;
  for (const auto& g : action.elements) {
    GenPoint q = eval(ctx, g, p);
    bool seen = std::any_of(out.begin(), out.end(),
                            [&](const GenPoint& o) { return lex_compare(ctx.reg(), o.coords, q.coords) == 0; });
    if (!seen) out.push_back(std::move(q));
  }
  return out;
}

Definable translate(const Context& ctx, const GroupAction& action, std::size_t element, const Definable& v) {
  const PLMap& g = action.elements.at(element);
  Definable out = Definable::empty(v.dim);
  for (const auto& p : g.pieces) {
    auto part = intersect(ctx, v, Definable::of(p.domain));
    out = unite(out, image_affine(ctx, part, p.map));
  }
  return prune(ctx, out);
}

// ---------------------------------------------------------------------------
// Injectivity of the quotient map

namespace {

// Pairs (x, y) in (a x b) with y = m(x) and x != y, as cells in dimension 2n.
// Returns a nonempty one if any.
std::optional<Cell> orbit_collision(const Context& ctx, const Cell& a, const Cell& b, const Cell& domain,
                                    const AffineMap& m) {
  const std::size_t n = a.dim;
  const std::size_t r = ctx.rank();
  AffineMap left, right;
  for (std::size_t i = 0; i < n; ++i) {
    left.push_back(AffineForm::coordinate(r, 2 * n, i));
    right.push_back(AffineForm::coordinate(r, 2 * n, n + i));
  }
  Cell base = preimage(a & domain, left) & preimage(b, right);
  for (std::size_t k = 0; k < n; ++k) base.atoms.push_back({right[k] / m[k].compose(left), Rel::Eq});
  if (is_empty(ctx, base)) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k)
    for (Rel rel : {Rel::Lt, Rel::Gt}) {
      Cell probe = base;
      probe.atoms.push_back({right[k] / left[k], rel});
      if (!is_empty(ctx, probe)) return probe;
    }
  return std::nullopt;
}

std::optional<Cell> find_collision(const Context& ctx, const GroupAction& action, const Definable& v) {
  for (std::size_t g = 1; g < action.order(); ++g)
    for (const auto& piece : action.elements[g].pieces)
      for (const auto& a : v.cells)
        for (const auto& b : v.cells)
          if (auto c = orbit_collision(ctx, a, b, piece.domain, piece.map)) return c;
  return std::nullopt;
}

}  // namespace

bool injective_on(const Context& ctx, const GroupAction& action, const Definable& v) {
  return !find_collision(ctx, action, v).has_value();
}

// ---------------------------------------------------------------------------
// Quotient

namespace {

struct FundamentalCell {
  Cell cell;
  std::vector<std::size_t> piece;  // piece index of each element on the cell
  std::vector<GenScalar> sample;
};

std::size_t piece_containing(const Context& ctx, const PLMap& g, const Cell& cell) {
  for (std::size_t i = 0; i < g.pieces.size(); ++i)
    if (subset(ctx, Definable::of(cell), Definable::of(g.pieces[i].domain))) return i;
  throw Error(ErrorCode::ValidationError, "no single piece contains a refined cell");
}

// Piece of g whose domain meets `cell` in full dimension: its map is then the
// restriction of g to the affine hull of the cell.
std::size_t piece_spanning(const Context& ctx, const PLMap& g, const Cell& cell) {
  auto want = dimension(ctx, cell);
  for (std::size_t i = 0; i < g.pieces.size(); ++i)
    if (dimension(ctx, cell & g.pieces[i].domain) == want) return i;
  throw Error(ErrorCode::ValidationError, "no piece spans a refined cell");
}

Cell single_cell(const Context& ctx, const Definable& d) {
  auto p = prune(ctx, d);
  if (p.cells.size() != 1) throw Error(ErrorCode::ValidationError, "image of a cell is not a single cell");
  return p.cells.front();
}

// Splits v by the coordinate hyperplane through the midpoint of a colliding
// pair, so each side loses that collision.
std::optional<std::pair<Definable, Definable>> bisect(const Context& ctx, const Definable& v, const Cell& collision) {
  const std::size_t n = v.dim;
  GenPoint s = sample_type(ctx, Definable::of(collision));
  for (std::size_t k = 0; k < n; ++k) {
    const auto& x = s.coords[k].std;
    const auto& y = s.coords[n + k].std;
    if (x == y || !x.is_param() || !y.is_param()) continue;
    AffineForm f = AffineForm::coordinate(ctx.rank(), n, k);
    f.constant = -((x + y) * Rational(1, 2)).to_param();
    Definable lo = v, hi = v;
    for (auto& c : lo.cells) c.atoms.push_back({f, Rel::Le});
    for (auto& c : hi.cells) c.atoms.push_back({f, Rel::Ge});
    return std::make_pair(prune(ctx, lo), prune(ctx, hi));
  }
  return std::nullopt;
}

}  // namespace

QuotientPresentation quotient(const Context& ctx_in, const GroupAction& action) {
  Context ctx = ctx_in;
  const Definable& x = action.space;
  const std::size_t n = x.dim;
  const std::size_t order = action.order();
  if (!is_compact(ctx, x)) throw Error(ErrorCode::NonCompactSource, "quotient needs a compact space");

  // Stage 1: every element is affine on each cell.
  std::vector<AffineForm> forms;
  for (const auto& c : x.cells)
    for (const auto& a : c.atoms) forms.push_back(a.form);
  for (const auto& g : action.elements)
    for (const auto& p : g.pieces)
      for (const auto& a : p.domain.atoms) forms.push_back(a.form);
  forms = distinct_hyperplanes(forms);
  std::vector<Cell> stage1;
  for (auto& c : open_sign_cells(ctx, forms, Cell::ambient(n)))
    if (!is_empty(ctx, intersect(ctx, x, Definable::of(c)))) stage1.push_back(std::move(c));

  // Stage 2: the lexicographic order of the orbit points is constant on each cell.
  std::vector<FundamentalCell> cells;
  for (const auto& c : stage1) {
    std::vector<std::size_t> piece(order);
    for (std::size_t g = 0; g < order; ++g) piece[g] = piece_containing(ctx, action.elements[g], c);
    std::vector<AffineForm> cmp;
    for (std::size_t g = 0; g < order; ++g)
      for (std::size_t h = g + 1; h < order; ++h)
        for (std::size_t k = 0; k < n; ++k) {
          const auto& mg = action.elements[g].pieces[piece[g]].map;
          const auto& mh = action.elements[h].pieces[piece[h]].map;
          cmp.push_back(mg[k] / mh[k]);
        }
    for (auto& sub : open_sign_cells(ctx, distinct_hyperplanes(cmp), c)) {
      auto sample = sample_type(ctx, Definable::of(sub)).coords;
      cells.push_back({std::move(sub), piece, std::move(sample)});
    }
  }

  QuotientPresentation out;
  std::vector<std::size_t> fundamental_parts;
  for (const auto& fc : cells) {
    std::vector<std::vector<GenScalar>> images(order);
    for (std::size_t g = 0; g < order; ++g)
      images[g] = apply(ctx.reg(), action.elements[g].pieces[fc.piece[g]].map, fc.sample);
    bool least = std::all_of(images.begin(), images.end(), [&](const auto& img) {
      return lex_compare(ctx.reg(), fc.sample, img) <= 0;
    });
    if (!least) continue;

    std::vector<std::vector<GenScalar>> distinct = images;
    std::sort(distinct.begin(), distinct.end(),
              [&](const auto& a, const auto& b) { return lex_compare(ctx.reg(), a, b) < 0; });
    distinct.erase(std::unique(distinct.begin(), distinct.end(),
                               [&](const auto& a, const auto& b) { return lex_compare(ctx.reg(), a, b) == 0; }),
                   distinct.end());
    OrbitPattern pattern{distinct.size(), std::vector<std::size_t>(order)};
    for (std::size_t g = 0; g < order; ++g)
      for (std::size_t r = 0; r < distinct.size(); ++r)
        if (lex_compare(ctx.reg(), distinct[r], images[g]) == 0) pattern.phi[g] = r + 1;

    // One part per distinct orbit point: g(A) = h(A) iff g(x) = h(x) on A.
    const std::size_t base = out.parts.size();
    fundamental_parts.push_back(base);
    std::vector<std::size_t> part_of_rank(distinct.size(), SIZE_MAX);
    std::vector<std::size_t> index_of_element(order);
    for (std::size_t g = 0; g < order; ++g) {
      std::size_t r = pattern.phi[g] - 1;
      if (part_of_rank[r] == SIZE_MAX) {
        part_of_rank[r] = out.parts.size();
        QuotientPart part;
        part.base = base;
        part.element = g;
        part.pattern = pattern;
        const auto& gmap = action.elements[g].pieces[fc.piece[g]].map;
        part.cell = g == 0 ? fc.cell : single_cell(ctx, image_affine(ctx, Definable::of(fc.cell), gmap));
        const PLMap& inv = action.elements[action.inverse[g]];
        part.projection = g == 0 ? identity_map(ctx.rank(), n) : inv.pieces[piece_spanning(ctx, inv, part.cell)].map;
        out.parts.push_back(std::move(part));
      }
      index_of_element[g] = part_of_rank[r];
    }
    // image_part[g(A)][h] = (hg)(A)
    out.image_part.resize(out.parts.size(), std::vector<std::size_t>(order));
    for (std::size_t g = 0; g < order; ++g)
      for (std::size_t h = 0; h < order; ++h)
        out.image_part[index_of_element[g]][h] = index_of_element[action.table[h][g]];
  }

  // Fundamental charts: closures of fundamental parts merged while the
  // projection stays injective, bisecting pieces that are not injective.
  std::vector<std::pair<std::size_t, Definable>> pending;
  for (std::size_t b : fundamental_parts) {
    Cell cl = closure(out.parts[b].cell);
    pending.emplace_back(dimension(ctx, cl).value_or(0), Definable::of(cl));
  }
  std::stable_sort(pending.begin(), pending.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<Definable> fundamental_charts;
  std::vector<std::pair<Definable, int>> queue;
  for (auto& [_, d] : pending) queue.emplace_back(std::move(d), 0);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Definable piece = queue[qi].first;
    int depth = queue[qi].second;
    if (std::any_of(fundamental_charts.begin(), fundamental_charts.end(),
                    [&](const Definable& c) { return subset(ctx, piece, c); }))
      continue;
    bool merged = false;
    for (auto& c : fundamental_charts) {
      Definable u = unite(c, piece);
      if (injective_on(ctx, action, u)) {
        c = std::move(u);
        merged = true;
        break;
      }
    }
    if (merged) continue;
    auto collision = find_collision(ctx, action, piece);
    if (!collision) {
      fundamental_charts.push_back(std::move(piece));
      continue;
    }
    auto halves = depth < 8 ? bisect(ctx, piece, *collision) : std::nullopt;
    if (!halves) throw Error(ErrorCode::ResourceCap, "could not cut a chart into injective pieces");
    queue.emplace_back(std::move(halves->first), depth + 1);
    queue.emplace_back(std::move(halves->second), depth + 1);
  }

  for (std::size_t b = 0; b < fundamental_charts.size(); ++b)
    out.charts.push_back({prune(ctx, fundamental_charts[b]), b, 0});
  for (std::size_t b = 0; b < fundamental_charts.size(); ++b)
    for (std::size_t g = 1; g < order; ++g) {
      Definable t = translate(ctx, action, g, out.charts[b].set);
      bool seen = std::any_of(out.charts.begin(), out.charts.end(),
                              [&](const Chart& c) { return equivalent(ctx, c.set, t); });
      if (!seen) out.charts.push_back({std::move(t), b, g});
    }
  return out;
}

std::vector<GenScalar> project_point(const Context& ctx, const QuotientPresentation& q,
                                     const std::vector<GenScalar>& point) {
  for (const auto& part : q.parts)
    if (part.cell.holds(ctx.reg(), point)) return apply(ctx.reg(), part.projection, point);
  throw Error(ErrorCode::PointOutsideSource, "point is not in the quotiented space");
}

Definable fiber(const Context& ctx, const QuotientPresentation& q, const std::vector<ParamExp>& c) {
  Definable out = Definable::empty(c.size());
  for (const auto& part : q.parts) {
    Cell cell = part.cell;
    for (std::size_t k = 0; k < c.size(); ++k) {
      AffineForm f = part.projection[k];
      f.constant -= c[k];
      cell.atoms.push_back({f, Rel::Eq});
    }
    if (!is_empty(ctx, cell)) out.cells.push_back(std::move(cell));
  }
  return out;
}

}  // namespace plskel
