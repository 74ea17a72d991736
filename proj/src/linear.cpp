#include "plskel/linear.hpp"

#include <algorithm>
#include <map>

namespace plskel {

Counters& counters() {
  thread_local Counters c;
  return c;
}

namespace {

struct VectorLess {
  bool operator()(const RationalVector& a, const RationalVector& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

LinKind combine(LinKind a, LinKind b) {
  return (a == LinKind::Lt || b == LinKind::Lt) ? LinKind::Lt : LinKind::Le;
}

// a + factor * b, coefficientwise.
LinConstraint axpy(const LinConstraint& a, const Rational& factor, const LinConstraint& b, LinKind kind) {
  LinConstraint out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += factor * b.coeffs[i];
  out.constant += b.constant * factor;
  out.kind = kind;
  return out;
}

}  // namespace

void normalize(LinConstraint& c) {
  auto it = std::find_if(c.coeffs.begin(), c.coeffs.end(), [](const Rational& q) { return sgn(q) != 0; });
  if (it == c.coeffs.end()) return;
  Rational lead = *it;
  if (lead < 0) lead = -lead;
  if (c.kind == LinKind::Eq && sgn(*it) < 0) lead = -lead;
  if (lead == 1) return;
  Rational inv = 1 / lead;
  for (auto& q : c.coeffs) q *= inv;
  c.constant *= inv;
}

bool trivial_holds(const Registry& reg, const LinConstraint& c) {
  int s = reg.sign(c.constant);
  switch (c.kind) {
    case LinKind::Lt: return s < 0;
    case LinKind::Le: return s <= 0;
    case LinKind::Eq: return s == 0;
  }
  return false;
}

std::optional<LinSystem> simplify(const Registry& reg, LinSystem sys) {
  std::map<RationalVector, LinConstraint, VectorLess> eqs;
  std::map<RationalVector, LinConstraint, VectorLess> ineqs;

  for (auto& c : sys) {
    normalize(c);
    if (c.is_trivial()) {
      if (!trivial_holds(reg, c)) return std::nullopt;
      continue;
    }
    if (c.kind == LinKind::Eq) {
      auto [it, inserted] = eqs.try_emplace(c.coeffs, c);
      if (!inserted && reg.sign(it->second.constant - c.constant) != 0) return std::nullopt;
      continue;
    }
    auto [it, inserted] = ineqs.try_emplace(c.coeffs, c);
    if (inserted) continue;
    // Same direction: the larger constant is the tighter bound.
    auto& cur = it->second;
    int s = reg.sign(c.constant - cur.constant);
    if (s > 0 || (s == 0 && c.kind == LinKind::Lt)) cur = c;
  }

  // Opposite pairs l + a <= 0, -l + b <= 0 pinch l into [b, -a].
  for (auto it = ineqs.begin(); it != ineqs.end();) {
    RationalVector neg = it->first;
    for (auto& q : neg) q = -q;
    auto jt = ineqs.find(neg);
    if (jt == ineqs.end() || !VectorLess{}(it->first, neg)) {
      ++it;
      continue;
    }
    const auto& a = it->second;
    const auto& b = jt->second;
    int s = reg.sign(a.constant + b.constant);  // > 0: empty; == 0: touching
    if (s > 0) return std::nullopt;
    if (s == 0) {
      if (a.kind == LinKind::Lt || b.kind == LinKind::Lt) return std::nullopt;
      LinConstraint e = a;
      e.kind = LinKind::Eq;
      normalize(e);
      auto [et, inserted] = eqs.try_emplace(e.coeffs, e);
      if (!inserted && reg.sign(et->second.constant - e.constant) != 0) return std::nullopt;
      ineqs.erase(jt);
      it = ineqs.erase(it);
      continue;
    }
    ++it;
  }

  // Inequalities parallel to an equality are decided by it.
  for (auto it = ineqs.begin(); it != ineqs.end();) {
    RationalVector key = it->first;
    auto et = eqs.find(key);
    Rational dir = 1;
    if (et == eqs.end()) {
      for (auto& q : key) q = -q;
      et = eqs.find(key);
      dir = -1;
    }
    if (et == eqs.end()) {
      ++it;
      continue;
    }
    // Equality: key . y = -e.  Inequality: dir*key . y + c (<,<=) 0.
    LinConstraint t;
    t.coeffs = RationalVector(key.size());
    t.constant = it->second.constant - et->second.constant * dir;
    t.kind = it->second.kind;
    if (!trivial_holds(reg, t)) return std::nullopt;
    it = ineqs.erase(it);
  }

  LinSystem out;
  out.reserve(eqs.size() + ineqs.size());
  for (auto& [_, c] : eqs) out.push_back(std::move(c));
  for (auto& [_, c] : ineqs) out.push_back(std::move(c));
  return out;
}

std::optional<LinSystem> eliminate(const Registry& reg, LinSystem sys, std::size_t var, const Limits& limits) {
  ++counters().eliminations;
  auto simplified = simplify(reg, std::move(sys));
  if (!simplified) return std::nullopt;
  sys = std::move(*simplified);

  // Substitution through an equality.
  auto eq = std::find_if(sys.begin(), sys.end(),
                         [&](const LinConstraint& c) { return c.kind == LinKind::Eq && sgn(c.coeffs[var]) != 0; });
  if (eq != sys.end()) {
    LinConstraint pivot = *eq;
    sys.erase(eq);
    for (auto& c : sys) {
      if (sgn(c.coeffs[var]) == 0) continue;
      Rational f = -c.coeffs[var] / pivot.coeffs[var];
      c = axpy(c, f, pivot, c.kind);
      c.coeffs[var] = 0;
    }
    return simplify(reg, std::move(sys));
  }

  LinSystem keep, pos, neg;
  for (auto& c : sys) {
    int s = sgn(c.coeffs[var]);
    (s > 0 ? pos : s < 0 ? neg : keep).push_back(std::move(c));
  }
  if (keep.size() + pos.size() * neg.size() > limits.row_cap)
    throw Error(ErrorCode::ResourceCap, "Fourier-Motzkin row cap exceeded");
  for (const auto& p : pos) {
    for (const auto& n : neg) {
      // p/p_v + n/|n_v| cancels the variable.
      Rational fp = 1 / p.coeffs[var];
      Rational fn = -1 / n.coeffs[var];
      LinConstraint c;
      c.coeffs = RationalVector(p.coeffs.size());
      for (std::size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] = p.coeffs[i] * fp + n.coeffs[i] * fn;
      c.coeffs[var] = 0;
      c.constant = p.constant * fp + n.constant * fn;
      c.kind = combine(p.kind, n.kind);
      keep.push_back(std::move(c));
      ++counters().rows_generated;
    }
  }
  return simplify(reg, std::move(keep));
}

std::optional<LinSystem> project(const Registry& reg, LinSystem sys, const std::vector<bool>& drop,
                                 const Limits& limits) {
  std::vector<bool> pending = drop;
  while (true) {
    // Cheapest variable first: substitution, else the smallest product.
    std::size_t best = pending.size();
    long best_cost = 0;
    for (std::size_t v = 0; v < pending.size(); ++v) {
      if (!pending[v]) continue;
      long p = 0, n = 0;
      bool has_eq = false;
      for (const auto& c : sys) {
        int s = sgn(c.coeffs[v]);
        if (s == 0) continue;
        if (c.kind == LinKind::Eq) has_eq = true;
        (s > 0 ? p : n)++;
      }
      long cost = has_eq ? -1 : p * n - p - n;
      if (best == pending.size() || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    if (best == pending.size()) break;
    pending[best] = false;
    auto next = eliminate(reg, std::move(sys), best, limits);
    if (!next) return std::nullopt;
    sys = std::move(*next);
  }
  return simplify(reg, std::move(sys));
}

bool feasible(const Registry& reg, const LinSystem& sys, const Limits& limits) {
  ++counters().feasibility_checks;
  if (sys.empty()) return true;
  std::vector<bool> all(sys.front().coeffs.size(), true);
  return project(reg, sys, all, limits).has_value();
}

GenScalar evaluate(const Registry& reg, const LinConstraint& c, const std::vector<GenScalar>& point) {
  if (point.size() != c.coeffs.size()) throw Error(ErrorCode::DimensionMismatch, "point arity");
  GenScalar v = GenScalar::standard(c.constant, reg.inf_rank());
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (sgn(c.coeffs[i]) == 0) continue;
    reg.check(point[i]);
    v += point[i] * c.coeffs[i];
  }
  return v;
}

bool satisfied(const Registry& reg, const LinConstraint& c, const std::vector<GenScalar>& point) {
  int s = reg.sign(evaluate(reg, c, point));
  switch (c.kind) {
    case LinKind::Lt: return s < 0;
    case LinKind::Le: return s <= 0;
    case LinKind::Eq: return s == 0;
  }
  return false;
}

std::vector<LinConstraint> negate(const LinConstraint& c) {
  LinConstraint flipped = c;
  for (auto& q : flipped.coeffs) q = -q;
  flipped.constant = -flipped.constant;
  switch (c.kind) {
    case LinKind::Lt:
      flipped.kind = LinKind::Le;
      return {flipped};
    case LinKind::Le:
      flipped.kind = LinKind::Lt;
      return {flipped};
    case LinKind::Eq: {
      LinConstraint below = c;
      below.kind = LinKind::Lt;
      flipped.kind = LinKind::Lt;
      return {below, flipped};
    }
  }
  return {};
}

}  // namespace plskel
