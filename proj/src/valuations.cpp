#include "plskel/valuations.hpp"

#include <algorithm>

namespace plskel {

LaurentPoly LaurentPoly::constant(std::size_t nvars, const Rational& c) {
  return monomial(nvars, Exponent(nvars, 0), c);
}

LaurentPoly LaurentPoly::monomial(std::size_t nvars, Exponent e, const Rational& c) {
  if (e.size() != nvars) throw Error(ErrorCode::DimensionMismatch, "exponent length");
  LaurentPoly p{nvars, {}};
  p.add_term(e, c);
  return p;
}

void LaurentPoly::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars) throw Error(ErrorCode::DimensionMismatch, "exponent length");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.nvars != nvars) throw Error(ErrorCode::DimensionMismatch, "polynomial variable count");
  for (const auto& [e, c] : o.terms) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.nvars != nvars) throw Error(ErrorCode::DimensionMismatch, "polynomial variable count");
  for (const auto& [e, c] : o.terms) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars != b.nvars) throw Error(ErrorCode::DimensionMismatch, "polynomial variable count");
  LaurentPoly out = LaurentPoly::zero(a.nvars);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      Exponent e(a.nvars);
      for (std::size_t i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

LaurentPoly operator*(LaurentPoly a, const Rational& q) {
  if (sgn(q) == 0) return LaurentPoly::zero(a.nvars);
  for (auto& [_, c] : a.terms) c *= q;
  return a;
}

LaurentPoly LaurentPoly::pow(long k) const {
  if (k < 0) {
    if (!is_monomial()) throw Error(ErrorCode::ValidationError, "negative power of a non-monomial");
    const auto& [e, c] = *terms.begin();
    Exponent inv(nvars);
    for (std::size_t i = 0; i < nvars; ++i) inv[i] = -e[i];
    return monomial(nvars, inv, 1 / c).pow(-k);
  }
  LaurentPoly out = constant(nvars, 1);
  for (long i = 0; i < k; ++i) out = out * *this;
  return out;
}

LaurentPoly LaurentPoly::substitute(const std::vector<LaurentPoly>& fs) const {
  if (fs.size() != nvars) throw Error(ErrorCode::DimensionMismatch, "substitution arity");
  if (fs.empty()) return *this;
  const std::size_t m = fs.front().nvars;
  LaurentPoly out = zero(m);
  for (const auto& [e, c] : terms) {
    LaurentPoly t = constant(m, c);
    for (std::size_t j = 0; j < nvars; ++j)
      if (e[j] != 0) t = t * fs[j].pow(e[j]);
    out += t;
  }
  return out;
}

GenScalar coeff_abs(const Registry& reg, const Rational& c) {
  if (sgn(c) == 0) throw Error(ErrorCode::ValidationError, "absolute value of zero is not in H");
  ParamExp e = ParamExp::one(reg.rank());
  const auto& v = reg.coeff_valuation();
  if (v.mode == CoeffMode::PAdic) {
    auto idx = reg.generator_index(Rational(v.prime));
    if (!idx) throw Error(ErrorCode::NonPrimeValuation, "valuation prime is not a generator");
    mpz_class p = v.prime;
    long val = 0;
    mpz_class num = abs(c.get_num()), den = c.get_den();
    while (num % p == 0) {
      num /= p;
      ++val;
    }
    while (den % p == 0) {
      den /= p;
      --val;
    }
    e.exps[*idx] = -val;
  }
  return standard_scalar(reg, e);
}

AbsValue max_value(const Registry& reg, const std::vector<AbsValue>& values) {
  AbsValue best;
  for (const auto& v : values)
    if (v && (!best || reg.less(*best, *v))) best = v;
  return best;
}

AbsValue gauss_eval(const Registry& reg, const LaurentPoly& f, const GaussPoint& x) {
  if (f.nvars != x.dim()) throw Error(ErrorCode::DimensionMismatch, "polynomial and Gauss point arity");
  for (const auto& c : x.r.coords) reg.check(c);
  AbsValue best;
  for (const auto& [e, c] : f.terms) {
    GenScalar v = coeff_abs(reg, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) v += x.r.coords[i] * Rational(e[i]);
    if (!best || reg.less(*best, v)) best = std::move(v);
  }
  return best;
}

GaussPoint gauss_sharp(const GaussPoint& x) {
  GaussPoint out = x;
  for (auto& c : out.r.coords) c = GenScalar::standard(c.std, c.inf.size());
  return out;
}

std::vector<LaurentPoly> default_probes(std::size_t n, long d) {
  std::vector<Exponent> exps{Exponent(n, 0)};
  for (long deg = 1; deg <= d; ++deg) {
    // Exponents of total degree `deg`, by successive increments.
    std::vector<Exponent> next;
    std::function<void(Exponent&, std::size_t, long)> fill = [&](Exponent& e, std::size_t i, long left) {
      if (i + 1 == n) {
        e[i] = left;
        next.push_back(e);
        return;
      }
      for (long k = left; k >= 0; --k) {
        e[i] = k;
        fill(e, i + 1, left - k);
      }
    };
    if (n > 0) {
      Exponent e(n, 0);
      fill(e, 0, deg);
    }
    exps.insert(exps.end(), next.begin(), next.end());
  }
  std::vector<LaurentPoly> out;
  for (const auto& e : exps) out.push_back(LaurentPoly::monomial(n, e));
  for (std::size_t i = 0; i < exps.size(); ++i)
    for (std::size_t j = i + 1; j < exps.size(); ++j) {
      out.push_back(LaurentPoly::monomial(n, exps[i]) + LaurentPoly::monomial(n, exps[j]));
      out.push_back(LaurentPoly::monomial(n, exps[i]) - LaurentPoly::monomial(n, exps[j]));
    }
  return out;
}

namespace {

AbsValue formula_value(const Registry& reg, const LaurentPoly& p, const std::vector<GenScalar>& values) {
  AbsValue best;
  for (const auto& [e, c] : p.terms) {
    GenScalar v = coeff_abs(reg, c);
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] != 0) v += values[j] * Rational(e[j]);
    if (!best || reg.less(*best, v)) best = std::move(v);
  }
  return best;
}

bool same(const Registry& reg, const AbsValue& a, const AbsValue& b) {
  if (!a || !b) return !a && !b;
  return reg.compare(*a, *b) == 0;
}

}  // namespace

bool abhyankar_check(const Registry& reg, const std::vector<LaurentPoly>& fs, const GaussPoint& x,
                     const std::vector<LaurentPoly>& probes) {
  std::vector<GenScalar> values;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    auto v = gauss_eval(reg, fs[j], x);
    if (!v) throw Error(ErrorCode::ZeroComponent, "component " + std::to_string(j) + " vanishes");
    values.push_back(*v);
  }
  for (const auto& p : probes) {
    if (p.nvars != fs.size()) throw Error(ErrorCode::DimensionMismatch, "probe variable count");
    if (!same(reg, gauss_eval(reg, p.substitute(fs), x), formula_value(reg, p, values))) return false;
  }
  return true;
}

std::size_t value_rank(const Registry& reg, const std::vector<GenScalar>& values) {
  std::vector<RationalVector> rows;
  for (const auto& v : values) {
    reg.check(v);
    RationalVector row{v.std.c0};
    row.insert(row.end(), v.inf.begin(), v.inf.end());
    rows.push_back(std::move(row));
  }
  return rational_rank(std::move(rows));
}

GaussPoint pushforward_monomial(const Registry& reg, const std::vector<std::vector<long>>& m,
                                const std::vector<ParamExp>& consts, const GaussPoint& x) {
  if (consts.size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "one constant per matrix row");
  for (const auto& c : x.r.coords) reg.check(c);
  GaussPoint out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != x.dim()) throw Error(ErrorCode::DimensionMismatch, "matrix columns");
    GenScalar v = standard_scalar(reg, consts[i]);
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (m[i][j] != 0) v += x.r.coords[j] * Rational(m[i][j]);
    out.r.coords.push_back(std::move(v));
  }
  return out;
}

bool in_standard_skeleton(const Registry& reg, std::size_t n, const Evaluator& ev,
                          const std::vector<LaurentPoly>& probes) {
  if (probes.empty()) return true;
  std::vector<GenScalar> r;
  for (std::size_t i = 0; i < n; ++i) {
    auto v = ev(LaurentPoly::variable(n, i));
    if (!v) return false;
    r.push_back(*v);
  }
  for (const auto& p : probes)
    if (!same(reg, ev(p), formula_value(reg, p, r))) return false;
  return true;
}

bool in_standard_skeleton(const Registry& reg, const GaussPoint& x, const std::vector<LaurentPoly>& probes) {
  return in_standard_skeleton(
      reg, x.dim(), [&](const LaurentPoly& p) { return gauss_eval(reg, p, x); }, probes);
}

LaurentPoly monomial_transform(const LaurentPoly& f, const std::vector<std::vector<long>>& m) {
  if (m.size() != f.nvars) throw Error(ErrorCode::DimensionMismatch, "one matrix row per variable");
  const std::size_t n = m.empty() ? 0 : m.front().size();
  LaurentPoly out = LaurentPoly::zero(n);
  for (const auto& [e, c] : f.terms) {
    Exponent img(n, 0);
    for (std::size_t j = 0; j < m.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) img[i] += e[j] * m[j][i];
    out.add_term(img, c);
  }
  return out;
}

}  // namespace plskel
