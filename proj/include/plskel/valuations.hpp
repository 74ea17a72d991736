#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "plskel/logic.hpp"

namespace plskel {

using Exponent = std::vector<long>;

// Laurent polynomial with rational coefficients; no zero coefficients stored.
struct LaurentPoly {
  std::size_t nvars = 0;
  std::map<Exponent, Rational> terms;

  static LaurentPoly zero(std::size_t nvars) { return LaurentPoly{nvars, {}}; }
  static LaurentPoly constant(std::size_t nvars, const Rational& c);
  static LaurentPoly monomial(std::size_t nvars, Exponent e, const Rational& c = 1);
  static LaurentPoly variable(std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, std::move(e));
  }

  bool is_zero() const { return terms.empty(); }
  bool is_monomial() const { return terms.size() == 1; }
  void add_term(const Exponent& e, const Rational& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& q);
  LaurentPoly pow(long k) const;  // negative k only for monomials

  // P(fs): substitutes fs[j] for the j-th variable. Negative exponents need
  // monomial fs[j].
  LaurentPoly substitute(const std::vector<LaurentPoly>& fs) const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
};

// |f| in H, or nullopt for the absorbing zero value.
using AbsValue = std::optional<GenScalar>;

struct GaussPoint {
  GenPoint r;

  std::size_t dim() const { return r.dim(); }
  friend bool operator==(const GaussPoint&, const GaussPoint&) = default;
};

// |c| of a nonzero rational under the registry's coefficient valuation.
GenScalar coeff_abs(const Registry& reg, const Rational& c);

// max over terms of |a_I| r^I.
AbsValue gauss_eval(const Registry& reg, const LaurentPoly& f, const GaussPoint& x);

GaussPoint gauss_sharp(const GaussPoint& x);

// Largest of the values, or nullopt when all are zero.
AbsValue max_value(const Registry& reg, const std::vector<AbsValue>& values);

// The monomials of total degree <= d in n variables (nonnegative exponents),
// then every sum and difference of two distinct ones.
std::vector<LaurentPoly> default_probes(std::size_t n, long d);

// |P(fs)| = max_J |c_J| prod |fs_j|^{J_j} for every probe P.
bool abhyankar_check(const Registry& reg, const std::vector<LaurentPoly>& fs, const GaussPoint& x,
                     const std::vector<LaurentPoly>& probes);

// Rational rank of the classes of the values modulo Delta^Q.
std::size_t value_rank(const Registry& reg, const std::vector<GenScalar>& values);

// r'_i = consts_i * prod r_j^{m[i][j]}.
GaussPoint pushforward_monomial(const Registry& reg, const std::vector<std::vector<long>>& m,
                                const std::vector<ParamExp>& consts, const GaussPoint& x);

// Valuation-like evaluator on polynomials in n variables.
using Evaluator = std::function<AbsValue(const LaurentPoly&)>;

// Whether the evaluator follows the Gauss formula at r_i = ev(T_i) on every probe.
bool in_standard_skeleton(const Registry& reg, std::size_t n, const Evaluator& ev,
                          const std::vector<LaurentPoly>& probes);
bool in_standard_skeleton(const Registry& reg, const GaussPoint& x, const std::vector<LaurentPoly>& probes);

// f with T_j replaced by prod_i T_i^{m[j][i]}.
LaurentPoly monomial_transform(const LaurentPoly& f, const std::vector<std::vector<long>>& m);

}  // namespace plskel
