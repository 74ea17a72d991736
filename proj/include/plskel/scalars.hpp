#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "plskel/errors.hpp"
#include "plskel/rational.hpp"

namespace plskel {

// Everything in this header is written additively: a positive real a is held
// through log a. "Sum" of two scalars is the product of the numbers they name.

// Element of the parameter group Delta^Q: prod_j g_j^{exps[j]}.
struct ParamExp {
  RationalVector exps;

  static ParamExp one(std::size_t rank) { return ParamExp{RationalVector(rank)}; }
  bool is_one() const { return is_zero(exps); }

  ParamExp& operator+=(const ParamExp& o);
  ParamExp& operator-=(const ParamExp& o);
  ParamExp& operator*=(const Rational& q);
  friend ParamExp operator+(ParamExp a, const ParamExp& b) { return a += b; }
  friend ParamExp operator-(ParamExp a, const ParamExp& b) { return a -= b; }
  friend ParamExp operator*(ParamExp a, const Rational& q) { return a *= q; }
  friend ParamExp operator-(ParamExp a) { return a *= Rational(-1); }
  friend bool operator==(const ParamExp&, const ParamExp&) = default;
};

// Formal element c0 + sum_j coeffs[j] * log g_j of the ordered Q-space V.
struct LogConst {
  Rational c0;
  RationalVector coeffs;

  LogConst() = default;
  LogConst(Rational c0_, RationalVector coeffs_) : c0(std::move(c0_)), coeffs(std::move(coeffs_)) {}
  explicit LogConst(const ParamExp& p) : c0(0), coeffs(p.exps) {}

  static LogConst zero(std::size_t rank) { return LogConst(0, RationalVector(rank)); }
  bool is_zero() const { return sgn(c0) == 0 && plskel::is_zero(coeffs); }
  // True iff the value lies in Delta^Q (no c0 offset).
  bool is_param() const { return sgn(c0) == 0; }
  ParamExp to_param() const;

  LogConst& operator+=(const LogConst& o);
  LogConst& operator-=(const LogConst& o);
  LogConst& operator*=(const Rational& q);
  friend LogConst operator+(LogConst a, const LogConst& b) { return a += b; }
  friend LogConst operator-(LogConst a, const LogConst& b) { return a -= b; }
  friend LogConst operator*(LogConst a, const Rational& q) { return a *= q; }
  friend LogConst operator-(LogConst a) { return a *= Rational(-1); }
  friend bool operator==(const LogConst&, const LogConst&) = default;
};

// Element of H = V (+) Q^m ordered lexicographically. `inf[0]` is the coarsest
// infinitesimal axis: a positive entry there sits above every standard value
// it shares `std` with, and below every larger standard value.
struct GenScalar {
  LogConst std;
  RationalVector inf;

  GenScalar() = default;
  GenScalar(LogConst s, RationalVector i) : std(std::move(s)), inf(std::move(i)) {}

  static GenScalar zero(std::size_t rank, std::size_t inf_rank) {
    return GenScalar(LogConst::zero(rank), RationalVector(inf_rank));
  }
  static GenScalar standard(LogConst s, std::size_t inf_rank) {
    return GenScalar(std::move(s), RationalVector(inf_rank));
  }
  bool is_standard() const { return plskel::is_zero(inf); }

  GenScalar& operator+=(const GenScalar& o);
  GenScalar& operator-=(const GenScalar& o);
  GenScalar& operator*=(const Rational& q);
  friend GenScalar operator+(GenScalar a, const GenScalar& b) { return a += b; }
  friend GenScalar operator-(GenScalar a, const GenScalar& b) { return a -= b; }
  friend GenScalar operator*(GenScalar a, const Rational& q) { return a *= q; }
  friend GenScalar operator-(GenScalar a) { return a *= Rational(-1); }
  friend bool operator==(const GenScalar&, const GenScalar&) = default;
};

// |x|^# : the standard part.
inline const LogConst& sharp(const GenScalar& x) { return x.std; }
// |x|^flat : the infinitesimal exponent vector.
inline const RationalVector& flat(const GenScalar& x) { return x.inf; }
inline GenScalar from_sharp_flat(LogConst s, RationalVector f) { return GenScalar(std::move(s), std::move(f)); }

enum class CoeffMode { Trivial, PAdic };

struct CoeffValuation {
  CoeffMode mode = CoeffMode::Trivial;
  long prime = 0;
  friend bool operator==(const CoeffValuation&, const CoeffValuation&) = default;
};

class DependentGeneratorsError : public Error {
 public:
  DependentGeneratorsError(RationalVector subset, const std::string& what)
      : Error(ErrorCode::DependentGenerators, what), subset_(std::move(subset)) {}
  const RationalVector& subset() const noexcept { return subset_; }

 private:
  RationalVector subset_;
};

// Validated generator data. Immutable; share through RegistryPtr.
class Registry {
 public:
  // Validates and builds. Throws DependentGeneratorsError, or Error with
  // InvalidGenerator / NonPrimeValuation.
  static std::shared_ptr<const Registry> create(RationalVector generators, std::size_t inf_rank,
                                                CoeffValuation valuation = {});

  ~Registry();
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  const RationalVector& generators() const { return generators_; }
  std::size_t rank() const { return generators_.size(); }
  std::size_t inf_rank() const { return inf_rank_; }
  const CoeffValuation& coeff_valuation() const { return valuation_; }

  // Same generators and valuation, different number of infinitesimal axes.
  std::shared_ptr<const Registry> with_inf_rank(std::size_t m) const;

  std::optional<std::size_t> generator_index(const Rational& g) const;

  // Exponent vector of a positive rational over the generators, if it lies in
  // Delta^Q. `param_of` throws NotInGroup otherwise.
  std::optional<ParamExp> try_param_of(const Rational& value) const;
  ParamExp param_of(const Rational& value) const;
  // Exact value of p when all exponents are integers.
  std::optional<Rational> value_of(const ParamExp& p) const;

  int sign(const LogConst& x) const;
  std::strong_ordering compare(const LogConst& a, const LogConst& b) const;
  std::strong_ordering compare(const GenScalar& a, const GenScalar& b) const;
  int sign(const GenScalar& x) const;

  bool less(const GenScalar& a, const GenScalar& b) const { return compare(a, b) < 0; }

  // Throws RegistryMismatch unless the vector lengths match this registry.
  void check(const LogConst& x) const;
  void check(const GenScalar& x) const;
  void check(const ParamExp& x) const;

  // l, u in Delta^Q with l <= x <= u.
  std::pair<ParamExp, ParamExp> bounds(const GenScalar& x) const;
  // s in Delta^Q with a < s < b, for standard values a < b.
  ParamExp between(const LogConst& a, const LogConst& b) const;

  // Enclosure of the real number x at the given working precision (bits),
  // rounded outward to doubles.
  std::pair<double, double> enclose(const LogConst& x, long precision = 64) const;

  static constexpr long kMinPrecision = 64;
  static constexpr long kMaxPrecision = 16384;

 private:
  struct LogTable;
  Registry(RationalVector generators, std::size_t inf_rank, CoeffValuation valuation);
  const LogTable& table_for(long precision, std::unique_ptr<LogTable>& scratch) const;

  RationalVector generators_;
  std::size_t inf_rank_;
  CoeffValuation valuation_;
  // Prime-exponent matrix: one row per generator, columns indexed by primes_.
  std::vector<mpz_class> primes_;
  std::vector<RationalVector> exponent_rows_;
  std::vector<std::unique_ptr<LogTable>> cached_tables_;  // 64, 128, 256 bits
};

using RegistryPtr = std::shared_ptr<const Registry>;

// Convenience: the standard scalar naming a parameter.
inline GenScalar standard_scalar(const Registry& reg, const ParamExp& p) {
  return GenScalar::standard(LogConst(p), reg.inf_rank());
}

}  // namespace plskel
