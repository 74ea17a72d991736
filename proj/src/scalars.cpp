#include "plskel/scalars.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <map>

namespace plskel {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DependentGenerators: return "DependentGenerators";
    case ErrorCode::NonPrimeValuation: return "NonPrimeValuation";
    case ErrorCode::InvalidGenerator: return "InvalidGenerator";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::RegistryMismatch: return "RegistryMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyCell: return "EmptyCell";
    case ErrorCode::StrictAtomPresent: return "StrictAtomPresent";
    case ErrorCode::NotQuantifierFree: return "NotQuantifierFree";
    case ErrorCode::EmptyDefinable: return "EmptyDefinable";
    case ErrorCode::InsufficientInfRank: return "InsufficientInfRank";
    case ErrorCode::NonCompactSource: return "NonCompactSource";
    case ErrorCode::NotAnAction: return "NotAnAction";
    case ErrorCode::PointOutsideSource: return "PointOutsideSource";
    case ErrorCode::ZeroComponent: return "ZeroComponent";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ResourceCap: return "ResourceCap";
  }
  return "Error";
}

// ---------------------------------------------------------------------------
// Vector arithmetic

namespace {

void add_into(RationalVector& a, const RationalVector& b, const char* what) {
  if (a.size() != b.size()) throw Error(ErrorCode::RegistryMismatch, what);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

void sub_into(RationalVector& a, const RationalVector& b, const char* what) {
  if (a.size() != b.size()) throw Error(ErrorCode::RegistryMismatch, what);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
}

void scale(RationalVector& a, const Rational& q) {
  for (auto& x : a) x *= q;
}

}  // namespace

ParamExp& ParamExp::operator+=(const ParamExp& o) {
  add_into(exps, o.exps, "parameter length");
  return *this;
}
ParamExp& ParamExp::operator-=(const ParamExp& o) {
  sub_into(exps, o.exps, "parameter length");
  return *this;
}
ParamExp& ParamExp::operator*=(const Rational& q) {
  scale(exps, q);
  return *this;
}

ParamExp LogConst::to_param() const {
  if (!is_param()) throw Error(ErrorCode::NotInGroup, "constant has a nonzero rational offset");
  return ParamExp{coeffs};
}

LogConst& LogConst::operator+=(const LogConst& o) {
  c0 += o.c0;
  add_into(coeffs, o.coeffs, "log-constant length");
  return *this;
}
LogConst& LogConst::operator-=(const LogConst& o) {
  c0 -= o.c0;
  sub_into(coeffs, o.coeffs, "log-constant length");
  return *this;
}
LogConst& LogConst::operator*=(const Rational& q) {
  c0 *= q;
  scale(coeffs, q);
  return *this;
}

GenScalar& GenScalar::operator+=(const GenScalar& o) {
  std += o.std;
  add_into(inf, o.inf, "infinitesimal rank");
  return *this;
}
GenScalar& GenScalar::operator-=(const GenScalar& o) {
  std -= o.std;
  sub_into(inf, o.inf, "infinitesimal rank");
  return *this;
}
GenScalar& GenScalar::operator*=(const Rational& q) {
  std *= q;
  scale(inf, q);
  return *this;
}

// ---------------------------------------------------------------------------
// MPFR plumbing

namespace {

class Mpfr {
 public:
  explicit Mpfr(long precision) { mpfr_init2(v_, precision); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

struct Registry::LogTable {
  long precision;
  std::vector<std::unique_ptr<Mpfr>> lo;
  std::vector<std::unique_ptr<Mpfr>> hi;

  LogTable(const RationalVector& gens, long prec) : precision(prec) {
    for (const auto& g : gens) {
      auto l = std::make_unique<Mpfr>(prec);
      auto h = std::make_unique<Mpfr>(prec);
      Mpfr tmp(prec);
      mpfr_set_q(tmp.get(), g.get_mpq_t(), MPFR_RNDD);
      mpfr_log(l->get(), tmp.get(), MPFR_RNDD);
      mpfr_set_q(tmp.get(), g.get_mpq_t(), MPFR_RNDU);
      mpfr_log(h->get(), tmp.get(), MPFR_RNDU);
      lo.push_back(std::move(l));
      hi.push_back(std::move(h));
    }
  }
};

namespace {

// Outward-rounded enclosure [lo, hi] of c0 + sum q_j log g_j.
void enclose_into(const LogConst& x, const std::vector<std::unique_ptr<Mpfr>>& log_lo,
                  const std::vector<std::unique_ptr<Mpfr>>& log_hi, long prec, Mpfr& lo, Mpfr& hi) {
  Mpfr term(prec);
  mpfr_set_q(lo.get(), x.c0.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), x.c0.get_mpq_t(), MPFR_RNDU);
  for (std::size_t j = 0; j < x.coeffs.size(); ++j) {
    const auto& q = x.coeffs[j];
    int s = sgn(q);
    if (s == 0) continue;
    // log g_j > 0, so the lower end uses lo(log) when q > 0 and hi(log) when q < 0.
    mpfr_mul_q(term.get(), (s > 0 ? log_lo[j] : log_hi[j])->get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
    mpfr_mul_q(term.get(), (s > 0 ? log_hi[j] : log_lo[j])->get(), q.get_mpq_t(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Registry

Registry::Registry(RationalVector generators, std::size_t inf_rank, CoeffValuation valuation)
    : generators_(std::move(generators)), inf_rank_(inf_rank), valuation_(valuation) {}

Registry::~Registry() = default;

std::shared_ptr<const Registry> Registry::create(RationalVector generators, std::size_t inf_rank,
                                                 CoeffValuation valuation) {
  if (generators.empty()) throw Error(ErrorCode::InvalidGenerator, "at least one generator is required");
  for (const auto& g : generators)
    if (g <= 1) throw Error(ErrorCode::InvalidGenerator, "generator " + to_string(g) + " is not > 1");

  std::map<mpz_class, std::map<std::size_t, long>> by_prime;
  for (std::size_t j = 0; j < generators.size(); ++j) {
    for (auto& [p, e] : factorize(generators[j].get_num())) by_prime[p][j] += e;
    for (auto& [p, e] : factorize(generators[j].get_den())) by_prime[p][j] -= e;
  }
  std::vector<mpz_class> primes;
  for (auto& [p, _] : by_prime) primes.push_back(p);
  std::vector<RationalVector> rows(generators.size(), RationalVector(primes.size()));
  for (std::size_t c = 0; c < primes.size(); ++c)
    for (auto& [j, e] : by_prime[primes[c]]) rows[j][c] = e;

  auto kept = independent_rows(rows);
  if (kept.size() < generators.size()) {
    // First generator that depends on earlier ones, then shrink to a minimal
    // dependent subset.
    std::size_t bad = 0;
    for (std::size_t j = 0, k = 0; j < generators.size(); ++j) {
      if (k < kept.size() && kept[k] == j) {
        ++k;
        continue;
      }
      bad = j;
      break;
    }
    std::vector<std::size_t> subset;
    for (std::size_t j : kept)
      if (j < bad) subset.push_back(j);
    subset.push_back(bad);
    auto dependent = [&](const std::vector<std::size_t>& s) {
      std::vector<RationalVector> r;
      for (auto j : s) r.push_back(rows[j]);
      return rational_rank(r) < s.size();
    };
    for (std::size_t i = 0; i + 1 < subset.size();) {
      auto trial = subset;
      trial.erase(trial.begin() + static_cast<long>(i));
      if (dependent(trial))
        subset = std::move(trial);
      else
        ++i;
    }
    RationalVector values;
    std::string names;
    for (auto j : subset) {
      values.push_back(generators[j]);
      names += (names.empty() ? "" : ", ") + to_string(generators[j]);
    }
    throw DependentGeneratorsError(values, "{" + names + "} are multiplicatively dependent");
  }

  if (valuation.mode == CoeffMode::PAdic) {
    auto f = factorize(mpz_class(valuation.prime));
    if (valuation.prime < 2 || f.size() != 1 || f[0].second != 1)
      throw Error(ErrorCode::NonPrimeValuation, std::to_string(valuation.prime) + " is not prime");
    if (std::find(generators.begin(), generators.end(), Rational(valuation.prime)) == generators.end())
      throw Error(ErrorCode::NonPrimeValuation,
                  "p-adic prime " + std::to_string(valuation.prime) + " is not a declared generator");
  }

  std::shared_ptr<Registry> reg(new Registry(std::move(generators), inf_rank, valuation));
  reg->primes_ = std::move(primes);
  reg->exponent_rows_ = std::move(rows);
  for (long prec : {64L, 128L, 256L})
    reg->cached_tables_.push_back(std::make_unique<LogTable>(reg->generators_, prec));
  return reg;
}

std::shared_ptr<const Registry> Registry::with_inf_rank(std::size_t m) const {
  return create(generators_, m, valuation_);
}

std::optional<std::size_t> Registry::generator_index(const Rational& g) const {
  auto it = std::find(generators_.begin(), generators_.end(), g);
  if (it == generators_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - generators_.begin());
}

std::optional<ParamExp> Registry::try_param_of(const Rational& value) const {
  if (value <= 0) return std::nullopt;
  RationalVector target(primes_.size());
  auto absorb = [&](const mpz_class& n, long sign) {
    for (auto& [p, e] : factorize(n)) {
      auto it = std::find(primes_.begin(), primes_.end(), p);
      if (it == primes_.end()) return false;
      target[static_cast<std::size_t>(it - primes_.begin())] += sign * e;
    }
    return true;
  };
  if (!absorb(value.get_num(), 1) || !absorb(value.get_den(), -1)) return std::nullopt;

  // Solve x * E = target: augmented system with one equation per prime.
  const std::size_t k = generators_.size();
  const std::size_t P = primes_.size();
  std::vector<RationalVector> m(P, RationalVector(k + 1));
  for (std::size_t c = 0; c < P; ++c) {
    for (std::size_t j = 0; j < k; ++j) m[c][j] = exponent_rows_[j][c];
    m[c][k] = target[c];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < k && row < P; ++col) {
    std::size_t piv = row;
    while (piv < P && sgn(m[piv][col]) == 0) ++piv;
    if (piv == P) continue;
    std::swap(m[piv], m[row]);
    for (std::size_t r = 0; r < P; ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[row][col];
      for (std::size_t c = col; c <= k; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < P; ++r)
    if (sgn(m[r][k]) != 0) return std::nullopt;
  ParamExp out = ParamExp::one(k);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) out.exps[pivot_col[r]] = m[r][k] / m[r][pivot_col[r]];
  return out;
}

ParamExp Registry::param_of(const Rational& value) const {
  auto p = try_param_of(value);
  if (!p) throw Error(ErrorCode::NotInGroup, to_string(value) + " is not in the parameter group");
  return *p;
}

std::optional<Rational> Registry::value_of(const ParamExp& p) const {
  check(p);
  Rational out = 1;
  for (std::size_t j = 0; j < p.exps.size(); ++j) {
    if (!is_integer(p.exps[j])) return std::nullopt;
    mpz_class e = p.exps[j].get_num();
    if (abs(e) > 4096) return std::nullopt;
    long ee = e.get_si();
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), generators_[j].get_num_mpz_t(), static_cast<unsigned long>(std::abs(ee)));
    mpz_pow_ui(den.get_mpz_t(), generators_[j].get_den_mpz_t(), static_cast<unsigned long>(std::abs(ee)));
    Rational factor(num, den);
    factor.canonicalize();
    if (ee >= 0)
      out *= factor;
    else
      out /= factor;
  }
  return out;
}

void Registry::check(const LogConst& x) const {
  if (x.coeffs.size() != rank()) throw Error(ErrorCode::RegistryMismatch, "log-constant has wrong length");
}
void Registry::check(const GenScalar& x) const {
  check(x.std);
  if (x.inf.size() != inf_rank_) throw Error(ErrorCode::RegistryMismatch, "infinitesimal part has wrong length");
}
void Registry::check(const ParamExp& x) const {
  if (x.exps.size() != rank()) throw Error(ErrorCode::RegistryMismatch, "parameter has wrong length");
}

const Registry::LogTable& Registry::table_for(long precision, std::unique_ptr<LogTable>& scratch) const {
  for (const auto& t : cached_tables_)
    if (t->precision == precision) return *t;
  scratch = std::make_unique<LogTable>(generators_, precision);
  return *scratch;
}

int Registry::sign(const LogConst& x) const {
  check(x);
  if (x.is_zero()) return 0;
  // Every log g_j is positive, so uniform signs decide without numerics.
  bool any_pos = sgn(x.c0) > 0, any_neg = sgn(x.c0) < 0;
  for (const auto& q : x.coeffs) {
    any_pos |= sgn(q) > 0;
    any_neg |= sgn(q) < 0;
  }
  if (!any_neg) return 1;
  if (!any_pos) return -1;
  // A nonzero combination of c0 and logs of independent rationals is nonzero,
  // so doubling the precision eventually separates it from 0.
  for (long prec = kMinPrecision; prec <= kMaxPrecision; prec *= 2) {
    std::unique_ptr<LogTable> scratch;
    const auto& table = table_for(prec, scratch);
    Mpfr lo(prec), hi(prec);
    enclose_into(x, table.lo, table.hi, prec, lo, hi);
    if (mpfr_sgn(lo.get()) > 0) return 1;
    if (mpfr_sgn(hi.get()) < 0) return -1;
  }
  throw Error(ErrorCode::ResourceCap, "sign undecided at maximum precision");
}

std::strong_ordering Registry::compare(const LogConst& a, const LogConst& b) const {
  check(a);
  check(b);
  int s = sign(a - b);
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::strong_ordering Registry::compare(const GenScalar& a, const GenScalar& b) const {
  check(a);
  check(b);
  auto c = compare(a.std, b.std);
  if (c != 0) return c;
  for (std::size_t i = 0; i < a.inf.size(); ++i) {
    if (a.inf[i] < b.inf[i]) return std::strong_ordering::less;
    if (a.inf[i] > b.inf[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

int Registry::sign(const GenScalar& x) const {
  check(x);
  int s = sign(x.std);
  if (s != 0) return s;
  for (const auto& q : x.inf)
    if (sgn(q) != 0) return sgn(q);
  return 0;
}

std::pair<double, double> Registry::enclose(const LogConst& x, long precision) const {
  check(x);
  std::unique_ptr<LogTable> scratch;
  const auto& table = table_for(precision, scratch);
  Mpfr lo(precision), hi(precision);
  enclose_into(x, table.lo, table.hi, precision, lo, hi);
  return {mpfr_get_d(lo.get(), MPFR_RNDD), mpfr_get_d(hi.get(), MPFR_RNDU)};
}

std::pair<ParamExp, ParamExp> Registry::bounds(const GenScalar& x) const {
  check(x);
  auto [lo, hi] = enclose(x.std);
  const double log_g = std::log(generators_[0].get_d());
  ParamExp l = ParamExp::one(rank());
  ParamExp u = ParamExp::one(rank());
  l.exps[0] = Rational(static_cast<long>(std::floor(lo / log_g)) - 1);
  u.exps[0] = Rational(static_cast<long>(std::ceil(hi / log_g)) + 1);
  return {l, u};
}

ParamExp Registry::between(const LogConst& a, const LogConst& b) const {
  check(a);
  check(b);
  if (compare(a, b) >= 0) throw Error(ErrorCode::ValidationError, "between() needs a < b");
  for (long prec = kMinPrecision; prec <= kMaxPrecision; prec *= 2) {
    std::unique_ptr<LogTable> scratch;
    const auto& table = table_for(prec, scratch);
    Mpfr alo(prec), ahi(prec), blo(prec), bhi(prec), mid(prec);
    enclose_into(a, table.lo, table.hi, prec, alo, ahi);
    enclose_into(b, table.lo, table.hi, prec, blo, bhi);
    if (mpfr_cmp(ahi.get(), blo.get()) >= 0) continue;
    mpfr_add(mid.get(), ahi.get(), blo.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    mpfr_div(mid.get(), mid.get(), table.lo[0]->get(), MPFR_RNDN);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), mid.get());
    ParamExp s = ParamExp::one(rank());
    s.exps[0] = q;
    LogConst sl(s);
    if (compare(a, sl) < 0 && compare(sl, b) < 0) return s;
  }
  throw Error(ErrorCode::ResourceCap, "could not separate values at maximum precision");
}

}  // namespace plskel
