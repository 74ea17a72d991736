#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace plskel {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Parses "a/b", "-a/b" or an integer. Returns false on malformed input or a
// zero denominator.
bool parse_rational(std::string_view text, Rational& out);

// "num/den" in lowest terms, or "num" when the denominator is 1.
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline bool is_zero(const RationalVector& v) {
  for (const auto& q : v)
    if (sgn(q) != 0) return false;
  return true;
}

// Rank over Q of the row set, by exact Gaussian elimination.
std::size_t rational_rank(std::vector<RationalVector> rows);

// Indices of a maximal independent prefix-greedy subset of rows: row i is kept
// iff it is independent of the rows kept before it.
std::vector<std::size_t> independent_rows(const std::vector<RationalVector>& rows);

// Prime factorization of |n| for n != 0 (trial division; inputs are desk-scale).
std::vector<std::pair<mpz_class, long>> factorize(mpz_class n);

}  // namespace plskel
