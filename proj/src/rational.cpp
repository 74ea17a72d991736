#include "plskel/rational.hpp"

#include <algorithm>
#include <cctype>

namespace plskel {

namespace {

bool parse_integer(std::string_view text, mpz_class& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return out.set_str(digits, 10) == 0;
}

}  // namespace

bool parse_rational(std::string_view text, Rational& out) {
  auto slash = text.find('/');
  mpz_class num;
  mpz_class den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) return false;
  } else {
    if (!parse_integer(text.substr(0, slash), num)) return false;
    auto den_text = text.substr(slash + 1);
    if (den_text.empty() || den_text[0] == '-' || den_text[0] == '+') return false;
    if (!parse_integer(den_text, den)) return false;
    if (den == 0) return false;
  }
  out = Rational(num, den);
  out.canonicalize();
  return true;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::vector<std::size_t> independent_rows(const std::vector<RationalVector>& rows) {
  std::vector<std::size_t> kept;
  std::vector<RationalVector> basis;  // reduced rows, each with a pivot column
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RationalVector v = rows[r];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const auto p = pivots[b];
      if (p < v.size() && sgn(v[p]) != 0) {
        Rational factor = v[p] / basis[b][p];
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= factor * basis[b][j];
      }
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& q) { return sgn(q) != 0; });
    if (it == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(it - v.begin()));
    basis.push_back(std::move(v));
    kept.push_back(r);
  }
  return kept;
}

std::size_t rational_rank(std::vector<RationalVector> rows) {
  return independent_rows(rows).size();
}

std::vector<std::pair<mpz_class, long>> factorize(mpz_class n) {
  std::vector<std::pair<mpz_class, long>> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  for (mpz_class p = 2; p * p <= n; ++p) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace plskel
