#include "divimat/bigint.hpp"

#include <string>

#include "divimat/error.hpp"

namespace divimat {

namespace {

bool valid_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  return true;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  if (!valid_integer_literal(text)) {
    throw InputError("not an integer: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

BigRat parse_bigrat(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRat(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigRat& v) { return v.get_str(); }

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigRat pow(const BigRat& base, unsigned long exponent) {
  BigRat r(pow(BigInt(base.get_num()), exponent), pow(BigInt(base.get_den()), exponent));
  r.canonicalize();
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool divides(const BigInt& d, const BigInt& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

BigInt coprime_split_part(const BigInt& n, const BigInt& m) {
  BigInt rest = abs(n);
  BigInt part = 1;
  if (rest == 0) return 0;
  for (BigInt g = gcd(rest, m); g > 1; g = gcd(rest, g)) {
    while (divides(g, rest)) {
      rest /= g;
      part *= g;
    }
  }
  return part;
}

}  // namespace divimat
