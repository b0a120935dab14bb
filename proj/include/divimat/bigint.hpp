#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace divimat {

using BigInt = mpz_class;
using BigRat = mpq_class;  // always canonical: lowest terms, positive denominator

BigInt parse_bigint(std::string_view text);

// Accepts "p" or "p/q"; the result is canonicalized.
BigRat parse_bigrat(std::string_view text);

inline std::string to_string(const BigInt& v) { return v.get_str(); }
std::string to_string(const BigRat& v);

BigInt pow(const BigInt& base, unsigned long exponent);
BigRat pow(const BigRat& base, unsigned long exponent);

BigInt gcd(const BigInt& a, const BigInt& b);

// Floor division and the matching non-negative remainder (for b > 0).
BigInt floor_div(const BigInt& a, const BigInt& b);

bool divides(const BigInt& d, const BigInt& n);

// Largest divisor of n built only from primes that also divide m.
BigInt coprime_split_part(const BigInt& n, const BigInt& m);

}  // namespace divimat
