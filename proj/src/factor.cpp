#include "divimat/factor.hpp"

#include <algorithm>
#include <map>

#include "divimat/error.hpp"

namespace divimat {

bool is_probable_prime(const BigInt& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

std::optional<BigInt> pollard_brent(const BigInt& n, unsigned long max_iterations, unsigned long seed) {
  if (n % 2 == 0) return BigInt(2);
  const BigInt c = 1 + BigInt(seed % 1000003);
  BigInt y = 2 + BigInt(seed % 7919), x, ys, q = 1, g = 1;
  auto f = [&](const BigInt& v) {
    BigInt r = v * v + c;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    return r;
  };
  const unsigned long m = 128;
  unsigned long r = 1, spent = 0;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      const unsigned long steps = std::min(m, r - k);
      for (unsigned long i = 0; i < steps; ++i) {
        y = f(y);
        q = q * abs(x - y);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
      k += steps;
      spent += steps;
      if (spent > max_iterations) return std::nullopt;
    }
    r *= 2;
  }
  if (g == n) {
    // backtrack one step at a time
    do {
      ys = f(ys);
      g = gcd(BigInt(abs(x - ys)), n);
    } while (g == 1);
  }
  if (g == n || g == 1) return std::nullopt;
  return g;
}

Factorization factor(const BigInt& n, const FactorBudget& budget) {
  Factorization out;
  std::map<BigInt, unsigned> primes;
  BigInt rest = abs(n);
  if (rest <= 1) return out;
  for (unsigned long p = 2; p <= budget.trial_bound && BigInt(p) * p <= rest; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      ++primes[BigInt(p)];
      rest /= p;
    }
  }
  std::vector<BigInt> work;
  if (rest > 1) work.push_back(rest);
  while (!work.empty()) {
    BigInt m = std::move(work.back());
    work.pop_back();
    if (is_probable_prime(m)) {
      ++primes[m];
      continue;
    }
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      BigInt s;
      mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
      work.push_back(s);
      work.push_back(s);
      continue;
    }
    std::optional<BigInt> d;
    for (unsigned a = 0; a < budget.rho_attempts && !d; ++a) d = pollard_brent(m, budget.rho_iterations, 17 + 31 * a);
    if (!d) {
      out.unfactored.push_back(m);
      continue;
    }
    work.push_back(*d);
    work.push_back(m / *d);
  }
  out.primes.assign(primes.begin(), primes.end());
  std::sort(out.unfactored.begin(), out.unfactored.end());
  return out;
}

std::vector<BigInt> prime_support(const BigInt& n, const FactorBudget& budget) {
  const Factorization f = factor(n, budget);
  if (!f.complete()) throw DomainError("could not factor " + n.get_str() + " within the budget");
  std::vector<BigInt> out;
  for (const auto& [p, e] : f.primes) out.push_back(p);
  return out;
}

}  // namespace divimat
