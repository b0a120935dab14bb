#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "divimat/bigint.hpp"

namespace divimat {

struct FactorBudget {
  unsigned long trial_bound = 100000;
  unsigned long rho_iterations = 200000;  // per rho attempt
  unsigned rho_attempts = 4;
};

struct Factorization {
  std::vector<std::pair<BigInt, unsigned>> primes;  // ascending, probable primes
  std::vector<BigInt> unfactored;                   // composites that resisted the budget
  bool complete() const { return unfactored.empty(); }
};

// mpz_probab_prime_p with 40 rounds (BPSW plus Miller-Rabin).
bool is_probable_prime(const BigInt& n);

// A nontrivial factor of the odd composite n, or nothing within the budget.
std::optional<BigInt> pollard_brent(const BigInt& n, unsigned long max_iterations, unsigned long seed);

// Factors |n| by trial division, then Pollard-Brent rho on what remains.
Factorization factor(const BigInt& n, const FactorBudget& budget = {});

// Distinct prime divisors of |n|; throws DomainError if the budget runs out.
std::vector<BigInt> prime_support(const BigInt& n, const FactorBudget& budget = {});

}  // namespace divimat
