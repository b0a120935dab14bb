#include "doctest.h"

#include "divimat/error.hpp"
#include "divimat/factor.hpp"

using namespace divimat;

namespace {

BigInt expand(const Factorization& f) {
  BigInt out = 1;
  for (const auto& [p, e] : f.primes) out *= pow(p, e);
  for (const auto& u : f.unfactored) out *= u;
  return out;
}

}  // namespace

TEST_CASE("small factorizations") {
  CHECK(factor(1).primes.empty());
  CHECK(factor(0).primes.empty());
  const auto f = factor(-368);
  CHECK(f.primes == std::vector<std::pair<BigInt, unsigned>>{{2, 4}, {23, 1}});
  CHECK(prime_support(360) == std::vector<BigInt>{2, 3, 5});
  CHECK(is_probable_prime(BigInt("170141183460469231731687303715884105727")));
  CHECK_FALSE(is_probable_prime(BigInt(561)));
}

TEST_CASE("rho splits products of large primes") {
  const BigInt p("1000000007"), q("998244353"), r("2305843009213693951");
  const BigInt n = p * q * r * r;
  FactorBudget tiny;
  tiny.trial_bound = 1000;
  const auto f = factor(n, tiny);
  CHECK(f.complete());
  CHECK(expand(f) == n);
  CHECK(f.primes.size() == 3);
}

TEST_CASE("budget exhaustion keeps the cofactor") {
  const BigInt p("170141183460469231731687303715884105727"), q("618970019642690137449562111");
  FactorBudget tiny;
  tiny.trial_bound = 100;
  tiny.rho_iterations = 1000;
  tiny.rho_attempts = 1;
  const auto f = factor(p * q * 12, tiny);
  CHECK_FALSE(f.complete());
  CHECK(expand(f) == p * q * 12);
  CHECK_THROWS_AS(prime_support(p * q, tiny), DomainError);
}
