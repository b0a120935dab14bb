#include <cstdlib>
#include <random>

#include "doctest.h"

#include "divimat/endo.hpp"
#include "divimat/error.hpp"
#include "oracles.hpp"

using namespace divimat;

namespace {

std::vector<BigInt> pt(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

EndoFamily running() { return family_elliptic(CurveE::numeric(-1, 1)); }

std::vector<BigInt> sample_point(const EndoFamily& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> v(-4, 4);
  std::vector<BigInt> p;
  for (std::size_t i = 0; i < f.dimension(); ++i) p.push_back(v(rng));
  if (f.name() == "elliptic" && p[1] == 0) p[1] = 1;
  return p;
}

}  // namespace

TEST_CASE("multiplicative group") {
  const auto f = family_gm();
  const Ring& r = f.ring();
  for (long n = 1; n <= 6; ++n) {
    CHECK(f.jacobian(n)(0, 0) == parse_poly(r, std::to_string(n) + "*x^" + std::to_string(n - 1)));
    CHECK(jacobian_at(f, n, pt({1}))(0, 0) == n);
  }
  CHECK(compose(f, 2, 3) == f.map(6));
  const auto rep = verify_chain_rule(f, 2, 3);
  CHECK(rep.symbolic);
  CHECK((*rep.quotient)(0, 0) == parse_poly(r, "2*x^3"));
}

TEST_CASE("Borel family") {
  const auto f = family_borel();
  const Ring& r = f.ring();
  CHECK(f.map(2) == std::vector<SPoly>{parse_poly(r, "X^2"), parse_poly(r, "Y*(X + Z)"), parse_poly(r, "Z^2")});
  CHECK(f.map(1) == std::vector<SPoly>{parse_poly(r, "X"), parse_poly(r, "Y"), parse_poly(r, "Z")});
  CHECK(jacobian_at(f, 2, pt({2, 1, 1})) == (IMat{{4, 0, 0}, {1, 3, 1}, {0, 0, 2}}));
  const auto rep = verify_chain_rule(f, 2, 2, pt({2, 1, 1}));
  CHECK(*rep.quotient_at_point == jacobian_at(f, 2, apply(f, 2, pt({2, 1, 1}))));
  // J_2 right-divides J_4 with the chain-rule quotient
  const auto q = right_divides(jacobian_at(f, 2, pt({2, 1, 1})), jacobian_at(f, 4, pt({2, 1, 1})));
  REQUIRE(q.has_value());
  CHECK(*q == *rep.quotient_at_point);
}

TEST_CASE("GL(2) powers") {
  const auto f = family_gl2();
  const Ring& r = f.ring();
  CHECK(f.map(2) == std::vector<SPoly>{parse_poly(r, "a^2 + b*c"), parse_poly(r, "a*b + b*d"),
                                       parse_poly(r, "c*a + d*c"), parse_poly(r, "c*b + d^2")});
  CHECK(f.map(1)[3] == parse_poly(r, "d"));
}

TEST_CASE("elliptic family") {
  const auto sym = family_elliptic(CurveE::symbolic());
  CHECK(sym.map(1) == std::vector<SPoly>{parse_poly(sym.ring(), "X"), parse_poly(sym.ring(), "Z")});
  for (long m = 1; m <= 3; ++m)
    for (long n = 1; n <= 3; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(compose(sym, m, n) == sym.map(m * n));
    }
  const auto f = running();
  const auto two = apply(f, 2, pt({1, 1}));
  CHECK(two == pt({-4, 4}));  // x(2P) = -4/4 = -1
  const auto rep = verify_chain_rule(f, 2, 3, pt({1, 1}));
  CHECK(rep.symbolic);
  CHECK(*rep.jacobian_mn_at_point == *rep.quotient_at_point * *rep.jacobian_n_at_point);
  CHECK_THROWS_AS(jacobian_at(sym, 2, pt({1, 1})), InputError);
}

TEST_CASE("J_1 is the identity and [m] o [n] = [mn] for mn <= 12") {
  for (const auto& f : {family_gm(), family_borel(), family_gl2(), running()}) {
    CAPTURE(f.name());
    std::vector<BigInt> diag(f.dimension(), 1);
    std::vector<BigInt> origin(f.dimension(), 3);
    CHECK(jacobian_at(f, 1, origin) == IMat::identity(f.dimension()));
    for (long m = 2; m <= 6; ++m)
      for (long n = 2; m * n <= 12; ++n) CHECK(compose(f, m, n) == f.map(m * n));
  }
}

TEST_CASE("matrix and determinant divisibility at sampled points") {
  std::mt19937_64 rng(99);
  for (const auto& f : {family_gm(), family_borel(), family_gl2(), running()}) {
    const long top = f.name() == "elliptic" ? 12 : 24;
    for (int s = 0; s < 2; ++s) {
      const auto x = sample_point(f, rng);
      for (long n = 2; n <= top; ++n)
        for (long m = 1; m < n; ++m) {
          if (n % m != 0) continue;
          CAPTURE(f.name());
          CAPTURE(n);
          CAPTURE(m);
          const IMat jm = jacobian_at(f, m, x);
          const IMat jn = jacobian_at(f, n, x);
          const auto q = right_divides(jm, jn);
          REQUIRE(q.has_value());
          CHECK(*q * jm == jn);
          if (determinant(jm) != 0) CHECK(*q == jacobian_at(f, n / m, apply(f, m, x)));
          CHECK(divides(determinant(jm), determinant(jn)));
        }
    }
  }
}

TEST_CASE("Cassels: diag(n, n) right-divides the elliptic J_n") {
  const auto f = running();
  for (long n = 2; n <= 20; ++n) {
    const IMat j = jacobian_at(f, n, pt({2, 3}));
    CHECK(right_divides(IMat::diagonal({n, n}), j).has_value());
  }
}

TEST_CASE("degree budget") {
  const auto f = running();
  setenv("DIVIMAT_MAX_DEGREE", "10", 1);
  CHECK(symbolic_degree_budget() == 10);
  CHECK_THROWS_AS(verify_chain_rule(f, 2, 3), InputError);
  const auto rep = verify_chain_rule(f, 2, 3, pt({1, 2}));
  CHECK_FALSE(rep.symbolic);
  setenv("DIVIMAT_MAX_DEGREE", "ten", 1);
  CHECK_THROWS_AS(symbolic_degree_budget(), InputError);
  unsetenv("DIVIMAT_MAX_DEGREE");
  CHECK(symbolic_degree_budget() == 150);
}
