#include <set>

#include "doctest.h"

#include "divimat/elliptic.hpp"
#include "divimat/error.hpp"
#include "oracles.hpp"

using namespace divimat;

namespace {

std::string fixture_path(const std::string& name) { return std::string(DIVIMAT_FIXTURE_DIR) + "/" + name + ".json"; }

const EllipticContext& running() {
  static const EllipticContext ctx(load_fixture(fixture_path("running")).point);
  return ctx;
}

const std::vector<std::string> kFixtures{"running", "x3p15", "x3m4xp1"};

}  // namespace

TEST_CASE("fixtures load and validate") {
  const auto f = load_fixture(fixture_path("x3p15"));
  CHECK(f.point.a == 1);
  CHECK(f.point.b == 2);
  CHECK(f.point.x == BigRat(1, 4));
  CHECK(fixture_from_json(to_json(f)).point.y == f.point.y);
  CHECK_THROWS_AS(load_fixture(fixture_path("singular")), InputError);
  CHECK_THROWS_AS(load_fixture(fixture_path("missing")), InputError);
  const CurveE e = CurveE::numeric(-1, 1);
  CHECK_THROWS_AS(make_point(e, 1, 1, 2), InputError);   // off the curve
  CHECK_THROWS_AS(make_point(e, 2, 2, 1), InputError);   // gcd(a, b) > 1
  CHECK_THROWS_AS(make_point(e, 1, 0, 1), InputError);
  CHECK_THROWS_AS(fixture_from_json(nlohmann::json{{"curve", {{"A", "1"}}}}), InputError);
}

TEST_CASE("torsion points are refused") {
  // (2, 3) has order 6 on y^2 = x^3 + 1
  const RatPoint t = make_point(CurveE::numeric(0, 1), 2, 1, 3);
  CHECK_THROWS_AS(require_infinite_order(t), DomainError);
  CHECK_THROWS_AS(point_mul(6, t), DomainError);
  CHECK(point_mul(5, t).x == 2);
  CHECK_THROWS_AS(EllipticContext{t}, DomainError);
}

TEST_CASE("multiples of the running point") {
  const auto& ctx = running();
  const std::vector<std::pair<BigRat, BigRat>> want{
      {1, 1}, {-1, 1}, {0, -1}, {3, -5}, {5, 11}, {BigRat(1, 4), BigRat(7, 8)}, {BigRat(-11, 9), BigRat(-17, 27)}};
  for (long n = 1; n <= 7; ++n) {
    CAPTURE(n);
    CHECK(ctx.multiple(n).x == want[n - 1].first);
    CHECK(ctx.multiple(n).y == want[n - 1].second);
  }
  CHECK(ctx.multiple(6).b_n == 2);
  CHECK(ctx.multiple(6).a_n == 1);
  CHECK(ctx.multiple(7).b_n == 3);
}

TEST_CASE("group law against the oracle and division polynomials") {
  for (const auto& name : kFixtures) {
    CAPTURE(name);
    const EllipticContext ctx(load_fixture(fixture_path(name)).point);
    const auto& p = ctx.point();
    const oracle::Pt base{false, p.x, p.y};
    for (long n = 1; n <= 12; ++n) {
      CAPTURE(n);
      const auto q = oracle::multiple(n, base, BigRat(*p.curve.a));
      const auto& r = ctx.multiple(n);
      CHECK(r.x == q.x);
      CHECK(r.y == q.y);
      CHECK(r.b_n * r.b_n == q.x.get_den());
      // x(nP) = phi_n / psi_n^2 on psi values from the rational recurrence
      const BigRat psi = ctx.psi_value(n);
      const BigRat psi_m = ctx.psi_value(n - 1), psi_p = ctx.psi_value(n + 1);
      CHECK(p.x - psi_p * psi_m / (psi * psi) == q.x);
    }
  }
}

TEST_CASE("determinant integrality and both routes, n <= 30") {
  for (const auto& name : kFixtures) {
    CAPTURE(name);
    const EllipticContext ctx(load_fixture(fixture_path(name)).point);
    CHECK(ctx.det(1) == 1);
    for (long n = 1; n <= 30; ++n) {
      CAPTURE(n);
      CHECK(det_closed(ctx, n) == det_direct(ctx, n));
      CHECK(ctx.det(n) != 0);
    }
    for (long n = 1; n <= 6; ++n) CHECK(oracle::permutation_det(ctx.jacobian(n)) == ctx.det(n));
  }
  CHECK(running().det(2) == 128);
}

TEST_CASE("Q_n is supported on discriminant primes, n <= 12") {
  for (const auto& name : kFixtures) {
    CAPTURE(name);
    const EllipticContext ctx(load_fixture(fixture_path(name)).point);
    for (long n = 1; n <= 12; ++n) {
      CAPTURE(n);
      const AyadReport r = ayad_check(ctx, n);
      CHECK(r.q_n > 0);
      for (const auto& q : r.q_primes) CHECK(divides(q, ctx.point().curve.discriminant()));
    }
    CHECK(ayad_check(ctx, 1).q_n == 1);
  }
}

TEST_CASE("divisibility along divisors") {
  for (const auto& name : kFixtures) {
    CAPTURE(name);
    const EllipticContext ctx(load_fixture(fixture_path(name)).point);
    for (long n = 2; n <= 24; ++n)
      for (long m : proper_divisors(n)) {
        CAPTURE(n);
        CAPTURE(m);
        CHECK(divides(ctx.det(m), ctx.det(n)));
        if (n <= 12) CHECK(divides(ctx.multiple(m).b_n, ctx.multiple(n).b_n));
      }
  }
  CHECK(proper_divisors(12) == std::vector<long>{1, 2, 3, 4, 6});
  CHECK(proper_divisors(1).empty());
}

TEST_CASE("primitive parts and certificates on the running point") {
  const auto& ctx = running();
  const auto scan = primitive_prime_scan(ctx, 1, 14, {}, 3);
  REQUIRE(scan.size() == 14);
  for (std::size_t i = 0; i < scan.size(); ++i) CHECK(scan[i].n == static_cast<long>(i + 1));
  CHECK_FALSE(scan[0].has_primitive());
  const auto serial = primitive_prime_scan(ctx, 1, 14, {}, 1);
  for (std::size_t i = 0; i < scan.size(); ++i) CHECK(scan[i].primitive_part == serial[i].primitive_part);

  const BigInt disc = ctx.point().curve.discriminant();
  for (const auto& e : scan) {
    CAPTURE(e.n);
    BigInt product = 1;
    for (const auto& p : e.primitive_primes) {
      CHECK(is_probable_prime(p));
      CHECK(gcd(p, disc) == 1);
      for (long m : proper_divisors(e.n)) CHECK_FALSE(divides(p, ctx.det(m)));
      while (divides(p, e.primitive_part / product)) product *= p;
    }
    for (const auto& u : e.unfactored) product *= u;
    if (e.has_primitive()) CHECK(product == e.primitive_part);
    if (e.n >= 7) CHECK(e.has_primitive());
  }

  const auto cert = certify_primitive_class(ctx, scan[9]);
  REQUIRE(cert);
  CHECK(cert->n == 10);
  std::vector<long> ms;
  for (const auto& x : cert->excluded) ms.push_back(x.m);
  CHECK(ms == std::vector<long>{1, 2, 5});
  CHECK_NOTHROW(verify_certificate(ctx, *cert));
  // independent oracle: adjugate divisibility
  CHECK(oracle::divides_by_adjugate(cert->witness, cert->jacobian));
  for (long m : {1L, 2L, 5L}) CHECK_FALSE(oracle::divides_by_adjugate(cert->witness, ctx.jacobian(m)));

  auto bad = *cert;
  bad.witness = IMat::identity(2);
  CHECK_THROWS_AS(verify_certificate(ctx, bad), IdentityViolation);
  bad = *cert;
  bad.excluded.pop_back();
  CHECK_THROWS_AS(verify_certificate(ctx, bad), IdentityViolation);

  CHECK_FALSE(certify_primitive_class(ctx, scan[0]));
  const auto j = to_json(*cert);
  CHECK(j["excluded"].size() == 3);
  CHECK(j["modulus"].is_string());
}

TEST_CASE("certificates against enumerated index-p sublattices") {
  // Every lattice of index p is spanned by the rows of [[a, k], [0, c]] with
  // ac = p; the witness must be one of those dividing J_n, and none of those
  // may divide J_m for a proper divisor m.
  const auto& ctx = running();
  long checked = 0;
  for (long n = 4; n <= 12; ++n) {
    CAPTURE(n);
    const auto cert = certify_primitive_class(ctx, scan_index(ctx, n));
    REQUIRE(cert);
    if (!cert->modulus_is_prime || cert->modulus > 2000) continue;
    const long p = cert->modulus.get_si();
    std::set<IMat> dividing;
    for (auto [a, c] : {std::pair{1L, p}, std::pair{p, 1L}})
      for (long k = 0; k < p; ++k) {
        IMat d(2, 2);
        d(0, 0) = a;
        d(0, 1) = k;
        d(1, 1) = c;
        if (oracle::divides_by_adjugate(d, cert->jacobian)) dividing.insert(hnf(d));
      }
    CHECK(dividing.count(cert->witness) == 1);
    for (long m : proper_divisors(n))
      for (const auto& d : dividing) CHECK_FALSE(oracle::divides_by_adjugate(d, ctx.jacobian(m)));
    ++checked;
  }
  CHECK(checked >= 3);
}
