#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "divimat/bigint.hpp"
#include "divimat/divpoly.hpp"
#include "divimat/endo.hpp"
#include "divimat/factor.hpp"
#include "divimat/imat.hpp"

namespace divimat {

// A rational point (a/b^2, y) on a nonsingular numeric curve, gcd(a, b) = 1, b >= 1.
struct RatPoint {
  CurveE curve;
  BigInt a;
  BigInt b;
  BigRat x;
  BigRat y;
};

// Validates every invariant, including a nonzero discriminant; throws InputError.
RatPoint make_point(const CurveE& curve, const BigInt& x_num, const BigInt& x_den_sqrt, const BigRat& y);

struct Fixture {
  std::string name;
  RatPoint point;
};

// {"curve": {"A": str, "B": str}, "point": {"x_num": str, "x_den_sqrt": str, "y": str}}
Fixture fixture_from_json(const nlohmann::json& j, std::string name = "");
Fixture load_fixture(const std::string& path);
nlohmann::json to_json(const Fixture& f);

struct MultipleRecord {
  long n = 0;
  BigRat x;
  BigRat y;
  BigInt a_n;  // x(nP) = A_n / B_n^2 in lowest terms
  BigInt b_n;
};

// Chord-tangent arithmetic; nP = O raises DomainError.
MultipleRecord point_mul(long n, const RatPoint& p);

// Mazur: a rational point with kP != O for k <= 12 has infinite order.
void require_infinite_order(const RatPoint& p);

// Shared per-point state: the numeric division polynomials and elliptic
// family, psi_k(P) over Q, multiples and determinant values. Thread safe.
class EllipticContext {
 public:
  explicit EllipticContext(RatPoint p);

  const RatPoint& point() const { return point_; }
  const DivisionPolynomials& divpoly() const { return *dp_; }
  const EndoFamily& family() const { return family_; }
  // (X, Z) = (a, b^2)
  std::vector<BigInt> xz() const { return {point_.a, point_.b * point_.b}; }

  // psi_k(P) from the recurrence over Q, k >= 0.
  BigRat psi_value(long k) const;
  const MultipleRecord& multiple(long n) const;
  IMat jacobian(long n) const;  // J_n(a, b^2)
  // det J_n(a, b^2); both routes are computed once and must agree.
  const BigInt& det(long n) const;

 private:
  void extend_psi(long k) const;

  RatPoint point_;
  std::shared_ptr<const DivisionPolynomials> dp_;
  EndoFamily family_;
  mutable std::mutex mu_;
  mutable std::vector<BigRat> psi_;
  mutable std::map<long, MultipleRecord> multiples_;
  mutable std::map<long, BigInt> dets_;
};

// Route (i): the determinant of the evaluated Jacobian.
BigInt det_direct(const EllipticContext& ctx, long n);
// Route (ii): n^3 b^(4(n^2-1)) (psi_2n / psi_2)(P); must be an integer.
BigInt det_closed(const EllipticContext& ctx, long n);

struct AyadReport {
  long n = 0;
  BigInt q_n;                     // b^(2n^2) psi_n(P)^2 / B_n^2
  std::vector<BigInt> q_primes;   // prime support of Q_n
  std::vector<BigInt> disc_primes;
};

// Q_n must be a positive integer supported on primes of the discriminant.
AyadReport ayad_check(const EllipticContext& ctx, long n);

struct ScanEntry {
  long n = 0;
  BigInt det;
  BigInt primitive_part = 1;            // 1 when there is none
  std::vector<BigInt> primitive_primes; // proven factors of the primitive part
  std::vector<BigInt> unfactored;       // composite cofactors left by the budget
  bool coprime_to_n = true;
  bool has_primitive() const { return primitive_part > 1; }
};

// Primitive part of det J_n(a, b^2): strip n^3, discriminant primes and every
// prime of det J_m for proper divisors m of n. Indices run in parallel;
// records come back sorted by n.
std::vector<ScanEntry> primitive_prime_scan(const EllipticContext& ctx, long n_min, long n_max,
                                            const FactorBudget& budget = {}, unsigned jobs = 1);
ScanEntry scan_index(const EllipticContext& ctx, long n, const FactorBudget& budget = {});

struct NonDivision {
  long m = 0;
  BigInt det_m;
  BigInt gcd_with_modulus;  // gcd(det D, det J_m)
};

struct PrimitivityCertificate {
  long n = 0;
  BigInt modulus;               // det of the witness: a primitive prime, or an unfactored primitive part
  bool modulus_is_prime = false;
  IMat jacobian;                // J_n(a, b^2)
  IMat witness;                 // D in Hermite normal form
  IMat quotient;                // J_n = quotient * D
  std::vector<NonDivision> excluded;  // every proper divisor m of n
};

// The divisor class of J_n belonging to the p-part of the cokernel, checked
// against the definition. Empty when the scan found no primitive part.
std::optional<PrimitivityCertificate> certify_primitive_class(const EllipticContext& ctx, const ScanEntry& entry);
// Re-derives every claim from scratch; throws IdentityViolation on failure.
void verify_certificate(const EllipticContext& ctx, const PrimitivityCertificate& cert);

std::vector<long> proper_divisors(long n);

nlohmann::json to_json(const MultipleRecord& r);
nlohmann::json to_json(const ScanEntry& e);
nlohmann::json to_json(const PrimitivityCertificate& c);
nlohmann::json to_json(const AyadReport& r);

}  // namespace divimat
