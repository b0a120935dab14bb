#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "divimat/bigint.hpp"
#include "divimat/poly.hpp"

namespace divimat {

// Short Weierstrass curve y^2 = x^3 + A x + B. A missing coefficient is kept
// symbolic as a ring variable named "A" or "B".
struct CurveE {
  std::optional<BigInt> a;
  std::optional<BigInt> b;

  static CurveE symbolic() { return {}; }
  static CurveE numeric(BigInt a, BigInt b) { return {std::move(a), std::move(b)}; }

  bool is_numeric() const { return a.has_value() && b.has_value(); }
  std::vector<std::string> parameter_names() const;
  CurveCoeff coeff_a() const;
  CurveCoeff coeff_b() const;

  // -16 (4 A^3 + 27 B^2); requires a numeric curve.
  BigInt discriminant() const;
  // Throws DomainError for symbolic or singular curves.
  void require_nonsingular() const;

  std::string describe() const;
};

// Memoized psi_n, phi_n, omega_n, psi_n^2 and psi_2n / psi_2 over
// Z[params][x, y] / (y^2 - x^3 - A x - B). Every stored value is reduced so
// that deg_y <= 1. Thread safe: fills are serialized and idempotent.
class DivisionPolynomials {
 public:
  explicit DivisionPolynomials(CurveE curve);

  const CurveE& curve() const { return curve_; }
  const Ring& ring() const { return ring_; }  // x, y, then symbolic parameters
  const SPoly& cubic() const { return cubic_; }

  const SPoly& psi(long n) const;
  const SPoly& phi(long n) const;
  const SPoly& omega(long n) const;
  const SPoly& psi_tilde(long n) const;
  // psi_2n / psi_2, checked against 2 psi_n omega_n / psi_2.
  const SPoly& eta(long n) const;

  SPoly reduce(const SPoly& p) const;
  SPoly reduced_product(const SPoly& a, const SPoly& b) const;
  // Exact division by psi_2 = 2y inside the curve's coordinate ring.
  SPoly divide_by_psi2(const SPoly& p) const;

 private:
  const SPoly& psi_locked(long n) const;

  CurveE curve_;
  Ring ring_;
  SPoly cubic_;
  SPoly minus_one_;
  SPoly zero_;
  mutable std::recursive_mutex mu_;
  mutable std::map<long, SPoly> psi_, phi_, omega_, psi_tilde_, eta_;
};

// Y-free check used across modules.
bool is_y_free(const SPoly& p, std::string_view y = "y");

}  // namespace divimat
