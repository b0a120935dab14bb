#include "divimat/divpoly.hpp"

#include "divimat/error.hpp"

namespace divimat {

std::vector<std::string> CurveE::parameter_names() const {
  std::vector<std::string> names;
  if (!a) names.emplace_back("A");
  if (!b) names.emplace_back("B");
  return names;
}

CurveCoeff CurveE::coeff_a() const { return a ? CurveCoeff(*a) : CurveCoeff(std::string("A")); }
CurveCoeff CurveE::coeff_b() const { return b ? CurveCoeff(*b) : CurveCoeff(std::string("B")); }

BigInt CurveE::discriminant() const {
  if (!is_numeric()) throw DomainError("discriminant of a symbolic curve");
  return -16 * (4 * (*a) * (*a) * (*a) + 27 * (*b) * (*b));
}

void CurveE::require_nonsingular() const {
  if (discriminant() == 0) throw DomainError("singular curve: " + describe() + " has discriminant 0");
}

std::string CurveE::describe() const {
  auto show = [](const std::optional<BigInt>& v, const char* name) { return v ? v->get_str() : std::string(name); };
  return "y^2 = x^3 + (" + show(a, "A") + ")*x + (" + show(b, "B") + ")";
}

bool is_y_free(const SPoly& p, std::string_view y) {
  const auto yv = p.ring().index_of(y);
  return !yv || p.degree_in(*yv) == 0;
}

namespace {

Ring make_ring(const CurveE& curve) {
  std::vector<std::string> vars{"x", "y"};
  for (auto& name : curve.parameter_names()) vars.push_back(std::move(name));
  return Ring(std::move(vars));
}

}  // namespace

DivisionPolynomials::DivisionPolynomials(CurveE curve)
    : curve_(std::move(curve)),
      ring_(make_ring(curve_)),
      cubic_(ring_),
      minus_one_(SPoly::constant(ring_, -1)),
      zero_(ring_) {
  const SPoly x = SPoly::variable(ring_, "x");
  const SPoly a = curve_.a ? SPoly::constant(ring_, *curve_.a) : SPoly::variable(ring_, "A");
  const SPoly b = curve_.b ? SPoly::constant(ring_, *curve_.b) : SPoly::variable(ring_, "B");
  cubic_ = x * x * x + a * x + b;

  const SPoly y = SPoly::variable(ring_, "y");
  const SPoly one = SPoly::constant(ring_, 1);
  psi_.emplace(1, one);
  psi_.emplace(2, y * BigInt(2));
  const SPoly x2 = x * x;
  const SPoly a2 = a * a;
  psi_.emplace(3, BigInt(3) * x2 * x2 + BigInt(6) * a * x2 + BigInt(12) * b * x - a2);
  const SPoly inner = x2 * x2 * x2 + BigInt(5) * a * x2 * x2 + BigInt(20) * b * x2 * x -
                      BigInt(5) * a2 * x2 - BigInt(4) * a * b * x - BigInt(8) * b * b - a2 * a;
  psi_.emplace(4, BigInt(4) * y * inner);
}

SPoly DivisionPolynomials::reduce(const SPoly& p) const { return reduce_mod_curve(p, cubic_, "y"); }

SPoly DivisionPolynomials::reduced_product(const SPoly& a, const SPoly& b) const { return reduce(a * b); }

SPoly DivisionPolynomials::divide_by_psi2(const SPoly& p) const {
  const std::size_t yv = ring_.require("y");
  std::vector<SPoly::Term> even, odd;
  for (const auto& [m, c] : p.terms()) {
    if (m.exp[yv] > 1) throw InputError("divide_by_psi2 expects a curve-reduced polynomial");
    if (m.exp[yv] == 0) {
      even.emplace_back(m, c);
    } else {
      Monomial stripped = m;
      stripped.exp[yv] = 0;
      stripped.degree -= 1;
      odd.emplace_back(stripped, c);
    }
  }
  // (D0 + y D1) / (2y) = y D0 / (2 f) + D1 / 2, with f = x^3 + A x + B = y^2.
  SPoly result = SPoly::from_terms(ring_, std::move(odd)).divide_coefficients(2);
  const SPoly d0 = SPoly::from_terms(ring_, std::move(even));
  if (!d0.is_zero()) {
    result += SPoly::variable(ring_, "y") * exact_divide(d0, cubic_ * BigInt(2));
  }
  return result;
}

const SPoly& DivisionPolynomials::psi(long n) const {
  if (n < 1) throw DomainError("psi_n is only exposed for n >= 1");
  std::lock_guard lock(mu_);
  return psi_locked(n);
}

const SPoly& DivisionPolynomials::psi_locked(long n) const {
  if (n == 0) return zero_;
  if (n == -1) return minus_one_;
  if (n < -1) throw DomainError("negative division-polynomial index");
  if (auto it = psi_.find(n); it != psi_.end()) return it->second;
  SPoly value(ring_);
  if (n % 2 == 1) {
    const long m = (n - 1) / 2;
    const SPoly& pm = psi_locked(m);
    const SPoly& pm1 = psi_locked(m + 1);
    const SPoly left = reduced_product(psi_locked(m + 2), reduced_product(reduced_product(pm, pm), pm));
    const SPoly right = reduced_product(psi_locked(m - 1), reduced_product(reduced_product(pm1, pm1), pm1));
    value = left - right;
  } else {
    const long m = n / 2;
    const SPoly& pm1 = psi_locked(m - 1);
    const SPoly& pp1 = psi_locked(m + 1);
    const SPoly bracket = reduced_product(psi_locked(m + 2), reduced_product(pm1, pm1)) -
                          reduced_product(psi_locked(m - 2), reduced_product(pp1, pp1));
    value = divide_by_psi2(reduced_product(psi_locked(m), bracket));
  }
  return psi_.emplace(n, std::move(value)).first->second;
}

const SPoly& DivisionPolynomials::psi_tilde(long n) const {
  if (n < 1) throw DomainError("psi_n is only exposed for n >= 1");
  std::lock_guard lock(mu_);
  if (auto it = psi_tilde_.find(n); it != psi_tilde_.end()) return it->second;
  const SPoly& p = psi_locked(n);
  SPoly value = reduced_product(p, p);
  if (!is_y_free(value)) throw IdentityViolation("psi_" + std::to_string(n) + "^2 is not y-free");
  return psi_tilde_.emplace(n, std::move(value)).first->second;
}

const SPoly& DivisionPolynomials::phi(long n) const {
  if (n < 1) throw DomainError("phi_n is only exposed for n >= 1");
  std::lock_guard lock(mu_);
  if (auto it = phi_.find(n); it != phi_.end()) return it->second;
  const SPoly x = SPoly::variable(ring_, "x");
  const SPoly& p = psi_locked(n);
  SPoly value = x * reduced_product(p, p) - reduced_product(psi_locked(n + 1), psi_locked(n - 1));
  if (!is_y_free(value)) throw IdentityViolation("phi_" + std::to_string(n) + " is not y-free");
  return phi_.emplace(n, std::move(value)).first->second;
}

const SPoly& DivisionPolynomials::omega(long n) const {
  if (n < 1) throw DomainError("omega_n is only exposed for n >= 1");
  std::lock_guard lock(mu_);
  if (auto it = omega_.find(n); it != omega_.end()) return it->second;
  const SPoly& pm1 = psi_locked(n - 1);
  const SPoly& pp1 = psi_locked(n + 1);
  const SPoly numerator = reduced_product(psi_locked(n + 2), reduced_product(pm1, pm1)) -
                          reduced_product(psi_locked(n - 2), reduced_product(pp1, pp1));
  SPoly value = divide_by_psi2(numerator).divide_coefficients(2);
  return omega_.emplace(n, std::move(value)).first->second;
}

const SPoly& DivisionPolynomials::eta(long n) const {
  if (n < 1) throw DomainError("eta_n is only exposed for n >= 1");
  std::lock_guard lock(mu_);
  if (auto it = eta_.find(n); it != eta_.end()) return it->second;
  SPoly quotient = divide_by_psi2(psi_locked(2 * n));
  const SPoly via_omega = divide_by_psi2(reduced_product(psi_locked(n), omega(n)) * BigInt(2));
  if (!(quotient == via_omega)) {
    throw IdentityViolation("psi_2n/psi_2 != 2 psi_n omega_n/psi_2 at n = " + std::to_string(n) + " (" +
                            first_difference(quotient, via_omega) + ")");
  }
  if (!is_y_free(quotient)) throw IdentityViolation("psi_2n/psi_2 is not y-free at n = " + std::to_string(n));
  return eta_.emplace(n, std::move(quotient)).first->second;
}

}  // namespace divimat
