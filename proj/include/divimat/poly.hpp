#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "divimat/bigint.hpp"

namespace divimat {

inline constexpr std::size_t kMaxVars = 8;

// Exponent vector over a Ring's variables. Total degree is cached because
// the monomial order compares it first.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t degree = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  // Graded lexicographic order, first variable most significant.
  friend bool grlex_less(const Monomial& a, const Monomial& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.exp < b.exp;
  }

  bool divides(const Monomial& other) const;
};

Monomial operator*(const Monomial& a, const Monomial& b);
// Precondition: a.divides(b).
Monomial operator/(const Monomial& b, const Monomial& a);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// Ordered list of variable names. Copies share storage, so equality is
// usually a pointer comparison.
class Ring {
 public:
  Ring();
  explicit Ring(std::vector<std::string> variables);

  std::size_t size() const { return vars_->size(); }
  const std::string& name(std::size_t i) const { return (*vars_)[i]; }
  const std::vector<std::string>& names() const { return *vars_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.vars_ == b.vars_ || *a.vars_ == *b.vars_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> vars_;
};

// Sparse multivariate polynomial with integer coefficients. Terms are kept
// sorted by decreasing grlex order with no zero coefficients, so structural
// equality is polynomial equality.
class SPoly {
 public:
  using Term = std::pair<Monomial, BigInt>;

  SPoly() = default;
  explicit SPoly(Ring ring) : ring_(std::move(ring)) {}

  static SPoly constant(const Ring& ring, const BigInt& c);
  static SPoly variable(const Ring& ring, std::string_view name);
  static SPoly monomial(const Ring& ring, std::span<const unsigned> exponents, const BigInt& c);
  // Builds from arbitrary (possibly repeated, possibly zero) terms.
  static SPoly from_terms(const Ring& ring, std::vector<Term> terms);

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading_term() const { return terms_.front(); }

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool is_constant() const;
  BigInt content() const;  // gcd of coefficients, 0 for the zero polynomial

  SPoly& operator+=(const SPoly& rhs);
  SPoly& operator-=(const SPoly& rhs);
  SPoly& operator*=(const SPoly& rhs);
  SPoly& operator*=(const BigInt& c);

  friend SPoly operator+(SPoly a, const SPoly& b) { return a += b; }
  friend SPoly operator-(SPoly a, const SPoly& b) { return a -= b; }
  friend SPoly operator*(const SPoly& a, const SPoly& b);
  friend SPoly operator*(SPoly a, const BigInt& c) { return a *= c; }
  friend SPoly operator*(const BigInt& c, SPoly a) { return a *= c; }
  SPoly operator-() const;

  friend bool operator==(const SPoly& a, const SPoly& b);

  // Divide every coefficient by c; throws InexactDivision if any does not divide.
  SPoly divide_coefficients(const BigInt& c) const;

 private:
  void normalize();
  void check_ring(const SPoly& other) const;

  Ring ring_;
  std::vector<Term> terms_;
};

SPoly pow(const SPoly& p, unsigned exponent);

SPoly derivative(const SPoly& p, std::string_view var);

// Replace each variable by its assigned polynomial. All assigned values must
// share one ring, which becomes the ring of the result.
SPoly substitute(const SPoly& p, const std::map<std::string, SPoly>& assignments);

// Returns q with num == q * den, or throws InexactDivision.
SPoly exact_divide(const SPoly& num, const SPoly& den);

// A curve coefficient is either an integer or the name of a ring variable.
using CurveCoeff = std::variant<BigInt, std::string>;

// Rewrites y^2 -> x^3 + A x + B until deg_y <= 1.
SPoly reduce_mod_curve(const SPoly& p, const CurveCoeff& a, const CurveCoeff& b,
                       std::string_view x = "x", std::string_view y = "y");
// Same, with the cubic x^3 + A x + B already built in p's ring.
SPoly reduce_mod_curve(const SPoly& p, const SPoly& cubic, std::string_view y = "y");

BigRat evaluate(const SPoly& p, const std::map<std::string, BigRat>& point);
// Positional integer evaluation; values.size() must equal the ring size.
BigInt evaluate(const SPoly& p, std::span<const BigInt> values);

// Substitutes x -> X/Z in a y-free polynomial and clears Z^degree. Extra
// variables of p are carried over by name to the target ring.
SPoly homogenize(const SPoly& p, std::string_view x, const Ring& target, std::string_view big_x,
                 std::string_view big_z, unsigned degree);

// Re-expresses p over a ring containing all of p's variables (by name).
SPoly embed(const SPoly& p, const Ring& target);

std::string to_string(const SPoly& p);
SPoly parse_poly(const Ring& ring, std::string_view text);

nlohmann::json to_json(const SPoly& p);
SPoly poly_from_json(const nlohmann::json& j);

// First monomial on which a and b differ, rendered for diagnostics.
std::string first_difference(const SPoly& a, const SPoly& b);

}  // namespace divimat
