#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "divimat/bigint.hpp"
#include "divimat/divpoly.hpp"
#include "divimat/imat.hpp"
#include "divimat/poly.hpp"

namespace divimat {

// Square matrix of polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(const Ring& ring, std::size_t d);

  std::size_t size() const { return d_; }
  const Ring& ring() const { return ring_; }
  SPoly& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
  const SPoly& operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

  // Cofactor expansion, skipping zero entries; d <= 4 in practice.
  SPoly determinant() const;
  IMat evaluate(std::span<const BigInt> point) const;
  PolyMatrix substitute(const std::map<std::string, SPoly>& assignments) const;

 private:
  Ring ring_;
  std::size_t d_ = 0;
  std::vector<SPoly> a_;
};

std::string to_string(const PolyMatrix& m);

// A family of polynomial self-maps [n] of affine d-space with [m] o [n] = [mn].
// The ring lists the d coordinates first, then any symbolic parameters
// (the curve coefficients A, B of a symbolic elliptic family).
class EndoFamily {
 public:
  using Rule = std::function<std::vector<SPoly>(long n)>;
  using Degree = std::function<unsigned(long n)>;

  EndoFamily(std::string name, Ring ring, std::size_t dimension, Rule rule, Degree degree);

  const std::string& name() const { return state_->name; }
  const Ring& ring() const { return state_->ring; }
  std::size_t dimension() const { return state_->dimension; }
  std::vector<std::string> coordinates() const;
  std::vector<std::string> parameters() const;
  // Total degree of the coordinates of [n].
  unsigned degree(long n) const { return state_->degree(n); }

  const std::vector<SPoly>& map(long n) const;
  const PolyMatrix& jacobian(long n) const;

 private:
  struct State {
    std::string name;
    Ring ring;
    std::size_t dimension;
    Rule rule;
    Degree degree;
    std::mutex mu;
    std::map<long, std::vector<SPoly>> maps;
    std::map<long, PolyMatrix> jacobians;
  };
  std::shared_ptr<State> state_;
};

EndoFamily family_gm();
EndoFamily family_borel();
EndoFamily family_gl2();
EndoFamily family_elliptic(const CurveE& curve);
// Shares an existing division-polynomial cache.
EndoFamily family_elliptic(std::shared_ptr<const DivisionPolynomials> dp);

// Looks a family up by CLI name; the elliptic family needs a curve.
EndoFamily family_by_name(const std::string& name, const std::optional<CurveE>& curve = std::nullopt);

// [m] o [n] as polynomial maps.
std::vector<SPoly> compose(const EndoFamily& f, long m, long n);

// Positional point: one value per coordinate. Parameters must already be
// numeric, i.e. the family has none.
std::vector<BigInt> apply(const EndoFamily& f, long n, std::span<const BigInt> point);
IMat jacobian_at(const EndoFamily& f, long n, std::span<const BigInt> point);

struct ChainRuleReport {
  long m = 0;
  long n = 0;
  bool symbolic = false;            // the identity was checked as polynomials
  std::optional<PolyMatrix> quotient;  // J_m([n] x), when symbolic
  std::optional<IMat> quotient_at_point;
  std::optional<IMat> jacobian_mn_at_point;
  std::optional<IMat> jacobian_n_at_point;
};

// Checks J_mn(x) = J_m([n] x) J_n(x). Symbolic when deg [mn] fits the degree
// budget, and additionally at the point when one is given. Throws
// IdentityViolation naming the first offending entry.
ChainRuleReport verify_chain_rule(const EndoFamily& f, long m, long n,
                                  const std::optional<std::vector<BigInt>>& point = std::nullopt);

// DIVIMAT_MAX_DEGREE, default 150.
unsigned symbolic_degree_budget();

}  // namespace divimat
