#include "divimat/endo.hpp"

#include <array>
#include <cstdlib>

#include "divimat/error.hpp"

namespace divimat {

PolyMatrix::PolyMatrix(const Ring& ring, std::size_t d) : ring_(ring), d_(d), a_(d * d, SPoly(ring)) {}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.d_ != b.d_) throw InputError("polynomial matrix size mismatch");
  PolyMatrix c(a.ring_, a.d_);
  for (std::size_t i = 0; i < a.d_; ++i)
    for (std::size_t j = 0; j < a.d_; ++j) {
      SPoly s(a.ring_);
      for (std::size_t k = 0; k < a.d_; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        s += a(i, k) * b(k, j);
      }
      c(i, j) = std::move(s);
    }
  return c;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) { return a.d_ == b.d_ && a.a_ == b.a_; }

namespace {

SPoly cofactor_det(const PolyMatrix& m, std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  if (k == 1) return m(rows[0], cols[0]);
  if (k == 2) {
    SPoly r(m.ring());
    if (!m(rows[0], cols[0]).is_zero() && !m(rows[1], cols[1]).is_zero())
      r += m(rows[0], cols[0]) * m(rows[1], cols[1]);
    if (!m(rows[0], cols[1]).is_zero() && !m(rows[1], cols[0]).is_zero())
      r -= m(rows[0], cols[1]) * m(rows[1], cols[0]);
    return r;
  }
  // expand along the row with the most zeros
  std::size_t best = 0, best_zeros = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t zeros = 0;
    for (std::size_t j = 0; j < k; ++j) zeros += m(rows[i], cols[j]).is_zero();
    if (i == 0 || zeros > best_zeros) {
      best = i;
      best_zeros = zeros;
    }
  }
  const std::size_t row = rows[best];
  std::vector<std::size_t> sub_rows = rows;
  sub_rows.erase(sub_rows.begin() + static_cast<long>(best));
  SPoly total(m.ring());
  for (std::size_t j = 0; j < k; ++j) {
    const SPoly& e = m(row, cols[j]);
    if (e.is_zero()) continue;
    std::vector<std::size_t> sub_cols = cols;
    sub_cols.erase(sub_cols.begin() + static_cast<long>(j));
    SPoly term = e * cofactor_det(m, sub_rows, sub_cols);
    if ((best + j) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace

SPoly PolyMatrix::determinant() const {
  if (d_ == 0) return SPoly::constant(ring_, 1);
  std::vector<std::size_t> rows(d_), cols(d_);
  for (std::size_t i = 0; i < d_; ++i) rows[i] = cols[i] = i;
  return cofactor_det(*this, rows, cols);
}

IMat PolyMatrix::evaluate(std::span<const BigInt> point) const {
  IMat out(d_, d_);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) out(i, j) = divimat::evaluate((*this)(i, j), point);
  return out;
}

PolyMatrix PolyMatrix::substitute(const std::map<std::string, SPoly>& assignments) const {
  if (assignments.empty()) return *this;
  PolyMatrix out(assignments.begin()->second.ring(), d_);
  for (std::size_t i = 0; i < d_ * d_; ++i) {
    out.a_[i] = a_[i].is_zero() ? SPoly(out.ring_) : divimat::substitute(a_[i], assignments);
  }
  return out;
}

std::string to_string(const PolyMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.size(); ++j) out += (j ? ", " : "") + to_string(m(i, j));
    out += "]";
  }
  return out + "]";
}

EndoFamily::EndoFamily(std::string name, Ring ring, std::size_t dimension, Rule rule, Degree degree)
    : state_(std::make_shared<State>()) {
  if (dimension == 0 || dimension > ring.size()) throw InputError("family dimension does not fit its ring");
  state_->name = std::move(name);
  state_->ring = std::move(ring);
  state_->dimension = dimension;
  state_->rule = std::move(rule);
  state_->degree = std::move(degree);
}

std::vector<std::string> EndoFamily::coordinates() const {
  const auto& names = ring().names();
  return {names.begin(), names.begin() + static_cast<long>(dimension())};
}

std::vector<std::string> EndoFamily::parameters() const {
  const auto& names = ring().names();
  return {names.begin() + static_cast<long>(dimension()), names.end()};
}

const std::vector<SPoly>& EndoFamily::map(long n) const {
  if (n < 1) throw DomainError("family index must be a positive integer");
  {
    std::lock_guard lock(state_->mu);
    if (auto it = state_->maps.find(n); it != state_->maps.end()) return it->second;
  }
  // Computed outside the lock; a concurrent fill of the same n yields the
  // same value and the first insert wins.
  std::vector<SPoly> value = state_->rule(n);
  if (value.size() != dimension()) throw IdentityViolation("family rule returned the wrong number of coordinates");
  std::lock_guard lock(state_->mu);
  return state_->maps.emplace(n, std::move(value)).first->second;
}

const PolyMatrix& EndoFamily::jacobian(long n) const {
  {
    std::lock_guard lock(state_->mu);
    if (auto it = state_->jacobians.find(n); it != state_->jacobians.end()) return it->second;
  }
  const auto& coords = map(n);
  const auto vars = coordinates();
  PolyMatrix j(ring(), dimension());
  for (std::size_t r = 0; r < dimension(); ++r)
    for (std::size_t c = 0; c < dimension(); ++c) j(r, c) = derivative(coords[r], vars[c]);
  std::lock_guard lock(state_->mu);
  return state_->jacobians.emplace(n, std::move(j)).first->second;
}

EndoFamily family_gm() {
  const Ring ring({"x"});
  return EndoFamily(
      "gm", ring, 1,
      [ring](long n) {
        const unsigned e[] = {static_cast<unsigned>(n)};
        return std::vector<SPoly>{SPoly::monomial(ring, e, 1)};
      },
      [](long n) { return static_cast<unsigned>(n); });
}

EndoFamily family_borel() {
  const Ring ring({"X", "Y", "Z"});
  return EndoFamily(
      "borel", ring, 3,
      [ring](long n) {
        const auto un = static_cast<unsigned>(n);
        std::vector<SPoly::Term> sum;
        // Y * (X^n - Z^n)/(X - Z) as the homogeneous sum, so X = Z is harmless
        for (unsigned i = 0; i < un; ++i) {
          Monomial m;
          m.exp[0] = static_cast<std::uint16_t>(i);
          m.exp[1] = 1;
          m.exp[2] = static_cast<std::uint16_t>(un - 1 - i);
          m.degree = un;
          sum.emplace_back(m, 1);
        }
        const unsigned xe[] = {un, 0, 0};
        const unsigned ze[] = {0, 0, un};
        return std::vector<SPoly>{SPoly::monomial(ring, xe, 1), SPoly::from_terms(ring, std::move(sum)),
                                  SPoly::monomial(ring, ze, 1)};
      },
      [](long n) { return static_cast<unsigned>(n); });
}

EndoFamily family_gl2() {
  const Ring ring({"a", "b", "c", "d"});
  return EndoFamily(
      "gl2", ring, 4,
      [ring](long n) {
        using M2 = std::array<SPoly, 4>;
        auto mul = [](const M2& x, const M2& y) {
          return M2{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                    x[2] * y[1] + x[3] * y[3]};
        };
        M2 base{SPoly::variable(ring, "a"), SPoly::variable(ring, "b"), SPoly::variable(ring, "c"),
                SPoly::variable(ring, "d")};
        M2 acc{SPoly::constant(ring, 1), SPoly(ring), SPoly(ring), SPoly::constant(ring, 1)};
        for (long e = n; e > 0; e >>= 1) {
          if (e & 1) acc = mul(acc, base);
          if (e > 1) base = mul(base, base);
        }
        return std::vector<SPoly>(acc.begin(), acc.end());
      },
      [](long n) { return static_cast<unsigned>(n); });
}

EndoFamily family_elliptic(std::shared_ptr<const DivisionPolynomials> dp) {
  std::vector<std::string> vars{"X", "Z"};
  for (auto& p : dp->curve().parameter_names()) vars.push_back(std::move(p));
  const Ring ring(std::move(vars));
  return EndoFamily(
      "elliptic", ring, 2,
      [ring, dp](long n) {
        const auto deg = static_cast<unsigned>(n * n);
        return std::vector<SPoly>{homogenize(dp->phi(n), "x", ring, "X", "Z", deg),
                                  homogenize(dp->psi_tilde(n), "x", ring, "X", "Z", deg)};
      },
      [](long n) { return static_cast<unsigned>(n * n); });
}

EndoFamily family_elliptic(const CurveE& curve) {
  return family_elliptic(std::make_shared<const DivisionPolynomials>(curve));
}

EndoFamily family_by_name(const std::string& name, const std::optional<CurveE>& curve) {
  if (name == "gm") return family_gm();
  if (name == "borel") return family_borel();
  if (name == "gl2") return family_gl2();
  if (name == "elliptic") return family_elliptic(curve.value_or(CurveE::symbolic()));
  throw InputError("unknown family '" + name + "' (expected gm, borel, gl2 or elliptic)");
}

namespace {

std::map<std::string, SPoly> composition_assignment(const EndoFamily& f, const std::vector<SPoly>& inner) {
  std::map<std::string, SPoly> sigma;
  const auto coords = f.coordinates();
  for (std::size_t i = 0; i < coords.size(); ++i) sigma.emplace(coords[i], inner[i]);
  for (const auto& p : f.parameters()) sigma.emplace(p, SPoly::variable(f.ring(), p));
  return sigma;
}

void require_point(const EndoFamily& f, std::span<const BigInt> point) {
  if (!f.parameters().empty()) throw InputError("point evaluation needs a numeric curve");
  if (point.size() != f.dimension()) {
    throw InputError("point has " + std::to_string(point.size()) + " coordinates, family '" + f.name() + "' needs " +
                     std::to_string(f.dimension()));
  }
}

std::string entry_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

std::vector<SPoly> compose(const EndoFamily& f, long m, long n) {
  const auto sigma = composition_assignment(f, f.map(n));
  std::vector<SPoly> out;
  for (const auto& c : f.map(m)) out.push_back(substitute(c, sigma));
  return out;
}

std::vector<BigInt> apply(const EndoFamily& f, long n, std::span<const BigInt> point) {
  require_point(f, point);
  std::vector<BigInt> out;
  for (const auto& c : f.map(n)) out.push_back(evaluate(c, point));
  return out;
}

IMat jacobian_at(const EndoFamily& f, long n, std::span<const BigInt> point) {
  require_point(f, point);
  return f.jacobian(n).evaluate(point);
}

unsigned symbolic_degree_budget() {
  if (const char* env = std::getenv("DIVIMAT_MAX_DEGREE")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    throw InputError("DIVIMAT_MAX_DEGREE must be a positive integer");
  }
  return 150;
}

ChainRuleReport verify_chain_rule(const EndoFamily& f, long m, long n, const std::optional<std::vector<BigInt>>& point) {
  if (m < 1 || n < 1) throw DomainError("chain rule indices must be positive");
  ChainRuleReport report;
  report.m = m;
  report.n = n;
  const std::string where = f.name() + " m=" + std::to_string(m) + " n=" + std::to_string(n);

  if (f.degree(m * n) <= symbolic_degree_budget()) {
    PolyMatrix q = f.jacobian(m).substitute(composition_assignment(f, f.map(n)));
    const PolyMatrix lhs = f.jacobian(m * n);
    const PolyMatrix rhs = q * f.jacobian(n);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      for (std::size_t j = 0; j < lhs.size(); ++j)
        if (!(lhs(i, j) == rhs(i, j))) {
          throw IdentityViolation("chain rule fails for " + where + " at entry " + entry_name(i, j) + ": " +
                                  first_difference(lhs(i, j), rhs(i, j)));
        }
    report.symbolic = true;
    report.quotient = std::move(q);
  } else if (!point) {
    throw InputError("degree " + std::to_string(f.degree(m * n)) + " exceeds the symbolic budget " +
                     std::to_string(symbolic_degree_budget()) + "; pass a point");
  }

  if (point) {
    const std::vector<BigInt> image = apply(f, n, *point);
    IMat q = jacobian_at(f, m, image);
    IMat jn = jacobian_at(f, n, *point);
    IMat jmn = jacobian_at(f, m * n, *point);
    const IMat rhs = q * jn;
    for (std::size_t i = 0; i < jmn.rows(); ++i)
      for (std::size_t j = 0; j < jmn.cols(); ++j)
        if (jmn(i, j) != rhs(i, j)) {
          throw IdentityViolation("chain rule fails for " + where + " at the point, entry " + entry_name(i, j) +
                                  ": " + jmn(i, j).get_str() + " != " + rhs(i, j).get_str());
        }
    report.quotient_at_point = std::move(q);
    report.jacobian_n_at_point = std::move(jn);
    report.jacobian_mn_at_point = std::move(jmn);
  }
  return report;
}

}  // namespace divimat
