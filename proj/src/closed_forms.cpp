#include "divimat/closed_forms.hpp"

#include <sstream>

#include "divimat/error.hpp"

namespace divimat {

BigInt lucas_u(long n, const BigInt& p, const BigInt& q) {
  if (n < 0) throw DomainError("Lucas index must be non-negative");
  BigInt prev = 0, cur = 1;
  if (n == 0) return prev;
  for (long k = 1; k < n; ++k) {
    BigInt next = p * cur - q * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

const Ring& borel_ring() {
  static const Ring ring({"X", "Y", "Z"});
  return ring;
}

SPoly xz_monomial(unsigned ex, unsigned ez, const BigInt& c) {
  const unsigned e[] = {ex, 0, ez};
  return SPoly::monomial(borel_ring(), e, c);
}

// (X^n - Z^n) / (X - Z) as a homogeneous sum.
SPoly geometric_sum(long n) {
  SPoly s(borel_ring());
  for (long i = 0; i < n; ++i) s += xz_monomial(static_cast<unsigned>(i), static_cast<unsigned>(n - 1 - i), 1);
  return s;
}

void require_positive(long n) {
  if (n < 1) throw DomainError("sequence index must be a positive integer");
}

}  // namespace

SPoly borel_det(long n) {
  require_positive(n);
  const auto e = static_cast<unsigned>(n - 1);
  return xz_monomial(e, e, BigInt(n) * n) * geometric_sum(n);
}

BigInt borel_det_at(long n, const BigInt& x, const BigInt& z) {
  require_positive(n);
  BigInt sum = 0;
  for (long i = 0; i < n; ++i) sum += pow(x, static_cast<unsigned long>(i)) * pow(z, static_cast<unsigned long>(n - 1 - i));
  const auto e = static_cast<unsigned long>(n - 1);
  return BigInt(n) * n * pow(x, e) * pow(z, e) * sum;
}

PolyMatrix borel_displayed_jacobian(long n) {
  require_positive(n);
  const Ring& r = borel_ring();
  const SPoly x = SPoly::variable(r, "X"), y = SPoly::variable(r, "Y"), z = SPoly::variable(r, "Z");
  const auto un = static_cast<unsigned>(n);
  const SPoly xn = pow(x, un), zn = pow(z, un);
  const SPoly xn1 = pow(x, un - 1), zn1 = pow(z, un - 1);
  const SPoly diff = x - z;
  const SPoly diff2 = diff * diff;
  const SPoly p_xz = exact_divide(BigInt(n) * xn1 * diff - (xn - zn), diff2);
  const SPoly p_zx = exact_divide(BigInt(n) * zn1 * (z - x) - (zn - xn), diff2);
  PolyMatrix j(r, 3);
  j(0, 0) = BigInt(n) * xn1;
  j(1, 0) = y * p_xz;
  j(1, 1) = exact_divide(xn - zn, diff);
  j(1, 2) = y * p_zx;
  j(2, 2) = BigInt(n) * zn1;
  return j;
}

BigInt gl2_det(long n, const IMat& m) {
  require_positive(n);
  if (m.rows() != 2 || m.cols() != 2) throw InputError("gl2 closed form needs a 2x2 matrix");
  const BigInt tr = m(0, 0) + m(1, 1);
  const BigInt det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const BigInt u = lucas_u(n, tr, det);
  return BigInt(n) * n * pow(det, static_cast<unsigned long>(n - 1)) * u * u;
}

BigRat gl2_det_repeated_root(long n, const BigInt& alpha) {
  require_positive(n);
  const BigRat half(alpha, 2);
  BigRat out = pow(BigRat(half), static_cast<unsigned long>(4 * (n - 1)));
  out *= BigRat(BigInt(n) * n * n * n);
  out.canonicalize();
  return out;
}

EllipticDetForms eds_det_forms(const DivisionPolynomials& dp, const Ring& target, long n) {
  require_positive(n);
  const auto deg = static_cast<unsigned>(2 * (n * n - 1));
  const BigInt n2 = BigInt(n) * n, n3 = n2 * n;
  const SPoly& phi = dp.phi(n);
  const SPoly& pt = dp.psi_tilde(n);
  const SPoly w = derivative(phi, "x") * pt - phi * derivative(pt, "x");
  EllipticDetForms forms;
  forms.wronskian = n2 * homogenize(w, "x", target, "X", "Z", deg);
  forms.eta = n3 * homogenize(dp.eta(n), "x", target, "X", "Z", deg);
  const SPoly via_omega = dp.divide_by_psi2(dp.reduced_product(dp.psi(n), dp.omega(n)) * BigInt(2));
  if (!is_y_free(via_omega)) throw IdentityViolation("2 psi_n omega_n / psi_2 is not y-free");
  forms.omega = n3 * homogenize(via_omega, "x", target, "X", "Z", deg);
  return forms;
}

SPoly eds_det_closed(const DivisionPolynomials& dp, const Ring& target, long n) {
  EllipticDetForms f = eds_det_forms(dp, target, n);
  const std::string at = " at n = " + std::to_string(n);
  if (!(f.wronskian == f.eta))
    throw IdentityViolation("Wronskian form != psi_2n/psi_2 form" + at + ": " + first_difference(f.wronskian, f.eta));
  if (!(f.eta == f.omega))
    throw IdentityViolation("psi_2n/psi_2 form != omega form" + at + ": " + first_difference(f.eta, f.omega));
  return std::move(f.eta);
}

// ------------------------------------------------------------- recurrences

namespace {

struct EquationLabel {
  long index;
  std::size_t col;
};

}  // namespace

RecurrenceResult solve_matrix_recurrence(const std::vector<PolyMatrix>& terms, long first_index) {
  if (terms.size() < 3) throw InputError("a two-term recurrence needs at least three terms");
  const std::size_t d = terms.front().size();
  const Ring ring = terms.front().ring();
  for (const auto& t : terms)
    if (t.size() != d) throw InputError("recurrence terms differ in size");

  RecurrenceResult result;
  result.first_index = first_index;
  result.last_index = first_index + static_cast<long>(terms.size()) - 1;

  // Unknowns of row i: A(i, 0..d-1), B(i, 0..d-1). Every row i shares the
  // coefficient block; the d right-hand sides are the rows of T_n.
  const std::size_t unknowns = 2 * d;
  const std::size_t width = unknowns + d;
  std::vector<std::vector<SPoly>> m;
  std::vector<EquationLabel> labels;
  for (std::size_t t = 2; t < terms.size(); ++t) {
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<SPoly> row(width, SPoly(ring));
      for (std::size_t k = 0; k < d; ++k) {
        row[k] = terms[t - 1](k, j);
        row[d + k] = terms[t - 2](k, j);
      }
      for (std::size_t i = 0; i < d; ++i) row[unknowns + i] = terms[t](i, j);
      m.push_back(std::move(row));
      labels.push_back({first_index + static_cast<long>(t), j});
    }
  }

  // Fraction-free (Bareiss) elimination over the polynomial ring.
  SPoly prev = SPoly::constant(ring, 1);
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    std::swap(labels[p], labels[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < width; ++j) {
        SPoly v = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        m[i][j] = v.is_zero() ? std::move(v) : exact_divide(v, prev);
      }
      m[i][c] = SPoly(ring);
    }
    prev = m[r][c];
    pivot_cols.push_back(c);
    ++r;
  }

  for (std::size_t i = r; i < m.size(); ++i)
    for (std::size_t t = 0; t < d; ++t)
      if (!m[i][unknowns + t].is_zero()) {
        result.inconsistency = RecurrenceInconsistency{labels[i].index, t, labels[i].col, m[i][unknowns + t], prev};
        return result;
      }

  RecurrenceSolution sol{prev, PolyMatrix(ring, d), PolyMatrix(ring, d), std::nullopt, std::nullopt,
                         r == unknowns};
  const SPoly& den = prev;
  bool polynomial = true;
  std::vector<SPoly> a_exact, b_exact;
  for (std::size_t t = 0; t < d; ++t) {
    // y_c = D x_c; free unknowns are set to zero.
    std::vector<SPoly> y(unknowns, SPoly(ring));
    for (std::size_t k = r; k-- > 0;) {
      const std::size_t c = pivot_cols[k];
      SPoly acc = m[k][unknowns + t] * den;
      for (std::size_t k2 = k + 1; k2 < r; ++k2) acc -= m[k][pivot_cols[k2]] * y[pivot_cols[k2]];
      y[c] = acc.is_zero() ? std::move(acc) : exact_divide(acc, m[k][c]);
    }
    for (std::size_t k = 0; k < d; ++k) {
      sol.a_numerator(t, k) = y[k];
      sol.b_numerator(t, k) = y[d + k];
    }
  }
  PolyMatrix a(ring, d), b(ring, d);
  for (std::size_t i = 0; i < d && polynomial; ++i)
    for (std::size_t k = 0; k < d && polynomial; ++k) {
      try {
        a(i, k) = sol.a_numerator(i, k).is_zero() ? SPoly(ring) : exact_divide(sol.a_numerator(i, k), den);
        b(i, k) = sol.b_numerator(i, k).is_zero() ? SPoly(ring) : exact_divide(sol.b_numerator(i, k), den);
      } catch (const InexactDivision&) {
        polynomial = false;
      }
    }
  if (polynomial) {
    sol.a = std::move(a);
    sol.b = std::move(b);
  }
  result.solution = std::move(sol);
  extend_recurrence_check(result, terms, first_index);
  return result;
}

void extend_recurrence_check(RecurrenceResult& result, const std::vector<PolyMatrix>& terms, long first_index) {
  if (!result.solution) return;
  const auto& s = *result.solution;
  result.first_failure.reset();
  for (std::size_t t = 2; t < terms.size(); ++t) {
    const long idx = first_index + static_cast<long>(t);
    PolyMatrix lhs = terms[t];
    for (std::size_t i = 0; i < lhs.size(); ++i)
      for (std::size_t j = 0; j < lhs.size(); ++j) lhs(i, j) = lhs(i, j) * s.denominator;
    PolyMatrix rhs = s.a_numerator * terms[t - 1];
    const PolyMatrix rhs2 = s.b_numerator * terms[t - 2];
    bool ok = true;
    for (std::size_t i = 0; i < lhs.size() && ok; ++i)
      for (std::size_t j = 0; j < lhs.size() && ok; ++j) ok = lhs(i, j) == rhs(i, j) + rhs2(i, j);
    if (!ok) {
      result.first_failure = idx;
      return;
    }
    result.checked_through = idx;
  }
}

namespace {

std::vector<PolyMatrix> as_1x1(const std::vector<SPoly>& values) {
  std::vector<PolyMatrix> out;
  for (const auto& v : values) {
    PolyMatrix p(v.ring(), 1);
    p(0, 0) = v;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

BorelRecurrenceReport falsify_borel_matrix_recurrence(long extension_through) {
  if (extension_through < 5) throw InputError("the Borel recurrence check uses terms up to at least n = 5");
  BorelRecurrenceReport rep;
  const EndoFamily borel = family_borel();

  std::vector<PolyMatrix> window;
  for (long n = 2; n <= 5; ++n) window.push_back(borel.jacobian(n));
  rep.matrix = solve_matrix_recurrence(window, 2);
  if (rep.matrix.solution) {
    std::vector<PolyMatrix> all;
    for (long n = 1; n <= extension_through; ++n) all.push_back(borel.jacobian(n));
    extend_recurrence_check(rep.matrix, all, 1);
  }

  const Ring pq({"P", "Q"});
  std::vector<SPoly> u{SPoly(pq), SPoly::constant(pq, 1)};
  for (long n = 2; n <= extension_through; ++n)
    u.push_back(SPoly::variable(pq, "P") * u[n - 1] - SPoly::variable(pq, "Q") * u[n - 2]);
  const auto lucas_terms = as_1x1(u);
  rep.lucas = solve_matrix_recurrence({lucas_terms.begin() + 2, lucas_terms.begin() + 6}, 2);
  extend_recurrence_check(rep.lucas, lucas_terms, 0);

  std::vector<SPoly> dets;
  for (long n = 1; n <= 8; ++n) dets.push_back(borel_det(n));
  rep.determinant = solve_matrix_recurrence(as_1x1(dets), 1);

  const auto& mr = rep.matrix;
  rep.no_recurrence = mr.inconsistency.has_value() || (mr.solution && mr.solution->unique && mr.first_failure);
  std::ostringstream s;
  if (mr.inconsistency) {
    s << "no linear matrix recurrence: certificate " << describe(mr);
  } else if (rep.no_recurrence) {
    s << "no linear matrix recurrence: the unique solution from J_2..J_5 fails at n = " << *mr.first_failure;
  } else {
    s << "linear matrix recurrence found: " << describe(mr);
  }
  rep.summary = s.str();
  return rep;
}

std::string describe(const RecurrenceResult& r) {
  std::ostringstream s;
  if (r.inconsistency) {
    const auto& c = *r.inconsistency;
    s << "equation T_" << c.index << " = A T_" << c.index - 1 << " + B T_" << c.index - 2 << " (row "
      << c.term_row + 1 << ", column " << c.term_col + 1 << ") reduces to 0 = " << to_string(c.residual)
      << " after scaling by the minor " << to_string(c.pivot_minor);
    return s.str();
  }
  if (!r.solution) return "no solution computed";
  const auto& sol = *r.solution;
  if (sol.a) {
    s << "A = " << to_string(*sol.a) << ", B = " << to_string(*sol.b);
  } else {
    s << "A = " << to_string(sol.a_numerator) << " / (" << to_string(sol.denominator) << "), B = "
      << to_string(sol.b_numerator) << " / (" << to_string(sol.denominator) << ")";
  }
  s << (sol.unique ? " (unique)" : " (one of a family)");
  if (r.first_failure) {
    s << ", fails at n = " << *r.first_failure;
  } else {
    s << ", holds for n <= " << r.checked_through;
  }
  return s.str();
}

}  // namespace divimat
