#include "divimat/imat.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "divimat/error.hpp"

namespace divimat {

namespace {

struct ExtGcd {
  BigInt g, s, t;  // s*a + t*b == g >= 0
};

ExtGcd ext_gcd(const BigInt& a, const BigInt& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

void require_same_shape(const IMat& a, const IMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix dimension mismatch");
}

}  // namespace

IMat::IMat(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  a_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("ragged matrix literal");
    for (long v : row) a_.emplace_back(v);
  }
}

IMat IMat::identity(std::size_t d) {
  IMat m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

IMat IMat::diagonal(const std::vector<BigInt>& entries) {
  IMat m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IMat IMat::transpose() const {
  IMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool IMat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const BigInt& v) { return v == 0; });
}

IMat operator*(const IMat& a, const IMat& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
  IMat c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        mpz_addmul(c(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
      }
    }
  }
  return c;
}

IMat operator+(const IMat& a, const IMat& b) {
  require_same_shape(a, b);
  IMat c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

IMat operator-(const IMat& a, const IMat& b) {
  require_same_shape(a, b);
  IMat c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

bool operator<(const IMat& a, const IMat& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  return std::lexicographical_compare(a.a_.begin(), a.a_.end(), b.a_.begin(), b.a_.end());
}

void IMat::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IMat::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IMat::add_row_multiple(std::size_t i, std::size_t j, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    mpz_addmul((*this)(i, c).get_mpz_t(), k.get_mpz_t(), (*this)(j, c).get_mpz_t());
  }
}

void IMat::add_col_multiple(std::size_t i, std::size_t j, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    mpz_addmul((*this)(r, i).get_mpz_t(), k.get_mpz_t(), (*this)(r, j).get_mpz_t());
  }
}

void IMat::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IMat::negate_col(std::size_t i) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) = -(*this)(r, i);
}

void IMat::combine_rows(std::size_t i, std::size_t j, const BigInt& a, const BigInt& b, const BigInt& c,
                        const BigInt& d) {
  for (std::size_t col = 0; col < cols_; ++col) {
    BigInt x = (*this)(i, col);
    BigInt y = (*this)(j, col);
    (*this)(i, col) = a * x + b * y;
    (*this)(j, col) = c * x + d * y;
  }
}

void IMat::combine_cols(std::size_t i, std::size_t j, const BigInt& a, const BigInt& b, const BigInt& c,
                        const BigInt& d) {
  for (std::size_t r = 0; r < rows_; ++r) {
    BigInt x = (*this)(r, i);
    BigInt y = (*this)(r, j);
    (*this)(r, i) = a * x + b * y;
    (*this)(r, j) = c * x + d * y;
  }
}

// ---------------------------------------------------------------- determinants

BigInt determinant(const IMat& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IMat a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IMat adjugate(const IMat& m) {
  if (!m.is_square()) throw InputError("adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  IMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IMat minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      BigInt cof = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : BigInt(-cof);
    }
  }
  return adj;
}

bool is_unimodular(const IMat& m) { return m.is_square() && abs(determinant(m)) == 1; }

IMat inverse_unimodular(const IMat& m) {
  const BigInt det = determinant(m);
  if (abs(det) != 1) throw DomainError("matrix is not unimodular");
  IMat inv = adjugate(m);
  if (det == -1) {
    for (std::size_t i = 0; i < inv.rows(); ++i) inv.negate_row(i);
  }
  return inv;
}

// ---------------------------------------------------------------- Hermite

HnfResult hnf_with_transform(const IMat& m) {
  HnfResult res{m, IMat::identity(m.rows()), 0, {}};
  IMat& h = res.h;
  IMat& u = res.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      if (h(r, c) == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        continue;
      }
      const BigInt a = h(r, c);
      const BigInt b = h(i, c);
      const ExtGcd e = ext_gcd(a, b);
      const BigInt bg = -b / e.g;
      const BigInt ag = a / e.g;
      h.combine_rows(r, i, e.s, e.t, bg, ag);
      u.combine_rows(r, i, e.s, e.t, bg, ag);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t k = 0; k < r; ++k) {
      const BigInt q = floor_div(h(k, c), h(r, c));
      if (q == 0) continue;
      h.add_row_multiple(k, r, -q);
      u.add_row_multiple(k, r, -q);
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

IMat hnf(const IMat& m) { return hnf_with_transform(m).h; }

// ---------------------------------------------------------------- Smith

SnfResult snf(const IMat& m) {
  SnfResult res{m, IMat::identity(m.rows()), IMat::identity(m.cols())};
  IMat& d = res.d;
  IMat& u = res.u;
  IMat& v = res.v;
  const std::size_t steps = std::min(d.rows(), d.cols());
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = d.rows(), pj = d.cols();
      for (std::size_t i = t; i < d.rows(); ++i) {
        for (std::size_t j = t; j < d.cols(); ++j) {
          if (d(i, j) != 0 && (pi == d.rows() || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == d.rows()) break;
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);

      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        const BigInt a = d(t, t);
        const BigInt b = d(i, t);
        if (divides(a, b)) {
          // plain subtraction keeps the pivot and the cleared row intact
          const BigInt q = -b / a;
          d.add_row_multiple(i, t, q);
          u.add_row_multiple(i, t, q);
          continue;
        }
        const ExtGcd e = ext_gcd(a, b);
        const BigInt bg = -b / e.g;
        const BigInt ag = a / e.g;
        d.combine_rows(t, i, e.s, e.t, bg, ag);
        u.combine_rows(t, i, e.s, e.t, bg, ag);
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        const BigInt a = d(t, t);
        const BigInt b = d(t, j);
        if (divides(a, b)) {
          const BigInt q = -b / a;
          d.add_col_multiple(j, t, q);
          v.add_col_multiple(j, t, q);
          continue;
        }
        const ExtGcd e = ext_gcd(a, b);
        const BigInt bg = -b / e.g;
        const BigInt ag = a / e.g;
        d.combine_cols(t, j, e.s, e.t, bg, ag);
        v.combine_cols(t, j, e.s, e.t, bg, ag);
      }
      bool column_clear = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) column_clear = column_clear && d(i, t) == 0;
      if (!column_clear) continue;

      // Enforce d_t | every remaining entry.
      std::size_t bad_row = d.rows();
      for (std::size_t i = t + 1; i < d.rows() && bad_row == d.rows(); ++i) {
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
          if (!divides(d(t, t), d(i, j))) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row == d.rows()) break;
      d.add_row_multiple(t, bad_row, 1);
      u.add_row_multiple(t, bad_row, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return res;
}

// ---------------------------------------------------------------- division

std::optional<IMat> right_divides_via_hnf(const IMat& m, const IMat& n) {
  if (n.cols() != m.cols()) throw InputError("right division: column counts differ");
  const HnfResult hr = hnf_with_transform(m);
  IMat q(n.rows(), m.rows());
  std::vector<BigInt> residual(m.cols());
  std::vector<BigInt> coeff(hr.rank);
  for (std::size_t row = 0; row < n.rows(); ++row) {
    for (std::size_t c = 0; c < m.cols(); ++c) residual[c] = n(row, c);
    for (std::size_t k = 0; k < hr.rank; ++k) {
      const std::size_t p = hr.pivot_cols[k];
      if (!divides(hr.h(k, p), residual[p])) return std::nullopt;
      coeff[k] = residual[p] / hr.h(k, p);
      if (coeff[k] == 0) continue;
      for (std::size_t c = p; c < m.cols(); ++c) {
        mpz_submul(residual[c].get_mpz_t(), coeff[k].get_mpz_t(), hr.h(k, c).get_mpz_t());
      }
    }
    for (const auto& r : residual) {
      if (r != 0) return std::nullopt;
    }
    for (std::size_t k = 0; k < hr.rank; ++k) {
      if (coeff[k] == 0) continue;
      for (std::size_t c = 0; c < m.rows(); ++c) {
        mpz_addmul(q(row, c).get_mpz_t(), coeff[k].get_mpz_t(), hr.u(k, c).get_mpz_t());
      }
    }
  }
  return q;
}

std::optional<IMat> right_divides(const IMat& m, const IMat& n) {
  if (n.cols() != m.cols()) throw InputError("right division: column counts differ");
  if (!m.is_square()) return right_divides_via_hnf(m, n);
  const BigInt det = determinant(m);
  if (det == 0) return right_divides_via_hnf(m, n);
  IMat q = n * adjugate(m);
  for (std::size_t i = 0; i < q.rows(); ++i) {
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (!divides(det, q(i, j))) return std::nullopt;
      mpz_divexact(q(i, j).get_mpz_t(), q(i, j).get_mpz_t(), det.get_mpz_t());
    }
  }
  return q;
}

// ---------------------------------------------------------------- cokernel / classes

BigInt CokernelStructure::order() const {
  BigInt p = 1;
  for (const auto& d : elementary_divisors) p *= d;
  return p;
}

CokernelStructure cokernel(const IMat& m) {
  if (!m.is_square()) throw InputError("cokernel of a non-square matrix");
  const SnfResult s = snf(m.transpose());
  CokernelStructure out;
  for (std::size_t i = 0; i < s.d.rows(); ++i) {
    const BigInt& e = s.d(i, i);
    if (e == 0) {
      ++out.free_rank;
    } else if (e > 1) {
      out.elementary_divisors.push_back(e);
    }
  }
  return out;
}

std::vector<IMat> subgroup_lattices(const std::vector<BigInt>& diagonal) {
  const std::size_t k = diagonal.size();
  for (const auto& s : diagonal) {
    if (s <= 0) throw DomainError("subgroup enumeration needs a finite group");
  }
  std::set<IMat> seen;
  std::deque<IMat> queue;
  const IMat start = IMat::diagonal(diagonal);
  seen.insert(start);
  queue.push_back(start);
  IMat stacked(k + 1, k);
  std::vector<BigInt> v(k);
  while (!queue.empty()) {
    const IMat h = std::move(queue.front());
    queue.pop_front();
    // The box prod [0, h_ii) holds one representative per coset of the
    // lattice; each nonzero coset extends h by one generator.
    std::fill(v.begin(), v.end(), BigInt(0));
    for (;;) {
      std::size_t pos = 0;
      while (pos < k) {
        ++v[pos];
        if (v[pos] < h(pos, pos)) break;
        v[pos] = 0;
        ++pos;
      }
      if (pos == k) break;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) stacked(i, j) = h(i, j);
      }
      for (std::size_t j = 0; j < k; ++j) stacked(k, j) = v[j];
      const IMat full = hnf(stacked);
      IMat next(k, k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) next(i, j) = full(i, j);
      }
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

IMat class_from_snf_lattice(const IMat& u_inverse_transpose, const IMat& lattice_basis) {
  return hnf(lattice_basis * u_inverse_transpose);
}

std::vector<DivisorClass> divisor_classes(const IMat& m, const BigInt& bound) {
  if (!m.is_square()) throw InputError("divisor classes of a non-square matrix");
  const BigInt det = determinant(m);
  if (det == 0) throw DomainError("singular matrix has infinitely many divisor classes");
  if (abs(det) > bound) {
    throw DomainError("|det| = " + BigInt(abs(det)).get_str() + " exceeds enumeration bound " + bound.get_str());
  }
  const SnfResult s = snf(m.transpose());
  std::vector<BigInt> diagonal;
  for (std::size_t i = 0; i < s.d.rows(); ++i) diagonal.push_back(s.d(i, i));
  const IMat back = inverse_unimodular(s.u).transpose();
  std::set<IMat> reps;
  for (const IMat& lattice : subgroup_lattices(diagonal)) reps.insert(class_from_snf_lattice(back, lattice));
  std::vector<DivisorClass> out;
  out.reserve(reps.size());
  for (const auto& r : reps) out.push_back({r});
  return out;
}

// ---------------------------------------------------------------- io

nlohmann::json to_json(const IMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

IMat matrix_from_json(const nlohmann::json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows) throw InputError("matrix JSON: wrong row count");
    IMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const auto& row = entries[i];
      if (!row.is_array() || row.size() != cols) throw InputError("matrix JSON: wrong column count");
      for (std::size_t c = 0; c < cols; ++c) {
        const auto& e = row[c];
        if (e.is_string()) {
          m(i, c) = parse_bigint(e.get<std::string>());
        } else if (e.is_number_integer()) {
          m(i, c) = parse_bigint(e.dump());
        } else {
          throw InputError("matrix JSON: entries must be decimal strings");
        }
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed matrix JSON: ") + e.what());
  }
}

std::string to_string(const IMat& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace divimat
