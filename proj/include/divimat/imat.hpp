#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "divimat/bigint.hpp"

namespace divimat {

// Dense row-major matrix of arbitrary-precision integers.
class IMat {
 public:
  IMat() = default;
  IMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  IMat(std::initializer_list<std::initializer_list<long>> rows);

  static IMat identity(std::size_t d);
  static IMat diagonal(const std::vector<BigInt>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IMat transpose() const;
  bool is_zero() const;

  friend IMat operator*(const IMat& a, const IMat& b);
  friend IMat operator+(const IMat& a, const IMat& b);
  friend IMat operator-(const IMat& a, const IMat& b);
  friend bool operator==(const IMat& a, const IMat& b) = default;
  // Lexicographic on (rows, cols, entries); used to sort class lists.
  friend bool operator<(const IMat& a, const IMat& b);

  // Row operations, used by the normal-form routines.
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row_i <- row_i + k * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const BigInt& k);
  void add_col_multiple(std::size_t i, std::size_t j, const BigInt& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);
  // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
  void combine_rows(std::size_t i, std::size_t j, const BigInt& a, const BigInt& b, const BigInt& c,
                    const BigInt& d);
  void combine_cols(std::size_t i, std::size_t j, const BigInt& a, const BigInt& b, const BigInt& c,
                    const BigInt& d);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> a_;
};

BigInt determinant(const IMat& m);  // fraction-free (Bareiss) elimination
IMat adjugate(const IMat& m);
bool is_unimodular(const IMat& m);

struct HnfResult {
  IMat h;  // row-style Hermite form, zero rows last
  IMat u;  // unimodular, h == u * m
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

// Row-style Hermite normal form: echelon, positive pivots, entries above each
// pivot reduced into [0, pivot). For square nonsingular input this is the
// canonical representative of the left coset GL_d(Z) * m.
HnfResult hnf_with_transform(const IMat& m);
IMat hnf(const IMat& m);

struct SnfResult {
  IMat d;  // diagonal, d_i | d_{i+1}, non-negative
  IMat u;  // unimodular
  IMat v;  // unimodular, d == u * m * v
};

SnfResult snf(const IMat& m);

// Returns Q with n == Q * m when it exists.
std::optional<IMat> right_divides(const IMat& m, const IMat& n);
// The general route via the row Hermite form; works for singular m too.
std::optional<IMat> right_divides_via_hnf(const IMat& m, const IMat& n);

struct CokernelStructure {
  std::vector<BigInt> elementary_divisors;  // each > 1, successive divisibility
  std::size_t free_rank = 0;

  BigInt order() const;  // product of elementary divisors (finite part)
  friend bool operator==(const CokernelStructure&, const CokernelStructure&) = default;
};

// Structure of Z^d / m^T Z^d.
CokernelStructure cokernel(const IMat& m);

struct DivisorClass {
  IMat representative;  // Hermite normal form
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

inline const BigInt kDefaultClassBound = 10000;

// All right divisor classes of a nonsingular m, sorted by representative.
std::vector<DivisorClass> divisor_classes(const IMat& m, const BigInt& bound = kDefaultClassBound);

// Lattices between the SNF lattice diag(s) Z^k and Z^k, as row-HNF bases.
std::vector<IMat> subgroup_lattices(const std::vector<BigInt>& diagonal);

// Maps a lattice given in SNF coordinates of m^T (rows of lattice_basis) back
// to the canonical divisor-class representative of m. u_inverse_transpose is
// (U^-1)^T for the left transform U of snf(m^T).
IMat class_from_snf_lattice(const IMat& u_inverse_transpose, const IMat& lattice_basis);

IMat inverse_unimodular(const IMat& m);

nlohmann::json to_json(const IMat& m);
IMat matrix_from_json(const nlohmann::json& j);
std::string to_string(const IMat& m);

}  // namespace divimat
