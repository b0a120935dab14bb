#pragma once

#include <optional>
#include <string>
#include <vector>

#include "divimat/bigint.hpp"
#include "divimat/divpoly.hpp"
#include "divimat/endo.hpp"
#include "divimat/imat.hpp"
#include "divimat/poly.hpp"

namespace divimat {

// U_0 = 0, U_1 = 1, U_n = P U_{n-1} - Q U_{n-2}.
BigInt lucas_u(long n, const BigInt& p, const BigInt& q);

// n^2 X^(n-1) Z^(n-1) (X^n - Z^n)/(X - Z) over the Borel ring (X, Y, Z).
SPoly borel_det(long n);
BigInt borel_det_at(long n, const BigInt& x, const BigInt& z);

// The Jacobian as displayed with P(X, Z) = (n X^(n-1) (X - Z) - (X^n - Z^n)) / (X - Z)^2,
// every quotient taken as an exact polynomial division.
PolyMatrix borel_displayed_jacobian(long n);

// n^2 det(M)^(n-1) U_n(tr M, det M)^2 for a 2x2 integer matrix.
BigInt gl2_det(long n, const IMat& m);
// The repeated-eigenvalue limit n^4 (alpha/2)^(4(n-1)), kept rational.
BigRat gl2_det_repeated_root(long n, const BigInt& alpha);

// Three closed forms for det J_n of the elliptic family over (X, Z, params):
//   n^2 Z^(2(n^2-1)) W(phi_n, psi_n^2)(X/Z)
//   n^3 Z^(2(n^2-1)) (psi_2n / psi_2)(X/Z)
//   2 n^3 Z^(2(n^2-1)) (psi_n omega_n / psi_2)(X/Z)
struct EllipticDetForms {
  SPoly wronskian;
  SPoly eta;
  SPoly omega;
};
EllipticDetForms eds_det_forms(const DivisionPolynomials& dp, const Ring& target, long n);
// Checks the three forms agree and returns the common value.
SPoly eds_det_closed(const DivisionPolynomials& dp, const Ring& target, long n);

// Linear recurrence T_n = A T_{n-1} + B T_{n-2} with n-independent square
// matrices A, B over the fraction field of the terms' ring. Solved by
// fraction-free elimination; all divisions are exact polynomial divisions.
struct RecurrenceSolution {
  SPoly denominator;     // D; A = a_numerator / D, B = b_numerator / D
  PolyMatrix a_numerator;
  PolyMatrix b_numerator;
  std::optional<PolyMatrix> a;  // set when D divides every numerator entry
  std::optional<PolyMatrix> b;
  bool unique = true;
};

struct RecurrenceInconsistency {
  long index = 0;            // equation T_index = A T_{index-1} + B T_{index-2}
  std::size_t term_row = 0;  // row of T being solved for
  std::size_t term_col = 0;  // column of the equation that survives elimination
  SPoly residual;            // elimination reduces the system to 0 = residual
  SPoly pivot_minor;         // the nonzero minor the residual is scaled by
};

struct RecurrenceResult {
  long first_index = 0;  // index of terms[0]
  long last_index = 0;
  std::optional<RecurrenceSolution> solution;
  std::optional<RecurrenceInconsistency> inconsistency;
  // Extension check of a found solution against further terms.
  long checked_through = 0;
  std::optional<long> first_failure;
};

RecurrenceResult solve_matrix_recurrence(const std::vector<PolyMatrix>& terms, long first_index);
// Checks a solution against terms[k] = T_{first_index + k}; fills
// checked_through and first_failure.
void extend_recurrence_check(RecurrenceResult& result, const std::vector<PolyMatrix>& terms, long first_index);

struct BorelRecurrenceReport {
  RecurrenceResult matrix;       // Borel J_2..J_5, extension through J_20
  RecurrenceResult lucas;        // scalar control, U_n(P, Q)
  RecurrenceResult determinant;  // det J_n of the Borel family as 1x1 terms
  bool no_recurrence = false;    // the matrix system has no n-independent solution
  std::string summary;
};

BorelRecurrenceReport falsify_borel_matrix_recurrence(long extension_through = 20);

std::string describe(const RecurrenceResult& r);

}  // namespace divimat
