#pragma once

// Independent reference computations used only by tests. Nothing here calls
// the normal-form or division-polynomial code under test.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "divimat/bigint.hpp"
#include "divimat/imat.hpp"

namespace oracle {

using divimat::BigInt;
using divimat::BigRat;
using divimat::IMat;

// Leibniz expansion over all permutations.
inline BigInt permutation_det(const IMat& m) {
  const std::size_t d = m.rows();
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    BigInt term = sign;
    for (std::size_t i = 0; i < d; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline IMat minor_matrix(const IMat& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IMat s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
  return s;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) s.push_back(i);
    out.push_back(std::move(s));
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

// Determinantal divisors D_k = gcd of k x k minors; elementary divisors are
// D_k / D_{k-1}. Returns all of them including 1s and trailing 0s.
inline std::vector<BigInt> elementary_divisors_by_minors(const IMat& m) {
  const std::size_t r = std::min(m.rows(), m.cols());
  std::vector<BigInt> result;
  BigInt prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m.rows(), k, rs);
    subsets(m.cols(), k, cs);
    BigInt g = 0;
    for (const auto& a : rs)
      for (const auto& b : cs) g = divimat::gcd(g, permutation_det(minor_matrix(m, a, b)));
    if (prev == 0 || g == 0) {
      result.push_back(0);
      prev = 0;
    } else {
      result.push_back(g / prev);
      prev = g;
    }
  }
  return result;
}

// Subgroups of Z/d_1 x ... x Z/d_k counted as distinct closures of all
// k-tuples of elements (every subgroup of a k-generated abelian group is
// k-generated).
inline std::size_t brute_force_subgroup_count(const std::vector<long>& orders) {
  if (orders.empty()) return 1;
  const std::size_t k = orders.size();
  std::size_t size = 1;
  for (long o : orders) size *= static_cast<std::size_t>(o);
  auto decode = [&](std::size_t idx) {
    std::vector<long> v(k);
    for (std::size_t i = 0; i < k; ++i) {
      v[i] = static_cast<long>(idx % static_cast<std::size_t>(orders[i]));
      idx /= static_cast<std::size_t>(orders[i]);
    }
    return v;
  };
  auto encode = [&](const std::vector<long>& v) {
    std::size_t idx = 0;
    for (std::size_t i = k; i-- > 0;) idx = idx * static_cast<std::size_t>(orders[i]) + static_cast<std::size_t>(v[i]);
    return idx;
  };
  auto add = [&](std::size_t a, std::size_t b) {
    auto va = decode(a), vb = decode(b);
    for (std::size_t i = 0; i < k; ++i) va[i] = (va[i] + vb[i]) % orders[i];
    return encode(va);
  };
  std::set<std::vector<bool>> seen;
  std::vector<std::size_t> tuple(k, 0);
  while (true) {
    std::vector<bool> member(size, false);
    member[0] = true;
    std::vector<std::size_t> frontier{0};
    while (!frontier.empty()) {
      std::size_t e = frontier.back();
      frontier.pop_back();
      for (std::size_t g : tuple) {
        std::size_t s = add(e, g);
        if (!member[s]) {
          member[s] = true;
          frontier.push_back(s);
        }
      }
    }
    seen.insert(member);
    std::size_t pos = 0;
    while (pos < k && ++tuple[pos] == size) tuple[pos++] = 0;
    if (pos == k) break;
  }
  return seen.size();
}

// N * adj(M) / det(M) integral, using the permutation determinant.
inline bool divides_by_adjugate(const IMat& m, const IMat& n) {
  const std::size_t d = m.rows();
  const BigInt det = permutation_det(m);
  if (det == 0) return false;
  IMat adj(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t r = 0; r < d; ++r)
        if (r != j) rows.push_back(r);
      for (std::size_t c = 0; c < d; ++c)
        if (c != i) cols.push_back(c);
      BigInt cof = d == 1 ? BigInt(1) : permutation_det(minor_matrix(m, rows, cols));
      adj(i, j) = ((i + j) % 2 == 0) ? cof : BigInt(-cof);
    }
  const IMat p = n * adj;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!divimat::divides(det, p(i, j))) return false;
  return true;
}

// Every upper-triangular H with positive diagonal dividing |det M|, entries
// above the diagonal in [0, H_jj), that right-divides M.
inline std::size_t hnf_divisor_count(const IMat& m) {
  const std::size_t d = m.rows();
  const long det = std::abs(permutation_det(m).get_si());
  std::size_t count = 0;
  std::vector<long> diag(d, 1);
  std::function<void(std::size_t, long)> pick_diag = [&](std::size_t i, long remaining) {
    if (i == d) {
      // enumerate above-diagonal entries, column j reduced mod diag[j]
      std::vector<std::pair<std::size_t, std::size_t>> slots;
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < c; ++r) slots.emplace_back(r, c);
      IMat h(d, d);
      for (std::size_t t = 0; t < d; ++t) h(t, t) = diag[t];
      std::function<void(std::size_t)> fill = [&](std::size_t s) {
        if (s == slots.size()) {
          if (divides_by_adjugate(h, m)) ++count;
          return;
        }
        auto [r, c] = slots[s];
        for (long v = 0; v < diag[c]; ++v) {
          h(r, c) = v;
          fill(s + 1);
        }
      };
      fill(0);
      return;
    }
    for (long v = 1; v <= remaining; ++v)
      if (remaining % v == 0) {
        diag[i] = v;
        pick_diag(i + 1, remaining / v);
      }
  };
  pick_diag(0, det);
  return count;
}

// Chord-tangent arithmetic on y^2 = x^3 + A x + B over Q.
struct Pt {
  bool infinity = false;
  BigRat x, y;
};

inline Pt add(const Pt& p, const Pt& q, const BigRat& a) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  BigRat lambda;
  if (p.x == q.x) {
    if (p.y + q.y == 0) return {true, 0, 0};
    lambda = (3 * p.x * p.x + a) / (2 * p.y);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  BigRat x3 = lambda * lambda - p.x - q.x;
  BigRat y3 = lambda * (p.x - x3) - p.y;
  x3.canonicalize();
  y3.canonicalize();
  return {false, x3, y3};
}

inline Pt multiple(long n, const Pt& p, const BigRat& a) {
  Pt acc{true, 0, 0};
  for (long i = 0; i < n; ++i) acc = add(acc, p, a);
  return acc;
}

inline IMat random_unimodular(std::size_t d, std::mt19937_64& rng, int steps = 12) {
  IMat u = IMat::identity(d);
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    u.add_row_multiple(i, j, coef(rng));
    if (s % 5 == 0) u.swap_rows(i, j);
  }
  return u;
}

inline IMat random_matrix(std::size_t d, std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> coef(lo, hi);
  IMat m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = coef(rng);
  return m;
}

}  // namespace oracle
