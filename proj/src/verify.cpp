#include "divimat/verify.hpp"

#include <random>

#include "divimat/closed_forms.hpp"
#include "divimat/error.hpp"

namespace divimat {

namespace {

std::string tag(long n) { return "n=" + std::to_string(n); }

void fail(const std::string& what) { throw IdentityViolation(what); }

}  // namespace

CheckLog verify_eds_identity(long n_min, long n_max) {
  const auto dp = std::make_shared<const DivisionPolynomials>(CurveE::symbolic());
  const auto f = family_elliptic(dp);
  CheckLog log;
  for (long n = n_min; n <= n_max; ++n) {
    const SPoly direct = f.jacobian(n).determinant();
    const SPoly closed = eds_det_closed(*dp, f.ring(), n);  // throws if the three forms disagree
    if (direct != closed) {
      fail("eds identity " + tag(n) + ": det J_n - closed form = " + to_string(direct - closed));
    }
    log.push_back("eds-identity " + tag(n) + " terms=" + std::to_string(direct.terms().size()));
  }
  return log;
}

CheckLog verify_borel_closed(long n_max, long displayed_max) {
  const auto f = family_borel();
  CheckLog log;
  for (long n = 1; n <= n_max; ++n) {
    const SPoly direct = f.jacobian(n).determinant();
    const SPoly closed = borel_det(n);
    if (direct != closed) fail("borel closed form " + tag(n) + ": difference " + to_string(direct - closed));
    std::string line = "borel-closed " + tag(n) + " det";
    if (n <= displayed_max) {
      const PolyMatrix shown = borel_displayed_jacobian(n);
      const PolyMatrix& j = f.jacobian(n);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
          if (shown(r, c) != j(r, c)) {
            fail("borel displayed matrix " + tag(n) + " entry (" + std::to_string(r + 1) + "," +
                 std::to_string(c + 1) + "): " + to_string(shown(r, c)) + " != " + to_string(j(r, c)));
          }
      line += " matrix";
    }
    log.push_back(line);
  }
  return log;
}

CheckLog verify_gl2_closed(std::uint64_t seed, int count, int repeated, long n_max) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-5, 5);
  const auto f = family_gl2();
  CheckLog log;
  for (int t = 0; t < count; ++t) {
    IMat m(2, 2);
    if (t < repeated) {
      // beta = tr^2 - 4 det = 0: [[c, k], [0, c]] or [[c + 1, 1], [-1, c - 1]]
      const int c = small(rng), k = small(rng);
      m = t % 2 == 0 ? IMat{{c, k}, {0, c}} : IMat{{c + 1, 1}, {-1, c - 1}};
    } else {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) m(i, j) = small(rng);
    }
    const std::vector<BigInt> pt{m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
    const BigInt alpha = m(0, 0) + m(1, 1);
    const bool beta_zero = alpha * alpha == 4 * determinant(m);
    for (long n = 1; n <= n_max; ++n) {
      const BigInt direct = determinant(jacobian_at(f, n, pt));
      const BigInt closed = gl2_det(n, m);
      const std::string where = "gl2 closed form M=" + to_string(m) + " " + tag(n);
      if (direct != closed) fail(where + ": " + direct.get_str() + " != " + closed.get_str());
      if (beta_zero && BigRat(direct) != gl2_det_repeated_root(n, alpha)) {
        fail(where + ": repeated-root limit " + to_string(gl2_det_repeated_root(n, alpha)) + " != " +
             direct.get_str());
      }
    }
    log.push_back("gl2-closed M=" + to_string(m) + (beta_zero ? " beta=0" : "") + " n<=" + std::to_string(n_max));
  }
  return log;
}

std::vector<BigInt> sample_point(const EndoFamily& f, std::uint64_t seed, int index) {
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1));
  std::uniform_int_distribution<int> v(-4, 4);
  std::vector<BigInt> x(f.dimension());
  for (auto& c : x) c = v(rng);
  if (f.name() == "gm")
    while (x[0] == 0) x[0] = v(rng);
  return x;
}

CheckLog verify_chain_rule_pairs(const EndoFamily& f, std::uint64_t seed, long mn_max, int points) {
  CheckLog log;
  for (int s = 0; s < points; ++s) {
    const auto x = sample_point(f, seed, s);
    std::string at;
    for (const auto& c : x) at += (at.empty() ? "" : ",") + c.get_str();
    long pairs = 0;
    for (long m = 1; m <= mn_max; ++m)
      for (long n = 1; m * n <= mn_max; ++n) {
        const std::string where = f.name() + " m=" + std::to_string(m) + " n=" + std::to_string(n) + " at (" + at + ")";
        const IMat jmn = jacobian_at(f, m * n, x);
        const IMat jn = jacobian_at(f, n, x);
        const IMat outer = jacobian_at(f, m, apply(f, n, x));
        if (!(outer * jn == jmn)) fail("chain rule " + where + ": J_mn != J_m([n]x) J_n");
        const auto q = right_divides(jn, jmn);
        if (!q) fail("right division " + where + ": J_n does not right-divide J_mn");
        if (determinant(jn) != 0 && !(*q == outer)) fail("right division " + where + ": quotient != J_m([n]x)");
        if (!divides(determinant(jn), determinant(jmn))) fail("det divisibility " + where);
        ++pairs;
      }
    log.push_back("chain-rule " + f.name() + " at (" + at + ") pairs=" + std::to_string(pairs));
  }
  return log;
}

CheckLog verify_cassels(long n_min, long n_max) {
  const auto f = family_elliptic(CurveE::symbolic());
  CheckLog log;
  for (long n = n_min; n <= n_max; ++n) {
    const PolyMatrix& j = f.jacobian(n);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) {
        const BigInt content = j(r, c).content();
        if (!divides(BigInt(n), content)) {
          fail("Cassels " + tag(n) + ": entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
               ") has content " + content.get_str());
        }
      }
    log.push_back("cassels " + tag(n) + " diag(n,n) right-divides J_n");
  }
  return log;
}

CheckLog verify_group_law(const EllipticContext& ctx, long n_max) {
  const auto& dp = ctx.divpoly();
  const std::map<std::string, BigRat> at{{"x", ctx.point().x}, {"y", ctx.point().y}};
  CheckLog log;
  for (long n = 1; n <= n_max; ++n) {
    const MultipleRecord& r = ctx.multiple(n);
    BigRat via = evaluate(dp.phi(n), at) / evaluate(dp.psi_tilde(n), at);
    via.canonicalize();
    if (via != r.x) fail("group law " + tag(n) + ": chord-tangent x = " + to_string(r.x) + ", phi/psi^2 = " + to_string(via));
    log.push_back("group-law " + tag(n) + " x=" + to_string(r.x) + " y=" + to_string(r.y));
  }
  return log;
}

CheckLog verify_integrality(const EllipticContext& ctx, long n_max, long ayad_max) {
  CheckLog log;
  for (long n = 1; n <= n_max; ++n) {
    const BigInt& d = ctx.det(n);  // both routes, integral
    std::string line = "integrality " + tag(n) + " digits=" + std::to_string(BigInt(abs(d)).get_str().size());
    if (n <= ayad_max) line += " Q_n=" + ayad_check(ctx, n).q_n.get_str();
    log.push_back(line);
  }
  return log;
}

}  // namespace divimat
