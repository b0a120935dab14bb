#include <map>
#include <random>

#include "doctest.h"

#include "divimat/bigint.hpp"
#include "divimat/error.hpp"
#include "divimat/poly.hpp"

using namespace divimat;

namespace {

const Ring kXYZ({"x", "y", "z"});

SPoly P(const char* text, const Ring& r = kXYZ) { return parse_poly(r, text); }

SPoly random_poly(std::mt19937_64& rng, const Ring& ring, int terms = 4, unsigned max_exp = 3) {
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<unsigned> ex(0, max_exp);
  std::vector<SPoly::Term> out;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      m.exp[i] = static_cast<std::uint16_t>(ex(rng));
      m.degree += m.exp[i];
    }
    out.emplace_back(m, coef(rng));
  }
  return SPoly::from_terms(ring, std::move(out));
}

}  // namespace

TEST_CASE("bigint parsing and rationals") {
  CHECK(parse_bigint("-123456789012345678901234567890") == BigInt("-123456789012345678901234567890"));
  CHECK_THROWS_AS(parse_bigint("12a"), InputError);
  CHECK_THROWS_AS(parse_bigint(""), InputError);
  BigRat r = parse_bigrat("6/-4");
  CHECK(r == BigRat(-3, 2));
  CHECK(r.get_den() > 0);
  CHECK(to_string(parse_bigrat("10/5")) == "2");
  CHECK_THROWS_AS(parse_bigrat("1/0"), InputError);
  CHECK(coprime_split_part(BigInt(-368 * 7), BigInt(46)) == 368);
  CHECK(floor_div(BigInt(-7), BigInt(2)) == -4);
}

TEST_CASE("canonical form and printing") {
  CHECK(P("0").is_zero());
  CHECK(to_string(P("x - x")) == "0");
  CHECK(P("x*y + 2") == P("2 + y*x"));
  CHECK(to_string(P("3*x^4 + 6*x^2*z - z^2 + 12*x*y")) == "3*x^4 + 6*x^2*z + 12*x*y - z^2");
  CHECK(to_string(P("-(x+1)^2")) == "-x^2 - 2*x - 1");
  CHECK_THROWS_AS(P("w + 1"), InputError);
  CHECK_THROWS_AS(P("x +"), InputError);
}

TEST_CASE("derivative") {
  const Ring r({"x"});
  CHECK(derivative(P("x^5", r), "x") == P("5*x^4", r));
  CHECK(derivative(P("7", r), "x").is_zero());
  CHECK_THROWS_AS(derivative(P("x", r), "q"), InputError);
  // Borel second coordinate Y (X^2 + X Z + Z^2)
  const Ring b({"X", "Y", "Z"});
  CHECK(derivative(parse_poly(b, "Y*(X^2 + X*Z + Z^2)"), "X") == parse_poly(b, "Y*(2*X + Z)"));
}

TEST_CASE("substitute") {
  const Ring r({"x"});
  CHECK(substitute(P("x^3", r), {{"x", P("x^2", r)}}) == P("x^6", r));
  const SPoly p = P("x^2*y - 3*z + 1");
  CHECK(substitute(p, {{"x", P("x")}, {"y", P("y")}, {"z", P("z")}}) == p);
  // [2] o [3] = [6] for the multiplicative group
  CHECK(substitute(P("x^2", r), {{"x", P("x^3", r)}}) == P("x^6", r));
  CHECK_THROWS_AS(substitute(p, {{"x", P("x")}}), InputError);
}

TEST_CASE("exact division") {
  const Ring r({"X", "Z"});
  CHECK(exact_divide(parse_poly(r, "X^3 - Z^3"), parse_poly(r, "X - Z")) == parse_poly(r, "X^2 + X*Z + Z^2"));
  const SPoly q = parse_poly(r, "3*X^2*Z - 5*Z^4 + X");
  CHECK(exact_divide(q, q) == SPoly::constant(r, 1));
  CHECK_THROWS_AS(exact_divide(parse_poly(r, "X^2 + 1"), parse_poly(r, "X - Z")), InexactDivision);
  CHECK_THROWS_AS(exact_divide(parse_poly(r, "3*X"), parse_poly(r, "2")), InexactDivision);
  CHECK_THROWS(exact_divide(q, SPoly(r)));
}

TEST_CASE("curve reduction") {
  const Ring r({"x", "y", "A", "B"});
  CHECK(reduce_mod_curve(parse_poly(r, "y^2"), std::string("A"), std::string("B")) == parse_poly(r, "x^3 + A*x + B"));
  CHECK(reduce_mod_curve(parse_poly(r, "y^3"), std::string("A"), std::string("B")) ==
        parse_poly(r, "y*(x^3 + A*x + B)"));
  const SPoly psi3 = parse_poly(r, "3*x^4 + 6*A*x^2 + 12*B*x - A^2");
  CHECK(reduce_mod_curve(psi3, std::string("A"), std::string("B")) == psi3);
  const Ring n({"x", "y"});
  CHECK(reduce_mod_curve(parse_poly(n, "y^4"), BigInt(-1), BigInt(1)) == parse_poly(n, "(x^3 - x + 1)^2"));
}

TEST_CASE("evaluation") {
  const Ring r({"x"});
  CHECK(evaluate(P("x^2 + 1", r), {{"x", BigRat(2)}}) == 5);
  CHECK(evaluate(SPoly(r), {{"x", BigRat(7)}}) == 0);
  CHECK(evaluate(P("x^2", r), {{"x", BigRat(1, 2)}}) == BigRat(1, 4));
  CHECK_THROWS_AS(evaluate(P("x*y"), {{"x", BigRat(1)}}), InputError);
  // Borel determinant closed form at (2, 1, 1), n = 2
  const Ring b({"X", "Y", "Z"});
  CHECK(evaluate(parse_poly(b, "4*X*Z*(X + Z)"), {{"X", BigRat(2)}, {"Y", BigRat(1)}, {"Z", BigRat(1)}}) == 24);
}

TEST_CASE("homogenize and json round trip") {
  const Ring x({"x", "A"});
  const Ring xz({"X", "Z", "A"});
  const SPoly h = homogenize(parse_poly(x, "x^2 + A"), "x", xz, "X", "Z", 3);
  CHECK(h == parse_poly(xz, "X^2*Z + A*Z^3"));
  const SPoly p = P("123456789012345678901234567890*x^3*y - z + 4");
  CHECK(poly_from_json(to_json(p)) == p);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"({"vars": ["x"], "terms": [{"exp": [1, 2], "coef": "1"}]})")),
                  InputError);
}

TEST_CASE("ring laws, Leibniz, division and evaluation on random instances") {
  std::mt19937_64 rng(20241015);
  std::uniform_int_distribution<int> small(-5, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const SPoly p = random_poly(rng, kXYZ), q = random_poly(rng, kXYZ), s = random_poly(rng, kXYZ);
    CHECK((p + q) + s == p + (q + s));
    CHECK(p * (q + s) == p * q + p * s);
    CHECK(p * q == q * p);
    CHECK(p - p == SPoly(kXYZ));
    for (const char* v : {"x", "y", "z"}) CHECK(derivative(p * q, v) == derivative(p, v) * q + p * derivative(q, v));
    if (!q.is_zero()) CHECK(exact_divide(p * q, q) == p);

    std::map<std::string, SPoly> sigma{{"x", q}, {"y", s}, {"z", p}};
    std::map<std::string, BigRat> pt{{"x", small(rng)}, {"y", BigRat(small(rng), 3)}, {"z", small(rng)}};
    std::map<std::string, BigRat> image;
    for (auto& [k, v] : sigma) image[k] = evaluate(v, pt);
    CHECK(evaluate(substitute(p, sigma), pt) == evaluate(p, image));
  }
}
