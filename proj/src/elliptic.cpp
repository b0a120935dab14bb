#include "divimat/elliptic.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "divimat/error.hpp"

namespace divimat {

RatPoint make_point(const CurveE& curve, const BigInt& x_num, const BigInt& x_den_sqrt, const BigRat& y) {
  if (!curve.is_numeric()) throw InputError("a rational point needs numeric curve coefficients");
  if (curve.discriminant() == 0) throw InputError("singular curve " + curve.describe() + " (discriminant 0)");
  if (x_den_sqrt < 1) throw InputError("x_den_sqrt must be a positive integer");
  if (gcd(x_num, x_den_sqrt) != 1) throw InputError("x = a/b^2 needs gcd(a, b) = 1");
  RatPoint p{curve, x_num, x_den_sqrt, BigRat(x_num, x_den_sqrt * x_den_sqrt), y};
  p.x.canonicalize();
  p.y.canonicalize();
  const BigRat rhs = p.x * p.x * p.x + BigRat(*curve.a) * p.x + BigRat(*curve.b);
  if (p.y * p.y != rhs) {
    throw InputError("point (" + to_string(p.x) + ", " + to_string(p.y) + ") is not on " + curve.describe());
  }
  return p;
}

namespace {

std::string json_text(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("fixture is missing \"") + key + "\"");
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError(std::string("fixture field \"") + key + "\" must be a decimal string");
}

}  // namespace

Fixture fixture_from_json(const nlohmann::json& j, std::string name) {
  if (!j.is_object() || !j.contains("curve") || !j.contains("point")) {
    throw InputError("fixture needs \"curve\" and \"point\" objects");
  }
  const auto& c = j.at("curve");
  const auto& p = j.at("point");
  const CurveE curve = CurveE::numeric(parse_bigint(json_text(c, "A")), parse_bigint(json_text(c, "B")));
  if (name.empty() && j.contains("name") && j.at("name").is_string()) name = j.at("name").get<std::string>();
  return {std::move(name), make_point(curve, parse_bigint(json_text(p, "x_num")),
                                      parse_bigint(json_text(p, "x_den_sqrt")), parse_bigrat(json_text(p, "y")))};
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open fixture '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("fixture '" + path + "' is not valid JSON: " + e.what());
  }
  return fixture_from_json(j, path);
}

nlohmann::json to_json(const Fixture& f) {
  const auto& p = f.point;
  return {{"name", f.name},
          {"curve", {{"A", p.curve.a->get_str()}, {"B", p.curve.b->get_str()}}},
          {"point", {{"x_num", p.a.get_str()}, {"x_den_sqrt", p.b.get_str()}, {"y", to_string(p.y)}}}};
}

// ------------------------------------------------------------- group law

namespace {

struct Affine {
  bool infinity = true;
  BigRat x, y;
};

Affine add(const Affine& p, const Affine& q, const BigRat& a) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  BigRat lambda;
  if (p.x == q.x) {
    if (p.y + q.y == 0) return {};
    lambda = (3 * p.x * p.x + a) / (2 * p.y);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  Affine r{false, lambda * lambda - p.x - q.x, 0};
  r.x.canonicalize();
  r.y = lambda * (p.x - r.x) - p.y;
  r.y.canonicalize();
  return r;
}

MultipleRecord record(long n, const Affine& q) {
  MultipleRecord r{n, q.x, q.y, q.x.get_num(), 0};
  const BigInt den = q.x.get_den();
  if (!mpz_perfect_square_p(den.get_mpz_t())) {
    throw IdentityViolation("denominator of x(" + std::to_string(n) + "P) is not a square");
  }
  mpz_sqrt(r.b_n.get_mpz_t(), den.get_mpz_t());
  return r;
}

}  // namespace

MultipleRecord point_mul(long n, const RatPoint& p) {
  if (n < 1) throw DomainError("multiple index must be positive");
  const BigRat a(*p.curve.a);
  Affine acc, base{false, p.x, p.y};
  for (long e = n; e > 0; e >>= 1) {
    if (e & 1) acc = add(acc, base, a);
    if (e > 1) base = add(base, base, a);
  }
  if (acc.infinity) throw DomainError(std::to_string(n) + "P is the point at infinity (torsion point)");
  return record(n, acc);
}

void require_infinite_order(const RatPoint& p) {
  const BigRat a(*p.curve.a);
  Affine acc, base{false, p.x, p.y};
  for (long k = 1; k <= 12; ++k) {
    acc = add(acc, base, a);
    if (acc.infinity) throw DomainError("point has finite order " + std::to_string(k));
  }
}

// ------------------------------------------------------------- context

EllipticContext::EllipticContext(RatPoint p)
    : point_(std::move(p)),
      dp_(std::make_shared<const DivisionPolynomials>(point_.curve)),
      family_(family_elliptic(dp_)) {
  require_infinite_order(point_);
}

void EllipticContext::extend_psi(long k) const {
  const BigRat& x = point_.x;
  const BigRat& y = point_.y;
  const BigRat a(*point_.curve.a), b(*point_.curve.b);
  if (psi_.empty()) {
    const BigRat x2 = x * x;
    psi_.push_back(0);
    psi_.push_back(1);
    psi_.push_back(2 * y);
    psi_.push_back(3 * x2 * x2 + 6 * a * x2 + 12 * b * x - a * a);
    psi_.push_back(4 * y * (x2 * x2 * x2 + 5 * a * x2 * x2 + 20 * b * x2 * x - 5 * a * a * x2 - 4 * a * b * x -
                            8 * b * b - a * a * a));
    for (auto& v : psi_) v.canonicalize();
  }
  while (static_cast<long>(psi_.size()) <= k) {
    const long idx = static_cast<long>(psi_.size());
    const long m = idx / 2;
    BigRat v;
    if (idx % 2 == 1) {
      v = psi_[m + 2] * psi_[m] * psi_[m] * psi_[m] - psi_[m - 1] * psi_[m + 1] * psi_[m + 1] * psi_[m + 1];
    } else {
      v = psi_[m] * (psi_[m + 2] * psi_[m - 1] * psi_[m - 1] - psi_[m - 2] * psi_[m + 1] * psi_[m + 1]) / psi_[2];
    }
    v.canonicalize();
    psi_.push_back(std::move(v));
  }
}

BigRat EllipticContext::psi_value(long k) const {
  if (k < 0) throw DomainError("negative division-polynomial index");
  std::lock_guard lock(mu_);
  extend_psi(k);
  return psi_[static_cast<std::size_t>(k)];
}

const MultipleRecord& EllipticContext::multiple(long n) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = multiples_.find(n); it != multiples_.end()) return it->second;
  }
  MultipleRecord r = point_mul(n, point_);
  std::lock_guard lock(mu_);
  return multiples_.emplace(n, std::move(r)).first->second;
}

IMat EllipticContext::jacobian(long n) const { return jacobian_at(family_, n, xz()); }

const BigInt& EllipticContext::det(long n) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = dets_.find(n); it != dets_.end()) return it->second;
  }
  BigInt closed = det_closed(*this, n);
  const BigInt direct = det_direct(*this, n);
  if (closed != direct) {
    throw IdentityViolation("det J_" + std::to_string(n) + "(a, b^2): direct Jacobian " + direct.get_str() +
                            " != closed form " + closed.get_str());
  }
  std::lock_guard lock(mu_);
  return dets_.emplace(n, std::move(closed)).first->second;
}

BigInt det_direct(const EllipticContext& ctx, long n) { return determinant(ctx.jacobian(n)); }

BigInt det_closed(const EllipticContext& ctx, long n) {
  if (n < 1) throw DomainError("sequence index must be positive");
  const BigRat eta = ctx.psi_value(2 * n) / ctx.psi_value(2);
  BigRat v = eta * BigRat(BigInt(n) * n * n * pow(ctx.point().b, static_cast<unsigned long>(4 * (n * n - 1))));
  v.canonicalize();
  if (v.get_den() != 1) {
    throw IdentityViolation("det J_" + std::to_string(n) + "(a, b^2) is not an integer: " + to_string(v));
  }
  return v.get_num();
}

AyadReport ayad_check(const EllipticContext& ctx, long n) {
  const auto& p = ctx.point();
  const BigRat psi = ctx.psi_value(n);
  const MultipleRecord& m = ctx.multiple(n);
  BigRat q = psi * psi * BigRat(pow(p.b, static_cast<unsigned long>(2 * n * n))) / BigRat(m.b_n * m.b_n);
  q.canonicalize();
  const std::string where = "Q_" + std::to_string(n);
  if (q.get_den() != 1 || q <= 0) throw IdentityViolation(where + " = " + to_string(q) + " is not a positive integer");
  AyadReport r{n, q.get_num(), prime_support(q.get_num()), prime_support(p.curve.discriminant())};
  for (const auto& prime : r.q_primes) {
    if (!divides(prime, p.curve.discriminant())) {
      throw IdentityViolation(where + " = " + r.q_n.get_str() + " has the prime " + prime.get_str() +
                              " outside the discriminant");
    }
  }
  return r;
}

// ------------------------------------------------------------- primitivity

std::vector<long> proper_divisors(long n) {
  std::vector<long> out;
  for (long m = 1; m < n; ++m)
    if (n % m == 0) out.push_back(m);
  return out;
}

ScanEntry scan_index(const EllipticContext& ctx, long n, const FactorBudget& budget) {
  ScanEntry e;
  e.n = n;
  e.det = ctx.det(n);
  if (n == 1) return e;  // nothing prior to be primitive against
  const BigInt n3 = BigInt(n) * n * n;
  if (!divides(n3, e.det)) throw IdentityViolation("n^3 does not divide det J_" + std::to_string(n));
  BigInt r = abs(e.det / n3);
  r /= coprime_split_part(r, ctx.point().curve.discriminant());
  for (long m : proper_divisors(n)) {
    if (r == 1) break;
    r /= coprime_split_part(r, ctx.det(m));
  }
  e.primitive_part = r;
  e.coprime_to_n = gcd(r, BigInt(n)) == 1;
  if (r > 1) {
    const Factorization f = factor(r, budget);
    for (const auto& [p, k] : f.primes) e.primitive_primes.push_back(p);
    e.unfactored = f.unfactored;
  }
  return e;
}

std::vector<ScanEntry> primitive_prime_scan(const EllipticContext& ctx, long n_min, long n_max,
                                            const FactorBudget& budget, unsigned jobs) {
  if (n_min < 1 || n_max < n_min) throw InputError("scan range must satisfy 1 <= n_min <= n_max");
  jobs = std::max(1u, jobs);
  auto run = [&](auto&& body, long lo, long hi) {
    std::atomic<long> next{lo};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (long n = next++; n <= hi; n = next++) {
        try {
          body(n);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  };
  // Every divisor's determinant is in the history before any index is stripped.
  run([&](long n) { ctx.det(n); }, 1, n_max);
  std::vector<ScanEntry> out(static_cast<std::size_t>(n_max - n_min + 1));
  run([&](long n) { out[static_cast<std::size_t>(n - n_min)] = scan_index(ctx, n, budget); }, n_min, n_max);
  return out;
}

std::optional<PrimitivityCertificate> certify_primitive_class(const EllipticContext& ctx, const ScanEntry& entry) {
  if (!entry.has_primitive()) return std::nullopt;
  PrimitivityCertificate cert;
  cert.n = entry.n;
  cert.jacobian = ctx.jacobian(entry.n);
  const SnfResult s = snf(cert.jacobian.transpose());
  const std::size_t d = s.d.rows();

  // Pick an SNF coordinate k whose invariant factor meets the primitive part.
  std::optional<std::size_t> slot;
  if (!entry.primitive_primes.empty()) {
    cert.modulus = entry.primitive_primes.front();
    cert.modulus_is_prime = true;
    for (std::size_t k = d; k-- > 0 && !slot;)
      if (divides(cert.modulus, s.d(k, k))) slot = k;
  } else {
    for (std::size_t k = d; k-- > 0 && !slot;) {
      const BigInt g = gcd(entry.primitive_part, s.d(k, k));
      if (g > 1) {
        cert.modulus = g;
        slot = k;
      }
    }
  }
  if (!slot) {
    throw IdentityViolation("primitive part of det J_" + std::to_string(entry.n) +
                            " meets no invariant factor of the cokernel");
  }
  IMat lattice = IMat::identity(d);
  lattice(*slot, *slot) = cert.modulus;
  cert.witness = class_from_snf_lattice(inverse_unimodular(s.u).transpose(), lattice);

  const auto q = right_divides(cert.witness, cert.jacobian);
  if (!q) throw IdentityViolation("witness class does not divide J_" + std::to_string(entry.n));
  cert.quotient = *q;
  for (long m : proper_divisors(entry.n)) {
    const IMat jm = ctx.jacobian(m);
    if (right_divides(cert.witness, jm)) {
      throw IdentityViolation("witness class of J_" + std::to_string(entry.n) + " also divides J_" +
                              std::to_string(m) + "; it is not primitive");
    }
    cert.excluded.push_back({m, ctx.det(m), gcd(cert.modulus, ctx.det(m))});
  }
  return cert;
}

void verify_certificate(const EllipticContext& ctx, const PrimitivityCertificate& c) {
  const std::string where = "certificate for n = " + std::to_string(c.n) + ": ";
  auto fail = [&](const std::string& why) { throw IdentityViolation(where + why); };
  const IMat j = jacobian_at(ctx.family(), c.n, ctx.xz());
  if (!(j == c.jacobian)) fail("stored J_n differs from a fresh evaluation");
  if (!(hnf(c.witness) == c.witness)) fail("witness is not in Hermite normal form");
  if (abs(determinant(c.witness)) != c.modulus) fail("|det D| differs from the modulus");
  if (c.modulus <= 1) fail("modulus must exceed 1");
  if (c.modulus_is_prime && !is_probable_prime(c.modulus)) fail("modulus is not prime");
  if (!(c.quotient * c.witness == j)) fail("J_n != Q D");
  const BigInt dn = determinant(j);
  if (!divides(c.modulus, dn)) fail("modulus does not divide det J_n");
  const auto divisors = proper_divisors(c.n);
  if (divisors.size() != c.excluded.size()) fail("evidence does not cover every proper divisor");
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    const long m = divisors[i];
    if (c.excluded[i].m != m) fail("evidence out of order");
    const IMat jm = jacobian_at(ctx.family(), m, ctx.xz());
    const BigInt dm = determinant(jm);
    if (gcd(c.modulus, dm) != 1) fail("modulus shares a prime with det J_" + std::to_string(m));
    if (right_divides(c.witness, jm)) fail("witness divides J_" + std::to_string(m));
  }
}

// ------------------------------------------------------------- json

namespace {

nlohmann::json strings(const std::vector<BigInt>& v) {
  auto out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

}  // namespace

nlohmann::json to_json(const MultipleRecord& r) {
  return {{"n", r.n}, {"x", to_string(r.x)}, {"y", to_string(r.y)}, {"A_n", r.a_n.get_str()}, {"B_n", r.b_n.get_str()}};
}

nlohmann::json to_json(const ScanEntry& e) {
  nlohmann::json j{{"n", e.n},
                   {"det", e.det.get_str()},
                   {"primitive_part", e.primitive_part.get_str()},
                   {"primitive_primes", strings(e.primitive_primes)},
                   {"unfactored", strings(e.unfactored)},
                   {"coprime_to_n", e.coprime_to_n}};
  if (e.n == 1) j["note"] = "no prior terms";
  return j;
}

nlohmann::json to_json(const PrimitivityCertificate& c) {
  auto excluded = nlohmann::json::array();
  for (const auto& x : c.excluded) {
    excluded.push_back({{"m", x.m}, {"det_m", x.det_m.get_str()}, {"gcd_with_modulus", x.gcd_with_modulus.get_str()},
                        {"right_divides", false}});
  }
  return {{"n", c.n},
          {"modulus", c.modulus.get_str()},
          {"modulus_is_prime", c.modulus_is_prime},
          {"witness", to_json(c.witness)},
          {"quotient", to_json(c.quotient)},
          {"jacobian", to_json(c.jacobian)},
          {"excluded", excluded}};
}

nlohmann::json to_json(const AyadReport& r) {
  return {{"n", r.n}, {"Q_n", r.q_n.get_str()}, {"Q_primes", strings(r.q_primes)}, {"disc_primes", strings(r.disc_primes)}};
}

}  // namespace divimat
