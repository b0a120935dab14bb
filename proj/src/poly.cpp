#include "divimat/poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <unordered_map>

#include "divimat/error.hpp"

namespace divimat {

namespace {

constexpr std::uint32_t kMaxExponent = std::numeric_limits<std::uint16_t>::max();

bool term_greater(const SPoly::Term& a, const SPoly::Term& b) {
  return grlex_less(b.first, a.first);
}

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

const std::shared_ptr<const std::vector<std::string>>& empty_vars() {
  static const auto vars = std::make_shared<const std::vector<std::string>>();
  return vars;
}

}  // namespace

bool Monomial::divides(const Monomial& other) const {
  if (degree > other.degree) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (exp[i] > other.exp[i]) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const std::uint32_t e = std::uint32_t{a.exp[i]} + b.exp[i];
    if (e > kMaxExponent) throw DomainError("monomial exponent overflow");
    r.exp[i] = static_cast<std::uint16_t>(e);
  }
  r.degree = a.degree + b.degree;
  return r;
}

Monomial operator/(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(b.exp[i] - a.exp[i]);
  r.degree = b.degree - a.degree;
  return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  const auto words = std::bit_cast<std::array<std::uint64_t, 2>>(m.exp);
  std::uint64_t h = words[0] * 0x9E3779B97F4A7C15ULL;
  h ^= words[1] + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h ^ (h >> 29));
}

// ---------------------------------------------------------------- Ring

Ring::Ring() : vars_(empty_vars()) {}

Ring::Ring(std::vector<std::string> variables) {
  if (variables.size() > kMaxVars) {
    throw InputError("too many variables (max " + std::to_string(kMaxVars) + ")");
  }
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].empty()) throw InputError("empty variable name");
    for (std::size_t j = 0; j < i; ++j) {
      if (variables[i] == variables[j]) throw InputError("duplicate variable '" + variables[i] + "'");
    }
  }
  vars_ = std::make_shared<const std::vector<std::string>>(std::move(variables));
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    if ((*vars_)[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Ring::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw InputError("unknown variable '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- SPoly

SPoly SPoly::constant(const Ring& ring, const BigInt& c) {
  SPoly p(ring);
  if (c != 0) p.terms_.emplace_back(Monomial{}, c);
  return p;
}

SPoly SPoly::variable(const Ring& ring, std::string_view name) {
  SPoly p(ring);
  Monomial m;
  m.exp[ring.require(name)] = 1;
  m.degree = 1;
  p.terms_.emplace_back(m, BigInt(1));
  return p;
}

SPoly SPoly::monomial(const Ring& ring, std::span<const unsigned> exponents, const BigInt& c) {
  if (exponents.size() != ring.size()) throw InputError("exponent vector has wrong length");
  SPoly p(ring);
  if (c == 0) return p;
  Monomial m;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] > kMaxExponent) throw DomainError("monomial exponent overflow");
    m.exp[i] = static_cast<std::uint16_t>(exponents[i]);
    m.degree += exponents[i];
  }
  p.terms_.emplace_back(m, c);
  return p;
}

SPoly SPoly::from_terms(const Ring& ring, std::vector<Term> terms) {
  SPoly p(ring);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void SPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), term_greater);
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      if (!merged.empty() && merged.back().second == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().second == 0) merged.pop_back();
  terms_ = std::move(merged);
}

void SPoly::check_ring(const SPoly& other) const {
  if (!(ring_ == other.ring_)) throw InputError("polynomials over different variable lists");
}

unsigned SPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree; }

unsigned SPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m.exp[var]);
  return d;
}

bool SPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.degree == 0); }

BigInt SPoly::content() const {
  BigInt g = 0;
  for (const auto& t : terms_) {
    g = gcd(g, t.second);
    if (g == 1) break;
  }
  return g;
}

namespace {

// Merge of two sorted term lists, b scaled by sign.
std::vector<SPoly::Term> merge_terms(const std::vector<SPoly::Term>& a, const std::vector<SPoly::Term>& b,
                                     bool subtract) {
  std::vector<SPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlex_less(b[j].first, a[i].first))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_less(a[i].first, b[j].first)) {
      out.emplace_back(b[j].first, subtract ? BigInt(-b[j].second) : b[j].second);
      ++j;
    } else {
      BigInt c = subtract ? BigInt(a[i].second - b[j].second) : BigInt(a[i].second + b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SPoly& SPoly::operator+=(const SPoly& rhs) {
  check_ring(rhs);
  terms_ = merge_terms(terms_, rhs.terms_, false);
  return *this;
}

SPoly& SPoly::operator-=(const SPoly& rhs) {
  check_ring(rhs);
  terms_ = merge_terms(terms_, rhs.terms_, true);
  return *this;
}

SPoly& SPoly::operator*=(const SPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

SPoly& SPoly::operator*=(const BigInt& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

SPoly operator*(const SPoly& a, const SPoly& b) {
  a.check_ring(b);
  SPoly out(a.ring_);
  if (a.is_zero() || b.is_zero()) return out;
  const SPoly& small = a.size() <= b.size() ? a : b;
  const SPoly& large = a.size() <= b.size() ? b : a;
  if (small.size() == 1) {
    // Multiplying by a monomial preserves the term order.
    const auto& [m, c] = small.terms_.front();
    out.terms_.reserve(large.size());
    for (const auto& [lm, lc] : large.terms_) out.terms_.emplace_back(lm * m, lc * c);
    return out;
  }
  std::unordered_map<Monomial, BigInt, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(small.size() * large.size(), 4 * (small.size() + large.size()) + 64));
  for (const auto& [sm, sc] : small.terms_) {
    for (const auto& [lm, lc] : large.terms_) {
      auto [it, inserted] = acc.try_emplace(sm * lm);
      mpz_addmul(it->second.get_mpz_t(), sc.get_mpz_t(), lc.get_mpz_t());
    }
  }
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) out.terms_.emplace_back(m, std::move(c));
  }
  std::sort(out.terms_.begin(), out.terms_.end(), term_greater);
  return out;
}

SPoly SPoly::operator-() const {
  SPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

bool operator==(const SPoly& a, const SPoly& b) {
  if (!(a.ring_ == b.ring_)) return false;
  return a.terms_ == b.terms_;
}

SPoly SPoly::divide_coefficients(const BigInt& c) const {
  if (c == 0) throw DomainError("division of coefficients by zero");
  SPoly r = *this;
  for (auto& t : r.terms_) {
    if (!divides(c, t.second)) {
      throw InexactDivision("coefficient " + t.second.get_str() + " not divisible by " + c.get_str());
    }
    mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), c.get_mpz_t());
  }
  return r;
}

// ---------------------------------------------------------------- free functions

SPoly pow(const SPoly& p, unsigned exponent) {
  SPoly result = SPoly::constant(p.ring(), 1);
  SPoly base = p;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

SPoly derivative(const SPoly& p, std::string_view var) {
  const std::size_t v = p.ring().require(var);
  std::vector<SPoly::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    if (m.exp[v] == 0) continue;
    Monomial dm = m;
    dm.exp[v] -= 1;
    dm.degree -= 1;
    out.emplace_back(dm, c * m.exp[v]);
  }
  return SPoly::from_terms(p.ring(), std::move(out));
}

SPoly substitute(const SPoly& p, const std::map<std::string, SPoly>& assignments) {
  const Ring& src = p.ring();
  std::optional<Ring> target;
  for (const auto& [name, value] : assignments) {
    if (!target) {
      target = value.ring();
    } else if (!(*target == value.ring())) {
      throw InputError("substitution values live in different rings");
    }
  }
  std::vector<const SPoly*> values(src.size(), nullptr);
  std::vector<unsigned> max_exp(src.size(), 0);
  for (std::size_t v = 0; v < src.size(); ++v) {
    max_exp[v] = p.degree_in(v);
    auto it = assignments.find(src.name(v));
    if (it != assignments.end()) {
      values[v] = &it->second;
    } else if (max_exp[v] > 0) {
      throw InputError("no assignment for variable '" + src.name(v) + "'");
    }
  }
  if (!target) {
    // Only constants remain; they keep the source ring.
    return p;
  }
  std::vector<std::vector<SPoly>> powers(src.size());
  for (std::size_t v = 0; v < src.size(); ++v) {
    if (max_exp[v] == 0) continue;
    powers[v].reserve(max_exp[v] + 1);
    powers[v].push_back(SPoly::constant(*target, 1));
    for (unsigned e = 1; e <= max_exp[v]; ++e) powers[v].push_back(powers[v].back() * *values[v]);
  }
  SPoly result(*target);
  for (const auto& [m, c] : p.terms()) {
    SPoly term = SPoly::constant(*target, c);
    for (std::size_t v = 0; v < src.size() && !term.is_zero(); ++v) {
      if (m.exp[v] > 0) term = term * powers[v][m.exp[v]];
    }
    result += term;
  }
  return result;
}

SPoly exact_divide(const SPoly& num, const SPoly& den) {
  if (!(num.ring() == den.ring())) throw InputError("polynomials over different variable lists");
  if (den.is_zero()) throw DomainError("division by the zero polynomial");
  const auto& [lead_m, lead_c] = den.leading_term();
  if (den.size() == 1) {
    std::vector<SPoly::Term> q;
    q.reserve(num.size());
    for (const auto& [m, c] : num.terms()) {
      if (!lead_m.divides(m) || !divides(lead_c, c)) {
        throw InexactDivision("inexact division by a monomial");
      }
      BigInt qc;
      mpz_divexact(qc.get_mpz_t(), c.get_mpz_t(), lead_c.get_mpz_t());
      q.emplace_back(m / lead_m, std::move(qc));
    }
    return SPoly::from_terms(num.ring(), std::move(q));
  }
  std::map<Monomial, BigInt, GrlexGreater> rem;
  for (const auto& [m, c] : num.terms()) rem.emplace_hint(rem.end(), m, c);
  std::vector<SPoly::Term> q;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lead_m.divides(top->first) || !divides(lead_c, top->second)) {
      throw InexactDivision("polynomial division leaves a remainder");
    }
    const Monomial qm = top->first / lead_m;
    BigInt qc;
    mpz_divexact(qc.get_mpz_t(), top->second.get_mpz_t(), lead_c.get_mpz_t());
    for (const auto& [dm, dc] : den.terms()) {
      auto [it, inserted] = rem.try_emplace(dm * qm);
      mpz_submul(it->second.get_mpz_t(), qc.get_mpz_t(), dc.get_mpz_t());
      if (it->second == 0) rem.erase(it);
    }
    q.emplace_back(qm, std::move(qc));
  }
  return SPoly::from_terms(num.ring(), std::move(q));
}

SPoly reduce_mod_curve(const SPoly& p, const CurveCoeff& a, const CurveCoeff& b, std::string_view x,
                       std::string_view y) {
  const Ring& ring = p.ring();
  auto coeff = [&](const CurveCoeff& c) {
    if (const auto* v = std::get_if<BigInt>(&c)) return SPoly::constant(ring, *v);
    return SPoly::variable(ring, std::get<std::string>(c));
  };
  const SPoly xv = SPoly::variable(ring, x);
  const SPoly cubic = xv * xv * xv + coeff(a) * xv + coeff(b);
  return reduce_mod_curve(p, cubic, y);
}

SPoly reduce_mod_curve(const SPoly& p, const SPoly& cubic, std::string_view y) {
  const std::size_t yv = p.ring().require(y);
  std::vector<std::vector<SPoly::Term>> buckets;
  for (const auto& [m, c] : p.terms()) {
    const unsigned half = m.exp[yv] / 2;
    if (buckets.size() <= half) buckets.resize(half + 1);
    Monomial stripped = m;
    stripped.exp[yv] = static_cast<std::uint16_t>(m.exp[yv] - 2 * half);
    stripped.degree -= 2 * half;
    buckets[half].emplace_back(stripped, c);
  }
  if (buckets.size() <= 1) return p;
  SPoly result = SPoly::from_terms(p.ring(), std::move(buckets[0]));
  SPoly cubic_power = cubic;
  for (std::size_t q = 1; q < buckets.size(); ++q) {
    if (q > 1) cubic_power = cubic_power * cubic;
    if (buckets[q].empty()) continue;
    result += SPoly::from_terms(p.ring(), std::move(buckets[q])) * cubic_power;
  }
  return result;
}

BigRat evaluate(const SPoly& p, const std::map<std::string, BigRat>& point) {
  const Ring& ring = p.ring();
  const std::size_t nv = ring.size();
  std::vector<unsigned> max_exp(nv);
  std::vector<BigInt> num(nv), den(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    max_exp[v] = p.degree_in(v);
    if (max_exp[v] == 0) continue;
    auto it = point.find(ring.name(v));
    if (it == point.end()) throw InputError("no value for variable '" + ring.name(v) + "'");
    num[v] = it->second.get_num();
    den[v] = it->second.get_den();
  }
  // Clear denominators: sum c * prod num^e * den^(D - e), then divide by prod den^D.
  std::vector<std::vector<BigInt>> num_pow(nv), den_pow(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (max_exp[v] == 0) continue;
    num_pow[v].assign(max_exp[v] + 1, 1);
    den_pow[v].assign(max_exp[v] + 1, 1);
    for (unsigned e = 1; e <= max_exp[v]; ++e) {
      num_pow[v][e] = num_pow[v][e - 1] * num[v];
      den_pow[v][e] = den_pow[v][e - 1] * den[v];
    }
  }
  BigInt total = 0;
  BigInt term;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (std::size_t v = 0; v < nv; ++v) {
      if (max_exp[v] == 0) continue;
      term *= num_pow[v][m.exp[v]];
      term *= den_pow[v][max_exp[v] - m.exp[v]];
    }
    total += term;
  }
  BigInt common = 1;
  for (std::size_t v = 0; v < nv; ++v) {
    if (max_exp[v] > 0) common *= den_pow[v][max_exp[v]];
  }
  BigRat r(total, common);
  r.canonicalize();
  return r;
}

BigInt evaluate(const SPoly& p, std::span<const BigInt> values) {
  const std::size_t nv = p.ring().size();
  if (values.size() != nv) throw InputError("evaluation point has wrong dimension");
  std::vector<std::vector<BigInt>> powers(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const unsigned d = p.degree_in(v);
    powers[v].assign(d + 1, 1);
    for (unsigned e = 1; e <= d; ++e) powers[v][e] = powers[v][e - 1] * values[v];
  }
  BigInt total = 0;
  BigInt term;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (std::size_t v = 0; v < nv; ++v) {
      if (m.exp[v] > 0) term *= powers[v][m.exp[v]];
    }
    total += term;
  }
  return total;
}

SPoly homogenize(const SPoly& p, std::string_view x, const Ring& target, std::string_view big_x,
                 std::string_view big_z, unsigned degree) {
  const Ring& src = p.ring();
  const std::size_t xv = src.require(x);
  const std::size_t tx = target.require(big_x);
  const std::size_t tz = target.require(big_z);
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t v = 0; v < src.size(); ++v) {
    if (v != xv) map[v] = target.index_of(src.name(v));
  }
  std::vector<SPoly::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    const unsigned ex = m.exp[xv];
    if (ex > degree) throw DomainError("homogenization degree below polynomial degree");
    Monomial hm;
    hm.exp[tx] = static_cast<std::uint16_t>(ex);
    hm.exp[tz] = static_cast<std::uint16_t>(degree - ex);
    hm.degree = degree;
    for (std::size_t v = 0; v < src.size(); ++v) {
      if (v == xv || m.exp[v] == 0) continue;
      if (!map[v]) throw InputError("variable '" + src.name(v) + "' has no counterpart in target ring");
      hm.exp[*map[v]] = static_cast<std::uint16_t>(hm.exp[*map[v]] + m.exp[v]);
      hm.degree += m.exp[v];
    }
    out.emplace_back(hm, c);
  }
  return SPoly::from_terms(target, std::move(out));
}

SPoly embed(const SPoly& p, const Ring& target) {
  if (p.ring() == target) return p;
  const Ring& src = p.ring();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t v = 0; v < src.size(); ++v) map[v] = target.index_of(src.name(v));
  std::vector<SPoly::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial tm;
    tm.degree = m.degree;
    for (std::size_t v = 0; v < src.size(); ++v) {
      if (m.exp[v] == 0) continue;
      if (!map[v]) throw InputError("variable '" + src.name(v) + "' has no counterpart in target ring");
      tm.exp[*map[v]] = m.exp[v];
    }
    out.emplace_back(tm, c);
  }
  return SPoly::from_terms(target, std::move(out));
}

// ---------------------------------------------------------------- text / json

namespace {

std::string monomial_string(const Ring& ring, const Monomial& m) {
  std::string s;
  for (std::size_t v = 0; v < ring.size(); ++v) {
    if (m.exp[v] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.name(v);
    if (m.exp[v] > 1) s += '^' + std::to_string(m.exp[v]);
  }
  return s;
}

}  // namespace

std::string to_string(const SPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const BigInt mag = abs(c);
    const std::string mono = monomial_string(p.ring(), m);
    if (mono.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + '*';
      out += mono;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  SPoly parse() {
    SPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  SPoly expr() {
    SPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  SPoly term() {
    SPoly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  SPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  SPoly power() {
    SPoly base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = pow(base, static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  SPoly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      SPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return SPoly::constant(ring_, parse_bigint(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return SPoly::variable(ring_, text_.substr(start, pos_ - start));
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  const Ring& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SPoly parse_poly(const Ring& ring, std::string_view text) { return PolyParser(ring, text).parse(); }

nlohmann::json to_json(const SPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    std::vector<unsigned> exps(m.exp.begin(), m.exp.begin() + static_cast<std::ptrdiff_t>(p.ring().size()));
    terms.push_back({{"exp", exps}, {"coef", c.get_str()}});
  }
  return {{"vars", p.ring().names()}, {"terms", terms}};
}

SPoly poly_from_json(const nlohmann::json& j) {
  try {
    Ring ring(j.at("vars").get<std::vector<std::string>>());
    std::vector<SPoly::Term> terms;
    for (const auto& t : j.at("terms")) {
      const auto exps = t.at("exp").get<std::vector<unsigned>>();
      SPoly mono = SPoly::monomial(ring, exps, parse_bigint(t.at("coef").get<std::string>()));
      for (auto& term : mono.terms()) terms.push_back(term);
    }
    return SPoly::from_terms(ring, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

std::string first_difference(const SPoly& a, const SPoly& b) {
  if (!(a.ring() == b.ring())) return "different variable lists";
  const SPoly d = a - b;
  if (d.is_zero()) return "none";
  const Monomial& m = d.leading_term().first;
  auto coeff_of = [&](const SPoly& p) {
    for (const auto& [pm, pc] : p.terms()) {
      if (pm == m) return pc;
    }
    return BigInt(0);
  };
  std::string mono = monomial_string(a.ring(), m);
  if (mono.empty()) mono = "1";
  return "monomial " + mono + ": left " + coeff_of(a).get_str() + ", right " + coeff_of(b).get_str();
}

}  // namespace divimat
