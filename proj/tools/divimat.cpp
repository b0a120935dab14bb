// divimat: sequences of Jacobian matrices, their divisibility identities and
// primitive divisor scans.
#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "divimat/closed_forms.hpp"
#include "divimat/elliptic.hpp"
#include "divimat/error.hpp"
#include "divimat/verify.hpp"

using namespace divimat;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kIdentity = 3, kDomain = 4 };

struct RunConfig {
  std::string family;
  std::string fixture;
  std::string n_range;
  long n_max = 0;
  std::string point;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string bound = "10000";
  unsigned jobs = 1;
  long m = 0;
};

std::pair<long, long> parse_range(const std::string& text) {
  long lo = 0, hi = 0;
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stol(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      lo = std::stol(text.substr(0, dots), &used);
      if (used != dots) throw std::invalid_argument(text);
      const std::string rest = text.substr(dots + 2);
      hi = std::stol(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw InputError("bad index range '" + text + "' (expected N or A..B)");
  }
  if (lo < 1 || hi < lo) throw InputError("index range must satisfy 1 <= n_min <= n_max");
  return {lo, hi};
}

std::vector<BigInt> parse_point(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) out.push_back(parse_bigint(item));
  if (out.empty()) throw InputError("empty point");
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void require_format(const std::string& f) {
  if (f != "text" && f != "json" && f != "csv") throw InputError("unknown format '" + f + "'");
}

// Runs body(i) for i in [0, count) on `jobs` threads; results are stored by
// index so the output order never depends on scheduling.
void parallel_for(long count, unsigned jobs, const std::function<void(long)>& body) {
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (long i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

json rows_json(const PolyMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::optional<CurveE> fixture_curve(const RunConfig& c) {
  if (c.fixture.empty()) return std::nullopt;
  return load_fixture(c.fixture).point.curve;
}

// ------------------------------------------------------------------ seq

struct SeqRecord {
  long n = 0;
  json jacobian;
  std::string det;
  std::string closed;
  std::string status;
};

int cmd_seq(const RunConfig& c) {
  require_format(c.format);
  if (c.family.empty()) throw InputError("seq needs --family");
  const auto [lo, hi] = parse_range(c.n_range.empty() ? "1" : c.n_range);

  std::optional<EllipticContext> ctx;
  if (!c.fixture.empty() && c.family == "elliptic") ctx.emplace(load_fixture(c.fixture).point);
  std::shared_ptr<const DivisionPolynomials> dp;
  std::optional<EndoFamily> fam;
  if (c.family == "elliptic") {
    dp = ctx ? std::shared_ptr<const DivisionPolynomials>(&ctx->divpoly(), [](auto*) {})
             : std::make_shared<const DivisionPolynomials>(CurveE::symbolic());
    fam.emplace(ctx ? ctx->family() : family_elliptic(dp));
  } else {
    fam.emplace(family_by_name(c.family));
  }
  std::optional<std::vector<BigInt>> point;
  if (!c.point.empty()) point = parse_point(c.point);
  else if (ctx) point = ctx->xz();
  if (point && point->size() != fam->dimension()) {
    throw InputError("--point needs " + std::to_string(fam->dimension()) + " coordinates for family " + c.family);
  }

  std::vector<SeqRecord> out(static_cast<std::size_t>(hi - lo + 1));
  parallel_for(hi - lo + 1, c.jobs, [&](long i) {
    const long n = lo + i;
    SeqRecord r;
    r.n = n;
    std::optional<std::string> closed;
    if (point) {
      const IMat j = jacobian_at(*fam, n, *point);
      const BigInt det = determinant(j);
      r.jacobian = to_json(j);
      r.det = det.get_str();
      const auto& p = *point;
      if (c.family == "gm") closed = BigInt(n * pow(p[0], static_cast<unsigned long>(n - 1))).get_str();
      if (c.family == "borel") closed = borel_det_at(n, p[0], p[2]).get_str();
      if (c.family == "gl2") {
        IMat m(2, 2);
        m(0, 0) = p[0], m(0, 1) = p[1], m(1, 0) = p[2], m(1, 1) = p[3];
        closed = gl2_det(n, m).get_str();
      }
      if (c.family == "elliptic") {
        // at the fixture point both routes run inside det(); elsewhere the
        // closed form is evaluated as a polynomial
        closed = ctx && c.point.empty() ? ctx->det(n).get_str()
                                        : evaluate(eds_det_closed(*dp, fam->ring(), n), p).get_str();
      }
    } else {
      const PolyMatrix& j = fam->jacobian(n);
      const SPoly det = j.determinant();
      r.jacobian = rows_json(j);
      r.det = to_string(det);
      if (c.family == "gm") closed = to_string(parse_poly(fam->ring(), std::to_string(n) + "*x^" + std::to_string(n - 1)));
      if (c.family == "borel") closed = to_string(borel_det(n));
      if (c.family == "elliptic") closed = to_string(eds_det_closed(*dp, fam->ring(), n));
    }
    if (!closed) {
      r.status = "no closed form";
    } else if (*closed != r.det) {
      throw IdentityViolation(c.family + " n=" + std::to_string(n) + ": det " + r.det + " != closed form " + *closed);
    } else {
      r.status = "match";
    }
    r.closed = closed.value_or("");
    out[static_cast<std::size_t>(i)] = std::move(r);
  });

  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : out) {
      arr.push_back({{"n", r.n}, {"jacobian", r.jacobian}, {"det", r.det}, {"closed_form", r.closed}, {"status", r.status}});
    }
    std::cout << arr.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "n,det,closed_form_status\n";
    for (const auto& r : out) std::cout << r.n << "," << r.det << "," << r.status << "\n";
  } else {
    for (const auto& r : out) {
      std::cout << "n=" << r.n << " det=" << r.det << " closed_form=" << r.status << "\n";
      std::cout << "  J=" << (r.jacobian.is_object() ? to_string(matrix_from_json(r.jacobian)) : r.jacobian.dump())
                << "\n";
    }
  }
  return kOk;
}

// ------------------------------------------------------------------ verify

struct VerifyResult {
  std::string check;
  bool passed = true;
  CheckLog details;
  std::string failure;
  int code = kOk;
};

VerifyResult run_check(const std::string& name, const std::function<CheckLog()>& body) {
  VerifyResult r{name};
  try {
    r.details = body();
  } catch (const IdentityViolation& e) {
    r.passed = false, r.failure = e.what(), r.code = kIdentity;
  } catch (const InexactDivision& e) {
    r.passed = false, r.failure = e.what(), r.code = kIdentity;
  } catch (const DomainError& e) {
    r.passed = false, r.failure = e.what(), r.code = kDomain;
  }
  return r;
}

CheckLog borel_recurrence_check() {
  const auto rep = falsify_borel_matrix_recurrence(20);
  if (!rep.no_recurrence) throw IdentityViolation(rep.summary);
  return {rep.summary, "lucas control: " + describe(rep.lucas)};
}

int cmd_verify(const std::string& what, const RunConfig& c) {
  require_format(c.format);
  auto n_max = [&](long fallback) { return c.n_max > 0 ? c.n_max : fallback; };
  std::vector<VerifyResult> results;
  const bool all = what == "all";
  auto want = [&](const char* name) { return all || what == name; };
  bool known = all;

  if (want("eds-identity")) {
    known = true;
    results.push_back(run_check("eds-identity", [&] { return verify_eds_identity(2, n_max(8)); }));
  }
  if (want("chain-rule")) {
    known = true;
    if (!all && c.m > 0) {
      if (c.n_range.empty()) throw InputError("chain-rule with --m also needs --n");
      const long n = parse_range(c.n_range).first;
      const auto fam = family_by_name(c.family.empty() ? "borel" : c.family, fixture_curve(c));
      std::optional<std::vector<BigInt>> pt;
      if (!c.point.empty()) pt = parse_point(c.point);
      results.push_back(run_check("chain-rule", [&] {
        const auto rep = verify_chain_rule(fam, c.m, n, pt);
        CheckLog log{fam.name() + " J_" + std::to_string(c.m * n) + " = J_" + std::to_string(c.m) + "([" +
                     std::to_string(n) + "]x) J_" + std::to_string(n) + (rep.symbolic ? " symbolically" : " at the point")};
        if (rep.quotient) log.push_back("quotient " + to_string(*rep.quotient));
        if (rep.quotient_at_point) log.push_back("quotient at point " + to_string(*rep.quotient_at_point));
        return log;
      }));
    } else {
      std::vector<std::string> names{"gm", "borel", "gl2", "elliptic"};
      if (!c.family.empty() && !all) names = {c.family};
      for (const auto& name : names) {
        const auto fam = family_by_name(name, name == "elliptic" ? fixture_curve(c).value_or(CurveE::numeric(-1, 1))
                                                                : std::optional<CurveE>{});
        results.push_back(
            run_check("chain-rule " + name, [&] { return verify_chain_rule_pairs(fam, c.seed, n_max(24), 2); }));
      }
    }
  }
  if (want("borel-closed")) {
    known = true;
    results.push_back(run_check("borel-closed", [&] { return verify_borel_closed(n_max(20), std::min(10L, n_max(20))); }));
  }
  if (want("gl2-closed")) {
    known = true;
    results.push_back(run_check("gl2-closed", [&] { return verify_gl2_closed(c.seed, 20, 5, n_max(8)); }));
  }
  if (want("cassels")) {
    known = true;
    results.push_back(run_check("cassels", [&] { return verify_cassels(2, n_max(20)); }));
  }
  if (want("borel-recurrence")) {
    known = true;
    results.push_back(run_check("borel-recurrence", borel_recurrence_check));
  }
  if (what == "group-law" || what == "integrality" || (all && !c.fixture.empty())) {
    known = true;
    if (c.fixture.empty()) throw InputError(what + " needs --fixture");
    const EllipticContext ctx(load_fixture(c.fixture).point);
    if (all || what == "group-law")
      results.push_back(run_check("group-law", [&] { return verify_group_law(ctx, n_max(12)); }));
    if (all || what == "integrality")
      results.push_back(run_check("integrality", [&] { return verify_integrality(ctx, n_max(30), 12); }));
  }
  if (!known) throw InputError("unknown check '" + what + "'");

  int code = kOk;
  for (const auto& r : results) code = std::max(code, r.code);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : results) {
      json j{{"check", r.check}, {"passed", r.passed}, {"details", r.details}};
      if (!r.passed) j["failure"] = r.failure;
      arr.push_back(j);
    }
    std::cout << arr.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "check,passed\n";
    for (const auto& r : results) std::cout << r.check << "," << (r.passed ? "PASS" : "FAIL") << "\n";
  } else {
    for (const auto& r : results) {
      for (const auto& line : r.details) std::cout << "  " << line << "\n";
      if (r.passed) std::cout << "PASS " << r.check << "\n";
      else std::cout << "FAIL " << r.check << ": " << r.failure << "\n";
    }
  }
  return code;
}

// ------------------------------------------------------------------ divides / classes

int cmd_divides(const std::string& m_path, const std::string& n_path, const RunConfig& c) {
  require_format(c.format);
  const IMat m = matrix_from_json(read_json(m_path));
  const IMat n = matrix_from_json(read_json(n_path));
  if (!m.is_square() || !n.is_square() || m.rows() != n.rows()) {
    throw InputError("divides needs square matrices of equal size");
  }
  const auto q = right_divides(m, n);
  if (c.format == "json") {
    std::cout << (q ? json{{"right_divides", true}, {"quotient", to_json(*q)}} : json{{"right_divides", false}}).dump(2)
              << "\n";
  } else {
    std::cout << (q ? "quotient " + to_string(*q) : std::string("not a right divisor")) << "\n";
  }
  return q ? kOk : kNegative;
}

int cmd_classes(const std::string& m_path, const RunConfig& c) {
  require_format(c.format);
  const IMat m = matrix_from_json(read_json(m_path));
  const auto classes = divisor_classes(m, parse_bigint(c.bound));
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& d : classes) arr.push_back(to_json(d.representative));
    json divisors = json::array();
    for (const auto& e : cokernel(m).elementary_divisors) divisors.push_back(e.get_str());
    std::cout << json{{"count", classes.size()}, {"elementary_divisors", divisors}, {"classes", arr}}.dump(2) << "\n";
  } else {
    std::cout << "count " << classes.size() << "\n";
    for (const auto& d : classes) std::cout << to_string(d.representative) << "\n";
  }
  return kOk;
}

// ------------------------------------------------------------------ primitive-scan

int cmd_primitive_scan(const RunConfig& c) {
  require_format(c.format);
  if (c.fixture.empty()) throw InputError("primitive-scan needs --fixture");
  long lo = 1, hi = c.n_max > 0 ? c.n_max : 30;
  if (!c.n_range.empty()) std::tie(lo, hi) = parse_range(c.n_range);
  const EllipticContext ctx(load_fixture(c.fixture).point);
  const auto scan = primitive_prime_scan(ctx, lo, hi, {}, c.jobs);
  std::vector<std::optional<PrimitivityCertificate>> certs(scan.size());
  parallel_for(static_cast<long>(scan.size()), c.jobs, [&](long i) {
    certs[i] = certify_primitive_class(ctx, scan[i]);
    if (certs[i]) verify_certificate(ctx, *certs[i]);
  });

  if (c.format == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < scan.size(); ++i) {
      json j = to_json(scan[i]);
      j["certificate"] = certs[i] ? to_json(*certs[i]) : json(nullptr);
      if (!certs[i] && scan[i].n > 1) j["note"] = "no primitive part";
      arr.push_back(j);
    }
    std::cout << arr.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "n,det,primitive_part\n";
    for (const auto& e : scan) std::cout << e.n << "," << e.det << "," << e.primitive_part << "\n";
  } else {
    for (std::size_t i = 0; i < scan.size(); ++i) {
      const auto& e = scan[i];
      std::cout << "n=" << e.n;
      if (e.n == 1) std::cout << " no prior terms";
      else if (!certs[i]) std::cout << " no primitive part";
      else {
        std::cout << " primitive_primes=";
        for (std::size_t k = 0; k < e.primitive_primes.size(); ++k)
          std::cout << (k ? "," : "") << e.primitive_primes[k];
        if (!e.unfactored.empty()) std::cout << " unfactored=" << e.unfactored.size();
        std::cout << " witness=" << to_string(certs[i]->witness) << " det D=" << certs[i]->modulus;
      }
      std::cout << "\n";
    }
  }
  return kOk;
}

// ------------------------------------------------------------------ divpoly

int cmd_divpoly(const RunConfig& c) {
  require_format(c.format);
  const auto [lo, hi] = parse_range(c.n_range.empty() ? "1..5" : c.n_range);
  const DivisionPolynomials dp(fixture_curve(c).value_or(CurveE::symbolic()));
  json arr = json::array();
  for (long n = lo; n <= hi; ++n) {
    json j{{"n", n},
           {"psi", to_string(dp.psi(n))},
           {"phi", to_string(dp.phi(n))},
           {"omega", to_string(dp.omega(n))},
           {"psi_squared", to_string(dp.psi_tilde(n))},
           {"psi_2n_over_psi_2", to_string(dp.eta(n))}};
    if (c.format == "json") {
      arr.push_back(j);
    } else {
      std::cout << "n=" << n << "\n";
      for (const char* k : {"psi", "phi", "omega", "psi_squared", "psi_2n_over_psi_2"})
        std::cout << "  " << k << " = " << j[k].get<std::string>() << "\n";
    }
  }
  if (c.format == "json") std::cout << arr.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobian matrix divisibility sequences: generation, identity checks, primitive divisors"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "json, csv or text")->capture_default_str();
    s->add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
  };
  auto* seq = app.add_subcommand("seq", "Jacobian J_n, its determinant and the closed-form comparison");
  seq->add_option("--family", c.family, "gm, borel, gl2 or elliptic")->required();
  seq->add_option("--fixture", c.fixture, "curve/point fixture (JSON)");
  seq->add_option("--n", c.n_range, "index or range A..B");
  seq->add_option("--point", c.point, "comma-separated integer point; omit for symbolic output");
  common(seq);

  std::string what;
  auto* verify = app.add_subcommand("verify", "identity suites");
  verify->add_option("check", what,
                     "eds-identity, chain-rule, borel-closed, gl2-closed, cassels, borel-recurrence, group-law, "
                     "integrality or all")
      ->required();
  verify->add_option("--family", c.family);
  verify->add_option("--fixture", c.fixture);
  verify->add_option("--n", c.n_range);
  verify->add_option("--m", c.m);
  verify->add_option("--n-max", c.n_max);
  verify->add_option("--point", c.point);
  verify->add_option("--seed", c.seed)->capture_default_str();
  common(verify);

  std::string m_path, n_path;
  auto* divides = app.add_subcommand("divides", "does M right-divide N (N = Q M)?");
  divides->add_option("M", m_path)->required();
  divides->add_option("N", n_path)->required();
  common(divides);

  auto* classes = app.add_subcommand("classes", "right divisor classes of M in Hermite normal form");
  classes->add_option("M", m_path)->required();
  classes->add_option("--bound", c.bound, "refuse when |det M| exceeds this")->capture_default_str();
  common(classes);

  auto* scan = app.add_subcommand("primitive-scan", "primitive primes and witness classes of elliptic J_n");
  scan->add_option("--fixture", c.fixture)->required();
  scan->add_option("--n", c.n_range);
  scan->add_option("--n-max", c.n_max);
  common(scan);

  auto* divpoly = app.add_subcommand("divpoly", "division polynomials");
  divpoly->add_option("--fixture", c.fixture);
  divpoly->add_option("--n", c.n_range);
  common(divpoly);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*seq) return cmd_seq(c);
    if (*verify) return cmd_verify(what, c);
    if (*divides) return cmd_divides(m_path, n_path, c);
    if (*classes) return cmd_classes(m_path, c);
    if (*scan) return cmd_primitive_scan(c);
    if (*divpoly) return cmd_divpoly(c);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const IdentityViolation& e) {
    std::cerr << "identity violation: " << e.what() << "\n";
    return kIdentity;
  } catch (const InexactDivision& e) {
    std::cerr << "identity violation: " << e.what() << "\n";
    return kIdentity;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
