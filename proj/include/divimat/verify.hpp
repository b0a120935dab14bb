#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divimat/elliptic.hpp"
#include "divimat/endo.hpp"

namespace divimat {

// Identity suites shared by the command line and the acceptance run. Each
// returns one line per checked case and throws IdentityViolation at the first
// mismatch.
using CheckLog = std::vector<std::string>;

// det of the direct symbolic Jacobian against the Wronskian, eta and omega forms
// over Z[X, Z, A, B].
CheckLog verify_eds_identity(long n_min, long n_max);

// Symbolic det against the closed form for n <= n_max, the displayed matrix
// entrywise for n <= displayed_max.
CheckLog verify_borel_closed(long n_max, long displayed_max);

// count seeded random 2x2 matrices, the first `repeated` of them with a
// repeated eigenvalue.
CheckLog verify_gl2_closed(std::uint64_t seed, int count, int repeated, long n_max);

// J_mn(x) = J_m([n] x) J_n(x), right division and det divisibility for every
// pair with m n <= mn_max, at `points` seeded integer points.
CheckLog verify_chain_rule_pairs(const EndoFamily& f, std::uint64_t seed, long mn_max, int points);

// diag(n, n) right-divides the symbolic elliptic J_n.
CheckLog verify_cassels(long n_min, long n_max);

// x(nP) by chord and tangent against phi_n / psi_n^2 at P.
CheckLog verify_group_law(const EllipticContext& ctx, long n_max);

// det J_n(a, b^2) integral and equal by both routes, Q_n on discriminant primes.
CheckLog verify_integrality(const EllipticContext& ctx, long n_max, long ayad_max);

// Random integer point for a family without parameters.
std::vector<BigInt> sample_point(const EndoFamily& f, std::uint64_t seed, int index);

}  // namespace divimat
