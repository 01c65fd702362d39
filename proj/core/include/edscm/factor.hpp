#pragma once

#include <utility>
#include <vector>

#include "edscm/gaussian.hpp"
#include "edscm/numeric.hpp"

namespace edscm {

// Deterministic for n below ~3.3e24 (fixed Miller-Rabin witness set),
// probabilistic with 40 rounds beyond.
bool is_prime(const Int& n);

// Prime factorization of n >= 1, primes ascending. Trial division to 1e6,
// then Brent's rho with Miller-Rabin on the cofactors.
std::vector<std::pair<Int, int>> factor_integer(const Int& n);

// Some z with z^2 == -1 (mod p); requires p prime, p == 1 (mod 4).
// Deterministic: first non-residue in 2,3,5,... raised to (p-1)/4.
Int sqrt_minus_one_mod(const Int& p);

// p = a^2 + b^2 with a >= b > 0, for p prime, p == 1 (mod 4).
std::pair<Int, Int> two_squares(const Int& p);

struct GaussianFactorization {
    GaussianInt unit;                                  // norm 1
    std::vector<std::pair<GaussianInt, int>> primes;   // canonical, (norm,re,im)-sorted
};

// unit * prod primes^e == g, exactly. Rational primes split per their
// residue mod 4: p=2 ramifies as -i(1+i)^2, p=1(4) splits via a square
// root of -1, p=3(4) stays inert.
GaussianFactorization factor_gaussian(const GaussianInt& g);

}  // namespace edscm
