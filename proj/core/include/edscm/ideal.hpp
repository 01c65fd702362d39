#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edscm/factor.hpp"
#include "edscm/gaussian.hpp"
#include "edscm/numeric.hpp"

namespace edscm {

// Which ring the ideals live in. Both are PIDs, so every ideal is stored
// as a canonical generator: |n| for Z, the (re>0, im>=0) associate for Z[i].
enum class Ring { Z, Zi };

std::string to_string(Ring r);

class Ideal {
  public:
    Ideal(Ring ring, GaussianInt gen);
    Ideal(Ring ring, const Int& gen) : Ideal(ring, GaussianInt(gen)) {}

    static Ideal unit(Ring ring) { return Ideal(ring, GaussianInt(1)); }
    static Ideal zero(Ring ring) { return Ideal(ring, GaussianInt(0)); }

    Ring ring() const { return ring_; }
    const GaussianInt& gen() const { return gen_; }

    bool is_zero() const { return gen_.is_zero(); }
    bool is_unit() const { return edscm::is_unit(gen_); }

    // Ideal norm: |n| for Z, a^2+b^2 for Z[i].
    Int norm() const;

    // this | other, i.e. other is contained in this.
    bool divides(const Ideal& other) const;

    std::optional<Ideal> exact_quotient(const Ideal& d) const;

    Ideal gcd(const Ideal& other) const;

    friend Ideal operator*(const Ideal& a, const Ideal& b);
    friend bool operator==(const Ideal& a, const Ideal& b) {
        return a.ring_ == b.ring_ && a.gen_ == b.gen_;
    }
    friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }
    // (norm, re, im) order, deterministic.
    friend bool operator<(const Ideal& a, const Ideal& b);

    std::string to_string() const;  // "(a+bi)"

  private:
    Ring ring_;
    GaussianInt gen_;
};

// Nonzero ideal as a sorted list of (canonical prime, exponent).
class FactoredIdeal {
  public:
    static FactoredIdeal one(Ring ring) { return FactoredIdeal(ring, {}); }
    static FactoredIdeal factor(const Ideal& I);
    // Merges duplicates and sorts; primes must be canonical prime ideals.
    FactoredIdeal(Ring ring, std::vector<std::pair<Ideal, int>> factors);

    Ring ring() const { return ring_; }
    const std::vector<std::pair<Ideal, int>>& factors() const { return factors_; }

    bool is_one() const { return factors_.empty(); }
    Ideal generator() const;
    Int norm() const;
    int mobius() const;
    long valuation(const Ideal& prime) const;
    bool divisible_by(const Ideal& prime) const { return valuation(prime) > 0; }

    // All divisors, (1) through the ideal itself, sorted by (norm, generator).
    // Count is prod (e_i + 1).
    std::vector<FactoredIdeal> divisors() const;

    friend FactoredIdeal operator*(const FactoredIdeal& a, const FactoredIdeal& b);
    friend bool operator==(const FactoredIdeal& a, const FactoredIdeal& b) {
        return a.ring_ == b.ring_ && a.factors_ == b.factors_;
    }
    friend bool operator!=(const FactoredIdeal& a, const FactoredIdeal& b) { return !(a == b); }

    std::string to_string() const;  // "(p1)^e1*(p2)^e2", "(1)" when empty

  private:
    Ring ring_;
    std::vector<std::pair<Ideal, int>> factors_;
};

// Exact Mobius sum over the divisors J of alpha coprime to s of mu(J)/N(J),
// and the Euler product over the prime divisors coprime to s of (1 - 1/N(p)).
// The two routes are independent; they must agree.
std::pair<Rat, Rat> mobius_sum_and_euler_product(const Ideal& alpha, const Ideal& s);

// A minimal-norm element of the coset alpha + I, deterministic tie-break by
// (norm, re, im). I must be nonzero.
GaussianInt coset_min_norm(const GaussianInt& alpha, const Ideal& I);

struct NormGapResult {
    Int gap;            // N(beta*g + f) - N(alpha*g + f)
    bool within_bound;  // gap <= 4|fg|sqrt(N(alpha)), checked as gap^2 <= 16 N(f)N(g)N(alpha)
};

// Requires N(beta) < N(alpha) and N(beta*g+f) >= N(alpha*g+f); violations
// raise std::invalid_argument rather than reporting a failed bound.
NormGapResult shift_norm_gap(const GaussianInt& f, const GaussianInt& g,
                             const GaussianInt& alpha, const GaussianInt& beta);

}  // namespace edscm
