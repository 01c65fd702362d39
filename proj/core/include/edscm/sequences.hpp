#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edscm/curve.hpp"
#include "edscm/ideal.hpp"
#include "edscm/reduction.hpp"

namespace edscm {

// A computation contradicted one of the verified divisibility laws.
struct CheckViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All alpha with 0 < N(alpha) <= max_norm, sorted by norm with a fixed
// tie-break (canonical representative, then unit exponent). Both signs
// appear over Z; all four associates appear over Z[i].
std::vector<GaussianInt> enumerate_indices(Ring ring, const Int& max_norm);

struct SequenceRecord {
    GaussianInt index;
    std::optional<FactoredIdeal> term;  // nullopt: alpha(P)+Q was the identity
    bool has_primitive = false;
    std::optional<Ideal> witness;  // smallest primitive prime when present
    std::string reason;            // why no primitive divisor, when absent

    friend bool operator==(const SequenceRecord& a, const SequenceRecord& b) {
        return a.index == b.index && a.term == b.term && a.has_primitive == b.has_primitive &&
               a.witness == b.witness && a.reason == b.reason;
    }
};

// Terms B_alpha with factored denominators and primitive-divisor verdicts.
// A prime is primitive iff it divides no earlier nonzero term of strictly
// smaller norm; equal-norm indices never block each other. The index 0 term
// participates as blocking history and is emitted first.
std::vector<SequenceRecord> scan(const Curve& E, const Point& P, const Point& Q, Ring ring,
                                 const Int& max_norm);

struct ZsygmondyResult {
    std::vector<GaussianInt> exceptional;  // indices whose term lacks a primitive divisor
    Int largest_norm;                      // 0 when the set is empty
    size_t scanned;
};

// Primitive-divisor existence by gcd-stripping against the accumulated
// history; never factors a term, so large norm caps stay cheap.
ZsygmondyResult exceptional_indices(const Curve& E, const Point& P, const Point& Q, Ring ring,
                                    const Int& max_norm);

// All alpha with N(alpha) <= max_norm whose (nonzero) term the prime
// divides, via arithmetic on the reduced curve. Requires good reduction.
std::vector<GaussianInt> divisibility_pattern(const Curve& E, const Point& P, const Point& Q,
                                              const Ideal& prime, Ring ring, const Int& max_norm);

struct AuxiliaryIndex {
    GaussianInt alpha;
    Ideal s;
    std::vector<Ideal> I_set;  // divisors I of (alpha) with (alpha)/I coprime to s
    std::vector<Ideal> J_set;  // divisors coprime to s
    GaussianInt q;             // q in every member of J_set, q == 1 (mod s)
};

AuxiliaryIndex index_sets(const GaussianInt& alpha, const Ideal& s);

// The point whose x-denominator is the auxiliary term for I = (m):
// m P + (m q / alpha) Q. Only defined over the order Z.
Point aux_point(const Curve& E, const Point& P, const Point& Q, const AuxiliaryIndex& aux,
                const Ideal& I);

// The auxiliary term itself, factored. For I = (alpha) this equals B_alpha.
FactoredIdeal aux_term(const Curve& E, const Point& P, const Point& Q, const GaussianInt& alpha,
                       const Ideal& I);

// (Ann/s, (alpha)s/Ann). Non-integral quotients at a good prime contradict
// the divisibility laws and throw CheckViolation.
std::pair<Ideal, Ideal> ip_jp(const GaussianInt& alpha, const Ideal& prime, const Ideal& ann,
                              const Ideal& s);

struct CheckReport {
    std::string check;
    GaussianInt alpha;
    Ideal prime;
    bool applicable = true;  // false: hypothesis absent, nothing asserted
    bool pass = true;
    std::string detail;      // carries the inputs on failure, for replay
};

// The per-(alpha, prime) verification battery for a good prime dividing
// B_alpha: annihilator divisibility, integrality and coprimality of the
// quotient pair, strictness for non-primitive divisors, and (over Z) the
// support, valuation-step and valuation-bound laws of the auxiliary terms.
std::vector<CheckReport> good_prime_checks(const Curve& E, const Point& P, const Point& Q,
                                           const GaussianInt& alpha, const Ideal& prime,
                                           const Ideal& s,
                                           std::optional<bool> non_primitive_hint = std::nullopt);

struct VerifySummary {
    std::vector<CheckReport> reports;
    size_t pairs = 0;  // (alpha, prime) pairs examined
    bool all_pass = true;
};

// Runs good_prime_checks over every good prime of norm <= prime_cap
// dividing some B_alpha with N(alpha) <= max_norm.
VerifySummary verify_range(const Curve& E, const Point& P, const Point& Q, Ring ring,
                           const Int& max_norm, const Int& prime_cap);

struct ShiftDecomposition {
    Point R;        // free generator
    Point T1, T2;   // torsion parts of P and Q
    GaussianInt a;  // P = a(R) + T1
    GaussianInt b;  // Q = b(R) + T2
    Int t1_order;   // annihilates T1
    Int t2_order;   // annihilates T2
};

// From P = aR + T1, Q = bR + T2 (verified exactly) produces (f, g) with
// f(P) = g(Q), g != 0: f = b*n, g = a*n for n = lcm of the torsion orders.
// Rejects a = 0 (P torsion).
std::pair<GaussianInt, GaussianInt> shift_construction(const Curve& E, const Point& P,
                                                       const Point& Q,
                                                       const ShiftDecomposition& dec);

}  // namespace edscm
