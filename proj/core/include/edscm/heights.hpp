#pragma once

#include <utility>
#include <vector>

#include "edscm/curve.hpp"

namespace edscm {

// A real value together with an explicit bound on its distance from the
// exact quantity it approximates.
struct HeightValue {
    double value;
    double error;
};

// Absolute (Weil) height of x, normalized by 1/[K:Q]; h(0) = 0.
// Over Q with x = a/b reduced this is log max(|a|, b). Over Q(i) the finite
// part is read off the primitive integral minimal polynomial of x, so no
// factorization is ever needed.
HeightValue naive_height(const GaussianRat& x, Field field);

HeightValue naive_height(const Curve& E, const Point& R);

// Neron-Tate height (1/2) lim h(2^n R)/4^n by exact doubling, up to
// `max_doublings` with early stop once successive estimates agree to 1e-8.
// The error bound is calibrated from the observed increments; it is an
// empirical estimate, not a proof. `trace` (optional) receives the
// successive estimates.
HeightValue canonical_height(const Curve& E, const Point& R, int max_doublings = 8,
                             std::vector<double>* trace = nullptr);

struct HeightAxiomReport {
    bool scaling_ok;        // |h^(alpha R) - N(alpha) h^(R)| within combined bounds
    bool torsion_ok;        // height criterion agrees with the annihilator search
    double lhs;             // h^(alpha R)
    double rhs;             // N(alpha) * h^(R)
    double tolerance;
};

HeightAxiomReport check_height_axioms(const Curve& E, const Point& R, const GaussianInt& alpha);

// (prod_{p <= N} (1 - 1/p), e^{-gamma}/log N): the Mertens product next to
// its asymptotic value.
std::pair<double, double> mertens_lower_bound(unsigned long N);

// The same product as an exact rational.
Rat mertens_product_exact(unsigned long N);

}  // namespace edscm
