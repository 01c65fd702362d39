#include "edscm/heights.hpp"

#include <algorithm>
#include <cmath>

#include "edscm/factor.hpp"

namespace edscm {

namespace {

constexpr double kGamma = 0.57721566490153286060651209008240243104;
constexpr double kConvergence = 1e-8;

double float_slop(double v) { return 1e-12 * (1.0 + std::fabs(v)); }

}  // namespace

HeightValue naive_height(const GaussianRat& x, Field field) {
    if (x.is_zero()) return {0.0, 0.0};
    if (x.is_rational()) {
        // identical over Q and Q(i): the 1/[K:Q] normalization makes the
        // height independent of the field of definition
        const Rat& r = x.re;
        double h = std::max(log_abs(r.get_num()), log_abs(r.get_den()));
        return {h, float_slop(h)};
    }
    if (field == Field::Q)
        throw std::invalid_argument("naive_height: imaginary value on a curve over Q");
    // x generates Q(i); its monic minimal polynomial is
    //   T^2 - 2 Re(x) T + N(x).
    // The leading coefficient of the primitive integral form is the norm of
    // the denominator ideal, and both conjugates have modulus sqrt(N(x)).
    Rat trace = Rat(2) * x.re;
    Rat nrm = norm(x);
    Int lead = int_lcm(trace.get_den(), nrm.get_den());
    double h = 0.5 * log_abs(lead) + std::max(0.0, 0.5 * log_abs(nrm));
    return {h, float_slop(h)};
}

HeightValue naive_height(const Curve& E, const Point& R) {
    if (R.inf) return {0.0, 0.0};
    return naive_height(R.x, E.field());
}

HeightValue canonical_height(const Curve& E, const Point& R, int max_doublings,
                             std::vector<double>* trace) {
    if (!E.contains(R)) throw std::invalid_argument("canonical_height: point not on curve");
    if (R.inf) return {0.0, 0.0};
    Point S = R;
    double h_prev = naive_height(E, S).value;
    double est_prev = h_prev / 2.0;
    if (trace) trace->push_back(est_prev);
    double max_increment = 0.0;
    double pow4 = 1.0;
    int n = 0;
    for (; n < max_doublings; ++n) {
        S = add(E, S, S);
        pow4 *= 4.0;
        if (S.inf) {
            // torsion orbit hit the identity: the limit is exactly 0
            if (trace) trace->push_back(0.0);
            return {0.0, 1e-15};
        }
        double h_n = naive_height(E, S).value;
        max_increment = std::max(max_increment, std::fabs(h_n - 4.0 * h_prev));
        double est = h_n / (2.0 * pow4);
        if (trace) trace->push_back(est);
        bool converged = std::fabs(est - est_prev) < kConvergence;
        h_prev = h_n;
        est_prev = est;
        if (converged) {
            ++n;
            break;
        }
    }
    double c_est = std::max(3.0 * max_increment, 0.5);
    double err = c_est / (2.0 * pow4) + float_slop(est_prev);
    return {est_prev, err};
}

HeightAxiomReport check_height_axioms(const Curve& E, const Point& R, const GaussianInt& alpha) {
    if (alpha.is_zero()) throw std::invalid_argument("check_height_axioms: alpha must be nonzero");
    HeightValue hR = canonical_height(E, R);
    Point aR = apply_endo(E, alpha, R);
    HeightValue haR = canonical_height(E, aR);
    double deg = norm(alpha).get_d();

    HeightAxiomReport rep;
    rep.lhs = haR.value;
    rep.rhs = deg * hR.value;
    rep.tolerance = std::max(haR.error + deg * hR.error, 1e-6);
    rep.scaling_ok = std::fabs(rep.lhs - rep.rhs) <= rep.tolerance;

    // torsion iff the canonical height vanishes; cross-check both detectors
    TorsionResult tr = torsion_annihilator(E, R, E.natural_ring());
    bool height_zero = hR.value <= hR.error + 1e-6;
    rep.torsion_ok = (tr.torsion == height_zero);
    return rep;
}

Rat mertens_product_exact(unsigned long N) {
    Rat prod(1);
    std::vector<bool> sieve(N + 1, true);
    for (unsigned long p = 2; p <= N; ++p) {
        if (!sieve[p]) continue;
        for (unsigned long j = 2 * p; j <= N; j += p) sieve[j] = false;
        prod *= Rat(Int(p) - 1, Int(p));
    }
    prod.canonicalize();
    return prod;
}

std::pair<double, double> mertens_lower_bound(unsigned long N) {
    if (N < 2) throw std::invalid_argument("mertens_lower_bound: N >= 2 required");
    Rat prod = mertens_product_exact(N);
    double pd = log_abs(prod.get_num()) - log_abs(prod.get_den());
    return {std::exp(pd), std::exp(-kGamma) / std::log(static_cast<double>(N))};
}

}  // namespace edscm
