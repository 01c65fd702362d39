#include <map>
#include <vector>

#include "edscm/curve.hpp"
#include "edscm/heights.hpp"

namespace edscm {

namespace {

// N(alpha) <= 144 covers every torsion order that occurs over Q and Q(i)
// at desk scale; beyond this the height criterion decides.
constexpr long kSearchNormBound = 144;

}  // namespace

TorsionResult torsion_annihilator(const Curve& E, const Point& Q, Ring ring) {
    if (!E.contains(Q)) throw std::invalid_argument("torsion_annihilator: point not on curve");
    if (Q.inf) return {true, Ideal::unit(ring)};
    if (ring == Ring::Zi && !E.cm())
        throw std::invalid_argument("torsion_annihilator: Z[i] order requires a cm curve");

    std::vector<GaussianInt> annihilators;
    if (ring == Ring::Z) {
        Point acc = Q;
        for (long n = 1; n * n <= kSearchNormBound; ++n) {
            if (acc.inf) annihilators.push_back(GaussianInt(n));
            if ((n + 1) * (n + 1) <= kSearchNormBound) acc = add(E, acc, Q);
        }
        // nQ = O iff (-n)Q = O; positive representatives suffice for the gcd
    } else {
        long bound = 12;  // |a|, |b| <= 12 covers a^2+b^2 <= 144
        Point iQ = i_action(E, Q);
        std::map<long, Point> a_mul, b_mul;
        Point acc = Point::infinity();
        for (long a = 0; a <= bound; ++a) {
            a_mul[a] = acc;
            if (a < bound) acc = add(E, acc, Q);
        }
        acc = Point::infinity();
        for (long b = 0; b <= bound; ++b) {
            b_mul[b] = acc;
            if (b < bound) acc = add(E, acc, iQ);
        }
        for (long a = -bound; a <= bound; ++a) {
            for (long b = -bound; b <= bound; ++b) {
                if (a == 0 && b == 0) continue;
                if (a * a + b * b > kSearchNormBound) continue;
                Point pa = a >= 0 ? a_mul[a] : negate(E, a_mul[-a]);
                Point pb = b >= 0 ? b_mul[b] : negate(E, b_mul[-b]);
                if (add(E, pa, pb).inf) annihilators.push_back(GaussianInt(a, b));
            }
        }
    }

    HeightValue h = canonical_height(E, Q);
    bool height_zero = h.value <= h.error + 1e-6;

    if (!annihilators.empty()) {
        if (!height_zero)
            throw TorsionDetectionError(
                "torsion_annihilator: annihilator found but canonical height is positive");
        GaussianInt g = annihilators.front();
        for (size_t k = 1; k < annihilators.size(); ++k) {
            g = ring == Ring::Z ? GaussianInt(int_gcd(g.re, annihilators[k].re))
                                : gauss_gcd(g, annihilators[k]);
        }
        return {true, Ideal(ring, g)};
    }
    if (height_zero)
        throw TorsionDetectionError(
            "torsion_annihilator: height is consistent with zero but no annihilator of norm <= "
            "144 exists; inconclusive");
    return {false, Ideal::unit(ring)};
}

}  // namespace edscm
