#pragma once

#include <optional>
#include <string>

#include "edscm/gaussian.hpp"
#include "edscm/ideal.hpp"

namespace edscm {

enum class Field { Q, Qi };

std::string to_string(Field f);

struct Point {
    static Point infinity() { return Point(); }
    Point() : inf(true) {}
    Point(GaussianRat px, GaussianRat py) : inf(false), x(std::move(px)), y(std::move(py)) {}

    bool inf;
    GaussianRat x;
    GaussianRat y;

    friend bool operator==(const Point& a, const Point& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6. When `cm` is set the curve
// has the shape y^2 = x^3 + a4 x and carries the order-4 automorphism
// (x, y) -> (-x, iy), so endomorphisms from Z[i] act on it.
class Curve {
  public:
    static Curve make(Field field, GaussianRat a1, GaussianRat a2, GaussianRat a3,
                      GaussianRat a4, GaussianRat a6, bool cm);

    Field field() const { return field_; }
    bool cm() const { return cm_; }
    const GaussianRat& a1() const { return a1_; }
    const GaussianRat& a2() const { return a2_; }
    const GaussianRat& a3() const { return a3_; }
    const GaussianRat& a4() const { return a4_; }
    const GaussianRat& a6() const { return a6_; }

    GaussianRat discriminant() const;
    bool contains(const Point& R) const;
    Ring natural_ring() const { return cm_ ? Ring::Zi : Ring::Z; }

  private:
    Curve() = default;
    Field field_ = Field::Q;
    bool cm_ = false;
    GaussianRat a1_, a2_, a3_, a4_, a6_;
};

Point negate(const Curve& E, const Point& R);
// Chord-tangent addition; inputs are checked against the curve equation.
Point add(const Curve& E, const Point& R1, const Point& R2);
Point sub(const Curve& E, const Point& R1, const Point& R2);
Point scalar_mul(const Curve& E, const Int& n, const Point& R);
// (x, y) -> (-x, iy); requires the cm marker.
Point i_action(const Curve& E, const Point& R);
// alpha = a+bi acts as aR + b*[i]R; imaginary alpha requires the cm marker.
Point apply_endo(const Curve& E, const GaussianInt& alpha, const Point& R);

// Denominator ideal of x(R) as a factored O_K-ideal; R must be affine.
FactoredIdeal x_denominator_ideal(const Curve& E, const Point& R);

// B_alpha(P, Q): the denominator ideal of x(alpha(P) + Q), or nullopt
// (the zero term) when alpha(P) + Q is the identity.
std::optional<FactoredIdeal> shifted_term(const Curve& E, const Point& P, const Point& Q,
                                          const GaussianInt& alpha);

struct TorsionResult {
    bool torsion;
    Ideal annihilator;  // meaningful only when torsion
};

// Raised when the small-multiple search and the canonical-height test
// cannot agree on whether a point is torsion.
struct TorsionDetectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dual test: exhaustive annihilator search over 0 < N(alpha) <= 144 paired
// with the canonical-height criterion. Inconclusive cases throw.
TorsionResult torsion_annihilator(const Curve& E, const Point& Q, Ring ring);

}  // namespace edscm
