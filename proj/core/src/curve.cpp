#include "edscm/curve.hpp"

#include <stdexcept>

namespace edscm {

std::string to_string(Field f) { return f == Field::Q ? "Q" : "Qi"; }

Curve Curve::make(Field field, GaussianRat a1, GaussianRat a2, GaussianRat a3, GaussianRat a4,
                  GaussianRat a6, bool cm) {
    Curve E;
    E.field_ = field;
    E.cm_ = cm;
    E.a1_ = std::move(a1);
    E.a2_ = std::move(a2);
    E.a3_ = std::move(a3);
    E.a4_ = std::move(a4);
    E.a6_ = std::move(a6);
    if (field == Field::Q) {
        for (const GaussianRat* c : {&E.a1_, &E.a2_, &E.a3_, &E.a4_, &E.a6_}) {
            if (!c->is_rational())
                throw std::invalid_argument("Curve: imaginary coefficient on a curve over Q");
        }
    }
    if (cm) {
        for (const GaussianRat* c : {&E.a1_, &E.a2_, &E.a3_, &E.a6_}) {
            if (!c->is_zero())
                throw std::invalid_argument("Curve: cm marker requires the shape y^2 = x^3 + d*x");
        }
    }
    if (E.discriminant().is_zero()) throw std::invalid_argument("Curve: singular (discriminant 0)");
    return E;
}

GaussianRat Curve::discriminant() const {
    GaussianRat b2 = a1_ * a1_ + GaussianRat(Rat(4)) * a2_;
    GaussianRat b4 = GaussianRat(Rat(2)) * a4_ + a1_ * a3_;
    GaussianRat b6 = a3_ * a3_ + GaussianRat(Rat(4)) * a6_;
    GaussianRat b8 = a1_ * a1_ * a6_ + GaussianRat(Rat(4)) * a2_ * a6_ - a1_ * a3_ * a4_ +
                     a2_ * a3_ * a3_ - a4_ * a4_;
    return -(b2 * b2 * b8) - GaussianRat(Rat(8)) * b4 * b4 * b4 -
           GaussianRat(Rat(27)) * b6 * b6 + GaussianRat(Rat(9)) * b2 * b4 * b6;
}

bool Curve::contains(const Point& R) const {
    if (R.inf) return true;
    GaussianRat lhs = R.y * R.y + a1_ * R.x * R.y + a3_ * R.y;
    GaussianRat rhs = R.x * R.x * R.x + a2_ * R.x * R.x + a4_ * R.x + a6_;
    return lhs == rhs;
}

namespace {

void require_on_curve(const Curve& E, const Point& R, const char* who) {
    if (!E.contains(R)) throw std::invalid_argument(std::string(who) + ": point not on curve");
}

// Group law without membership checks; used on values already validated.
Point add_unchecked(const Curve& E, const Point& R1, const Point& R2) {
    if (R1.inf) return R2;
    if (R2.inf) return R1;
    const GaussianRat &x1 = R1.x, &y1 = R1.y, &x2 = R2.x, &y2 = R2.y;
    GaussianRat lambda, nu;
    if (x1 == x2) {
        // R2 == -R1 ?
        GaussianRat neg_y1 = -y1 - E.a1() * x1 - E.a3();
        if (y2 == neg_y1) return Point::infinity();
        GaussianRat den = GaussianRat(Rat(2)) * y1 + E.a1() * x1 + E.a3();
        lambda = (GaussianRat(Rat(3)) * x1 * x1 + GaussianRat(Rat(2)) * E.a2() * x1 + E.a4() -
                  E.a1() * y1) /
                 den;
        nu = (-(x1 * x1 * x1) + E.a4() * x1 + GaussianRat(Rat(2)) * E.a6() - E.a3() * y1) / den;
    } else {
        GaussianRat den = x2 - x1;
        lambda = (y2 - y1) / den;
        nu = (y1 * x2 - y2 * x1) / den;
    }
    GaussianRat x3 = lambda * lambda + E.a1() * lambda - E.a2() - x1 - x2;
    GaussianRat y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
    return Point(std::move(x3), std::move(y3));
}

Point negate_unchecked(const Curve& E, const Point& R) {
    if (R.inf) return R;
    return Point(R.x, -R.y - E.a1() * R.x - E.a3());
}

Point scalar_unchecked(const Curve& E, const Int& n, const Point& R) {
    if (n == 0 || R.inf) return Point::infinity();
    Int m = int_abs(n);
    Point base = n < 0 ? negate_unchecked(E, R) : R;
    Point acc = Point::infinity();
    // double-and-add, most significant bit first
    size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = add_unchecked(E, acc, acc);
        if (mpz_tstbit(m.get_mpz_t(), i)) acc = add_unchecked(E, acc, base);
    }
    return acc;
}

Point i_action_unchecked(const Curve& E, const Point& R) {
    if (!E.cm()) throw std::invalid_argument("i_action: curve has no order-4 automorphism");
    if (R.inf) return R;
    GaussianRat iy{-R.y.im, R.y.re};
    return Point(-R.x, std::move(iy));
}

Point apply_endo_unchecked(const Curve& E, const GaussianInt& alpha, const Point& R) {
    if (alpha.im == 0) return scalar_unchecked(E, alpha.re, R);
    if (!E.cm())
        throw std::invalid_argument("apply_endo: imaginary multiplier on a curve without cm");
    Point a_part = scalar_unchecked(E, alpha.re, R);
    Point b_part = scalar_unchecked(E, alpha.im, i_action_unchecked(E, R));
    return add_unchecked(E, a_part, b_part);
}

}  // namespace

Point negate(const Curve& E, const Point& R) {
    require_on_curve(E, R, "negate");
    return negate_unchecked(E, R);
}

Point add(const Curve& E, const Point& R1, const Point& R2) {
    require_on_curve(E, R1, "add");
    require_on_curve(E, R2, "add");
    return add_unchecked(E, R1, R2);
}

Point sub(const Curve& E, const Point& R1, const Point& R2) {
    require_on_curve(E, R1, "sub");
    require_on_curve(E, R2, "sub");
    return add_unchecked(E, R1, negate_unchecked(E, R2));
}

Point scalar_mul(const Curve& E, const Int& n, const Point& R) {
    require_on_curve(E, R, "scalar_mul");
    return scalar_unchecked(E, n, R);
}

Point i_action(const Curve& E, const Point& R) {
    require_on_curve(E, R, "i_action");
    return i_action_unchecked(E, R);
}

Point apply_endo(const Curve& E, const GaussianInt& alpha, const Point& R) {
    require_on_curve(E, R, "apply_endo");
    return apply_endo_unchecked(E, alpha, R);
}

FactoredIdeal x_denominator_ideal(const Curve& E, const Point& R) {
    if (R.inf) throw std::invalid_argument("x_denominator_ideal: point at infinity");
    if (E.field() == Field::Q) {
        Int den = R.x.re.get_den();
        std::vector<std::pair<Ideal, int>> fs;
        for (const auto& [p, e] : factor_integer(den)) fs.emplace_back(Ideal(Ring::Z, p), e);
        return FactoredIdeal(Ring::Z, std::move(fs));
    }
    // x = g/d with g in Z[i], d in Z; strip the common Gaussian factor so the
    // remaining denominator is exactly the denominator ideal.
    GaussianFrac f = split_denominator(R.x);
    GaussianInt c = gauss_gcd(f.num, GaussianInt(f.den));
    GaussianInt d = c.is_zero() ? GaussianInt(f.den) : divexact(GaussianInt(f.den), c);
    if (is_unit(d) || d.is_zero()) return FactoredIdeal::one(Ring::Zi);
    std::vector<std::pair<Ideal, int>> fs;
    for (const auto& [p, e] : factor_gaussian(d).primes) fs.emplace_back(Ideal(Ring::Zi, p), e);
    return FactoredIdeal(Ring::Zi, std::move(fs));
}

std::optional<FactoredIdeal> shifted_term(const Curve& E, const Point& P, const Point& Q,
                                          const GaussianInt& alpha) {
    require_on_curve(E, P, "shifted_term");
    require_on_curve(E, Q, "shifted_term");
    Point S = add_unchecked(E, apply_endo_unchecked(E, alpha, P), Q);
    if (S.inf) return std::nullopt;
    return x_denominator_ideal(E, S);
}

}  // namespace edscm
