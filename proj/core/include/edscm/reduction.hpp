#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edscm/curve.hpp"
#include "edscm/ideal.hpp"

namespace edscm {

struct BadReductionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// pi-adic valuation; additive on products. x must be nonzero.
long valuation(const Rat& x, const Int& p);
long valuation(const GaussianRat& x, const Ideal& prime);

// Residue field of O_K at a prime: F_p for primes of Z and for split or
// ramified primes of Z[i] (where i maps to a square root of -1 mod p), and
// F_p^2 = F_p[t]/(t^2+1) for inert primes.
class ResidueField {
  public:
    struct Elem {
        Int a, b;  // a + b*t; b is 0 in degree 1
        friend bool operator==(const Elem& x, const Elem& y) { return x.a == y.a && x.b == y.b; }
        friend bool operator!=(const Elem& x, const Elem& y) { return !(x == y); }
        friend bool operator<(const Elem& x, const Elem& y) {
            return x.a != y.a ? x.a < y.a : x.b < y.b;
        }
    };

    static ResidueField at(const Ideal& prime);

    const Int& p() const { return p_; }
    int degree() const { return deg_; }
    Int size() const { return deg_ == 1 ? p_ : p_ * p_; }
    const Ideal& prime() const { return prime_; }

    Elem zero() const { return {0, 0}; }
    Elem one() const { return {1, 0}; }
    bool is_zero(const Elem& x) const { return x.a == 0 && x.b == 0; }

    Elem from_int(const Int& n) const;
    // requires the denominator to be a unit at the prime
    Elem reduce(const Rat& x) const;
    Elem reduce(const GaussianRat& x) const;

    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem neg(const Elem& x) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem inv(const Elem& x) const;
    // multiplication by the image of i
    Elem times_i(const Elem& x) const;

  private:
    Ideal prime_ = Ideal::zero(Ring::Z);
    Int p_;
    int deg_ = 1;
    Int i_image_;  // degree 1 over Z[i] only
    bool has_i_ = false;
};

struct ReducedPoint {
    bool inf = true;
    ResidueField::Elem x, y;
    friend bool operator==(const ReducedPoint& p, const ReducedPoint& q) {
        if (p.inf || q.inf) return p.inf == q.inf;
        return p.x == q.x && p.y == q.y;
    }
    friend bool operator!=(const ReducedPoint& p, const ReducedPoint& q) { return !(p == q); }
};

class ReducedCurve {
  public:
    ReducedCurve(ResidueField F, ResidueField::Elem a1, ResidueField::Elem a2,
                 ResidueField::Elem a3, ResidueField::Elem a4, ResidueField::Elem a6, bool cm);

    const ResidueField& field() const { return F_; }
    bool cm() const { return cm_; }

    ReducedPoint reduce(const Curve& E, const Point& R) const;
    bool contains(const ReducedPoint& R) const;

    ReducedPoint neg(const ReducedPoint& R) const;
    ReducedPoint add(const ReducedPoint& R1, const ReducedPoint& R2) const;
    ReducedPoint scalar_mul(const Int& n, const ReducedPoint& R) const;
    ReducedPoint i_action(const ReducedPoint& R) const;
    ReducedPoint apply_endo(const GaussianInt& alpha, const ReducedPoint& R) const;

    ResidueField::Elem discriminant() const;

  private:
    ResidueField F_;
    ResidueField::Elem a1_, a2_, a3_, a4_, a6_;
    bool cm_;
};

// Fails (BadReductionError) when a coefficient is non-integral at the prime
// or the reduced discriminant vanishes.
ReducedCurve reduce_curve(const Curve& E, const Ideal& prime);

// R == O on the curve reduced at the prime, i.e. R is infinity or
// v(x(R)) < 0. Requires good reduction.
bool is_zero_mod(const Curve& E, const Point& R, const Ideal& prime);

// Additive order of a reduced point. Exhaustive for tiny fields, otherwise
// baby-step giant-step over the Hasse interval; for cm curves over large
// fields the Frobenius-trace candidates give an annihilating multiple
// directly (split primes via p = a^2+b^2, inert primes are supersingular).
Int additive_order(const ReducedCurve& C, const ReducedPoint& R);

// Ann(prime, R) = { a in O : a(R) == O mod prime }, as a canonical ideal.
Ideal ann_ideal(const Curve& E, const Ideal& prime, const Point& R, Ring ring);

enum class BadReason { BadReduction, TorsionNorm, Ramified, AnnMismatch };

std::string to_string(BadReason r);

struct BadPlaceSet {
    std::vector<std::pair<Ideal, BadReason>> places;
    bool contains(const Ideal& prime) const;
};

// The finite bad set: primes of bad reduction (including non-integral
// coefficients), primes dividing N(s), the ramified prime of Q(i), plus a
// direct annihilator-consistency sweep over good primes of norm <= test_cap.
BadPlaceSet bad_places(const Curve& E, const Point& P, const Point& Q, const Ideal& s,
                       const Int& test_cap = Int(500));

// The provable part of the complement of the bad set (good reduction,
// unramified, coprime to N(s)).
bool is_good_prime(const Curve& E, const Ideal& prime, const Ideal& s);

// All prime ideals of the coefficient ring of E with norm <= cap,
// in (norm, generator) order. Over Q(i) this enumerates Gaussian primes.
std::vector<Ideal> primes_up_to(Field field, const Int& cap);

}  // namespace edscm
