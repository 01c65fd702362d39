#include "edscm/reduction.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "edscm/factor.hpp"

namespace edscm {

long valuation(const Rat& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("valuation: zero input");
    Int num = x.get_num();
    Int den = x.get_den();
    long vn = remove_factor(num, p);
    if (vn > 0) return vn;
    return -remove_factor(den, p);
}

namespace {

long gaussian_valuation(GaussianInt g, const GaussianInt& pi) {
    long v = 0;
    while (true) {
        auto q = try_divide(g, pi);
        if (!q) return v;
        g = *q;
        ++v;
    }
}

}  // namespace

long valuation(const GaussianRat& x, const Ideal& prime) {
    if (x.is_zero()) throw std::invalid_argument("valuation: zero input");
    if (prime.is_zero() || prime.is_unit())
        throw std::invalid_argument("valuation: not a prime ideal");
    if (prime.ring() == Ring::Z) {
        if (!x.is_rational())
            throw std::invalid_argument("valuation: imaginary value at a rational prime");
        return valuation(x.re, prime.gen().re);
    }
    GaussianFrac f = split_denominator(x);
    return gaussian_valuation(f.num, prime.gen()) -
           gaussian_valuation(GaussianInt(f.den), prime.gen());
}

ResidueField ResidueField::at(const Ideal& prime) {
    if (prime.is_zero() || prime.is_unit())
        throw std::invalid_argument("ResidueField: not a prime ideal");
    ResidueField F;
    F.prime_ = prime;
    const GaussianInt& g = prime.gen();
    if (prime.ring() == Ring::Z) {
        if (!is_prime(g.re)) throw std::invalid_argument("ResidueField: composite generator");
        F.p_ = g.re;
        F.deg_ = 1;
        F.has_i_ = false;
        return F;
    }
    if (g.im == 0) {
        // inert rational prime, residue field F_p[t]/(t^2+1)
        if (!is_prime(g.re) || g.re % 4 != 3)
            throw std::invalid_argument("ResidueField: not an inert Gaussian prime");
        F.p_ = g.re;
        F.deg_ = 2;
        F.has_i_ = true;
        return F;
    }
    Int n = norm(g);
    if (!is_prime(n)) throw std::invalid_argument("ResidueField: not a Gaussian prime");
    F.p_ = n;
    F.deg_ = 1;
    F.has_i_ = true;
    // a + b*i == 0 mod pi, so i == -a/b in the residue field
    Int binv;
    if (!mpz_invert(binv.get_mpz_t(), g.im.get_mpz_t(), n.get_mpz_t()))
        throw std::logic_error("ResidueField: generator imaginary part not invertible");
    F.i_image_ = ((-g.re * binv) % n + n) % n;
    return F;
}

ResidueField::Elem ResidueField::from_int(const Int& n) const {
    Int a = n % p_;
    if (a < 0) a += p_;
    return {a, 0};
}

ResidueField::Elem ResidueField::reduce(const Rat& x) const {
    Int den = x.get_den() % p_;
    Int inv;
    if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t()))
        throw std::invalid_argument("ResidueField::reduce: denominator not invertible");
    Int a = (x.get_num() % p_) * inv % p_;
    if (a < 0) a += p_;
    return {a, 0};
}

ResidueField::Elem ResidueField::reduce(const GaussianRat& x) const {
    Elem re = reduce(x.re);
    Elem im = reduce(x.im);
    if (deg_ == 2) return {re.a, im.a};
    if (!has_i_) {
        if (x.im != 0)
            throw std::invalid_argument("ResidueField::reduce: imaginary value at a rational prime");
        return re;
    }
    return {(re.a + im.a * i_image_) % p_, 0};
}

ResidueField::Elem ResidueField::add(const Elem& x, const Elem& y) const {
    return {(x.a + y.a) % p_, (x.b + y.b) % p_};
}

ResidueField::Elem ResidueField::sub(const Elem& x, const Elem& y) const {
    Int a = (x.a - y.a) % p_;
    Int b = (x.b - y.b) % p_;
    if (a < 0) a += p_;
    if (b < 0) b += p_;
    return {a, b};
}

ResidueField::Elem ResidueField::neg(const Elem& x) const { return sub(zero(), x); }

ResidueField::Elem ResidueField::mul(const Elem& x, const Elem& y) const {
    if (deg_ == 1) return {x.a * y.a % p_, 0};
    Int a = (x.a * y.a - x.b * y.b) % p_;
    Int b = (x.a * y.b + x.b * y.a) % p_;
    if (a < 0) a += p_;
    if (b < 0) b += p_;
    return {a, b};
}

ResidueField::Elem ResidueField::inv(const Elem& x) const {
    if (is_zero(x)) throw std::invalid_argument("ResidueField::inv: zero element");
    if (deg_ == 1) {
        Int r;
        if (!mpz_invert(r.get_mpz_t(), x.a.get_mpz_t(), p_.get_mpz_t()))
            throw std::logic_error("ResidueField::inv: not invertible");
        return {r, 0};
    }
    // (a + bt)^-1 = (a - bt)/(a^2 + b^2); the norm is nonzero because -1 is
    // a non-residue mod an inert prime
    Int n = (x.a * x.a + x.b * x.b) % p_;
    Int ninv;
    if (!mpz_invert(ninv.get_mpz_t(), n.get_mpz_t(), p_.get_mpz_t()))
        throw std::logic_error("ResidueField::inv: norm not invertible");
    Int a = x.a * ninv % p_;
    Int b = (p_ - x.b) * ninv % p_;
    return {a, b};
}

ResidueField::Elem ResidueField::times_i(const Elem& x) const {
    if (!has_i_) throw std::logic_error("ResidueField::times_i: field has no image of i");
    if (deg_ == 1) return mul(x, Elem{i_image_, 0});
    // t * (a + bt) = -b + at
    Int a = (p_ - x.b) % p_;
    return {a, x.a};
}

ReducedCurve::ReducedCurve(ResidueField F, ResidueField::Elem a1, ResidueField::Elem a2,
                           ResidueField::Elem a3, ResidueField::Elem a4, ResidueField::Elem a6,
                           bool cm)
    : F_(std::move(F)), a1_(a1), a2_(a2), a3_(a3), a4_(a4), a6_(a6), cm_(cm) {}

ResidueField::Elem ReducedCurve::discriminant() const {
    const ResidueField& F = F_;
    auto scale = [&](long k, const ResidueField::Elem& e) { return F.mul(F.from_int(k), e); };
    ResidueField::Elem b2 = F.add(F.mul(a1_, a1_), scale(4, a2_));
    ResidueField::Elem b4 = F.add(scale(2, a4_), F.mul(a1_, a3_));
    ResidueField::Elem b6 = F.add(F.mul(a3_, a3_), scale(4, a6_));
    ResidueField::Elem b8 = F.sub(
        F.add(F.add(F.mul(F.mul(a1_, a1_), a6_), scale(4, F.mul(a2_, a6_))),
              F.mul(a2_, F.mul(a3_, a3_))),
        F.add(F.mul(a1_, F.mul(a3_, a4_)), F.mul(a4_, a4_)));
    ResidueField::Elem d = F.sub(F.zero(), F.mul(F.mul(b2, b2), b8));
    d = F.sub(d, scale(8, F.mul(b4, F.mul(b4, b4))));
    d = F.sub(d, scale(27, F.mul(b6, b6)));
    d = F.add(d, scale(9, F.mul(b2, F.mul(b4, b6))));
    return d;
}

ReducedPoint ReducedCurve::reduce(const Curve& E, const Point& R) const {
    if (R.inf) return {};
    if (R.x.is_zero() || valuation(R.x, F_.prime()) >= 0) {
        ReducedPoint out;
        out.inf = false;
        out.x = F_.reduce(R.x);
        out.y = F_.reduce(R.y);
        return out;
    }
    (void)E;
    return {};  // pole: reduces to the identity
}

bool ReducedCurve::contains(const ReducedPoint& R) const {
    if (R.inf) return true;
    const ResidueField& F = F_;
    ResidueField::Elem lhs =
        F.add(F.add(F.mul(R.y, R.y), F.mul(F.mul(a1_, R.x), R.y)), F.mul(a3_, R.y));
    ResidueField::Elem rhs = F.add(
        F.add(F.mul(F.mul(R.x, R.x), R.x), F.mul(a2_, F.mul(R.x, R.x))),
        F.add(F.mul(a4_, R.x), a6_));
    return lhs == rhs;
}

ReducedPoint ReducedCurve::neg(const ReducedPoint& R) const {
    if (R.inf) return R;
    ReducedPoint out;
    out.inf = false;
    out.x = R.x;
    out.y = F_.sub(F_.sub(F_.neg(R.y), F_.mul(a1_, R.x)), a3_);
    return out;
}

ReducedPoint ReducedCurve::add(const ReducedPoint& R1, const ReducedPoint& R2) const {
    if (R1.inf) return R2;
    if (R2.inf) return R1;
    const ResidueField& F = F_;
    ResidueField::Elem lambda, nu;
    if (R1.x == R2.x) {
        ReducedPoint n1 = neg(R1);
        if (R2.y == n1.y) return {};
        ResidueField::Elem den =
            F.add(F.add(F.mul(F.from_int(2), R1.y), F.mul(a1_, R1.x)), a3_);
        ResidueField::Elem den_inv = F.inv(den);
        ResidueField::Elem num = F.sub(
            F.add(F.add(F.mul(F.from_int(3), F.mul(R1.x, R1.x)),
                        F.mul(F.from_int(2), F.mul(a2_, R1.x))),
                  a4_),
            F.mul(a1_, R1.y));
        lambda = F.mul(num, den_inv);
        ResidueField::Elem num2 = F.sub(
            F.add(F.sub(F.mul(a4_, R1.x), F.mul(F.mul(R1.x, R1.x), R1.x)),
                  F.mul(F.from_int(2), a6_)),
            F.mul(a3_, R1.y));
        nu = F.mul(num2, den_inv);
    } else {
        ResidueField::Elem den_inv = F.inv(F.sub(R2.x, R1.x));
        lambda = F.mul(F.sub(R2.y, R1.y), den_inv);
        nu = F.mul(F.sub(F.mul(R1.y, R2.x), F.mul(R2.y, R1.x)), den_inv);
    }
    ReducedPoint out;
    out.inf = false;
    out.x = F.sub(F.sub(F.sub(F.add(F.mul(lambda, lambda), F.mul(a1_, lambda)), a2_), R1.x),
                  R2.x);
    out.y = F.sub(F.sub(F.neg(F.mul(F.add(lambda, a1_), out.x)), nu), a3_);
    return out;
}

ReducedPoint ReducedCurve::scalar_mul(const Int& n, const ReducedPoint& R) const {
    if (n == 0 || R.inf) return {};
    Int m = int_abs(n);
    ReducedPoint base = n < 0 ? neg(R) : R;
    ReducedPoint acc;
    size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = add(acc, acc);
        if (mpz_tstbit(m.get_mpz_t(), i)) acc = add(acc, base);
    }
    return acc;
}

ReducedPoint ReducedCurve::i_action(const ReducedPoint& R) const {
    if (!cm_) throw std::invalid_argument("ReducedCurve::i_action: no order-4 automorphism");
    if (R.inf) return R;
    ReducedPoint out;
    out.inf = false;
    out.x = F_.neg(R.x);
    out.y = F_.times_i(R.y);
    return out;
}

ReducedPoint ReducedCurve::apply_endo(const GaussianInt& alpha, const ReducedPoint& R) const {
    if (alpha.im == 0) return scalar_mul(alpha.re, R);
    if (!cm_) throw std::invalid_argument("ReducedCurve::apply_endo: imaginary multiplier");
    return add(scalar_mul(alpha.re, R), scalar_mul(alpha.im, i_action(R)));
}

ReducedCurve reduce_curve(const Curve& E, const Ideal& prime) {
    if ((E.field() == Field::Q) != (prime.ring() == Ring::Z))
        throw std::invalid_argument("reduce_curve: prime from the wrong ring");
    ResidueField F = ResidueField::at(prime);
    auto red = [&](const GaussianRat& c) {
        if (!c.is_zero() && valuation(c, prime) < 0)
            throw BadReductionError("reduce_curve: coefficient not integral at " +
                                    prime.to_string());
        return F.reduce(c);
    };
    ReducedCurve C(F, red(E.a1()), red(E.a2()), red(E.a3()), red(E.a4()), red(E.a6()), E.cm());
    if (C.field().is_zero(C.discriminant()))
        throw BadReductionError("reduce_curve: bad reduction at " + prime.to_string());
    return C;
}

bool is_zero_mod(const Curve& E, const Point& R, const Ideal& prime) {
    reduce_curve(E, prime);  // validates good reduction
    if (R.inf) return true;
    if (!E.contains(R)) throw std::invalid_argument("is_zero_mod: point not on curve");
    if (R.x.is_zero()) return false;
    return valuation(R.x, prime) < 0;
}

namespace {

using Key = std::tuple<Int, Int, Int, Int>;

Key point_key(const ReducedPoint& R) {
    if (R.inf) return {-1, 0, 0, 0};
    return {R.x.a, R.x.b, R.y.a, R.y.b};
}

// Smallest annihilating multiple found by baby-step giant-step across the
// Hasse interval [q+1-2sqrt(q), q+1+2sqrt(q)].
Int bsgs_annihilating_multiple(const ReducedCurve& C, const ReducedPoint& R) {
    Int q = C.field().size();
    Int B = 2 * int_sqrt(q) + 1;
    ReducedPoint S = C.scalar_mul(q + 1, R);
    if (S.inf) return q + 1;
    Int m = int_sqrt(2 * B + 1) + 1;
    std::map<Key, Int> baby;
    ReducedPoint acc;
    for (Int j = 0; j < m; ++j) {
        baby.emplace(point_key(acc), j);
        acc = C.add(acc, R);
    }
    ReducedPoint G = acc;  // m*R
    Int i_lim = B / m + 1;
    ReducedPoint T = C.add(S, C.scalar_mul(i_lim, G));  // S - (-i_lim)*G
    for (Int i = -i_lim; i <= i_lim; ++i) {
        auto it = baby.find(point_key(T));
        if (it != baby.end()) {
            Int u = i * m + it->second;
            Int k = q + 1 - u;
            if (k > 0 && C.scalar_mul(k, R).inf) return k;
        }
        T = C.add(T, C.neg(G));
    }
    throw std::logic_error("bsgs_annihilating_multiple: no annihilator in the Hasse interval");
}

// For cm curves over large fields the possible Frobenius traces are pinned
// down by the splitting of p in Z[i]; testing the handful of candidate group
// orders against R is enough to produce an annihilating multiple.
std::optional<Int> cm_annihilating_multiple(const ReducedCurve& C, const ReducedPoint& R) {
    if (!C.cm()) return std::nullopt;
    const Int& p = C.field().p();
    std::vector<Int> traces;
    if (C.field().degree() == 1) {
        if (p % 4 != 1) return std::nullopt;
        auto [a, b] = two_squares(p);
        traces = {2 * a, -2 * a, 2 * b, -2 * b};
    } else {
        // inert prime: supersingular reduction
        traces = {Int(0), p, -p, 2 * p, -2 * p};
    }
    Int q = C.field().size();
    for (const Int& t : traces) {
        Int M = q + 1 - t;
        if (M > 0 && C.scalar_mul(M, R).inf) return M;
    }
    return std::nullopt;
}

}  // namespace

Int additive_order(const ReducedCurve& C, const ReducedPoint& R) {
    if (R.inf) return 1;
    Int q = C.field().size();
    Int M;
    if (q <= 64) {
        ReducedPoint acc = R;
        Int n = 1;
        while (!acc.inf) {
            acc = C.add(acc, R);
            ++n;
        }
        return n;
    }
    if (q > Int(1000000)) {
        auto cm = cm_annihilating_multiple(C, R);
        M = cm ? *cm : bsgs_annihilating_multiple(C, R);
    } else {
        M = bsgs_annihilating_multiple(C, R);
    }
    // strip the multiple down to the exact order
    for (const auto& [ell, e] : factor_integer(M)) {
        for (int k = 0; k < e; ++k) {
            Int cand = M / ell;
            if (C.scalar_mul(cand, R).inf) M = cand;
            else break;
        }
    }
    return M;
}

Ideal ann_ideal(const Curve& E, const Ideal& prime, const Point& R, Ring ring) {
    ReducedCurve C = reduce_curve(E, prime);
    if (!E.contains(R)) throw std::invalid_argument("ann_ideal: point not on curve");
    ReducedPoint Rbar = C.reduce(E, R);
    if (Rbar.inf) return Ideal::unit(ring);
    Int m = additive_order(C, Rbar);
    if (ring == Ring::Z) return Ideal(Ring::Z, m);
    if (!E.cm()) throw std::invalid_argument("ann_ideal: Z[i] order requires a cm curve");
    // Ann is principal with generator dividing m; strip each Gaussian prime
    // of m as far as the action still kills the reduced point.
    GaussianInt gamma(m);
    for (const auto& [pi, e] : factor_gaussian(m).primes) {
        (void)e;
        while (true) {
            auto q = try_divide(gamma, pi);
            if (!q || !C.apply_endo(*q, Rbar).inf) break;
            gamma = *q;
        }
    }
    return Ideal(Ring::Zi, gamma);
}

std::string to_string(BadReason r) {
    switch (r) {
        case BadReason::BadReduction: return "bad-reduction";
        case BadReason::TorsionNorm: return "divides-torsion-norm";
        case BadReason::Ramified: return "ramified";
        default: return "annihilator-mismatch";
    }
}

bool BadPlaceSet::contains(const Ideal& prime) const {
    for (const auto& [p, r] : places) {
        (void)r;
        if (p == prime) return true;
    }
    return false;
}

std::vector<Ideal> primes_up_to(Field field, const Int& cap) {
    std::vector<Ideal> out;
    if (cap < 2) return out;
    unsigned long n = cap.get_ui();
    std::vector<bool> sieve(n + 1, true);
    for (unsigned long p = 2; p <= n; ++p) {
        if (!sieve[p]) continue;
        for (unsigned long j = 2 * p; j <= n; j += p) sieve[j] = false;
        if (field == Field::Q) {
            out.emplace_back(Ring::Z, Int(p));
        } else if (p == 2) {
            out.emplace_back(Ring::Zi, GaussianInt{1, 1});
        } else if (p % 4 == 1) {
            auto [a, b] = two_squares(Int(p));
            out.emplace_back(Ring::Zi, GaussianInt{a, b});
            out.emplace_back(Ring::Zi, GaussianInt{b, a});
        } else if (Int(p) * p <= cap) {
            out.emplace_back(Ring::Zi, GaussianInt{Int(p), 0});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BadPlaceSet bad_places(const Curve& E, const Point& P, const Point& Q, const Ideal& s,
                       const Int& test_cap) {
    (void)P;  // the bad set depends on E and Q only
    if (s.is_zero()) throw std::invalid_argument("bad_places: zero torsion ideal");
    Ring place_ring = E.field() == Field::Q ? Ring::Z : Ring::Zi;
    std::map<Ideal, BadReason> entries;
    auto note = [&](const Ideal& pr, BadReason reason) { entries.emplace(pr, reason); };

    auto note_gaussian_factors = [&](const GaussianInt& g, BadReason reason) {
        if (g.is_zero() || is_unit(g)) return;
        if (place_ring == Ring::Z) {
            for (const auto& [p, e] : factor_integer(int_abs(g.re))) {
                (void)e;
                note(Ideal(Ring::Z, p), reason);
            }
        } else {
            for (const auto& [p, e] : factor_gaussian(g).primes) {
                (void)e;
                note(Ideal(Ring::Zi, p), reason);
            }
        }
    };

    // bad reduction: non-integral coefficients and the discriminant support
    for (const GaussianRat* c : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()}) {
        GaussianFrac f = split_denominator(*c);
        note_gaussian_factors(GaussianInt(f.den), BadReason::BadReduction);
    }
    GaussianFrac disc = split_denominator(E.discriminant());
    note_gaussian_factors(disc.num, BadReason::BadReduction);

    if (place_ring == Ring::Zi) note(Ideal(Ring::Zi, GaussianInt{1, 1}), BadReason::Ramified);

    Int ns = s.norm();
    if (ns > 1) note_gaussian_factors(GaussianInt(ns), BadReason::TorsionNorm);

    // direct consistency sweep: any good prime where the annihilator of Q
    // differs from s is bad
    for (const Ideal& pr : primes_up_to(E.field(), test_cap)) {
        if (entries.count(pr)) continue;
        Ideal ann = ann_ideal(E, pr, Q, s.ring());
        if (ann != s) note(pr, BadReason::AnnMismatch);
    }

    BadPlaceSet out;
    for (const auto& [pr, reason] : entries) out.places.emplace_back(pr, reason);
    return out;
}

bool is_good_prime(const Curve& E, const Ideal& prime, const Ideal& s) {
    for (const GaussianRat* c : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()}) {
        if (!c->is_zero() && valuation(*c, prime) < 0) return false;
    }
    if (valuation(E.discriminant(), prime) != 0) return false;
    if (prime.ring() == Ring::Zi && prime.gen() == GaussianInt{1, 1}) return false;
    Int ns = s.norm();
    if (ns > 1 && divides(prime.gen(), GaussianInt(ns))) return false;
    return true;
}

}  // namespace edscm
