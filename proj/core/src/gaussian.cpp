#include "edscm/gaussian.hpp"

#include <stdexcept>

namespace edscm {

GaussianInt unit_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

GaussianInt canonical_associate(const GaussianInt& g) {
    if (g.is_zero()) return g;
    GaussianInt c = g;
    // rotate by i until the argument lies in [0, pi/2)
    for (int k = 0; k < 4; ++k) {
        if (c.re > 0 && c.im >= 0) return c;
        c = GaussianInt{-c.im, c.re};  // multiply by i
    }
    throw std::logic_error("canonical_associate: no quadrant found");
}

int associate_exponent(const GaussianInt& g) {
    if (g.is_zero()) return 0;
    GaussianInt c = canonical_associate(g);
    for (int k = 0; k < 4; ++k) {
        if (unit_power(k) * c == g) return k;
    }
    throw std::logic_error("associate_exponent: not an associate");
}

int cmp(const GaussianInt& a, const GaussianInt& b) {
    Int na = norm(a), nb = norm(b);
    if (na != nb) return na < nb ? -1 : 1;
    if (a.re != b.re) return a.re < b.re ? -1 : 1;
    if (a.im != b.im) return a.im < b.im ? -1 : 1;
    return 0;
}

std::optional<GaussianInt> try_divide(const GaussianInt& n, const GaussianInt& d) {
    if (d.is_zero()) return std::nullopt;
    // n/d = n*conj(d)/N(d); exact iff both components divide.
    GaussianInt t = n * conj(d);
    Int nd = norm(d);
    if (!mpz_divisible_p(t.re.get_mpz_t(), nd.get_mpz_t())) return std::nullopt;
    if (!mpz_divisible_p(t.im.get_mpz_t(), nd.get_mpz_t())) return std::nullopt;
    return GaussianInt{t.re / nd, t.im / nd};
}

bool divides(const GaussianInt& d, const GaussianInt& n) {
    if (d.is_zero()) return n.is_zero();
    return try_divide(n, d).has_value();
}

GaussianInt divexact(const GaussianInt& n, const GaussianInt& d) {
    auto q = try_divide(n, d);
    if (!q) throw std::invalid_argument("divexact: not divisible");
    return *q;
}

GaussianInt gauss_mod(const GaussianInt& a, const GaussianInt& b) {
    if (b.is_zero()) throw std::invalid_argument("gauss_mod: zero modulus");
    GaussianInt t = a * conj(b);
    Int nb = norm(b);
    GaussianInt q{div_round(t.re, nb), div_round(t.im, nb)};
    return a - q * b;
}

GaussianInt gauss_gcd(GaussianInt a, GaussianInt b) {
    while (!b.is_zero()) {
        GaussianInt r = gauss_mod(a, b);
        a = b;
        b = r;
    }
    return canonical_associate(a);
}

GaussianExtGcd gauss_ext_gcd(const GaussianInt& a, const GaussianInt& b) {
    // iterative Euclid carrying Bezout coefficients
    GaussianInt r0 = a, r1 = b;
    GaussianInt x0{1, 0}, x1{0, 0};
    GaussianInt y0{0, 0}, y1{1, 0};
    while (!r1.is_zero()) {
        GaussianInt t = r0 * conj(r1);
        Int n1 = norm(r1);
        GaussianInt q{div_round(t.re, n1), div_round(t.im, n1)};
        GaussianInt r2 = r0 - q * r1;
        GaussianInt x2 = x0 - q * x1;
        GaussianInt y2 = y0 - q * y1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
        y0 = y1; y1 = y2;
    }
    // normalize so the gcd is canonical
    GaussianInt g = canonical_associate(r0);
    if (!r0.is_zero()) {
        int k = associate_exponent(r0);
        GaussianInt u = unit_power((4 - k) % 4);  // u * r0 == g
        x0 = u * x0;
        y0 = u * y0;
    }
    return {g, x0, y0};
}

std::string to_string(const GaussianInt& g) {
    if (g.im == 0) return g.re.get_str();
    std::string imabs = int_abs(g.im) == 1 ? "" : int_abs(g.im).get_str();
    if (g.re == 0) return (g.im < 0 ? "-" : "") + imabs + "i";
    return g.re.get_str() + (g.im < 0 ? "-" : "+") + imabs + "i";
}

GaussianRat operator/(const GaussianRat& a, const GaussianRat& b) {
    Rat nb = norm(b);
    if (nb == 0) throw std::invalid_argument("GaussianRat division by zero");
    GaussianRat t = a * conj(b);
    return {t.re / nb, t.im / nb};
}

GaussianFrac split_denominator(const GaussianRat& x) {
    Int d = int_lcm(x.re.get_den(), x.im.get_den());
    Rat dr(d);
    Rat nre = x.re * dr;
    Rat nim = x.im * dr;
    return {GaussianInt{nre.get_num(), nim.get_num()}, d};
}

std::string to_string(const GaussianRat& x) {
    auto rat = [](const Rat& q) { return to_string(q); };
    if (x.im == 0) return rat(x.re);
    Rat a = x.im < 0 ? Rat(-x.im) : x.im;
    std::string tail = rat(a) + "*i";
    if (x.re == 0) return (x.im < 0 ? "-" : "") + tail;
    return rat(x.re) + (x.im < 0 ? "-" : "+") + tail;
}

}  // namespace edscm
