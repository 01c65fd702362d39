#pragma once

#include <optional>
#include <string>

#include "edscm/numeric.hpp"

namespace edscm {

// Element of Z[i]. Plain value type; arithmetic is exact.
struct GaussianInt {
    Int re;
    Int im;

    GaussianInt() : re(0), im(0) {}
    GaussianInt(Int r) : re(std::move(r)), im(0) {}
    GaussianInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}
    GaussianInt(long r) : re(r), im(0) {}
    GaussianInt(long r, long i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_rational() const { return im == 0; }

    friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianInt operator-(const GaussianInt& a) { return {-a.re, -a.im}; }
    friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianInt& a, const GaussianInt& b) { return !(a == b); }
};

inline GaussianInt conj(const GaussianInt& g) { return {g.re, -g.im}; }

inline Int norm(const GaussianInt& g) { return g.re * g.re + g.im * g.im; }

inline bool is_unit(const GaussianInt& g) { return norm(g) == 1; }

// i^k for k in [0,4)
GaussianInt unit_power(int k);

// The unique associate u*g with re > 0, im >= 0 (or zero).
GaussianInt canonical_associate(const GaussianInt& g);

// k in [0,4) with g == i^k * canonical_associate(g).
int associate_exponent(const GaussianInt& g);

// Lexicographic (norm, re, im) order; total on canonical representatives.
int cmp(const GaussianInt& a, const GaussianInt& b);

bool divides(const GaussianInt& d, const GaussianInt& n);
GaussianInt divexact(const GaussianInt& n, const GaussianInt& d);
std::optional<GaussianInt> try_divide(const GaussianInt& n, const GaussianInt& d);

// Remainder r = a - q*b with N(r) <= N(b)/2 (nearest-lattice-point quotient).
GaussianInt gauss_mod(const GaussianInt& a, const GaussianInt& b);

// gcd in canonical associate form; gauss_gcd(0,0) = 0.
GaussianInt gauss_gcd(GaussianInt a, GaussianInt b);

// g, x, y with x*a + y*b = g = gauss_gcd(a, b).
struct GaussianExtGcd {
    GaussianInt g, x, y;
};
GaussianExtGcd gauss_ext_gcd(const GaussianInt& a, const GaussianInt& b);

std::string to_string(const GaussianInt& g);

// Element of Q(i), componentwise exact rationals.
struct GaussianRat {
    Rat re;
    Rat im;

    GaussianRat() : re(0), im(0) {}
    GaussianRat(Rat r) : re(std::move(r)), im(0) {}
    GaussianRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRat(const GaussianInt& g) : re(g.re), im(g.im) {}
    GaussianRat(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_rational() const { return im == 0; }

    friend GaussianRat operator+(const GaussianRat& a, const GaussianRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRat operator-(const GaussianRat& a, const GaussianRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRat operator-(const GaussianRat& a) { return {-a.re, -a.im}; }
    friend GaussianRat operator*(const GaussianRat& a, const GaussianRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianRat& a, const GaussianRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRat& a, const GaussianRat& b) { return !(a == b); }
};

inline GaussianRat conj(const GaussianRat& x) { return {x.re, -x.im}; }

inline Rat norm(const GaussianRat& x) { return x.re * x.re + x.im * x.im; }

GaussianRat operator/(const GaussianRat& a, const GaussianRat& b);

// x = num/den with num in Z[i], den a positive rational integer.
struct GaussianFrac {
    GaussianInt num;
    Int den;
};
GaussianFrac split_denominator(const GaussianRat& x);

std::string to_string(const GaussianRat& x);

}  // namespace edscm
