#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace edscm {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

// floor(sqrt(n)) for n >= 0
inline Int int_sqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = int_sqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

// Strip all factors p from n; returns the multiplicity.
inline long remove_factor(Int& n, const Int& p) {
    Int out;
    long e = static_cast<long>(mpz_remove(out.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
    n = out;
    return e;
}

// Rounded division q = round(a/b), exact halves toward +inf. b > 0 required.
inline Int div_round(const Int& a, const Int& b) {
    Int q;
    Int num = 2 * a + b;
    Int den = 2 * b;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

// log|n| that stays accurate for integers far beyond double range.
inline double log_abs(const Int& n) {
    if (n == 0) return -std::numeric_limits<double>::infinity();
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(exp2) * M_LN2;
}

inline double log_abs(const Rat& q) {
    return log_abs(q.get_num()) - log_abs(q.get_den());
}

inline std::string to_string(const Int& n) { return n.get_str(); }

inline std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace edscm
