#include "edscm/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace edscm {

namespace {

constexpr unsigned long kTrialBound = 1000000;

const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> primes = [] {
        std::vector<bool> sieve(kTrialBound + 1, true);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i <= kTrialBound; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (unsigned long j = i * i; j <= kTrialBound; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

Int powm(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

bool miller_rabin(const Int& n, const Int& a) {
    // n odd, n > 2, 1 < a < n-1
    Int d = n - 1;
    unsigned long s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    Int x = powm(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

Int rho_brent(const Int& n) {
    // Brent's cycle variant with batched gcds. n odd composite, not a prime power of interest.
    for (unsigned long c = 1;; ++c) {
        Int y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        const Int cc(static_cast<unsigned long>(c));
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + cc) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = std::min(Int(128), r - k);
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + cc) % n;
                    q = q * int_abs(x - y) % n;
                }
                g = int_gcd(q, n);
                k += 128;
            }
            r <<= 1;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + cc) % n;
                g = int_gcd(int_abs(x - ys), n);
            }
        }
        if (g != n) return g;
        // cycle degenerated for this c; retry with the next increment
    }
}

void factor_rec(const Int& n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int root;
    if (is_perfect_square(n, &root)) {
        factor_rec(root, out);
        factor_rec(root, out);
        return;
    }
    Int d = rho_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    static const Int kDeterministicBound("3317044064679887385961981");
    if (n < kDeterministicBound) {
        for (unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
            if (!miller_rabin(n, Int(a))) return false;
        }
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<std::pair<Int, int>> factor_integer(const Int& n) {
    if (n < 1) throw std::invalid_argument("factor_integer: n must be >= 1");
    std::vector<std::pair<Int, int>> out;
    if (n == 1) return out;
    Int m = n;
    for (unsigned long p : small_primes()) {
        if (m == 1) break;
        if (Int(p) * p > m) break;
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        Int ip(p);
        long e = remove_factor(m, ip);
        out.emplace_back(ip, static_cast<int>(e));
    }
    if (m > 1) {
        if (m <= Int(kTrialBound) * kTrialBound && is_prime(m)) {
            out.emplace_back(m, 1);
        } else {
            std::vector<Int> rest;
            factor_rec(m, rest);
            std::sort(rest.begin(), rest.end());
            for (size_t i = 0; i < rest.size();) {
                size_t j = i;
                while (j < rest.size() && rest[j] == rest[i]) ++j;
                out.emplace_back(rest[i], static_cast<int>(j - i));
                i = j;
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Int sqrt_minus_one_mod(const Int& p) {
    if (p % 4 != 1) throw std::invalid_argument("sqrt_minus_one_mod: p != 1 (mod 4)");
    Int e = (p - 1) / 2;
    for (Int a = 2;; ++a) {
        if (powm(a, e, p) == p - 1) {
            Int z = powm(a, (p - 1) / 4, p);
            if ((z * z) % p != p - 1) throw std::logic_error("sqrt_minus_one_mod: bad witness");
            return std::min(z, Int(p - z));
        }
    }
}

std::pair<Int, Int> two_squares(const Int& p) {
    if (p == 2) return {1, 1};
    // Cornacchia: Euclid on (p, z) down to the first remainder below sqrt(p).
    Int z = sqrt_minus_one_mod(p);
    Int a = p, b = z;
    Int bound = int_sqrt(p);
    while (b > bound) {
        Int r = a % b;
        a = b;
        b = r;
    }
    Int other;
    if (!is_perfect_square(p - b * b, &other)) throw std::logic_error("two_squares: not a sum");
    return {std::max(b, other), std::min(b, other)};
}

GaussianFactorization factor_gaussian(const GaussianInt& g) {
    if (g.is_zero()) throw std::invalid_argument("factor_gaussian: zero input");
    GaussianFactorization out;
    GaussianInt rem = g;
    auto push = [&](const GaussianInt& prime) {
        int e = 0;
        while (true) {
            auto q = try_divide(rem, prime);
            if (!q) break;
            rem = *q;
            ++e;
        }
        if (e > 0) out.primes.emplace_back(prime, e);
    };
    Int n = norm(g);
    for (const auto& [p, e] : factor_integer(n)) {
        (void)e;
        if (p == 2) {
            push(GaussianInt{1, 1});
        } else if (p % 4 == 3) {
            push(GaussianInt{p, 0});
        } else {
            Int z = sqrt_minus_one_mod(p);
            GaussianInt pi = gauss_gcd(GaussianInt{p, 0}, GaussianInt{z, 1});
            push(pi);
            push(canonical_associate(conj(pi)));
        }
    }
    if (!is_unit(rem)) throw std::logic_error("factor_gaussian: non-unit remainder");
    out.unit = rem;
    std::sort(out.primes.begin(), out.primes.end(),
              [](const auto& a, const auto& b) { return cmp(a.first, b.first) < 0; });
    return out;
}

}  // namespace edscm
