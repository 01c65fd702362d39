#include "edscm/ideal.hpp"

#include <algorithm>
#include <stdexcept>

namespace edscm {

std::string to_string(Ring r) { return r == Ring::Z ? "Z" : "Zi"; }

Ideal::Ideal(Ring ring, GaussianInt gen) : ring_(ring), gen_(std::move(gen)) {
    if (ring_ == Ring::Z) {
        if (gen_.im != 0) throw std::invalid_argument("Ideal: Z ideal with imaginary generator");
        if (gen_.re < 0) gen_.re = -gen_.re;
    } else {
        gen_ = canonical_associate(gen_);
    }
}

Int Ideal::norm() const {
    if (ring_ == Ring::Z) return gen_.re;
    return edscm::norm(gen_);
}

bool Ideal::divides(const Ideal& other) const {
    if (ring_ != other.ring_) throw std::invalid_argument("Ideal: mixed rings");
    if (is_zero()) return other.is_zero();
    return edscm::divides(gen_, other.gen_);
}

std::optional<Ideal> Ideal::exact_quotient(const Ideal& d) const {
    if (ring_ != d.ring_) throw std::invalid_argument("Ideal: mixed rings");
    auto q = try_divide(gen_, d.gen_);
    if (!q) return std::nullopt;
    return Ideal(ring_, *q);
}

Ideal Ideal::gcd(const Ideal& other) const {
    if (ring_ != other.ring_) throw std::invalid_argument("Ideal: mixed rings");
    if (ring_ == Ring::Z) return Ideal(ring_, int_gcd(gen_.re, other.gen_.re));
    return Ideal(ring_, gauss_gcd(gen_, other.gen_));
}

Ideal operator*(const Ideal& a, const Ideal& b) {
    if (a.ring_ != b.ring_) throw std::invalid_argument("Ideal: mixed rings");
    return Ideal(a.ring_, a.gen_ * b.gen_);
}

bool operator<(const Ideal& a, const Ideal& b) { return cmp(a.gen_, b.gen_) < 0; }

std::string Ideal::to_string() const { return "(" + edscm::to_string(gen_) + ")"; }

FactoredIdeal::FactoredIdeal(Ring ring, std::vector<std::pair<Ideal, int>> factors)
    : ring_(ring), factors_(std::move(factors)) {
    for (auto& [p, e] : factors_) {
        if (p.ring() != ring_) throw std::invalid_argument("FactoredIdeal: mixed rings");
        if (e <= 0) throw std::invalid_argument("FactoredIdeal: nonpositive exponent");
    }
    std::sort(factors_.begin(), factors_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge duplicates
    std::vector<std::pair<Ideal, int>> merged;
    for (const auto& [p, e] : factors_) {
        if (!merged.empty() && merged.back().first == p) {
            merged.back().second += e;
        } else {
            merged.emplace_back(p, e);
        }
    }
    factors_ = std::move(merged);
}

FactoredIdeal FactoredIdeal::factor(const Ideal& I) {
    if (I.is_zero()) throw std::invalid_argument("FactoredIdeal: cannot factor the zero ideal");
    std::vector<std::pair<Ideal, int>> fs;
    if (I.ring() == Ring::Z) {
        for (const auto& [p, e] : factor_integer(I.gen().re)) {
            fs.emplace_back(Ideal(Ring::Z, p), e);
        }
    } else {
        for (const auto& [p, e] : factor_gaussian(I.gen()).primes) {
            fs.emplace_back(Ideal(Ring::Zi, p), e);
        }
    }
    return FactoredIdeal(I.ring(), std::move(fs));
}

Ideal FactoredIdeal::generator() const {
    GaussianInt g(1);
    for (const auto& [p, e] : factors_) {
        for (int k = 0; k < e; ++k) g = g * p.gen();
    }
    return Ideal(ring_, g);
}

Int FactoredIdeal::norm() const {
    Int n = 1;
    for (const auto& [p, e] : factors_) {
        Int pn = p.norm();
        for (int k = 0; k < e; ++k) n *= pn;
    }
    return n;
}

int FactoredIdeal::mobius() const {
    for (const auto& [p, e] : factors_) {
        (void)p;
        if (e > 1) return 0;
    }
    return factors_.size() % 2 == 0 ? 1 : -1;
}

long FactoredIdeal::valuation(const Ideal& prime) const {
    for (const auto& [p, e] : factors_) {
        if (p == prime) return e;
    }
    return 0;
}

std::vector<FactoredIdeal> FactoredIdeal::divisors() const {
    std::vector<FactoredIdeal> out;
    std::vector<std::pair<Ideal, int>> current;
    // exponent-vector walk over the factor lattice
    auto rec = [&](auto&& self, size_t idx) -> void {
        if (idx == factors_.size()) {
            out.push_back(FactoredIdeal(ring_, current));
            return;
        }
        self(self, idx + 1);
        for (int e = 1; e <= factors_[idx].second; ++e) {
            current.emplace_back(factors_[idx].first, e);
            self(self, idx + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const FactoredIdeal& a, const FactoredIdeal& b) {
        return a.generator() < b.generator();
    });
    return out;
}

FactoredIdeal operator*(const FactoredIdeal& a, const FactoredIdeal& b) {
    if (a.ring_ != b.ring_) throw std::invalid_argument("FactoredIdeal: mixed rings");
    auto fs = a.factors_;
    fs.insert(fs.end(), b.factors_.begin(), b.factors_.end());
    return FactoredIdeal(a.ring_, std::move(fs));
}

std::string FactoredIdeal::to_string() const {
    if (factors_.empty()) return "(1)";
    std::string s;
    for (const auto& [p, e] : factors_) {
        if (!s.empty()) s += "*";
        s += p.to_string() + "^" + std::to_string(e);
    }
    return s;
}

std::pair<Rat, Rat> mobius_sum_and_euler_product(const Ideal& alpha, const Ideal& s) {
    if (alpha.is_zero() || s.is_zero())
        throw std::invalid_argument("mobius_sum_and_euler_product: zero ideal");
    FactoredIdeal fa = FactoredIdeal::factor(alpha);

    Rat sum(0);
    for (const FactoredIdeal& J : fa.divisors()) {
        bool coprime = true;
        for (const auto& [p, e] : J.factors()) {
            (void)e;
            if (p.divides(s)) {
                coprime = false;
                break;
            }
        }
        if (!coprime) continue;
        int mu = J.mobius();
        if (mu == 0) continue;
        sum += Rat(mu) / Rat(J.norm());
    }

    Rat prod(1);
    for (const auto& [p, e] : fa.factors()) {
        (void)e;
        if (p.divides(s)) continue;
        prod *= Rat(1) - Rat(1) / Rat(p.norm());
    }
    sum.canonicalize();
    prod.canonicalize();
    return {sum, prod};
}

GaussianInt coset_min_norm(const GaussianInt& alpha, const Ideal& I) {
    if (I.is_zero()) throw std::invalid_argument("coset_min_norm: zero ideal");
    const GaussianInt& g = I.gen();
    if (I.ring() == Ring::Z) {
        // balanced residue, then compare the two nearest representatives
        Int m = g.re;
        Int r = alpha.re % m;
        if (r < 0) r += m;
        GaussianInt best{r, Int(0)};
        GaussianInt other{r - m, Int(0)};
        if (cmp(other, best) < 0) best = other;
        return best;
    }
    // Reduce into a fundamental domain first; the minimum lies within one
    // lattice step of the reduced representative.
    GaussianInt base = gauss_mod(alpha, g);
    GaussianInt best = base;
    for (long a = -2; a <= 2; ++a) {
        for (long b = -2; b <= 2; ++b) {
            GaussianInt cand = base + g * GaussianInt{a, b};
            if (cmp(cand, best) < 0) best = cand;
        }
    }
    return best;
}

NormGapResult shift_norm_gap(const GaussianInt& f, const GaussianInt& g,
                             const GaussianInt& alpha, const GaussianInt& beta) {
    if (!(norm(beta) < norm(alpha)))
        throw std::invalid_argument("shift_norm_gap: requires N(beta) < N(alpha)");
    Int nb = norm(beta * g + f);
    Int na = norm(alpha * g + f);
    if (nb < na)
        throw std::invalid_argument("shift_norm_gap: requires N(beta*g+f) >= N(alpha*g+f)");
    Int gap = nb - na;
    bool ok = gap * gap <= 16 * norm(f) * norm(g) * norm(alpha);
    return {gap, ok};
}

}  // namespace edscm
