#include "edscm/sequences.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "edscm/factor.hpp"

namespace edscm {

namespace {

long sqrt_bound(const Int& max_norm) {
    Int k = int_sqrt(max_norm);
    if (k > 1000000) throw std::invalid_argument("norm cap too large");
    return k.get_si();
}

}  // namespace

std::vector<GaussianInt> enumerate_indices(Ring ring, const Int& max_norm) {
    std::vector<GaussianInt> out;
    if (max_norm < 1) return out;
    long k = sqrt_bound(max_norm);
    if (ring == Ring::Z) {
        for (long n = 1; n <= k; ++n) {
            out.emplace_back(n);
            out.emplace_back(-n);
        }
        return out;  // already sorted: norm n^2 ascending, positive first
    }
    for (long a = -k; a <= k; ++a) {
        for (long b = -k; b <= k; ++b) {
            if (a == 0 && b == 0) continue;
            GaussianInt g{a, b};
            if (norm(g) <= max_norm) out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end(), [](const GaussianInt& x, const GaussianInt& y) {
        Int nx = norm(x), ny = norm(y);
        if (nx != ny) return nx < ny;
        int c = cmp(canonical_associate(x), canonical_associate(y));
        if (c != 0) return c < 0;
        return associate_exponent(x) < associate_exponent(y);
    });
    return out;
}

namespace {

// Exact alpha(P) built from cached multiples of P and [i]P.
class EndoCache {
  public:
    EndoCache(const Curve& E, const Point& P) : E_(E) {
        if (!E.contains(P)) throw std::invalid_argument("EndoCache: point not on curve");
        mul_p_.push_back(Point::infinity());
        mul_p_.push_back(P);
        if (E.cm()) {
            mul_ip_.push_back(Point::infinity());
            mul_ip_.push_back(i_action(E, P));
        }
    }

    Point apply(const GaussianInt& alpha) {
        Point re_part = part(mul_p_, alpha.re);
        if (alpha.im == 0) return re_part;
        Point im_part = part(mul_ip_, alpha.im);
        return add(E_, re_part, im_part);
    }

  private:
    Point part(std::vector<Point>& tab, const Int& coeff) {
        if (coeff == 0) return Point::infinity();
        long k = int_abs(coeff).get_si();
        while (static_cast<long>(tab.size()) <= k) {
            tab.push_back(add(E_, tab.back(), tab[1]));
        }
        return coeff < 0 ? negate(E_, tab[k]) : tab[k];
    }

    const Curve& E_;
    std::vector<Point> mul_p_;
    std::vector<Point> mul_ip_;
};

std::optional<Ideal> smallest_unblocked(const FactoredIdeal& term,
                                        const std::set<Ideal>& blocked) {
    for (const auto& [p, e] : term.factors()) {
        (void)e;
        if (!blocked.count(p)) return p;  // factors are (norm, gen)-sorted
    }
    return std::nullopt;
}

void fill_verdict(SequenceRecord& rec, const std::set<Ideal>& blocked) {
    if (!rec.term) {
        rec.has_primitive = false;
        rec.reason = "zero term";
        return;
    }
    if (rec.term->is_one()) {
        rec.has_primitive = false;
        rec.reason = "term is the unit ideal";
        return;
    }
    auto w = smallest_unblocked(*rec.term, blocked);
    if (w) {
        rec.has_primitive = true;
        rec.witness = *w;
    } else {
        rec.has_primitive = false;
        rec.reason = "every prime divisor divides an earlier term";
    }
}

}  // namespace

std::vector<SequenceRecord> scan(const Curve& E, const Point& P, const Point& Q, Ring ring,
                                 const Int& max_norm) {
    if (!E.contains(P) || !E.contains(Q)) throw std::invalid_argument("scan: point not on curve");
    if (ring == Ring::Zi && !E.cm())
        throw std::invalid_argument("scan: Z[i] order requires a cm curve");
    std::vector<SequenceRecord> records;
    std::set<Ideal> blocked;
    EndoCache cache(E, P);

    auto make_record = [&](const GaussianInt& alpha) {
        SequenceRecord rec;
        rec.index = alpha;
        Point S = add(E, cache.apply(alpha), Q);
        if (!S.inf) rec.term = x_denominator_ideal(E, S);
        fill_verdict(rec, blocked);
        return rec;
    };

    auto absorb = [&](const SequenceRecord& rec) {
        if (!rec.term) return;
        for (const auto& [p, e] : rec.term->factors()) {
            (void)e;
            blocked.insert(p);
        }
    };

    // index 0 seeds the history
    records.push_back(make_record(GaussianInt(0)));
    absorb(records.back());

    std::vector<GaussianInt> indices = enumerate_indices(ring, max_norm);
    for (size_t i = 0; i < indices.size();) {
        size_t j = i;
        Int group_norm = norm(indices[i]);
        while (j < indices.size() && norm(indices[j]) == group_norm) ++j;
        size_t first = records.size();
        for (size_t k = i; k < j; ++k) records.push_back(make_record(indices[k]));
        // equal-norm indices never block each other: fold in afterwards
        for (size_t k = first; k < records.size(); ++k) absorb(records[k]);
        i = j;
    }
    return records;
}

namespace {

// Denominator of x(R) as a single generator. No factorization.
GaussianInt raw_denominator(const Curve& E, const Point& R) {
    if (E.field() == Field::Q) return GaussianInt(R.x.re.get_den());
    GaussianFrac f = split_denominator(R.x);
    GaussianInt c = gauss_gcd(f.num, GaussianInt(f.den));
    return canonical_associate(divexact(GaussianInt(f.den), c));
}

GaussianInt generator_gcd(Ring ring, const GaussianInt& a, const GaussianInt& b) {
    if (ring == Ring::Z) return GaussianInt(int_gcd(a.re, b.re));
    return gauss_gcd(a, b);
}

}  // namespace

ZsygmondyResult exceptional_indices(const Curve& E, const Point& P, const Point& Q, Ring ring,
                                    const Int& max_norm) {
    if (!E.contains(P) || !E.contains(Q))
        throw std::invalid_argument("exceptional_indices: point not on curve");
    Ring gen_ring = E.field() == Field::Q ? Ring::Z : Ring::Zi;
    ZsygmondyResult out;
    out.largest_norm = 0;
    out.scanned = 0;
    EndoCache cache(E, P);
    GaussianInt history(1);  // lcm of all earlier nonzero terms

    auto term_of = [&](const GaussianInt& alpha) -> std::optional<GaussianInt> {
        Point S = add(E, cache.apply(alpha), Q);
        if (S.inf) return std::nullopt;
        return raw_denominator(E, S);
    };

    auto fold = [&](const GaussianInt& d) {
        GaussianInt g = generator_gcd(gen_ring, history, d);
        history = canonical_associate(divexact(history * d, g));
    };

    // strip the history: whatever survives is divisible only by new primes
    auto has_new_prime = [&](GaussianInt d) {
        while (true) {
            GaussianInt g = generator_gcd(gen_ring, d, history);
            if (is_unit(g)) break;
            d = divexact(d, g);
        }
        return !is_unit(d);
    };

    if (auto d0 = term_of(GaussianInt(0))) fold(*d0);

    std::vector<GaussianInt> indices = enumerate_indices(ring, max_norm);
    std::vector<GaussianInt> group_terms;
    for (size_t i = 0; i < indices.size();) {
        size_t j = i;
        Int group_norm = norm(indices[i]);
        while (j < indices.size() && norm(indices[j]) == group_norm) ++j;
        group_terms.clear();
        for (size_t k = i; k < j; ++k) {
            ++out.scanned;
            auto d = term_of(indices[k]);
            if (!d) continue;  // zero terms are neither exceptional nor blocking
            if (!has_new_prime(*d)) {
                out.exceptional.push_back(indices[k]);
                out.largest_norm = std::max(out.largest_norm, group_norm);
            }
            group_terms.push_back(*d);
        }
        for (const GaussianInt& d : group_terms) fold(d);
        i = j;
    }
    return out;
}

std::vector<GaussianInt> divisibility_pattern(const Curve& E, const Point& P, const Point& Q,
                                              const Ideal& prime, Ring ring,
                                              const Int& max_norm) {
    ReducedCurve C = reduce_curve(E, prime);
    if (!E.contains(P) || !E.contains(Q))
        throw std::invalid_argument("divisibility_pattern: point not on curve");
    ReducedPoint Pr = C.reduce(E, P);
    ReducedPoint Qr = C.reduce(E, Q);
    std::vector<GaussianInt> hits;
    EndoCache exact(E, P);

    auto divisible = [&](const GaussianInt& alpha) {
        ReducedPoint T = C.add(C.apply_endo(alpha, Pr), Qr);
        if (!T.inf) return false;
        // a pole mod the prime; exclude the exactly-zero term
        return !add(E, exact.apply(alpha), Q).inf;
    };

    if (divisible(GaussianInt(0))) hits.emplace_back(0);
    for (const GaussianInt& alpha : enumerate_indices(ring, max_norm)) {
        if (divisible(alpha)) hits.push_back(alpha);
    }
    return hits;
}

AuxiliaryIndex index_sets(const GaussianInt& alpha, const Ideal& s) {
    if (alpha.is_zero() || s.is_zero())
        throw std::invalid_argument("index_sets: alpha and s must be nonzero");
    Ring ring = s.ring();
    Ideal A(ring, alpha);
    FactoredIdeal FA = FactoredIdeal::factor(A);

    AuxiliaryIndex aux;
    aux.alpha = alpha;
    aux.s = s;

    for (const FactoredIdeal& D : FA.divisors()) {
        Ideal I = D.generator();
        Ideal quotient = *A.exact_quotient(I);
        if (quotient.gcd(s).is_unit()) aux.I_set.push_back(I);
        if (I.gcd(s).is_unit()) aux.J_set.push_back(I);
    }

    // the coprime-to-s part of (alpha): the intersection of the J's
    GaussianInt j(1);
    for (const auto& [p, e] : FA.factors()) {
        if (p.divides(s)) continue;
        for (int k = 0; k < e; ++k) j = j * p.gen();
    }
    j = ring == Ring::Z ? GaussianInt(int_abs(j.re)) : canonical_associate(j);

    if (s.is_unit()) {
        // every element of (j) satisfies the (vacuous) congruence; take the
        // minimal nonzero one
        aux.q = j;
        return aux;
    }
    GaussianExtGcd e = gauss_ext_gcd(j, s.gen());
    if (!is_unit(e.g)) throw std::logic_error("index_sets: intersection not coprime to s");
    GaussianInt q0 = j * e.x;  // j * j^{-1} mod s, so q0 == 1 (mod s)
    aux.q = coset_min_norm(q0, Ideal(ring, j * s.gen()));
    return aux;
}

Point aux_point(const Curve& E, const Point& P, const Point& Q, const AuxiliaryIndex& aux,
                const Ideal& I) {
    if (aux.s.ring() != Ring::Z)
        throw std::invalid_argument("aux_point: auxiliary terms are defined over the order Z");
    if (std::find(aux.I_set.begin(), aux.I_set.end(), I) == aux.I_set.end())
        throw std::invalid_argument("aux_point: ideal not in the index set");
    const Int& m = I.gen().re;
    Int num = m * aux.q.re;
    if (!mpz_divisible_p(num.get_mpz_t(), aux.alpha.re.get_mpz_t()))
        throw std::logic_error("aux_point: m*q not divisible by alpha");
    Int c = num / aux.alpha.re;
    return add(E, scalar_mul(E, m, P), scalar_mul(E, c, Q));
}

FactoredIdeal aux_term(const Curve& E, const Point& P, const Point& Q, const GaussianInt& alpha,
                       const Ideal& I) {
    TorsionResult tr = torsion_annihilator(E, Q, Ring::Z);
    if (!tr.torsion) throw std::invalid_argument("aux_term: Q must be a torsion point");
    AuxiliaryIndex aux = index_sets(alpha, tr.annihilator);
    Point S = aux_point(E, P, Q, aux, I);
    if (S.inf) throw std::logic_error("aux_term: auxiliary point is the identity");
    return x_denominator_ideal(E, S);
}

std::pair<Ideal, Ideal> ip_jp(const GaussianInt& alpha, const Ideal& prime, const Ideal& ann,
                              const Ideal& s) {
    if (ann.ring() != s.ring()) throw std::invalid_argument("ip_jp: mixed rings");
    Ideal alpha_s = Ideal(s.ring(), alpha) * s;
    auto IP = ann.exact_quotient(s);
    if (!IP)
        throw CheckViolation("ip_jp: torsion ideal does not divide the annihilator at " +
                             prime.to_string() + " (ann=" + ann.to_string() +
                             ", s=" + s.to_string() + ")");
    auto JP = alpha_s.exact_quotient(ann);
    if (!JP)
        throw CheckViolation("ip_jp: annihilator does not divide (alpha)*s at " +
                             prime.to_string() + " (ann=" + ann.to_string() + ", (alpha)s=" +
                             alpha_s.to_string() + ")");
    return {*IP, *JP};
}

namespace {

bool term_divisible_and_nonzero(const Curve& E, EndoCache& exact, const ReducedCurve& C,
                                const ReducedPoint& Pr, const ReducedPoint& Qr, const Point& Q,
                                const GaussianInt& beta) {
    ReducedPoint T = C.add(C.apply_endo(beta, Pr), Qr);
    if (!T.inf) return false;
    return !add(E, exact.apply(beta), Q).inf;
}

bool compute_non_primitive(const Curve& E, const Point& P, const Point& Q,
                           const GaussianInt& alpha, const Ideal& prime, Ring ring) {
    ReducedCurve C = reduce_curve(E, prime);
    ReducedPoint Pr = C.reduce(E, P);
    ReducedPoint Qr = C.reduce(E, Q);
    EndoCache exact(E, P);
    if (term_divisible_and_nonzero(E, exact, C, Pr, Qr, Q, GaussianInt(0))) return true;
    Int bound = norm(alpha) - 1;
    for (const GaussianInt& beta : enumerate_indices(ring, bound)) {
        if (term_divisible_and_nonzero(E, exact, C, Pr, Qr, Q, beta)) return true;
    }
    return false;
}

}  // namespace

std::vector<CheckReport> good_prime_checks(const Curve& E, const Point& P, const Point& Q,
                                           const GaussianInt& alpha, const Ideal& prime,
                                           const Ideal& s,
                                           std::optional<bool> non_primitive_hint) {
    if (alpha.is_zero()) throw std::invalid_argument("good_prime_checks: alpha must be nonzero");
    if (!is_good_prime(E, prime, s))
        throw std::invalid_argument("good_prime_checks: " + prime.to_string() +
                                    " is not a good prime");
    Ring ring = s.ring();

    Point S = add(E, apply_endo(E, alpha, P), Q);
    if (S.inf) throw std::invalid_argument("good_prime_checks: the term at alpha is zero");
    long v_term = S.x.is_zero() ? 0 : std::max(0L, -valuation(S.x, prime));
    if (v_term == 0)
        throw std::invalid_argument("good_prime_checks: prime does not divide the term");

    std::vector<CheckReport> out;
    auto report = [&](const std::string& name, bool applicable, bool pass, std::string detail) {
        CheckReport r;
        r.check = name;
        r.alpha = alpha;
        r.prime = prime;
        r.applicable = applicable;
        r.pass = !applicable || pass;
        r.detail = std::move(detail);
        out.push_back(std::move(r));
    };

    Ideal ann = ann_ideal(E, prime, P, ring);
    Ideal alpha_ideal(ring, alpha);
    Ideal alpha_s = alpha_ideal * s;

    report("annihilator-divides", true, ann.divides(alpha_s),
           "ann=" + ann.to_string() + " (alpha)s=" + alpha_s.to_string());

    std::optional<Ideal> IP, JP;
    std::string quot_detail;
    try {
        auto pr = ip_jp(alpha, prime, ann, s);
        IP = pr.first;
        JP = pr.second;
        quot_detail = "I_p=" + IP->to_string() + " J_p=" + JP->to_string();
    } catch (const CheckViolation& ex) {
        quot_detail = ex.what();
    }
    bool quot_ok = IP && JP && JP->gcd(s).is_unit();
    report("quotients-integral-coprime", true, quot_ok, quot_detail);

    bool non_primitive = non_primitive_hint
                             ? *non_primitive_hint
                             : compute_non_primitive(E, P, Q, alpha, prime, ring);
    report("nonprimitive-strict", non_primitive, ann != alpha_s,
           "ann=" + ann.to_string() + " (alpha)s=" + alpha_s.to_string());

    bool aux_applicable = ring == Ring::Z && IP.has_value();
    if (!aux_applicable) {
        std::string why = ring != Ring::Z ? "auxiliary terms are Z-only"
                                          : "quotient pair undefined";
        report("aux-consistency", false, true, why);
        report("aux-support-multiples", false, true, why);
        report("aux-valuation-step", false, true, why);
        report("aux-valuation-bound", false, true, why);
        return out;
    }

    AuxiliaryIndex aux = index_sets(alpha, s);
    std::vector<std::pair<Ideal, long>> vals;
    for (const Ideal& I : aux.I_set) {
        Point T = aux_point(E, P, Q, aux, I);
        long v = T.x.is_zero() ? 0 : std::max(0L, -valuation(T.x, prime));
        vals.emplace_back(I, v);
    }
    auto value_of = [&](const Ideal& I) {
        for (const auto& [J, v] : vals)
            if (J == I) return v;
        throw std::logic_error("good_prime_checks: missing auxiliary valuation");
    };

    // the term at I = (alpha) is B_alpha itself
    report("aux-consistency", true, value_of(alpha_ideal) == v_term,
           "v(aux at (alpha))=" + std::to_string(value_of(alpha_ideal)) +
               " v(term)=" + std::to_string(v_term));

    // support of the auxiliary sequence = multiples of I_p, with I_p present
    bool support_ok = value_of(*IP) > 0;
    for (const auto& [I, v] : vals) {
        bool is_multiple = IP->divides(I);
        if ((v > 0) != is_multiple) support_ok = false;
    }
    {
        std::string d = "I_p=" + IP->to_string() + " support={";
        for (const auto& [I, v] : vals)
            if (v > 0) d += I.to_string();
        d += "}";
        report("aux-support-multiples", true, support_ok, d);
    }

    // exact valuation step between nested members of the support
    bool step_ok = true;
    std::string step_detail;
    for (const auto& [I1, v1] : vals) {
        if (v1 <= 0) continue;
        for (const auto& [I2, v2] : vals) {
            if (v2 <= 0 || I1 == I2 || !I1.divides(I2)) continue;
            long s1 = valuation(GaussianRat(Rat(I1.gen().re)), prime);
            long s2 = valuation(GaussianRat(Rat(I2.gen().re)), prime);
            if (v2 != v1 + 2 * (s2 - s1)) {
                step_ok = false;
                step_detail += I1.to_string() + "|" + I2.to_string() + ": v=" +
                               std::to_string(v1) + "," + std::to_string(v2) + "; ";
            }
        }
    }
    report("aux-valuation-step", true, step_ok, step_detail);

    // for non-primitive divisors the term valuation is controlled by the
    // proper auxiliary terms
    if (non_primitive) {
        long v_alpha_ideal = valuation(GaussianRat(Rat(int_abs(alpha.re))), prime);
        long rhs = 2 * v_alpha_ideal;
        for (const auto& [I, v] : vals) {
            if (I == alpha_ideal) continue;
            Ideal quotient = *alpha_ideal.exact_quotient(I);
            int mu = FactoredIdeal::factor(quotient).mobius();
            rhs -= mu * v;
        }
        report("aux-valuation-bound", true, v_term <= rhs,
               "v(term)=" + std::to_string(v_term) + " bound=" + std::to_string(rhs));
    } else {
        report("aux-valuation-bound", false, true, "prime is primitive for alpha");
    }
    return out;
}

VerifySummary verify_range(const Curve& E, const Point& P, const Point& Q, Ring ring,
                           const Int& max_norm, const Int& prime_cap) {
    TorsionResult tq = torsion_annihilator(E, Q, ring);
    if (!tq.torsion) throw std::invalid_argument("verify_range: Q must be a torsion point");
    TorsionResult tp = torsion_annihilator(E, P, ring);
    if (tp.torsion) throw std::invalid_argument("verify_range: P must be non-torsion");
    const Ideal& s = tq.annihilator;

    VerifySummary summary;
    for (const Ideal& prime : primes_up_to(E.field(), prime_cap)) {
        if (!is_good_prime(E, prime, s)) continue;
        std::vector<GaussianInt> hits = divisibility_pattern(E, P, Q, prime, ring, max_norm);
        if (hits.empty()) continue;
        Int min_norm = norm(hits.front());
        for (const GaussianInt& alpha : hits) {
            if (alpha.is_zero()) continue;
            bool non_primitive = min_norm < norm(alpha);
            auto reports = good_prime_checks(E, P, Q, alpha, prime, s, non_primitive);
            ++summary.pairs;
            for (auto& r : reports) {
                if (!r.pass) summary.all_pass = false;
                summary.reports.push_back(std::move(r));
            }
        }
    }
    return summary;
}

std::pair<GaussianInt, GaussianInt> shift_construction(const Curve& E, const Point& P,
                                                       const Point& Q,
                                                       const ShiftDecomposition& dec) {
    for (const Point* pt : {&dec.R, &dec.T1, &dec.T2, &P, &Q}) {
        if (!E.contains(*pt)) throw std::invalid_argument("shift_construction: point not on curve");
    }
    if (dec.t1_order < 1 || dec.t2_order < 1)
        throw std::invalid_argument("shift_construction: torsion orders must be positive");
    if (!scalar_mul(E, dec.t1_order, dec.T1).inf)
        throw std::invalid_argument("shift_construction: t1_order does not annihilate T1");
    if (!scalar_mul(E, dec.t2_order, dec.T2).inf)
        throw std::invalid_argument("shift_construction: t2_order does not annihilate T2");
    if (dec.a.is_zero())
        throw std::invalid_argument("shift_construction: a = 0 makes P torsion; rejected");
    if (add(E, apply_endo(E, dec.a, dec.R), dec.T1) != P)
        throw std::invalid_argument("shift_construction: decomposition of P does not verify");
    if (add(E, apply_endo(E, dec.b, dec.R), dec.T2) != Q)
        throw std::invalid_argument("shift_construction: decomposition of Q does not verify");

    Int n = int_lcm(dec.t1_order, dec.t2_order);
    GaussianInt f{dec.b.re * n, dec.b.im * n};
    GaussianInt g{dec.a.re * n, dec.a.im * n};
    if (apply_endo(E, f, P) != apply_endo(E, g, Q))
        throw std::logic_error("shift_construction: f(P) != g(Q) after verification");
    return {f, g};
}

}  // namespace edscm
