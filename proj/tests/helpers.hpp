#pragma once

#include "k3forms/decision.hpp"
#include "k3forms/errors.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace k3::testutil {

inline Rational random_rational(std::mt19937_64& rng, int max_abs = 9, int max_den = 4) {
    std::uniform_int_distribution<int> num(-max_abs, max_abs);
    std::uniform_int_distribution<int> den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline Rational random_nonzero_rational(std::mt19937_64& rng, int max_abs = 9, int max_den = 4) {
    for (;;) {
        Rational q = random_rational(rng, max_abs, max_den);
        if (q != 0) return q;
    }
}

// Random symmetric nondegenerate Gram of the given rank with small entries.
inline QuadraticSpace random_quadratic_space(std::mt19937_64& rng, int rank) {
    for (;;) {
        QMatrix g(static_cast<size_t>(rank), std::vector<Rational>(static_cast<size_t>(rank)));
        for (int i = 0; i < rank; ++i)
            for (int j = i; j < rank; ++j) {
                Rational v = random_rational(rng, 5, 3);
                g[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
                g[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
            }
        try {
            return QuadraticSpace(std::move(g));
        } catch (const InputError&) {
            // degenerate draw; retry
        }
    }
}

// Random invertible T as a product of shears and swaps (det = +-1).
inline QMatrix random_unimodular(std::mt19937_64& rng, int n) {
    QMatrix t = qmat_identity(n);
    std::uniform_int_distribution<int> idx(0, n - 1);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int step = 0; step < 3 * n; ++step) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        if (pick(rng) == 0) {
            std::swap(t[static_cast<size_t>(i)], t[static_cast<size_t>(j)]);
        } else {
            Rational c = random_rational(rng, 2, 2);
            for (int k = 0; k < n; ++k)
                t[static_cast<size_t>(i)][static_cast<size_t>(k)] +=
                    c * t[static_cast<size_t>(j)][static_cast<size_t>(k)];
        }
    }
    return t;
}

struct FieldPool {
    std::vector<FieldPtr> totally_real;
    std::vector<CMFieldPtr> cm;
};

inline const FieldPool& field_pool() {
    static const FieldPool pool = [] {
        FieldPool p;
        FieldPtr q = NumberField::make(Poly({Rational(0), Rational(1)}));
        FieldPtr sqrt2 = NumberField::make(Poly({Rational(-2), Rational(0), Rational(1)}));
        FieldPtr sqrt5 = NumberField::make(Poly({Rational(-5), Rational(0), Rational(1)}));
        // x^3 - 3x - 1: totally real cubic
        FieldPtr cubic = NumberField::make(Poly({Rational(-1), Rational(-3), Rational(0), Rational(1)}));
        // x^4 - 5x^2 + 5: totally real quartic
        FieldPtr quartic = NumberField::make(
            Poly({Rational(5), Rational(0), Rational(-5), Rational(0), Rational(1)}));
        p.totally_real = {q, sqrt2, sqrt5, cubic, quartic};
        p.cm.push_back(CMField::make(q, q->from_rational(Rational(-1))));
        p.cm.push_back(CMField::make(q, q->from_rational(Rational(-2))));
        p.cm.push_back(CMField::make(sqrt2, sqrt2->from_rational(Rational(-1))));
        p.cm.push_back(CMField::make(
            sqrt2, sqrt2->element({Rational(-3), Rational(1)}))); // sqrt(2) - 3, totally negative
        p.cm.push_back(CMField::make(sqrt5, sqrt5->from_rational(Rational(-3))));
        return p;
    }();
    return pool;
}

// Nonzero element with small coefficients.
inline FieldElement random_field_element(std::mt19937_64& rng, const FieldPtr& f, int max_abs = 3) {
    for (;;) {
        std::vector<Rational> c;
        std::uniform_int_distribution<int> v(-max_abs, max_abs);
        for (int i = 0; i < f->degree(); ++i) c.push_back(Rational(v(rng)));
        FieldElement e = f->element(std::move(c));
        if (!e.is_zero()) return e;
    }
}

// Diagonal hermitian space with a few sparse congruence moves applied, so the
// Gram is non-diagonal but the minors stay small.
inline HermitianSpace random_tr_space(std::mt19937_64& rng, const FieldPtr& f, int m) {
    for (;;) {
        TRGram g(static_cast<size_t>(m),
                 std::vector<FieldElement>(static_cast<size_t>(m), f->zero()));
        for (int i = 0; i < m; ++i)
            g[static_cast<size_t>(i)][static_cast<size_t>(i)] = random_field_element(rng, f, 2);
        if (m > 1) {
            std::uniform_int_distribution<int> idx(0, m - 1);
            int i = idx(rng), j = idx(rng);
            if (i != j) {
                FieldElement c = f->from_rational(Rational(1));
                for (int k = 0; k < m; ++k)
                    g[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                        g[static_cast<size_t>(i)][static_cast<size_t>(k)] +
                        c * g[static_cast<size_t>(j)][static_cast<size_t>(k)];
                for (int k = 0; k < m; ++k)
                    g[static_cast<size_t>(k)][static_cast<size_t>(i)] =
                        g[static_cast<size_t>(k)][static_cast<size_t>(i)] +
                        c * g[static_cast<size_t>(k)][static_cast<size_t>(j)];
            }
        }
        try {
            return HermitianSpace::make(f, std::move(g));
        } catch (const InputError&) {
        }
    }
}

inline HermitianSpace random_cm_space(std::mt19937_64& rng, const CMFieldPtr& f, int m) {
    for (;;) {
        CMGram g(static_cast<size_t>(m), std::vector<CMElement>(static_cast<size_t>(m), f->zero()));
        for (int i = 0; i < m; ++i)
            g[static_cast<size_t>(i)][static_cast<size_t>(i)] =
                f->from_base(random_field_element(rng, f->base(), 2));
        if (m > 1) {
            std::uniform_int_distribution<int> idx(0, m - 1);
            int i = idx(rng), j = idx(rng);
            if (i != j) {
                CMElement c = f->theta();
                for (int k = 0; k < m; ++k)
                    g[static_cast<size_t>(i)][static_cast<size_t>(k)] = f->add(
                        g[static_cast<size_t>(i)][static_cast<size_t>(k)],
                        f->mul(c, g[static_cast<size_t>(j)][static_cast<size_t>(k)]));
                CMElement cbar = f->conjugate(c);
                for (int k = 0; k < m; ++k)
                    g[static_cast<size_t>(k)][static_cast<size_t>(i)] = f->add(
                        g[static_cast<size_t>(k)][static_cast<size_t>(i)],
                        f->mul(cbar, g[static_cast<size_t>(k)][static_cast<size_t>(j)]));
            }
        }
        try {
            return HermitianSpace::make(f, std::move(g));
        } catch (const InputError&) {
        }
    }
}

// Totally real fields of degree 5..9 for the admissibility-table instantiations:
// 2cos(2pi/11), 2cos(2pi/13), a Chebyshev-shifted septic (Eisenstein at 2 after
// reversal), sqrt2+sqrt3+sqrt5, and 2cos(2pi/27).
inline const std::vector<FieldPtr>& exotic_totally_real() {
    static const std::vector<FieldPtr> fields = [] {
        auto poly = [](std::vector<long> v) {
            std::vector<Rational> c;
            for (long x : v) c.emplace_back(x);
            return Poly(std::move(c));
        };
        std::vector<FieldPtr> out;
        out.push_back(NumberField::make(poly({1, 3, -3, -4, 1, 1})));
        out.push_back(NumberField::make(poly({-1, 3, 6, -4, -5, 1, 1})));
        out.push_back(NumberField::make(Poly({Rational(-1, 2), Rational(-7), Rational(0),
                                              Rational(14), Rational(0), Rational(-7),
                                              Rational(0), Rational(1)})));
        out.push_back(NumberField::make(poly({576, 0, -960, 0, 352, 0, -40, 0, 1})));
        out.push_back(NumberField::make(poly({1, 9, 0, -30, 0, 27, 0, -9, 0, 1})));
        return out;
    }();
    return fields;
}

inline FieldPtr totally_real_of_degree(int degree) {
    for (const FieldPtr& f : field_pool().totally_real)
        if (f->degree() == degree) return f;
    for (const FieldPtr& f : exotic_totally_real())
        if (f->degree() == degree) return f;
    throw InternalError("no sample field of degree " + std::to_string(degree));
}

// Element positive at the embedding with the largest root and negative at all
// the others: alpha - (rational point separating the top two roots).
inline FieldElement positive_only_at_top(const FieldPtr& f) {
    if (f->degree() == 1) return f->one();
    const auto& embs = f->real_embeddings();
    Rational cut = (embs[embs.size() - 2].hi() + embs.back().lo()) / 2;
    return f->generator() - f->one() * cut;
}

inline FieldElement totally_negative_element(const FieldPtr& f) {
    if (f->degree() == 1) return -f->one();
    Rational bound = root_bound(f->minpoly()) + 1;
    return f->generator() - f->one() * bound;
}

inline Rational random_positive_rational(std::mt19937_64& rng, int max_abs = 4) {
    std::uniform_int_distribution<int> num(1, max_abs);
    std::uniform_int_distribution<int> den(1, 3);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

// Diagonal space meeting the totally real signature condition at the top
// embedding: two entries positive there, everything else totally negative.
inline HermitianSpace signature_shaped_tr(std::mt19937_64& rng, const FieldPtr& f, int m) {
    FieldElement a = positive_only_at_top(f);
    FieldElement c = totally_negative_element(f);
    std::vector<FieldElement> d;
    for (int i = 0; i < m; ++i) {
        const FieldElement& base = i < 2 ? a : c;
        d.push_back(base * random_positive_rational(rng));
    }
    std::shuffle(d.begin(), d.end(), rng);
    TRGram g(static_cast<size_t>(m), std::vector<FieldElement>(static_cast<size_t>(m), f->zero()));
    for (int i = 0; i < m; ++i) g[static_cast<size_t>(i)][static_cast<size_t>(i)] = d[static_cast<size_t>(i)];
    return HermitianSpace::make(f, std::move(g));
}

inline HermitianSpace signature_shaped_cm(std::mt19937_64& rng, const CMFieldPtr& f, int m) {
    const FieldPtr& e0 = f->base();
    FieldElement a = positive_only_at_top(e0);
    FieldElement c = totally_negative_element(e0);
    std::vector<FieldElement> d;
    for (int i = 0; i < m; ++i) {
        const FieldElement& base = i < 1 ? a : c;
        d.push_back(base * random_positive_rational(rng));
    }
    std::shuffle(d.begin(), d.end(), rng);
    CMGram g(static_cast<size_t>(m), std::vector<CMElement>(static_cast<size_t>(m), f->zero()));
    for (int i = 0; i < m; ++i)
        g[static_cast<size_t>(i)][static_cast<size_t>(i)] = f->from_base(d[static_cast<size_t>(i)]);
    return HermitianSpace::make(f, std::move(g));
}

// Mixed sample for the route-agreement and witness suites: random spaces,
// signature-shaped spaces, and the boundary instances (mr in {20, 21},
// ms = 10).
inline std::vector<HermitianSpace> decision_sample(std::uint64_t seed, int random_count) {
    std::mt19937_64 rng(seed);
    std::vector<HermitianSpace> out;
    const FieldPool& pool = field_pool();
    for (int i = 0; i < random_count; ++i) {
        bool cm = rng() % 3 == 0;
        bool shaped = rng() % 2 == 0;
        if (!cm) {
            const FieldPtr& f = pool.totally_real[rng() % pool.totally_real.size()];
            int max_m = std::max(1, 21 / f->degree() / 2 + 2);
            int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(6, max_m)));
            out.push_back(shaped && m >= 3 ? signature_shaped_tr(rng, f, m)
                                           : random_tr_space(rng, f, m));
        } else {
            const CMFieldPtr& f = pool.cm[rng() % pool.cm.size()];
            int m = 1 + static_cast<int>(rng() % 4);
            out.push_back(shaped ? signature_shaped_cm(rng, f, m) : random_cm_space(rng, f, m));
        }
    }

    // boundary instances
    FieldPtr q = pool.totally_real[0];
    FieldPtr sqrt2 = pool.totally_real[1];
    FieldPtr cubic = pool.totally_real[3];
    auto tr_diag = [](const FieldPtr& f, std::vector<FieldElement> d) {
        TRGram g(d.size(), std::vector<FieldElement>(d.size(), f->zero()));
        for (size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
        return HermitianSpace::make(f, std::move(g));
    };
    auto cm_diag = [](const CMFieldPtr& f, std::vector<FieldElement> d) {
        CMGram g(d.size(), std::vector<CMElement>(d.size(), f->zero()));
        for (size_t i = 0; i < d.size(); ++i) g[i][i] = f->from_base(d[i]);
        return HermitianSpace::make(f, std::move(g));
    };

    // m = 21 over Q (mr = 21): passing and eps_2-violating variants
    {
        std::vector<FieldElement> d(2, q->one());
        for (int i = 0; i < 19; ++i) d.push_back(q->from_rational(Rational(-1)));
        out.push_back(tr_diag(q, d));
        std::vector<FieldElement> d2(2, q->one());
        for (int i = 0; i < 17; ++i) d2.push_back(q->from_rational(Rational(-1)));
        d2.push_back(q->from_rational(Rational(-3)));
        d2.push_back(q->from_rational(Rational(-3)));
        out.push_back(tr_diag(q, d2));
    }
    // mr = 21 over the cubic: m = 7
    {
        FieldElement a = positive_only_at_top(cubic);
        FieldElement c = cubic->from_rational(Rational(-1));
        std::vector<FieldElement> d{a, a, c, c, c, c, c};
        out.push_back(tr_diag(cubic, d));
    }
    // mr = 20 over Q(sqrt 2): m = 10, square and non-square edge quantities
    {
        FieldElement p1 = sqrt2->element({Rational(-1), Rational(1)}); // sqrt2 - 1
        FieldElement n3 = sqrt2->element({Rational(-3), Rational(1)}); // sqrt2 - 3
        FieldElement n4 = sqrt2->element({Rational(-4), Rational(1)}); // sqrt2 - 4
        std::vector<FieldElement> d{p1, p1};
        for (int i = 0; i < 8; ++i) d.push_back(n3);
        out.push_back(tr_diag(sqrt2, d)); // disc quantity is a square
        std::vector<FieldElement> d2{p1, p1};
        for (int i = 0; i < 7; ++i) d2.push_back(n3);
        d2.push_back(n4); // norm 14: square only at some p
        out.push_back(tr_diag(sqrt2, d2));
    }
    // ms = 10: Gaussian with m = 10 and a degree-2 base with m = 5
    {
        const CMFieldPtr& gauss = pool.cm[0];
        std::vector<FieldElement> d{q->one()};
        for (int i = 0; i < 9; ++i) d.push_back(q->from_rational(Rational(-1)));
        out.push_back(cm_diag(gauss, d));
        const CMFieldPtr& f2 = pool.cm[2]; // base Q(sqrt 2), t = -1
        FieldElement p1 = sqrt2->element({Rational(-1), Rational(1)});
        FieldElement n3 = sqrt2->element({Rational(-3), Rational(1)});
        out.push_back(cm_diag(f2, {p1, n3, n3, n3, n3}));
        const CMFieldPtr& f3 = pool.cm[3]; // base Q(sqrt 2), t = sqrt2 - 3
        out.push_back(cm_diag(f3, {p1, n3, n3, n3, n3}));
    }
    return out;
}

} // namespace k3::testutil
