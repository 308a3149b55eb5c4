#include "k3forms/decision.hpp"
#include "k3forms/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

namespace k3 {

namespace {

int eps_lambda_at(const Place& p) { return p.prime() == 2 ? -1 : 1; } // (-1)^(p-1)

Rational rational_pow(const Rational& x, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

QuadraticSpace direct_sum_all(const std::vector<QuadraticSpace>& parts) {
    if (parts.empty()) throw InternalError("empty direct sum");
    QuadraticSpace acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, parts[i]);
    return acc;
}

std::string sig_str(const Signature& s) {
    return "(" + std::to_string(s.plus) + "," + std::to_string(s.minus) + ")";
}

std::vector<std::string> field_warnings(const HermitianSpace& space) {
    std::vector<std::string> w;
    if (!space.real_field()->irreducibility_certified())
        w.push_back("irreducibility of the minimal polynomial was not certified; "
                    "results assume it defines a field");
    return w;
}

// Solve A x = rhs by Gaussian elimination with partial pivoting.
template <class Scalar>
std::vector<Scalar> solve_linear(std::vector<std::vector<Scalar>> a, std::vector<Scalar> rhs) {
    size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) == 0.0) throw InternalError("singular embedding matrix");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t r = col + 1; r < n; ++r) {
            Scalar f = a[r][col] / a[col][col];
            if (f == Scalar(0)) continue;
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Scalar> x(n);
    for (size_t ri = n; ri-- > 0;) {
        Scalar acc = rhs[ri];
        for (size_t c = ri + 1; c < n; ++c) acc -= a[ri][c] * x[c];
        x[ri] = acc / a[ri][ri];
    }
    return x;
}

} // namespace

SignatureCheck signature_condition(const HermitianSpace& space) {
    SignatureCheck out;
    int m = space.dim();
    const std::vector<Signature>& sigs = space.localization_signatures();
    Signature distinguished = space.is_cm() ? Signature{1, m - 1} : Signature{2, m - 2};
    Signature rest{0, m};
    if (!space.is_cm() && m < 3) {
        out.details = "totally real case requires m >= 3 (got m = " + std::to_string(m) + ")";
        return out;
    }
    std::optional<int> hit;
    for (size_t i = 0; i < sigs.size(); ++i) {
        if (sigs[i] == distinguished && !hit) {
            hit = static_cast<int>(i);
        } else if (!(sigs[i] == rest)) {
            out.details = "embedding " + std::to_string(i) + " has signature " + sig_str(sigs[i]);
            return out;
        }
    }
    if (!hit) {
        out.details = "no embedding with signature " + sig_str(distinguished);
        return out;
    }
    out.passed = true;
    out.sigma0 = hit;
    out.details = "sigma0 = embedding " + std::to_string(*hit);
    return out;
}

K3Verdict is_k3_type(const HermitianSpace& space) {
    K3Verdict v;
    v.route = "theorem1";
    v.warnings = field_warnings(space);

    SignatureCheck sc = signature_condition(space);
    v.conditions.push_back({"signature_condition", sc.passed, sc.details});

    QuadraticSpace tf = space.trace_form();
    ConditionRecord emb;
    emb.name = "lambda_embedding";
    std::ostringstream det;
    det << "trace form rank " << tf.rank() << ", signature " << sig_str(tf.signature());
    if (tf.signature().plus == 2) {
        emb.passed = embeds_into_lambda_q(tf);
    } else {
        emb.passed = witt_embeds(tf, lambda_space());
        det << "; signature not of shape (2,t), generic Witt test used";
    }
    emb.details = det.str();
    v.conditions.push_back(emb);

    v.is_k3_type = true;
    for (const ConditionRecord& c : v.conditions) v.is_k3_type = v.is_k3_type && c.passed;
    return v;
}

K3Verdict corollary_route(const HermitianSpace& space) {
    K3Verdict v;
    v.warnings = field_warnings(space);
    int m = space.dim();
    const FieldPtr& rf = space.real_field();
    const std::vector<FieldElement>& d = space.diagonal();

    FieldElement disc_phi = rf->one();
    for (const FieldElement& dj : d) disc_phi = disc_phi * dj;
    Rational d_field = Rational(trace_pairing_gram(rf, rf->one()).disc().representative());

    if (!space.is_cm()) {
        v.route = "corollary4";
        int r = space.embedding_count();
        bool bounds = (3 <= m && m <= 21) && (1 <= r && m * r <= 21);
        v.conditions.push_back({"dimension_bounds",
                                bounds,
                                "m = " + std::to_string(m) + ", r = " + std::to_string(r) +
                                    ", mr = " + std::to_string(m * r)});

        SignatureCheck sc = signature_condition(space);
        v.conditions.push_back({"signature_condition", sc.passed, sc.details});

        ConditionRecord edge;
        edge.name = "edge_local_conditions";
        edge.passed = true;
        int mr = m * r;
        if (mr == 21 || mr == 20) {
            std::vector<QuadraticSpace> parts;
            for (const FieldElement& dj : d) parts.push_back(trace_pairing_gram(rf, dj));
            QuadraticSpace dsum = direct_sum_all(parts);
            QuadraticSpace lambda = lambda_space();
            Rational q = rational_pow(d_field, m) * norm(disc_phi);
            std::set<Place> ps;
            for (const Place& p : relevant_primes({&dsum, &lambda})) ps.insert(p);
            for (const Place& p : support_primes({q})) ps.insert(p);
            std::ostringstream det;
            det << "mr = " << mr;
            for (const Place& p : ps) {
                bool trigger = (mr == 21) || (mr == 20 && is_square_local(q, p));
                if (!trigger) continue;
                if (dsum.hasse_invariant(p) != eps_lambda_at(p)) {
                    edge.passed = false;
                    det << "; eps_" << p.str() << " mismatch";
                }
            }
            edge.details = det.str();
        } else {
            edge.details = "mr = " + std::to_string(mr) + " <= 19: no local condition";
        }
        v.conditions.push_back(edge);
    } else {
        v.route = "corollary4cm";
        const CMFieldPtr& cm = space.cm_field();
        int s = space.embedding_count();
        bool bounds = (1 <= m && m <= 10) && (1 <= s && m * s <= 10);
        v.conditions.push_back({"dimension_bounds",
                                bounds,
                                "m = " + std::to_string(m) + ", s = " + std::to_string(s) +
                                    ", ms = " + std::to_string(m * s)});

        SignatureCheck sc = signature_condition(space);
        v.conditions.push_back({"signature_condition", sc.passed, sc.details});

        ConditionRecord edge;
        edge.name = "edge_local_conditions";
        edge.passed = true;
        int ms = m * s;
        if (ms == 10) {
            const FieldElement minus_t = -cm->theta_sq();
            std::vector<QuadraticSpace> w1parts, w2parts;
            for (const FieldElement& dj : d) {
                w1parts.push_back(trace_pairing_gram(rf, dj));
                w2parts.push_back(trace_pairing_gram(rf, minus_t * dj));
            }
            QuadraticSpace w1 = direct_sum_all(w1parts);
            QuadraticSpace w2 = direct_sum_all(w2parts);
            QuadraticSpace lambda = lambda_space();
            Rational norm_theta = norm(minus_t); // Norm_{E/Q}(theta) = Norm_{E0}(-theta^2)
            Rational q = rational_pow(norm_theta, m);
            Rational c = rational_pow(Rational(2), s) * rational_pow(d_field, m) * norm(disc_phi);
            std::set<Place> ps;
            for (const Place& p : relevant_primes({&w1, &w2, &lambda})) ps.insert(p);
            for (const Place& p : support_primes({q, c})) ps.insert(p);
            std::ostringstream det;
            det << "ms = 10";
            for (const Place& p : ps) {
                if (!is_square_local(q, p)) continue;
                int lhs = w1.hasse_invariant(p) * w2.hasse_invariant(p);
                int rhs = eps_lambda_at(p) * hilbert_symbol(c, Rational(-1), p);
                if (lhs != rhs) {
                    edge.passed = false;
                    det << "; eps_" << p.str() << " mismatch";
                }
            }
            edge.details = det.str();
        } else {
            edge.details = "ms = " + std::to_string(ms) + " <= 9: no local condition";
        }
        v.conditions.push_back(edge);
    }

    v.is_k3_type = true;
    for (const ConditionRecord& c : v.conditions) v.is_k3_type = v.is_k3_type && c.passed;
    return v;
}

AdmissiblePairs enumerate_admissible(AdmissibleKind kind) {
    AdmissiblePairs out;
    if (kind == AdmissibleKind::TotallyReal) {
        for (int m = 3; m <= 21; ++m)
            for (int r = 2; m * r <= 21; ++r) {
                out.necessary.insert({m, r});
                if (m * r <= 19) out.sufficient.insert({m, r});
            }
    } else {
        for (int m = 1; m <= 10; ++m)
            for (int s = 2; m * s <= 10; ++s) {
                out.necessary.insert({m, s});
                if (m * s <= 9) out.sufficient.insert({m, s});
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// period witness

namespace {

using Complex = std::complex<double>;

// Coefficients c with sum_j c_j sigma'(e_j) = delta_{sigma', sigma0} over all
// embeddings of E; totally real case.
std::vector<double> embedding_coefficients_tr(const FieldPtr& f, int sigma0) {
    int n = f->degree();
    const auto& embs = f->real_embeddings();
    std::vector<std::vector<double>> a(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
    FieldElement gen = f->generator();
    FieldElement pw = f->one();
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k)
            a[static_cast<size_t>(k)][static_cast<size_t>(j)] = approx_at(pw, embs[static_cast<size_t>(k)]);
        if (j + 1 < n) pw = pw * gen;
    }
    std::vector<double> rhs(static_cast<size_t>(n), 0.0);
    rhs[static_cast<size_t>(sigma0)] = 1.0;
    return solve_linear(std::move(a), std::move(rhs));
}

// CM case: embeddings sigma_1..sigma_s (with sigma_k(theta) = +i sqrt(-t_k))
// followed by their conjugates; basis {e_i, theta e_i}.
std::vector<Complex> embedding_coefficients_cm(const CMFieldPtr& f, int sigma0) {
    int s = f->s();
    int n = 2 * s;
    const FieldPtr& e0 = f->base();
    const auto& embs = e0->real_embeddings();
    FieldElement gen = e0->generator();
    std::vector<std::vector<double>> base_vals(static_cast<size_t>(s),
                                               std::vector<double>(static_cast<size_t>(s)));
    FieldElement pw = e0->one();
    for (int j = 0; j < s; ++j) {
        for (int k = 0; k < s; ++k)
            base_vals[static_cast<size_t>(k)][static_cast<size_t>(j)] =
                approx_at(pw, embs[static_cast<size_t>(k)]);
        if (j + 1 < s) pw = pw * gen;
    }
    std::vector<double> theta_im(static_cast<size_t>(s));
    for (int k = 0; k < s; ++k)
        theta_im[static_cast<size_t>(k)] =
            std::sqrt(-approx_at(f->theta_sq(), embs[static_cast<size_t>(k)]));

    std::vector<std::vector<Complex>> a(static_cast<size_t>(n),
                                        std::vector<Complex>(static_cast<size_t>(n)));
    for (int k = 0; k < s; ++k) {
        for (int j = 0; j < s; ++j) {
            double bv = base_vals[static_cast<size_t>(k)][static_cast<size_t>(j)];
            Complex th(0.0, theta_im[static_cast<size_t>(k)]);
            a[static_cast<size_t>(k)][static_cast<size_t>(j)] = bv;
            a[static_cast<size_t>(k)][static_cast<size_t>(s + j)] = th * bv;
            a[static_cast<size_t>(s + k)][static_cast<size_t>(j)] = bv;
            a[static_cast<size_t>(s + k)][static_cast<size_t>(s + j)] = -th * bv;
        }
    }
    std::vector<Complex> rhs(static_cast<size_t>(n), Complex(0.0));
    rhs[static_cast<size_t>(sigma0)] = 1.0;
    return solve_linear(std::move(a), std::move(rhs));
}

HermitianSpace sorted_diagonal_model(const HermitianSpace& space,
                                     const std::vector<FieldElement>& d) {
    if (!space.is_cm()) {
        const FieldPtr& f = space.tr_field();
        TRGram g(d.size(), std::vector<FieldElement>());
        for (size_t i = 0; i < d.size(); ++i)
            for (size_t j = 0; j < d.size(); ++j)
                g[i].push_back(i == j ? d[i] : f->zero());
        return HermitianSpace::make(f, std::move(g));
    }
    const CMFieldPtr& f = space.cm_field();
    CMGram g(d.size(), std::vector<CMElement>());
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = 0; j < d.size(); ++j)
            g[i].push_back(i == j ? f->from_base(d[i]) : f->zero());
    return HermitianSpace::make(f, std::move(g));
}

} // namespace

PeriodWitness construct_period_witness(const HermitianSpace& space, std::uint64_t seed,
                                       double tolerance) {
    SignatureCheck sc = signature_condition(space);
    if (!sc.passed)
        throw InputError("period witness requires the signature condition: " + sc.details);
    int m = space.dim();
    const FieldPtr& rf = space.real_field();
    const RealEmbedding& emb = rf->real_embeddings()[static_cast<size_t>(*sc.sigma0)];

    // sort d so that sigma0(d_1) >= ... >= sigma0(d_m)
    std::vector<FieldElement> d = space.diagonal();
    std::stable_sort(d.begin(), d.end(), [&](const FieldElement& a, const FieldElement& b) {
        FieldElement diff = a - b;
        if (diff.is_zero()) return false;
        return sign_at(diff, emb) > 0;
    });
    std::vector<double> dv;
    for (const FieldElement& dj : d) dv.push_back(approx_at(dj, emb));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);

    std::vector<Complex> z(static_cast<size_t>(m), Complex(0.0));
    PeriodWitness w;
    w.sigma0 = *sc.sigma0;
    w.tolerance = tolerance;

    if (!space.is_cm()) {
        if (m == 2)
            throw InputError("m = 2 totally real has no period witness (see the rank-2 obstruction)");
        if (m == 3) {
            w.case_label = "totally_real_m3";
            double x3 = unit(rng);
            w.x3 = x3;
            z[0] = 1.0 / std::sqrt(dv[0]);
            z[1] = Complex(0.0, std::sqrt(1.0 - x3 * x3) / std::sqrt(dv[1]));
            z[2] = x3 / std::sqrt(-dv[2]);
        } else {
            w.case_label = "totally_real";
            // x, y with <x,y> = 0 and |x| = |y|, then a global shrink
            std::vector<double> x(static_cast<size_t>(m - 2)), y(static_cast<size_t>(m - 2));
            for (auto& v : x) v = sym(rng);
            for (auto& v : y) v = sym(rng);
            double xy = 0, xx = 0, yy = 0;
            for (size_t i = 0; i < x.size(); ++i) xy += x[i] * y[i];
            for (size_t i = 0; i < x.size(); ++i) xx += x[i] * x[i];
            for (size_t i = 0; i < x.size(); ++i) y[i] -= xy / xx * x[i];
            for (size_t i = 0; i < x.size(); ++i) yy += y[i] * y[i];
            double rescale = std::sqrt(xx / yy);
            for (auto& v : y) v *= rescale;
            double lambda = unit(rng) / std::max(1.0, std::sqrt(xx));
            z[0] = 1.0 / std::sqrt(dv[0]);
            z[1] = Complex(0.0, 1.0 / std::sqrt(dv[1]));
            for (int i = 2; i < m; ++i)
                z[static_cast<size_t>(i)] =
                    lambda * Complex(x[static_cast<size_t>(i - 2)], y[static_cast<size_t>(i - 2)]) /
                    std::sqrt(-dv[static_cast<size_t>(i)]);
        }
    } else {
        w.case_label = "cm";
        z[0] = 1.0 / std::sqrt(dv[0]);
        if (m > 1) {
            std::vector<Complex> x(static_cast<size_t>(m - 1));
            double norm2 = 0;
            for (auto& v : x) {
                v = Complex(sym(rng), sym(rng));
                norm2 += std::norm(v);
            }
            double shrink = unit(rng) / std::max(1.0, std::sqrt(norm2));
            for (int i = 1; i < m; ++i)
                z[static_cast<size_t>(i)] =
                    shrink * x[static_cast<size_t>(i - 1)] / std::sqrt(-dv[static_cast<size_t>(i)]);
        }
    }

    // expand over the rational basis {e_i u_j} of the sorted diagonal model
    HermitianSpace model = sorted_diagonal_model(space, d);
    QuadraticSpace tf = model.trace_form();
    int n = space.is_cm() ? 2 * space.cm_field()->s() : rf->degree();
    std::vector<Complex> coeff;
    if (!space.is_cm()) {
        for (double c : embedding_coefficients_tr(rf, *sc.sigma0)) coeff.push_back(c);
    } else {
        coeff = embedding_coefficients_cm(space.cm_field(), *sc.sigma0);
    }
    std::vector<Complex> wv(static_cast<size_t>(n * m));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i)
            wv[static_cast<size_t>(j * n + i)] = z[static_cast<size_t>(j)] * coeff[static_cast<size_t>(i)];

    std::vector<std::vector<double>> b(static_cast<size_t>(n * m),
                                       std::vector<double>(static_cast<size_t>(n * m)));
    for (int i = 0; i < n * m; ++i)
        for (int j = 0; j < n * m; ++j)
            b[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                to_double(tf.gram()[static_cast<size_t>(i)][static_cast<size_t>(j)]);

    Complex bff(0.0);
    Complex bfbar(0.0);
    for (int i = 0; i < n * m; ++i)
        for (int j = 0; j < n * m; ++j) {
            double bij = b[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (bij == 0.0) continue;
            bff += wv[static_cast<size_t>(i)] * wv[static_cast<size_t>(j)] * bij;
            bfbar += wv[static_cast<size_t>(i)] * std::conj(wv[static_cast<size_t>(j)]) * bij;
        }

    for (const Complex& c : wv) {
        w.f_real.push_back(c.real());
        w.f_imag.push_back(c.imag());
    }
    w.bff_residual = std::abs(bff);
    w.bfbar = bfbar.real();
    if (!(w.bfbar > 0) || w.bff_residual > tolerance * std::max(1.0, w.bfbar))
        throw InternalError("period witness failed its numeric checks");
    return w;
}

Case3Obstruction case3_obstruction(const HermitianSpace& space) {
    if (space.is_cm() || space.dim() != 2)
        throw InputError("rank-2 obstruction applies to totally real m = 2 spaces");
    const FieldPtr& f = space.tr_field();
    const auto& embs = f->real_embeddings();
    const std::vector<Signature>& sigs = space.localization_signatures();
    int s0 = -1;
    for (size_t i = 0; i < sigs.size(); ++i)
        if (sigs[i].plus == 1 && sigs[i].minus == 1) {
            s0 = static_cast<int>(i);
            break;
        }
    if (s0 < 0) throw InputError("no embedding with signature (1,1)");
    const RealEmbedding& emb = embs[static_cast<size_t>(s0)];

    std::vector<FieldElement> d = space.diagonal();
    if (sign_at(d[0], emb) < 0) std::swap(d[0], d[1]);
    double d1 = approx_at(d[0], emb);
    double d2 = approx_at(d[1], emb);

    Case3Obstruction out;
    out.alpha = {{f->zero(), -d[0]}, {d[1], f->zero()}};
    out.eigenvalue = std::sqrt(-d1 * d2);

    // isotropic witness f = sqrt(|d2|) u1 - sqrt(d1) u2; alpha acts by the
    // transpose on coordinates
    double v1 = std::sqrt(-d2), v2 = -std::sqrt(d1);
    double a1 = d2 * v2;  // row 1 of alpha^T = (0, d2)
    double a2 = -d1 * v1; // row 2 of alpha^T = (-d1, 0)
    double r1 = a1 - out.eigenvalue * v1;
    double r2 = a2 - out.eigenvalue * v2;
    out.residual = std::sqrt(r1 * r1 + r2 * r2);
    return out;
}

} // namespace k3
