#include "k3forms/hermitian.hpp"
#include "k3forms/errors.hpp"

namespace k3 {

namespace {

struct TROps {
    FieldPtr f;
    using El = FieldElement;
    static constexpr bool has_theta = false;
    El add(const El& x, const El& y) const { return x + y; }
    El sub(const El& x, const El& y) const { return x - y; }
    El mul(const El& x, const El& y) const { return x * y; }
    El neg(const El& x) const { return -x; }
    El conj(const El& x) const { return x; }
    El inv(const El& x) const { return x.inverse(); }
    bool is_zero(const El& x) const { return x.is_zero(); }
    El one() const { return f->one(); }
    El theta() const { throw InternalError("no theta in a totally real field"); }
};

struct CMOps {
    CMFieldPtr f;
    using El = CMElement;
    static constexpr bool has_theta = true;
    El add(const El& x, const El& y) const { return f->add(x, y); }
    El sub(const El& x, const El& y) const { return f->sub(x, y); }
    El mul(const El& x, const El& y) const { return f->mul(x, y); }
    El neg(const El& x) const { return f->neg(x); }
    El conj(const El& x) const { return f->conjugate(x); }
    El inv(const El& x) const { return f->inverse(x); }
    bool is_zero(const El& x) const { return x.is_zero(); }
    El one() const { return f->one(); }
    El theta() const { return f->theta(); }
};

template <class Ops>
void check_hermitian(const Ops& ops, const std::vector<std::vector<typename Ops::El>>& g) {
    size_t m = g.size();
    if (m == 0) throw InputError("empty Gram matrix");
    for (const auto& row : g)
        if (row.size() != m) throw InputError("Gram matrix must be square");
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (!ops.is_zero(ops.sub(g[j][i], ops.conj(g[i][j]))))
                throw InputError("Gram matrix is not conjugate-symmetric");
}

// Congruence diagonalization with conjugate-transpose row/column operations.
template <class Ops>
std::vector<typename Ops::El> diagonalize_herm(const Ops& ops,
                                               std::vector<std::vector<typename Ops::El>> g) {
    using El = typename Ops::El;
    size_t m = g.size();
    auto add_multiple = [&](size_t dst, size_t src, const El& c) {
        // u_dst <- u_dst + c * u_src
        for (size_t k = 0; k < m; ++k) g[dst][k] = ops.add(g[dst][k], ops.mul(c, g[src][k]));
        El cbar = ops.conj(c);
        for (size_t k = 0; k < m; ++k) g[k][dst] = ops.add(g[k][dst], ops.mul(cbar, g[k][src]));
    };
    std::vector<El> d;
    d.reserve(m);
    for (size_t k = 0; k < m; ++k) {
        if (ops.is_zero(g[k][k])) {
            size_t j = k + 1;
            while (j < m && ops.is_zero(g[j][j])) ++j;
            if (j < m) {
                std::swap(g[k], g[j]);
                for (size_t r = 0; r < m; ++r) std::swap(g[r][k], g[r][j]);
            } else {
                j = k + 1;
                while (j < m && ops.is_zero(g[k][j])) ++j;
                if (j == m) throw InputError("degenerate hermitian form");
                // Phi(u_k + u_j, u_k + u_j) = g_kj + conj(g_kj) on an all-zero diagonal;
                // if that vanishes too, u_k + theta u_j cannot (CM case)
                El twice_re = ops.add(g[k][j], ops.conj(g[k][j]));
                if (!ops.is_zero(twice_re)) {
                    add_multiple(k, j, ops.one());
                } else {
                    if constexpr (Ops::has_theta) {
                        add_multiple(k, j, ops.theta());
                    } else {
                        throw InternalError("vanishing pivot over a totally real field");
                    }
                }
            }
        }
        const El pivot = g[k][k];
        const El pinv = ops.inv(pivot);
        for (size_t r = k + 1; r < m; ++r) {
            if (ops.is_zero(g[r][k])) continue;
            El c = ops.neg(ops.mul(g[r][k], pinv));
            add_multiple(r, k, c);
        }
        d.push_back(pivot);
    }
    return d;
}

} // namespace

HermitianSpace HermitianSpace::make(FieldPtr field, TRGram gram) {
    if (!field->is_totally_real())
        throw InputError("hermitian space needs a totally real or CM field");
    TROps ops{field};
    check_hermitian(ops, gram);
    HermitianSpace s;
    s.m_ = static_cast<int>(gram.size());
    s.diag_ = diagonalize_herm(ops, gram);
    s.field_ = field;
    s.gram_ = std::move(gram);
    for (const RealEmbedding& e : field->real_embeddings()) {
        Signature sig;
        for (const FieldElement& dj : s.diag_)
            (sign_at(dj, e) > 0 ? sig.plus : sig.minus)++;
        s.locsig_.push_back(sig);
    }
    return s;
}

HermitianSpace HermitianSpace::make(CMFieldPtr field, CMGram gram) {
    CMOps ops{field};
    check_hermitian(ops, gram);
    HermitianSpace s;
    s.m_ = static_cast<int>(gram.size());
    std::vector<CMElement> d = diagonalize_herm(ops, gram);
    for (const CMElement& dj : d) {
        if (!dj.theta_part().is_zero())
            throw InputError("hermitian diagonal entry is not involution-fixed");
        s.diag_.push_back(dj.real_part());
    }
    s.field_ = field;
    s.gram_ = std::move(gram);
    for (const RealEmbedding& e : field->base()->real_embeddings()) {
        Signature sig;
        for (const FieldElement& dj : s.diag_)
            (sign_at(dj, e) > 0 ? sig.plus : sig.minus)++;
        s.locsig_.push_back(sig);
    }
    return s;
}

const FieldPtr& HermitianSpace::tr_field() const {
    if (is_cm()) throw InputError("space is over a CM field");
    return std::get<FieldPtr>(field_);
}

const CMFieldPtr& HermitianSpace::cm_field() const {
    if (!is_cm()) throw InputError("space is over a totally real field");
    return std::get<CMFieldPtr>(field_);
}

const FieldPtr& HermitianSpace::real_field() const {
    return is_cm() ? std::get<CMFieldPtr>(field_)->base() : std::get<FieldPtr>(field_);
}

int HermitianSpace::embedding_count() const {
    return static_cast<int>(real_field()->real_embeddings().size());
}

const TRGram& HermitianSpace::tr_gram() const {
    if (is_cm()) throw InputError("space is over a CM field");
    return std::get<TRGram>(gram_);
}

const CMGram& HermitianSpace::cm_gram() const {
    if (!is_cm()) throw InputError("space is over a totally real field");
    return std::get<CMGram>(gram_);
}

QuadraticSpace HermitianSpace::trace_form() const {
    // basis e_i * u_j, grouped by j; entry = tr(e_i conj(e_i') Phi(u_j, u_j'))
    if (!is_cm()) {
        const FieldPtr& f = tr_field();
        const TRGram& g = tr_gram();
        int n = f->degree();
        int dim = m_ * n;
        QMatrix b(static_cast<size_t>(dim), std::vector<Rational>(static_cast<size_t>(dim)));
        FieldElement gen = f->generator();
        std::vector<FieldElement> basis{f->one()};
        for (int i = 1; i < n; ++i) basis.push_back(basis.back() * gen);
        for (int j = 0; j < m_; ++j)
            for (int jp = 0; jp < m_; ++jp)
                for (int i = 0; i < n; ++i)
                    for (int ip = 0; ip < n; ++ip) {
                        size_t row = static_cast<size_t>(j * n + i);
                        size_t col = static_cast<size_t>(jp * n + ip);
                        b[row][col] = trace(basis[static_cast<size_t>(i)] *
                                            basis[static_cast<size_t>(ip)] *
                                            g[static_cast<size_t>(j)][static_cast<size_t>(jp)]);
                    }
        return QuadraticSpace(std::move(b));
    }
    const CMFieldPtr& f = cm_field();
    const CMGram& g = cm_gram();
    int s = f->s();
    int n = 2 * s;
    int dim = m_ * n;
    FieldElement gen = f->base()->generator();
    std::vector<FieldElement> pw{f->base()->one()};
    for (int i = 1; i < s; ++i) pw.push_back(pw.back() * gen);
    std::vector<CMElement> basis;
    for (int i = 0; i < s; ++i) basis.push_back(f->from_base(pw[static_cast<size_t>(i)]));
    for (int i = 0; i < s; ++i)
        basis.push_back(f->element(f->base()->zero(), pw[static_cast<size_t>(i)]));
    QMatrix b(static_cast<size_t>(dim), std::vector<Rational>(static_cast<size_t>(dim)));
    for (int j = 0; j < m_; ++j)
        for (int jp = 0; jp < m_; ++jp)
            for (int i = 0; i < n; ++i)
                for (int ip = 0; ip < n; ++ip) {
                    size_t row = static_cast<size_t>(j * n + i);
                    size_t col = static_cast<size_t>(jp * n + ip);
                    CMElement prod = f->mul(
                        f->mul(basis[static_cast<size_t>(i)],
                               f->conjugate(basis[static_cast<size_t>(ip)])),
                        g[static_cast<size_t>(j)][static_cast<size_t>(jp)]);
                    b[row][col] = f->trace_q(prod);
                }
    return QuadraticSpace(std::move(b));
}

std::vector<QuadraticSpace> HermitianSpace::trace_form_decomposition() const {
    std::vector<QuadraticSpace> parts;
    if (!is_cm()) {
        const FieldPtr& f = tr_field();
        for (const FieldElement& dj : diag_) parts.push_back(trace_pairing_gram(f, dj));
        return parts;
    }
    const CMFieldPtr& f = cm_field();
    const FieldPtr& e0 = f->base();
    for (const FieldElement& dj : diag_) {
        parts.push_back(scale(trace_pairing_gram(e0, dj), Rational(2)));
        parts.push_back(scale(trace_pairing_gram(e0, -(f->theta_sq() * dj)), Rational(2)));
    }
    return parts;
}

HermitianSpace HermitianSpace::phi_zero() const {
    const CMFieldPtr& f = cm_field();
    const CMGram& g = cm_gram();
    TRGram out(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) {
            CMElement v = f->add(g[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                 g[static_cast<size_t>(j)][static_cast<size_t>(i)]);
            if (!v.theta_part().is_zero())
                throw InternalError("Phi_0 entry has a theta component");
            out[static_cast<size_t>(i)].push_back(v.real_part());
        }
    // make() rejects the degenerate case
    return HermitianSpace::make(f->base(), std::move(out));
}

} // namespace k3
