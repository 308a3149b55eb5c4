#include "k3forms/quadratic.hpp"
#include "k3forms/errors.hpp"

#include <set>

namespace k3 {

HasseProfile::HasseProfile(std::map<Integer, int> values) {
    for (auto& [p, v] : values) {
        if (v != 1 && v != -1) throw InputError("Hasse invariant must be +-1");
        if (v == -1) values_.emplace(p, -1);
    }
}

int HasseProfile::at(const Place& p) const {
    if (p.is_infinite()) throw InputError("HasseProfile covers finite places only");
    auto it = values_.find(p.prime());
    return it == values_.end() ? 1 : -1;
}

bool HasseProfile::operator==(const HasseProfile& o) const { return values_ == o.values_; }

std::vector<Rational> diagonalize(const QMatrix& gram) {
    if (!qmat_is_symmetric(gram)) throw InputError("Gram matrix must be symmetric");
    QMatrix g = gram;
    size_t n = g.size();
    std::vector<Rational> d;
    d.reserve(n);
    for (size_t k = 0; k < n; ++k) {
        if (g[k][k] == 0) {
            // prefer swapping in a nonzero diagonal entry
            size_t j = k + 1;
            while (j < n && g[j][j] == 0) ++j;
            if (j < n) {
                std::swap(g[k], g[j]);
                for (size_t r = 0; r < n; ++r) std::swap(g[r][k], g[r][j]);
            } else {
                // all-zero remaining diagonal: u_k <- u_k + u_j with g[k][j] != 0
                j = k + 1;
                while (j < n && g[k][j] == 0) ++j;
                if (j == n) throw InputError("degenerate Gram matrix");
                for (size_t c = 0; c < n; ++c) g[k][c] += g[j][c];
                for (size_t r = 0; r < n; ++r) g[r][k] += g[r][j];
            }
        }
        const Rational pivot = g[k][k];
        for (size_t r = k + 1; r < n; ++r) {
            if (g[r][k] == 0) continue;
            Rational f = g[r][k] / pivot;
            for (size_t c = k; c < n; ++c) g[r][c] -= f * g[k][c];
            for (size_t c = k; c < n; ++c) g[c][r] = g[r][c];
        }
        d.push_back(pivot);
    }
    return d;
}

int hasse_of_diagonal(const std::vector<Rational>& diag, const Place& p) {
    int h = 1;
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j)
            h *= hilbert_symbol(diag[i], diag[j], p);
    return h;
}

QuadraticSpace::QuadraticSpace(QMatrix gram)
    : gram_(std::move(gram)), diag_(diagonalize(gram_)), sig_(), disc_(Integer(1), SquareClass::Trusted{}) {
    Rational det_class(1);
    for (const Rational& v : diag_) {
        if (v > 0)
            ++sig_.plus;
        else
            ++sig_.minus;
        det_class *= v;
    }
    disc_ = square_class(det_class);
    std::map<Integer, int> h;
    for (const Place& p : support_primes(diag_)) {
        int e = hasse_of_diagonal(diag_, p);
        if (e == -1) h.emplace(p.prime(), -1);
    }
    hasse_ = HasseProfile(std::move(h));
}

std::vector<Place> relevant_primes(const std::vector<const QuadraticSpace*>& spaces) {
    std::vector<Rational> vals;
    for (const QuadraticSpace* s : spaces)
        vals.insert(vals.end(), s->diagonal().begin(), s->diagonal().end());
    return support_primes(vals);
}

bool invariants_realizable(int rank, Signature sig, const SquareClass& disc,
                           const HasseProfile& hasse) {
    if (rank < 0 || sig.plus < 0 || sig.minus < 0 || sig.rank() != rank)
        throw InputError("inconsistent rank/signature");
    if (rank == 0) return disc.is_trivial() && hasse.support().empty();
    // sign of the discriminant is forced by the signature
    int want = (sig.minus % 2 == 0) ? 1 : -1;
    if (sgn(disc.representative()) != want) return false;
    // global product formula with the signature-forced infinite invariant
    int eps_inf = ((sig.minus * (sig.minus - 1) / 2) % 2 == 0) ? 1 : -1;
    int prod = eps_inf;
    for (const auto& [p, v] : hasse.support()) prod *= v;
    if (prod != 1) return false;
    if (rank == 1 && !hasse.support().empty()) return false;
    if (rank == 2) {
        Rational minus_disc = -Rational(disc.representative());
        for (const auto& [p, v] : hasse.support()) {
            // stored entries are exactly the -1 values
            if (is_square_local(minus_disc, Place::finite_trusted(p))) return false;
        }
    }
    return true;
}

bool witt_embeds(const QuadraticSpace& m, const QuadraticSpace& n) {
    const Signature& sm = m.signature();
    const Signature& sn = n.signature();
    if (sm.plus > sn.plus || sm.minus > sn.minus) return false;

    Rational dm(m.disc().representative());
    Rational dn(n.disc().representative());
    int want_inf = ((sm.minus * (sn.minus + 1)) % 2 == 0) ? 1 : -1;
    if (hilbert_symbol(dm, -dn, Place::infinity()) != want_inf) return false;

    int diff = n.rank() - m.rank();
    if (diff == 0) {
        // exact-rank case: embedding is an isometry
        return m.disc() == n.disc() && m.hasse() == n.hasse();
    }
    if (diff == 1) {
        for (const Place& p : relevant_primes({&m, &n}))
            if (n.hasse_invariant(p) * m.hasse_invariant(p) != hilbert_symbol(dm, -dn, p))
                return false;
    } else if (diff == 2) {
        for (const Place& p : relevant_primes({&m, &n})) {
            if (!is_square_local(-dn * dm, p)) continue;
            if (n.hasse_invariant(p) * m.hasse_invariant(p) != hilbert_symbol(dm, Rational(-1), p))
                return false;
        }
    }
    return true;
}

bool embeds_into_lambda_q(const QuadraticSpace& m) {
    if (m.signature().plus != 2)
        throw InputError("embeds_into_lambda_q requires signature (2,t)");
    int t = m.signature().minus;
    if (t > 19) return false;
    if (t < 18) return true;
    QuadraticSpace lambda = lambda_space();
    Rational dm(m.disc().representative());
    for (const Place& p : relevant_primes({&m, &lambda})) {
        int eps_lambda = (p.prime() == 2) ? -1 : 1; // (-1)^(p-1)
        if (t == 19) {
            if (m.hasse_invariant(p) != eps_lambda) return false;
        } else { // t == 18
            if (is_square_local(dm, p) && m.hasse_invariant(p) != eps_lambda) return false;
        }
    }
    return true;
}

QuadraticSpace e8_minus() {
    // Bourbaki E8 diagram: chain 1-3-4-5-6-7-8, node 2 attached to 4.
    static const int adj[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    QMatrix g(8, std::vector<Rational>(8, Rational(0)));
    for (int i = 0; i < 8; ++i) g[i][i] = -2;
    for (auto& e : adj) {
        g[e[0] - 1][e[1] - 1] = 1;
        g[e[1] - 1][e[0] - 1] = 1;
    }
    return QuadraticSpace(std::move(g));
}

QuadraticSpace hyperbolic_u() {
    QMatrix g{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    return QuadraticSpace(std::move(g));
}

QuadraticSpace diagonal_space(const std::vector<Rational>& d) {
    QMatrix g(d.size(), std::vector<Rational>(d.size(), Rational(0)));
    for (size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
    return QuadraticSpace(std::move(g));
}

QuadraticSpace direct_sum(const QuadraticSpace& a, const QuadraticSpace& b) {
    size_t n = a.gram().size(), m = b.gram().size();
    QMatrix g(n + m, std::vector<Rational>(n + m, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g[i][j] = a.gram()[i][j];
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram()[i][j];
    return QuadraticSpace(std::move(g));
}

QuadraticSpace scale(const QuadraticSpace& w, const Rational& c) {
    if (c == 0) throw InputError("scale by zero");
    QMatrix g = w.gram();
    for (auto& row : g)
        for (auto& v : row) v *= c;
    return QuadraticSpace(std::move(g));
}

QuadraticSpace lambda_space() {
    QuadraticSpace s = direct_sum(e8_minus(), e8_minus());
    s = direct_sum(s, hyperbolic_u());
    s = direct_sum(s, hyperbolic_u());
    return direct_sum(s, hyperbolic_u());
}

} // namespace k3
