#include "k3forms/polynomial.hpp"
#include "k3forms/errors.hpp"

#include <algorithm>
#include <cstdint>

namespace k3 {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly({c}); }

Poly Poly::x() { return Poly({Rational(0), Rational(1)}); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Poly::coeff(int i) const {
    static const Rational zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<size_t>(i)];
}

const Rational& Poly::leading() const {
    if (c_.empty()) throw InternalError("leading coefficient of zero polynomial");
    return c_.back();
}

bool Poly::is_monic() const { return !c_.empty() && c_.back() == 1; }

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v = -v;
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator*(const Rational& c) const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v *= c;
    return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divrem(const Poly& divisor) const {
    if (divisor.is_zero()) throw InternalError("polynomial division by zero");
    std::vector<Rational> rem(c_);
    int dd = divisor.degree();
    int dn = degree();
    if (dn < dd) return {Poly(), *this};
    std::vector<Rational> quot(static_cast<size_t>(dn - dd + 1), Rational(0));
    for (int k = dn; k >= dd; --k) {
        Rational q = rem[static_cast<size_t>(k)] / divisor.leading();
        if (q == 0) continue;
        quot[static_cast<size_t>(k - dd)] = q;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<size_t>(k - dd + j)] -= q * divisor.coeff(j);
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(r));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading());
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::pair<Rational, Rational> Poly::eval_interval(const Rational& lo, const Rational& hi) const {
    Rational alo(0), ahi(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        // [alo,ahi] * [lo,hi] + c
        Rational p1 = alo * lo, p2 = alo * hi, p3 = ahi * lo, p4 = ahi * hi;
        Rational mn = std::min(std::min(p1, p2), std::min(p3, p4));
        Rational mx = std::max(std::max(p1, p2), std::max(p3, p4));
        alo = mn + *it;
        ahi = mx + *it;
    }
    return {alo, ahi};
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divrem(b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.monic();
    }
    return a.is_zero() ? a : a.monic();
}

bool is_squarefree(const Poly& p) {
    if (p.degree() <= 0) return !p.is_zero();
    return poly_gcd(p, p.derivative()).degree() == 0;
}

Rational root_bound(const Poly& p) {
    if (p.degree() <= 0) return Rational(1);
    Rational b(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rational a = abs(p.coeff(i) / p.leading());
        if (a > b) b = a;
    }
    return b + 1;
}

SturmChain sturm_chain(const Poly& p) {
    SturmChain ch;
    ch.seq.push_back(p);
    ch.seq.push_back(p.derivative());
    while (!ch.seq.back().is_zero() && ch.seq.back().degree() > 0) {
        Poly r = ch.seq[ch.seq.size() - 2].divrem(ch.seq.back()).second;
        if (r.is_zero()) break;
        ch.seq.push_back((-r).monic() * ((-r).leading() > 0 ? Rational(1) : Rational(-1)));
        // keep the sign of -r but unit-scale the magnitude
    }
    return ch;
}

int SturmChain::variations_at(const Rational& x) const {
    int var = 0, last = 0;
    for (const Poly& f : seq) {
        if (f.is_zero()) continue;
        int s = sgn(f.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const {
    return variations_at(a) - variations_at(b);
}

int count_real_roots(const Poly& p) {
    if (p.degree() <= 0) return 0;
    Rational b = root_bound(p);
    return sturm_chain(p).count_roots(-b, b);
}

// ---------------------------------------------------------------------------
// mod-p machinery (small primes, coefficients in uint64)

namespace {

using ModPoly = std::vector<std::uint64_t>;

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    // Fermat
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

void mp_trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    // reduce mod f (f monic)
    while (r.size() >= f.size()) {
        std::uint64_t c = r.back();
        size_t off = r.size() - f.size();
        if (c != 0)
            for (size_t j = 0; j < f.size(); ++j)
                r[off + j] = (r[off + j] + (p - c) * f[j]) % p;
        r.pop_back();
    }
    mp_trim(r);
    return r;
}

ModPoly mp_powmod(ModPoly base, std::uint64_t e, const ModPoly& f, std::uint64_t p) {
    ModPoly r{1};
    while (e) {
        if (e & 1) r = mp_mulmod(r, base, f, p);
        base = mp_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

ModPoly mp_monic(ModPoly f, std::uint64_t p) {
    mp_trim(f);
    if (f.empty() || f.back() == 1) return f;
    std::uint64_t inv = mod_inv(f.back(), p);
    for (auto& c : f) c = c * inv % p;
    return f;
}

ModPoly mp_rem(ModPoly a, const ModPoly& f, std::uint64_t p) {
    // f monic
    while (a.size() >= f.size()) {
        std::uint64_t c = a.back();
        size_t off = a.size() - f.size();
        if (c != 0)
            for (size_t j = 0; j < f.size(); ++j) a[off + j] = (a[off + j] + (p - c) * f[j]) % p;
        a.pop_back();
    }
    mp_trim(a);
    return a;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
    a = mp_monic(std::move(a), p);
    b = mp_monic(std::move(b), p);
    while (!b.empty()) {
        ModPoly r = mp_rem(a, b, p);
        a = std::move(b);
        b = mp_monic(std::move(r), p);
    }
    return a;
}

ModPoly mp_derivative(const ModPoly& f, std::uint64_t p) {
    if (f.size() <= 1) return {};
    ModPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * (i % p) % p;
    mp_trim(r);
    return r;
}

std::pair<ModPoly, ModPoly> mp_divrem(ModPoly a, const ModPoly& f, std::uint64_t p) {
    // f monic
    if (a.size() < f.size()) return {{}, a};
    ModPoly q(a.size() - f.size() + 1, 0);
    while (a.size() >= f.size()) {
        std::uint64_t c = a.back();
        size_t off = a.size() - f.size();
        q[off] = c;
        if (c != 0)
            for (size_t j = 0; j < f.size(); ++j) a[off + j] = (a[off + j] + (p - c) * f[j]) % p;
        a.pop_back();
    }
    mp_trim(a);
    mp_trim(q);
    return {q, a};
}

} // namespace

std::optional<std::vector<int>> factor_degrees_mod_p(const Poly& p, unsigned long q) {
    if (p.degree() < 1) return std::nullopt;
    ModPoly f(static_cast<size_t>(p.degree()) + 1);
    for (int i = 0; i <= p.degree(); ++i) {
        const Rational& c = p.coeff(i);
        Integer den = c.get_den() % static_cast<long>(q);
        if (den == 0) return std::nullopt;
        Integer num = c.get_num() % static_cast<long>(q);
        if (num < 0) num += static_cast<long>(q);
        std::uint64_t dinv = mod_inv(den.get_ui(), q);
        f[static_cast<size_t>(i)] = num.get_ui() * dinv % q;
    }
    mp_trim(f);
    if (static_cast<int>(f.size()) - 1 != p.degree()) return std::nullopt; // lead vanished
    f = mp_monic(std::move(f), q);
    if (mp_gcd(f, mp_derivative(f, q), q).size() > 1) return std::nullopt; // not squarefree mod q

    // distinct-degree factorization
    std::vector<int> degrees;
    ModPoly fstar = f;
    ModPoly h{0, 1}; // x
    int d = 0;
    while (static_cast<int>(fstar.size()) - 1 > 0) {
        ++d;
        if (2 * d > static_cast<int>(fstar.size()) - 1) {
            degrees.push_back(static_cast<int>(fstar.size()) - 1);
            break;
        }
        h = mp_powmod(std::move(h), q, fstar, q);
        ModPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] + q - 1) % q; // h - x
        mp_trim(hx);
        ModPoly g = mp_gcd(fstar, hx, q);
        if (g.size() > 1) {
            int gd = static_cast<int>(g.size()) - 1;
            for (int k = 0; k < gd / d; ++k) degrees.push_back(d);
            fstar = mp_divrem(std::move(fstar), g, q).first;
            h = mp_rem(std::move(h), fstar, q);
        }
    }
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

bool certify_irreducible(const Poly& p) {
    int n = p.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    static const unsigned long primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                           37, 41, 43, 47, 53, 59, 61, 67, 71, 73};
    std::uint64_t possible = (std::uint64_t(1) << (n + 1)) - 1; // degrees 0..n all possible
    int used = 0;
    for (unsigned long q : primes) {
        auto degs = factor_degrees_mod_p(p, q);
        if (!degs) continue;
        // subset sums of the factor degrees mod q
        std::uint64_t sums = 1;
        for (int d : *degs) sums |= sums << d;
        possible &= sums;
        ++used;
        std::uint64_t proper = possible & ~((std::uint64_t(1)) | (std::uint64_t(1) << n));
        if (proper == 0) return true;
        if (used >= 8) break;
    }
    return false;
}

} // namespace k3
