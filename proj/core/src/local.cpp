#include "k3forms/local.hpp"
#include "k3forms/errors.hpp"

#include <algorithm>
#include <set>

namespace k3 {

namespace {

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool trial_division_prime(const Integer& n) {
    if (n < 2) return false;
    Integer d = 2;
    while (d * d <= n) {
        if (n % d == 0) return false;
        ++d;
    }
    return true;
}

// Pollard-Brent rho; returns a nontrivial factor of composite odd n, or 0.
Integer pollard_brent(const Integer& n, unsigned long c, unsigned long max_iters) {
    Integer x = 2, y = 2, d = 1, q = 1, ys = y;
    unsigned long r = 1;
    const unsigned long batch = 128;
    auto step = [&](Integer& v) { v = (v * v + c) % n; };
    unsigned long iters = 0;
    while (d == 1 && iters < max_iters) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) step(y);
        unsigned long k = 0;
        while (k < r && d == 1 && iters < max_iters) {
            ys = y;
            unsigned long lim = std::min(batch, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                step(y);
                Integer diff = x - y;
                if (diff < 0) diff = -diff;
                q = (q * diff) % n;
                ++iters;
            }
            d = gcd(q, n);
            k += lim;
        }
        r *= 2;
    }
    if (d == n) {
        // backtrack
        do {
            step(ys);
            Integer diff = x - ys;
            if (diff < 0) diff = -diff;
            d = gcd(diff, n);
        } while (d == 1);
    }
    if (d == 1 || d == n) return 0;
    return d;
}

void factor_rec(Integer n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    // perfect power?
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long e = 2; e <= mpz_sizeinbase(n.get_mpz_t(), 2); ++e) {
            Integer root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
                std::map<Integer, unsigned> sub;
                factor_rec(root, sub);
                for (auto& [p, k] : sub) out[p] += k * static_cast<unsigned>(e);
                return;
            }
        }
    }
    for (unsigned long c = 1; c < 64; ++c) {
        Integer d = pollard_brent(n, c, 50'000'000UL);
        if (d != 0) {
            factor_rec(d, out);
            factor_rec(n / d, out);
            return;
        }
    }
    throw InternalError("factorization gave up on " + n.get_str());
}

// Residue of a v-adic unit a = num/den modulo m (m a power of the prime).
Integer unit_residue(const Rational& a, const Integer& m) {
    Integer num = a.get_num() % m;
    if (num < 0) num += m;
    Integer den = a.get_den() % m;
    Integer dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InternalError("unit_residue: non-unit denominator");
    return (num * dinv) % m;
}

// a = p^v * u with u a p-unit; returns (v, u).
std::pair<long, Rational> split_at(const Rational& a, const Integer& p) {
    long v = 0;
    Integer num = a.get_num(), den = a.get_den();
    while (num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    Rational u(num, den);
    u.canonicalize();
    return {v, u};
}

int legendre_unit(const Rational& u, const Integer& p) {
    Integer r = unit_residue(u, p);
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

} // namespace

Place Place::finite(const Integer& p) {
    if (!trial_division_prime(p))
        throw InputError("not a prime: " + p.get_str());
    return Place(p);
}

const Integer& Place::prime() const {
    if (infinite_) throw InputError("real place has no prime");
    return p_;
}

bool Place::operator<(const Place& o) const {
    if (infinite_ != o.infinite_) return !infinite_; // finite places first
    return p_ < o.p_;
}

std::string Place::str() const { return infinite_ ? "inf" : p_.get_str(); }

SquareClass::SquareClass(Integer rep) : rep_(std::move(rep)) {
    if (rep_ == 0) throw InputError("square class of zero");
    Integer a = abs(rep_);
    for (const auto& [p, e] : factor(a))
        if (e >= 2) throw InputError("square class representative not squarefree");
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
    return square_class(Rational(rep_) * Rational(o.rep_));
}

std::map<Integer, unsigned> factor(const Integer& n) {
    if (n == 0) throw InputError("factor(0)");
    Integer m = abs(n);
    std::map<Integer, unsigned> out;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
        while (m % p == 0) { out[Integer(p)] += 1; m /= p; }
    }
    unsigned long d = 11;
    while (d < 100'000UL && Integer(d) * d <= m) {
        while (m % d == 0) { out[Integer(d)] += 1; m /= d; }
        d += 2;
    }
    if (m > 1) {
        if (Integer(100'000UL) * 100'000UL > m) {
            out[m] += 1; // below trial bound squared, must be prime
        } else {
            factor_rec(m, out);
        }
    }
    return out;
}

long padic_valuation(const Rational& q, const Place& p) {
    if (q == 0) throw InputError("valuation of zero is undefined");
    return split_at(q, p.prime()).first;
}

bool is_square_local(const Rational& q, const Place& v) {
    if (q == 0) throw InputError("is_square_local(0)");
    if (v.is_infinite()) return q > 0;
    const Integer& p = v.prime();
    auto [val, u] = split_at(q, p);
    if (val % 2 != 0) return false;
    if (p == 2) return unit_residue(u, Integer(8)) == 1;
    return legendre_unit(u, p) == 1;
}

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    if (a == 0 || b == 0) throw InputError("hilbert symbol needs nonzero arguments");
    if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
    const Integer& p = v.prime();
    auto [alpha, u] = split_at(a, p);
    auto [beta, w] = split_at(b, p);
    if (p == 2) {
        auto eps = [](const Rational& x) { // (x-1)/2 mod 2 for a 2-adic unit x
            // den odd, den^2 = 1 mod 8, so num*den = num/den mod 8
            Integer r = x.get_num() * x.get_den() % 4;
            if (r < 0) r += 4;
            return (r == 3) ? 1 : 0;
        };
        auto omega = [](const Rational& x) { // (x^2-1)/8 mod 2
            Integer num = x.get_num() % 8, den = x.get_den() % 8;
            if (num < 0) num += 8;
            Integer dinv;
            mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), Integer(8).get_mpz_t());
            Integer r = (num * dinv) % 8;
            return (r == 3 || r == 5) ? 1 : 0;
        };
        long e = static_cast<long>(eps(u)) * eps(w) + alpha * omega(w) + beta * omega(u);
        return (e % 2 != 0) ? -1 : 1;
    }
    // odd p: (-1)^{alpha*beta*(p-1)/2} * (u|p)^beta * (w|p)^alpha
    int r = 1;
    long epsp = ((p - 1) / 2) % 2 != 0 ? 1 : 0;
    if ((alpha % 2) != 0 && (beta % 2) != 0 && epsp) r = -r;
    if (beta % 2 != 0 && legendre_unit(u, p) == -1) r = -r;
    if (alpha % 2 != 0 && legendre_unit(w, p) == -1) r = -r;
    return r;
}

SquareClass square_class(const Rational& q) {
    if (q == 0) throw InputError("square_class(0)");
    // num*den differs from num/den by den^2
    Integer n = q.get_num() * q.get_den();
    Integer rep = (n < 0) ? Integer(-1) : Integer(1);
    for (const auto& [p, e] : factor(n))
        if (e % 2 != 0) rep *= p;
    return SquareClass(rep, SquareClass::Trusted{});
}

std::vector<Place> support_primes(const std::vector<Rational>& values) {
    std::set<Integer> primes{Integer(2)};
    for (const Rational& v : values) {
        if (v == 0) throw InputError("support_primes: zero value");
        for (const auto& [p, e] : factor(v.get_num() * v.get_den())) primes.insert(p);
    }
    std::vector<Place> out;
    for (const Integer& p : primes) out.push_back(Place::finite_trusted(p));
    return out;
}

} // namespace k3
