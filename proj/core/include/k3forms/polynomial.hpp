#pragma once

#include "k3forms/rational.hpp"

#include <optional>
#include <vector>

namespace k3 {

// Dense univariate polynomial over Q, coefficients low-to-high.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly x();

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Rational& coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const;
    bool is_monic() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Rational& c) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    // Euclidean division (denominators allowed).
    std::pair<Poly, Poly> divrem(const Poly& divisor) const;

    Poly derivative() const;
    Poly monic() const;

    Rational eval(const Rational& x) const;
    // Interval Horner: encloses {p(x) : x in [lo,hi]}.
    std::pair<Rational, Rational> eval_interval(const Rational& lo, const Rational& hi) const;

private:
    std::vector<Rational> c_;
    void trim();
};

Poly poly_gcd(Poly a, Poly b); // monic gcd

bool is_squarefree(const Poly& p);

// Cauchy bound: all real roots lie in (-B, B).
Rational root_bound(const Poly& p);

struct SturmChain {
    std::vector<Poly> seq;
    // Number of roots in (a, b]; requires a < b.
    int count_roots(const Rational& a, const Rational& b) const;
    int variations_at(const Rational& x) const;
};

SturmChain sturm_chain(const Poly& p);

int count_real_roots(const Poly& p); // distinct real roots (p squarefree)

// Multiset of degrees of the irreducible factors of p mod q (q a small odd
// prime not dividing lead(p) or disc(p)); nullopt if p mod q is not
// squarefree or q is unusable.
std::optional<std::vector<int>> factor_degrees_mod_p(const Poly& p, unsigned long q);

// Degree-pattern certificate: true when factorizations modulo several small
// primes rule out every proper rational factor degree. False means "no
// certificate found", not "reducible".
bool certify_irreducible(const Poly& p);

} // namespace k3
