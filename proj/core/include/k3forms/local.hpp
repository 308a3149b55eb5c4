#pragma once

#include "k3forms/rational.hpp"

#include <map>
#include <vector>

namespace k3 {

// A place of Q: a finite prime or the real place.
class Place {
public:
    static Place infinity() { return Place(); }
    // Certifies primality by trial division; throws InputError otherwise.
    static Place finite(const Integer& p);
    // For primes certified elsewhere (e.g. produced by factor()).
    static Place finite_trusted(Integer p) { return Place(std::move(p)); }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }
    const Integer& prime() const;

    bool operator==(const Place& o) const { return infinite_ == o.infinite_ && p_ == o.p_; }
    bool operator<(const Place& o) const;

    std::string str() const;

private:
    Place() : infinite_(true), p_(0) {}
    explicit Place(Integer p) : infinite_(false), p_(std::move(p)) {}
    bool infinite_;
    Integer p_;
};

// Element of Q*/(Q*)^2, represented by its unique squarefree integer.
class SquareClass {
public:
    explicit SquareClass(Integer squarefree_rep);
    struct Trusted {};
    SquareClass(Integer squarefree_rep, Trusted) : rep_(std::move(squarefree_rep)) {}
    const Integer& representative() const { return rep_; }
    bool operator==(const SquareClass& o) const { return rep_ == o.rep_; }
    bool operator!=(const SquareClass& o) const { return rep_ != o.rep_; }

    SquareClass operator*(const SquareClass& o) const;
    bool is_trivial() const { return rep_ == 1; }

    Rational as_rational() const { return Rational(rep_); }

private:
    Integer rep_;
};

// Prime factorization (prime -> exponent) of a nonzero integer, sign dropped.
// Trial division up to 10^5 followed by Pollard-Brent rho; throws
// InternalError if a composite cofactor resists splitting.
std::map<Integer, unsigned> factor(const Integer& n);

// v with q = p^v * (p-unit).
long padic_valuation(const Rational& q, const Place& p);

// Squareness in the completion Q_v.
bool is_square_local(const Rational& q, const Place& v);

// Hilbert symbol (a,b)_v in {+1,-1}, closed-form residue formulas.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

SquareClass square_class(const Rational& q);

// Finite places at which any of the given nonzero rationals could fail to be
// a unit, together with 2.
std::vector<Place> support_primes(const std::vector<Rational>& values);

} // namespace k3
