#pragma once

#include "k3forms/local.hpp"
#include "k3forms/qmatrix.hpp"

#include <map>
#include <utility>
#include <vector>

namespace k3 {

// Hasse invariants over a finite set of primes; +1 everywhere else.
class HasseProfile {
public:
    HasseProfile() = default;
    explicit HasseProfile(std::map<Integer, int> values);

    int at(const Place& p) const; // +1 outside the stored support
    const std::map<Integer, int>& support() const { return values_; }

    bool operator==(const HasseProfile& o) const;

private:
    std::map<Integer, int> values_; // only -1 entries are kept
};

struct Signature {
    int plus = 0;
    int minus = 0;
    bool operator==(const Signature& o) const { return plus == o.plus && minus == o.minus; }
    int rank() const { return plus + minus; }
};

// Nondegenerate symmetric bilinear space over Q with eagerly cached
// diagonalization and invariants.
class QuadraticSpace {
public:
    explicit QuadraticSpace(QMatrix gram);

    int rank() const { return static_cast<int>(diag_.size()); }
    const QMatrix& gram() const { return gram_; }
    const std::vector<Rational>& diagonal() const { return diag_; }
    const Signature& signature() const { return sig_; }
    const SquareClass& disc() const { return disc_; }
    const HasseProfile& hasse() const { return hasse_; }
    int hasse_invariant(const Place& p) const { return hasse_.at(p); }

private:
    QMatrix gram_;
    std::vector<Rational> diag_;
    Signature sig_;
    SquareClass disc_;
    HasseProfile hasse_;
};

// Congruence diagonalization; throws InputError on a degenerate or
// non-symmetric Gram.
std::vector<Rational> diagonalize(const QMatrix& gram);

// Hasse invariant of a diagonal form: product of (d_i, d_j)_p over i < j.
int hasse_of_diagonal(const std::vector<Rational>& diag, const Place& p);

// {2} together with every prime dividing a diagonal entry of some input.
std::vector<Place> relevant_primes(const std::vector<const QuadraticSpace*>& spaces);

// Existence of a rational quadratic space with the given invariants.
bool invariants_realizable(int rank, Signature sig, const SquareClass& disc,
                           const HasseProfile& hasse);

// Witt-style local-global embedding criterion M -> N.
bool witt_embeds(const QuadraticSpace& m, const QuadraticSpace& n);

// Specialized test against the K3 lattice over Q; requires sign(M) = (2,t).
bool embeds_into_lambda_q(const QuadraticSpace& m);

QuadraticSpace lambda_space();     // E8(-1)^2 + U^3
QuadraticSpace e8_minus();
QuadraticSpace hyperbolic_u();
QuadraticSpace diagonal_space(const std::vector<Rational>& d);
QuadraticSpace direct_sum(const QuadraticSpace& a, const QuadraticSpace& b);
QuadraticSpace scale(const QuadraticSpace& w, const Rational& c);

} // namespace k3
