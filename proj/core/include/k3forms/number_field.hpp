#pragma once

#include "k3forms/polynomial.hpp"
#include "k3forms/quadratic.hpp"

#include <memory>

namespace k3 {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Isolating interval for one real root of a squarefree polynomial. Immutable;
// refinement returns a new, narrower embedding.
class RealEmbedding {
public:
    RealEmbedding(Poly minpoly, Rational lo, Rational hi);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational midpoint() const { return (lo_ + hi_) / 2; }
    bool is_point() const { return lo_ == hi_; }

    RealEmbedding bisected() const;
    // Narrow until hi - lo <= width (or the interval is a point).
    RealEmbedding refined_to(const Rational& width) const;
    double approx() const; // ~64 fractional bits before rounding

    const Poly& minpoly() const { return minpoly_; }

private:
    Poly minpoly_;
    Rational lo_, hi_;
};

enum class FieldKind { TotallyReal, Generic };

class FieldElement;

// E = Q[x]/(f) for a monic squarefree f; irreducibility is certified
// best-effort (degree patterns mod small primes) and recorded.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    static FieldPtr make(Poly minpoly);

    int degree() const { return minpoly_.degree(); }
    const Poly& minpoly() const { return minpoly_; }
    FieldKind kind() const { return kind_; }
    bool is_totally_real() const { return kind_ == FieldKind::TotallyReal; }
    bool irreducibility_certified() const { return certified_; }

    const std::vector<RealEmbedding>& real_embeddings() const { return embeddings_; }

    FieldElement element(std::vector<Rational> coeffs) const;
    FieldElement from_rational(const Rational& c) const;
    FieldElement generator() const;
    FieldElement zero() const;
    FieldElement one() const;

    // trace of alpha^k on the power basis, k < degree
    const Rational& power_trace(int k) const { return power_traces_[static_cast<size_t>(k)]; }

private:
    explicit NumberField(Poly minpoly);
    Poly minpoly_;
    FieldKind kind_;
    bool certified_ = false;
    std::vector<RealEmbedding> embeddings_;
    std::vector<Rational> power_traces_;
};

// Element of a NumberField on the power basis 1, a, ..., a^(n-1).
class FieldElement {
public:
    FieldElement(FieldPtr field, std::vector<Rational> coeffs);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const; // requires all higher coefficients zero

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const Rational& c) const;
    FieldElement inverse() const;
    bool operator==(const FieldElement& o) const;

private:
    FieldPtr field_;
    std::vector<Rational> coeffs_;
    Poly as_poly() const;
    friend Rational trace(const FieldElement&);
    friend Rational norm(const FieldElement&);
    friend int sign_at(const FieldElement&, const RealEmbedding&);
};

Rational trace(const FieldElement& a);
Rational norm(const FieldElement& a);

// Exact sign of the image of a nonzero element under a real embedding.
int sign_at(const FieldElement& a, const RealEmbedding& sigma);

// Numeric image of an element under a real embedding.
double approx_at(const FieldElement& a, const RealEmbedding& sigma);

// Gram of (x,y) -> trace(x*y*a) on the power basis; F totally real, a != 0.
QuadraticSpace trace_pairing_gram(const FieldPtr& f, const FieldElement& a);

// CM field E = E0(theta), theta^2 = t in E0 totally negative. Elements are
// pairs (a, b) = a + theta*b over E0; the involution fixes E0 and negates b.
class CMField;
using CMFieldPtr = std::shared_ptr<const CMField>;

class CMElement {
public:
    CMElement(FieldElement a, FieldElement b) : a_(std::move(a)), b_(std::move(b)) {}
    const FieldElement& real_part() const { return a_; }   // E0 component
    const FieldElement& theta_part() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool operator==(const CMElement& o) const { return a_ == o.a_ && b_ == o.b_; }

private:
    FieldElement a_, b_;
};

class CMField : public std::enable_shared_from_this<CMField> {
public:
    // E0 totally real, t totally negative and nonzero.
    static CMFieldPtr make(FieldPtr base, FieldElement theta_sq);

    const FieldPtr& base() const { return base_; }
    const FieldElement& theta_sq() const { return theta_sq_; }
    int s() const { return base_->degree(); }
    int degree() const { return 2 * base_->degree(); }

    CMElement element(FieldElement a, FieldElement b) const;
    // Coefficient vector of length 2s on the basis {e_i, theta*e_i}.
    CMElement from_coeffs(const std::vector<Rational>& coeffs) const;
    CMElement from_base(FieldElement a) const;
    CMElement zero() const;
    CMElement one() const;
    CMElement theta() const;

    CMElement add(const CMElement& x, const CMElement& y) const;
    CMElement sub(const CMElement& x, const CMElement& y) const;
    CMElement mul(const CMElement& x, const CMElement& y) const;
    CMElement neg(const CMElement& x) const;
    CMElement inverse(const CMElement& x) const;
    CMElement conjugate(const CMElement& x) const;

    Rational trace_q(const CMElement& x) const; // trace E -> Q
    Rational norm_q(const CMElement& x) const;  // norm E -> Q

private:
    CMField(FieldPtr base, FieldElement theta_sq);
    FieldPtr base_;
    FieldElement theta_sq_;
};

} // namespace k3
