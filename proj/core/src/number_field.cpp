#include "k3forms/number_field.hpp"
#include "k3forms/errors.hpp"

#include <algorithm>

namespace k3 {

namespace {

void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field() && !(a.field()->minpoly() == b.field()->minpoly()))
        throw InputError("elements of different fields");
}

// All rational roots of a polynomial with rational coefficients.
std::vector<Rational> rational_roots(const Poly& f) {
    std::vector<Rational> roots;
    if (f.degree() < 1) return roots;
    // clear denominators
    Integer lcm = 1;
    for (const Rational& c : f.coeffs()) lcm = lcm / gcd(lcm, c.get_den()) * c.get_den();
    std::vector<Integer> ic;
    for (const Rational& c : f.coeffs()) {
        Rational v = c * Rational(lcm);
        ic.push_back(v.get_num());
    }
    while (!ic.empty() && ic.front() == 0) {
        roots.push_back(Rational(0));
        ic.erase(ic.begin());
        break; // squarefree input: 0 appears at most once
    }
    if (ic.size() < 2) return roots;
    auto divisors = [](const Integer& n) {
        std::vector<Integer> divs{Integer(1)};
        for (const auto& [p, e] : factor(n)) {
            size_t sz = divs.size();
            Integer pk = 1;
            for (unsigned k = 1; k <= e; ++k) {
                pk *= p;
                for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
            }
            if (divs.size() > 4096) return std::vector<Integer>{}; // give up
        }
        return divs;
    };
    std::vector<Integer> ps = divisors(ic.front());
    std::vector<Integer> qs = divisors(ic.back());
    if (ps.empty() || qs.empty()) return roots;
    for (const Integer& p : ps)
        for (const Integer& q : qs)
            for (int s : {1, -1}) {
                Rational cand(s * p, q);
                cand.canonicalize();
                if (f.eval(cand) == 0) roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

void isolate_roots(const SturmChain& chain, const Poly& f, const Rational& a, const Rational& b,
                   std::vector<RealEmbedding>& out) {
    int n = chain.count_roots(a, b);
    if (n == 0) return;
    if (n == 1) {
        out.emplace_back(f, a, b);
        return;
    }
    Rational mid = (a + b) / 2;
    if (f.eval(mid) == 0) {
        out.emplace_back(f, mid, mid);
        Rational eps = (b - a) / 8;
        while (f.eval(mid - eps) == 0 || f.eval(mid + eps) == 0 ||
               chain.count_roots(mid - eps, mid + eps) != 1)
            eps /= 2;
        isolate_roots(chain, f, a, mid - eps, out);
        isolate_roots(chain, f, mid + eps, b, out);
        return;
    }
    isolate_roots(chain, f, a, mid, out);
    isolate_roots(chain, f, mid, b, out);
}

} // namespace

// ---------------------------------------------------------------------------
// RealEmbedding

RealEmbedding::RealEmbedding(Poly minpoly, Rational lo, Rational hi)
    : minpoly_(std::move(minpoly)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw InternalError("inverted root interval");
    if (lo_ == hi_) {
        if (minpoly_.eval(lo_) != 0) throw InternalError("point interval misses root");
    } else if (sgn(minpoly_.eval(lo_)) * sgn(minpoly_.eval(hi_)) >= 0) {
        throw InternalError("root interval without sign change");
    }
}

RealEmbedding RealEmbedding::bisected() const {
    if (is_point()) return *this;
    Rational mid = midpoint();
    Rational fm = minpoly_.eval(mid);
    if (fm == 0) return RealEmbedding(minpoly_, mid, mid);
    if (sgn(minpoly_.eval(lo_)) * sgn(fm) < 0) return RealEmbedding(minpoly_, lo_, mid);
    return RealEmbedding(minpoly_, mid, hi_);
}

RealEmbedding RealEmbedding::refined_to(const Rational& width) const {
    RealEmbedding e = *this;
    while (!e.is_point() && e.hi_ - e.lo_ > width) e = e.bisected();
    return e;
}

double RealEmbedding::approx() const {
    Rational w(Integer(1), Integer(1) << 64);
    return to_double(refined_to(w).midpoint());
}

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(Poly minpoly) : minpoly_(std::move(minpoly)) {
    if (minpoly_.degree() < 1) throw InputError("minimal polynomial must have degree >= 1");
    if (!minpoly_.is_monic()) throw InputError("minimal polynomial must be monic");
    if (!is_squarefree(minpoly_)) throw InputError("minimal polynomial must be squarefree");
    if (minpoly_.degree() > 1) {
        if (!rational_roots(minpoly_).empty())
            throw InputError("minimal polynomial has a rational root: not irreducible");
        certified_ = certify_irreducible(minpoly_);
    } else {
        certified_ = true;
    }

    SturmChain chain = sturm_chain(minpoly_);
    Rational b = root_bound(minpoly_);
    isolate_roots(chain, minpoly_, -b, b, embeddings_);
    std::sort(embeddings_.begin(), embeddings_.end(),
              [](const RealEmbedding& x, const RealEmbedding& y) {
                  return x.midpoint() < y.midpoint();
              });
    kind_ = (static_cast<int>(embeddings_.size()) == degree()) ? FieldKind::TotallyReal
                                                               : FieldKind::Generic;

    // Newton identities for the traces of the power basis.
    int n = degree();
    power_traces_.assign(static_cast<size_t>(n), Rational(0));
    power_traces_[0] = n;
    for (int k = 1; k < n; ++k) {
        Rational pk = -Rational(k) * minpoly_.coeff(n - k);
        for (int i = 1; i < k; ++i) pk -= minpoly_.coeff(n - i) * power_traces_[static_cast<size_t>(k - i)];
        power_traces_[static_cast<size_t>(k)] = pk;
    }
}

FieldPtr NumberField::make(Poly minpoly) {
    return FieldPtr(new NumberField(std::move(minpoly)));
}

FieldElement NumberField::element(std::vector<Rational> coeffs) const {
    return FieldElement(shared_from_this(), std::move(coeffs));
}

FieldElement NumberField::from_rational(const Rational& c) const {
    std::vector<Rational> v(static_cast<size_t>(degree()), Rational(0));
    v[0] = c;
    return element(std::move(v));
}

FieldElement NumberField::generator() const {
    std::vector<Rational> v(static_cast<size_t>(degree()), Rational(0));
    if (degree() == 1) {
        v[0] = -minpoly_.coeff(0); // x - c: the generator is the rational root
    } else {
        v[1] = 1;
    }
    return element(std::move(v));
}

FieldElement NumberField::zero() const { return from_rational(Rational(0)); }
FieldElement NumberField::one() const { return from_rational(Rational(1)); }

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != field_->degree())
        throw InputError("coefficient vector length must equal the field degree");
}

Poly FieldElement::as_poly() const { return Poly(coeffs_); }

bool FieldElement::is_zero() const {
    for (const Rational& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational FieldElement::rational_value() const {
    if (!is_rational()) throw InputError("element is not rational");
    return coeffs_[0];
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same_field(*this, o);
    std::vector<Rational> v(coeffs_);
    for (size_t i = 0; i < v.size(); ++i) v[i] += o.coeffs_[i];
    return FieldElement(field_, std::move(v));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator-() const {
    std::vector<Rational> v(coeffs_);
    for (auto& c : v) c = -c;
    return FieldElement(field_, std::move(v));
}

FieldElement FieldElement::operator*(const Rational& c) const {
    std::vector<Rational> v(coeffs_);
    for (auto& x : v) x *= c;
    return FieldElement(field_, std::move(v));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_field(*this, o);
    Poly prod = as_poly() * o.as_poly();
    Poly rem = prod.divrem(field_->minpoly()).second;
    std::vector<Rational> v(static_cast<size_t>(field_->degree()), Rational(0));
    for (int i = 0; i <= rem.degree(); ++i) v[static_cast<size_t>(i)] = rem.coeff(i);
    return FieldElement(field_, std::move(v));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw InputError("inverse of zero");
    // extended Euclid: u*g + v*f = gcd(g, f)
    Poly r0 = field_->minpoly(), r1 = as_poly();
    Poly s0, s1 = Poly::constant(Rational(1)); // coefficients of g
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        Poly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0)
        throw InputError("element is a zero divisor: minimal polynomial is reducible");
    Poly inv = s0 * (Rational(1) / r0.coeff(0));
    inv = inv.divrem(field_->minpoly()).second;
    std::vector<Rational> v(static_cast<size_t>(field_->degree()), Rational(0));
    for (int i = 0; i <= inv.degree(); ++i) v[static_cast<size_t>(i)] = inv.coeff(i);
    return FieldElement(field_, std::move(v));
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_->minpoly() == o.field_->minpoly() && coeffs_ == o.coeffs_;
}

Rational trace(const FieldElement& a) {
    Rational t(0);
    for (size_t k = 0; k < a.coeffs_.size(); ++k)
        t += a.coeffs_[k] * a.field_->power_trace(static_cast<int>(k));
    return t;
}

Rational norm(const FieldElement& a) {
    int n = a.field_->degree();
    QMatrix m(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    FieldElement cur = a;
    FieldElement gen = a.field_->generator();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = cur.coeffs()[static_cast<size_t>(j)];
        if (i + 1 < n) cur = cur * gen;
    }
    return qmat_det(std::move(m));
}

int sign_at(const FieldElement& a, const RealEmbedding& sigma) {
    if (a.is_zero()) throw InputError("sign_at(0)");
    if (!(a.field_->minpoly() == sigma.minpoly()))
        throw InputError("embedding belongs to a different field");
    Poly g = a.as_poly();
    if (sigma.is_point()) {
        int s = sgn(g.eval(sigma.lo()));
        if (s == 0) throw InputError("element vanishes at a rational root of the minimal polynomial");
        return s;
    }
    if (!a.field_->irreducibility_certified()) {
        Poly h = poly_gcd(g, a.field_->minpoly());
        if (h.degree() > 0 && sturm_chain(h).count_roots(sigma.lo(), sigma.hi()) > 0)
            throw InputError("element vanishes at the embedding: minimal polynomial is reducible");
    }
    RealEmbedding e = sigma;
    for (;;) {
        if (e.is_point()) {
            int s = sgn(g.eval(e.lo()));
            if (s == 0) throw InputError("element vanishes at the embedding");
            return s;
        }
        auto [lo, hi] = g.eval_interval(e.lo(), e.hi());
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        e = e.bisected();
    }
}

double approx_at(const FieldElement& a, const RealEmbedding& sigma) {
    Rational w(Integer(1), Integer(1) << 96);
    RealEmbedding e = sigma.refined_to(w);
    auto [lo, hi] = Poly(a.coeffs()).eval_interval(e.lo(), e.hi());
    return to_double((lo + hi) / 2);
}

QuadraticSpace trace_pairing_gram(const FieldPtr& f, const FieldElement& a) {
    if (!f->is_totally_real()) throw InputError("trace pairing requires a totally real field");
    if (a.is_zero()) throw InputError("trace pairing with a = 0");
    int n = f->degree();
    // powers alpha^k * a for k = 0 .. 2n-2
    std::vector<FieldElement> pw;
    pw.reserve(static_cast<size_t>(2 * n - 1));
    pw.push_back(a);
    FieldElement gen = f->generator();
    for (int k = 1; k <= 2 * n - 2; ++k) pw.push_back(pw.back() * gen);
    QMatrix g(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g[static_cast<size_t>(i)][static_cast<size_t>(j)] = trace(pw[static_cast<size_t>(i + j)]);
    return QuadraticSpace(std::move(g));
}

// ---------------------------------------------------------------------------
// CMField

CMField::CMField(FieldPtr base, FieldElement theta_sq)
    : base_(std::move(base)), theta_sq_(std::move(theta_sq)) {}

CMFieldPtr CMField::make(FieldPtr base, FieldElement theta_sq) {
    if (!base->is_totally_real()) throw InputError("CM base field must be totally real");
    if (theta_sq.is_zero()) throw InputError("theta^2 must be nonzero");
    for (const RealEmbedding& s : base->real_embeddings())
        if (sign_at(theta_sq, s) >= 0)
            throw InputError("theta^2 must be totally negative");
    return CMFieldPtr(new CMField(std::move(base), std::move(theta_sq)));
}

CMElement CMField::element(FieldElement a, FieldElement b) const {
    return CMElement(std::move(a), std::move(b));
}

CMElement CMField::from_coeffs(const std::vector<Rational>& coeffs) const {
    size_t n = static_cast<size_t>(base_->degree());
    if (coeffs.size() != 2 * n)
        throw InputError("CM element needs 2s coefficients");
    std::vector<Rational> a(coeffs.begin(), coeffs.begin() + static_cast<long>(n));
    std::vector<Rational> b(coeffs.begin() + static_cast<long>(n), coeffs.end());
    return CMElement(base_->element(std::move(a)), base_->element(std::move(b)));
}

CMElement CMField::from_base(FieldElement a) const {
    return CMElement(std::move(a), base_->zero());
}

CMElement CMField::zero() const { return from_base(base_->zero()); }
CMElement CMField::one() const { return from_base(base_->one()); }
CMElement CMField::theta() const { return CMElement(base_->zero(), base_->one()); }

CMElement CMField::add(const CMElement& x, const CMElement& y) const {
    return CMElement(x.real_part() + y.real_part(), x.theta_part() + y.theta_part());
}

CMElement CMField::sub(const CMElement& x, const CMElement& y) const {
    return CMElement(x.real_part() - y.real_part(), x.theta_part() - y.theta_part());
}

CMElement CMField::neg(const CMElement& x) const {
    return CMElement(-x.real_part(), -x.theta_part());
}

CMElement CMField::mul(const CMElement& x, const CMElement& y) const {
    // (a1 + theta b1)(a2 + theta b2) = (a1 a2 + t b1 b2) + theta (a1 b2 + b1 a2)
    FieldElement a = x.real_part() * y.real_part() + theta_sq_ * (x.theta_part() * y.theta_part());
    FieldElement b = x.real_part() * y.theta_part() + x.theta_part() * y.real_part();
    return CMElement(std::move(a), std::move(b));
}

CMElement CMField::conjugate(const CMElement& x) const {
    return CMElement(x.real_part(), -x.theta_part());
}

CMElement CMField::inverse(const CMElement& x) const {
    if (x.is_zero()) throw InputError("inverse of zero");
    // x * conj(x) = a^2 - t b^2 in E0
    FieldElement nrm = x.real_part() * x.real_part() - theta_sq_ * (x.theta_part() * x.theta_part());
    FieldElement ninv = nrm.inverse();
    return CMElement(x.real_part() * ninv, -(x.theta_part() * ninv));
}

Rational CMField::trace_q(const CMElement& x) const { return 2 * trace(x.real_part()); }

Rational CMField::norm_q(const CMElement& x) const {
    FieldElement nrm = x.real_part() * x.real_part() - theta_sq_ * (x.theta_part() * x.theta_part());
    return norm(nrm);
}

} // namespace k3
