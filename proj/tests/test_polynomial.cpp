#include "doctest.h"

#include "k3forms/errors.hpp"
#include "k3forms/polynomial.hpp"

using namespace k3;

namespace {
Poly make(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return Poly(std::move(c));
}
} // namespace

TEST_CASE("arithmetic and division") {
    Poly p = make({-2, 0, 1}); // x^2 - 2
    Poly q = make({1, 1});     // x + 1
    CHECK((p * q).degree() == 3);
    auto [quo, rem] = p.divrem(q);
    CHECK(quo == make({-1, 1}));
    CHECK(rem == make({-1}));
    CHECK(p.eval(Rational(3)) == 7);
}

TEST_CASE("gcd and squarefreeness") {
    Poly p = make({-2, 0, 1});
    CHECK(is_squarefree(p));
    Poly sq = p * p;
    CHECK(!is_squarefree(sq));
    CHECK(poly_gcd(sq, sq.derivative()).degree() == 2);
    CHECK(poly_gcd(p, make({1, 1})) == make({1}));
}

TEST_CASE("real root counts by Sturm chains") {
    // hand-checkable counts
    CHECK(count_real_roots(make({-2, 0, 1})) == 2);     // x^2 - 2
    CHECK(count_real_roots(make({1, 0, 1})) == 0);      // x^2 + 1
    CHECK(count_real_roots(make({-1, -1, 0, 1})) == 1); // x^3 - x - 1
    CHECK(count_real_roots(make({-1, -1, 0, 0, 1})) == 2); // x^4 - x - 1
    CHECK(count_real_roots(make({-1, -3, 0, 1})) == 3); // x^3 - 3x - 1, totally real
    CHECK(count_real_roots(make({5, 0, -5, 0, 1})) == 4); // x^4 - 5x^2 + 5, totally real

    SturmChain chain = sturm_chain(make({-2, 0, 1}));
    CHECK(chain.count_roots(Rational(0), Rational(2)) == 1);
    CHECK(chain.count_roots(Rational(-2), Rational(0)) == 1);
    CHECK(chain.count_roots(Rational(2), Rational(3)) == 0);
}

TEST_CASE("root bound contains all roots") {
    Poly p = make({-1, -3, 0, 1});
    Rational b = root_bound(p);
    SturmChain chain = sturm_chain(p);
    CHECK(chain.count_roots(-b, b) == 3);
}

TEST_CASE("interval evaluation encloses the range") {
    Poly p = make({-2, 0, 1});
    auto [lo, hi] = p.eval_interval(Rational(1), Rational(2));
    CHECK(lo <= -1);
    CHECK(hi >= 2);
    auto [plo, phi] = p.eval_interval(Rational(3), Rational(4));
    CHECK(plo > 0); // definitely positive away from the roots
    (void)phi;
}

TEST_CASE("mod-p factor degree patterns") {
    // x^2 + 1 mod 3 is irreducible
    auto d = factor_degrees_mod_p(make({1, 0, 1}), 3);
    REQUIRE(d.has_value());
    CHECK(*d == std::vector<int>{2});
    // x^2 - 1 mod 5 splits
    auto e = factor_degrees_mod_p(make({-1, 0, 1}), 5);
    REQUIRE(e.has_value());
    CHECK(*e == std::vector<int>({1, 1}));
}

TEST_CASE("irreducibility certificates") {
    CHECK(certify_irreducible(make({-2, 0, 1})));
    CHECK(certify_irreducible(make({-1, -1, 0, 1})));
    CHECK(certify_irreducible(make({1, 0, 1})));
    // reducible inputs never get a certificate
    CHECK(!certify_irreducible(make({-1, 0, 1})));      // (x-1)(x+1)
    CHECK(!certify_irreducible(make({2, 3, 1})));       // (x+1)(x+2)
}
