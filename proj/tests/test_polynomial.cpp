#include <doctest.h>

#include <random>

#include <cylforge/polynomial.hpp>

using namespace cylforge;

namespace {
    RingPtr plane() { return Ring::make({"x", "y"}, {1, 1}); }

    Poly random_poly(const RingPtr& r, std::mt19937& rng, long maxdeg = 4) {
        Poly p(r);
        long terms = 1 + rng() % 4;
        for (long t = 0; t < terms; ++t) {
            Monomial m(r->nvars(), 0);
            for (auto& e : m) e = rng() % (maxdeg + 1);
            long num = static_cast<long>(rng() % 11) - 5;
            long den = 1 + rng() % 4;
            p += Poly(r, m, make_rational(num, den));
        }
        return p;
    }
} // namespace

TEST_CASE("rational invariants: lowest terms, positive denominator") {
    Rational r = make_rational(4, -6);
    CHECK(rat_num(r) == -2);
    CHECK(rat_den(r) == 3);
    CHECK(parse_rational("-8/7") == make_rational(-8, 7));
    CHECK(to_string(make_rational(21, 2)) == "21/2");
    CHECK(rational_floor(make_rational(-8, 7)) == -2);
    CHECK(fractional_part(make_rational(-8, 7)) == make_rational(6, 7));
    CHECK_THROWS_AS(parse_rational("1/0"), input_error);
}

TEST_CASE("parser handles the input grammar") {
    auto r = plane();
    // display follows the ring order; with weights (3,2,1) the example
    // string is already canonical
    auto r3 = Ring::make({"x", "y", "z"}, {3, 2, 1});
    CHECK(parse_poly("x^2 - y^3", r3).str() == "x^2 - y^3");
    CHECK(parse_poly("1/2*x*y^2", r).str() == "1/2*x*y^2");
    CHECK(parse_poly("2x", r) == parse_poly("2*x", r));
    CHECK(parse_poly("x y", r) == parse_poly("x*y", r));
    CHECK(parse_poly("-x + x", r).is_zero());
    CHECK(parse_poly("3", r).str() == "3");
    CHECK_THROWS_WITH_AS(parse_poly("x + w", r).str(),
                         doctest::Contains("unknown variable"), input_error);
    CHECK_THROWS_WITH_AS(parse_poly("x + ", r).str(), doctest::Contains("position"),
                         input_error);
}

TEST_CASE("arithmetic on the stated examples") {
    auto r3 = Ring::make({"x", "y", "z"}, {3, 2, 1});
    CHECK(parse_poly("x^2 - y^3", r3) + parse_poly("y^3", r3) == parse_poly("x^2", r3));
    auto r = plane();
    CHECK(parse_poly("x + y", r) * parse_poly("x - y", r) == parse_poly("x^2 - y^2", r));
    CHECK(parse_poly("1/2*x", r) * parse_poly("2/3*x", r) == parse_poly("1/3*x^2", r));
}

TEST_CASE("ambient mismatch is a structural error") {
    auto a = plane();
    auto b = Ring::make({"x", "y"}, {2, 1});
    CHECK_THROWS_AS(parse_poly("x", a) + parse_poly("x", b), input_error);
}

TEST_CASE("ring axioms on random samples") {
    auto r = plane();
    std::mt19937 rng(12345);
    for (int i = 0; i < 40; ++i) {
        Poly p = random_poly(r, rng), q = random_poly(r, rng), s = random_poly(r, rng);
        CHECK((p + q) + s == p + (q + s));
        CHECK((p * q) * s == p * (q * s));
        CHECK(p * (q + s) == p * q + p * s);
        CHECK(p * q == q * p);
        CHECK(p + q == q + p);
        CHECK((p - q) + q == p);
    }
}

TEST_CASE("weighted degree, homogeneity, components") {
    auto r = Ring::make({"x", "y"}, {2, 1});
    Poly p = parse_poly("x*y + y^3 + x", r);
    CHECK(p.wdeg() == 3);
    CHECK(!p.is_homogeneous());
    auto comps = p.homogeneous_components();
    CHECK(comps.size() == 2);
    CHECK(comps.at(2) == parse_poly("x", r));
    CHECK(comps.at(3) == parse_poly("x*y + y^3", r));
    Poly sum(r);
    for (auto& [d, c] : comps) sum += c;
    CHECK(sum == p);
    CHECK(parse_poly("x - y^2", r).is_homogeneous());
}

TEST_CASE("partial derivatives and substitution") {
    auto r = plane();
    CHECK(parse_poly("x^3*y", r).partial(0) == parse_poly("3*x^2*y", r));
    CHECK(parse_poly("x^3*y", r).partial(1) == parse_poly("x^3", r));
    CHECK(parse_poly("7", r).partial(0).is_zero());
    Poly p = parse_poly("x^2 + x*y", r);
    CHECK(p.substituted(0, parse_poly("y", r)) == parse_poly("2*y^2", r));
}

TEST_CASE("leading data follow the weighted order") {
    auto r = Ring::make({"x", "y", "z"}, {3, 2, 1});
    // x^2 and y^3 tie in degree; reverse-lex puts x^2 first
    Poly p = parse_poly("y^3 - x^2", r);
    CHECK(p.leading_monomial() == Monomial{2, 0, 0});
    CHECK(p.leading_coeff() == -1);
    CHECK(Poly::canonical_less(parse_poly("y", r), parse_poly("x", r)));
}
