#include <doctest.h>

#include <cylforge/subalgebra.hpp>

using namespace cylforge;

TEST_CASE("square Veronese of the plane: three generators, one relation") {
    auto r = Ring::make({"x", "y"}, {1, 1});
    GradedDomain a(r, {});
    auto rep = veronese(a, 2, 12);
    REQUIRE(rep.generators.size() == 3);
    CHECK(rep.generators[0].first == parse_poly("x^2", r));
    CHECK(rep.generators[1].first == parse_poly("x*y", r));
    CHECK(rep.generators[2].first == parse_poly("y^2", r));
    REQUIRE(rep.relations.size() == 1);
    // the relation g0 g2 - g1^2 up to sign/scaling
    auto grel = rep.relations[0];
    auto gring = rep.generator_ring;
    Poly expected = Poly(gring, Monomial{1, 0, 1}, Rational(1)) -
                    Poly(gring, Monomial{0, 2, 0}, Rational(1));
    CHECK((grel == expected || grel == -expected ||
           grel == expected.scaled(-1)));
    CHECK(rep.generation_certified);
}

TEST_CASE("identity Veronese returns the input presentation") {
    auto r = Ring::make({"x", "y", "z"}, {3, 2, 1});
    GradedDomain a(r, {parse_poly("x^2 - y^3", r)});
    auto rep = veronese(a, 1, 12);
    CHECK(rep.generators.size() == 3); // the variables, possibly reordered
    std::vector<long> degs;
    for (auto& [g, d] : rep.generators) degs.push_back(d);
    CHECK(degs == std::vector<long>{1, 2, 3});
    REQUIRE(rep.relations.size() == 1);
    // evaluating the relation in A gives 0
    Poly ev(r);
    for (auto& [mono, c] : rep.relations[0].terms()) {
        Poly prod = a.constant(c);
        for (std::size_t i = 0; i < rep.generators.size(); ++i)
            if (mono[i] > 0) prod *= rep.generators[i].first.pow(mono[i]);
        ev += prod;
    }
    CHECK(a.is_zero_in_quotient(ev));
}

TEST_CASE("half-weighted plane: even Veronese is free") {
    auto r = Ring::make({"x", "y"}, {2, 1});
    GradedDomain a(r, {});
    auto rep = veronese(a, 2, 16);
    REQUIRE(rep.generators.size() == 2);
    CHECK(rep.generators[0].first == parse_poly("x", r));
    CHECK(rep.generators[1].first == parse_poly("y^2", r));
    CHECK(rep.relations.empty());
}

TEST_CASE("Veronese Hilbert consistency and degree renormalization") {
    auto r = Ring::make({"x", "y", "z"}, {3, 2, 1});
    GradedDomain a(r, {parse_poly("x^2 - y^3", r)});
    for (long d : {2L, 3L}) {
        auto rep = veronese(a, d, 40);
        auto pres = rep.presentation();
        for (long nu = 0; nu * d <= 36; ++nu)
            CHECK(pres->hilbert_dim(nu) == a.hilbert_dim(nu * d));
        // renormalized degrees are coprime
        long g = 0;
        for (long w : rep.generator_ring->weights()) g = long_gcd(g, w);
        CHECK(g == 1);
    }
}

TEST_CASE("iterated Veronese matches the composite") {
    auto r = Ring::make({"x", "y"}, {1, 1});
    GradedDomain a(r, {});
    auto r2 = veronese(a, 2, 16);
    auto pres2 = r2.presentation();
    auto r22 = veronese(*pres2, 2, 8);
    auto pres22 = r22.presentation();
    auto r4 = veronese(a, 4, 16);
    auto pres4 = r4.presentation();
    for (long nu = 0; nu <= 4; ++nu)
        CHECK(pres22->hilbert_dim(nu) == pres4->hilbert_dim(nu));
}

TEST_CASE("membership in the non-normal subring") {
    auto r = Ring::make({"x", "y"}, {1, 1});
    std::vector<Poly> gens = {parse_poly("x^2", r), parse_poly("x*y", r),
                              parse_poly("y^2", r), parse_poly("x^3", r),
                              parse_poly("y^3", r)};
    auto no = subalgebra_member(parse_poly("x^2*y", r), gens);
    CHECK(no.status == Membership::Status::no);
    REQUIRE(no.witness.has_value());
    CHECK(*no.witness == parse_poly("x^2*y", r));

    auto yes = subalgebra_member(parse_poly("x^3*y", r), gens);
    REQUIRE(yes.status == Membership::Status::yes);
    CHECK(evaluate_expression(yes, gens, r) == parse_poly("x^3*y", r));

    auto gen = subalgebra_member(parse_poly("x^2", r), {parse_poly("x^2", r),
                                                        parse_poly("x*y", r),
                                                        parse_poly("y^2", r)});
    CHECK(gen.status == Membership::Status::yes);
}

TEST_CASE("membership falls back to linear algebra for non-monomial generators") {
    auto r = Ring::make({"x", "y"}, {1, 1});
    std::vector<Poly> gens = {parse_poly("x + y", r), parse_poly("x*y", r)};
    auto yes = subalgebra_member(parse_poly("x^2 + y^2", r), gens);
    REQUIRE(yes.status == Membership::Status::yes);
    CHECK(evaluate_expression(yes, gens, r) == parse_poly("x^2 + y^2", r));
    auto no = subalgebra_member(parse_poly("x^2", r), gens);
    CHECK(no.status == Membership::Status::no);
}

TEST_CASE("membership respects quotient relations") {
    auto r = Ring::make({"x", "y", "z"}, {3, 2, 1});
    GradedDomain a(r, {parse_poly("x^2 - y^3", r)});
    // y^3 equals x^2 in the quotient, so it lies in the subring generated by x
    auto m = subalgebra_member(parse_poly("y^3", r), {parse_poly("x", r)}, 200, &a);
    CHECK(m.status == Membership::Status::yes);
    auto m2 = subalgebra_member(parse_poly("y^3", r), {parse_poly("x", r)});
    CHECK(m2.status == Membership::Status::no); // in the free ring it does not
}

TEST_CASE("membership reports unknown past the bound") {
    auto r = Ring::make({"x", "y"}, {1, 1});
    auto m = subalgebra_member(parse_poly("x^9", r), {parse_poly("x^2", r)}, 8);
    CHECK(m.status == Membership::Status::unknown);
}

TEST_CASE("generation is flagged unverified when the bound is too tight") {
    auto r = Ring::make({"x", "y"}, {1, 1});
    GradedDomain a(r, {});
    auto tight = veronese(a, 2, 2); // generators appear exactly at the bound
    CHECK(!tight.generation_certified);
    auto roomy = veronese(a, 2, 6);
    CHECK(roomy.generation_certified);
}
