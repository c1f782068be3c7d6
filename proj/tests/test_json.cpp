#include <doctest.h>

#include <cylforge/json_io.hpp>

using namespace cylforge;

TEST_CASE("ring and derivation descriptions round-trip") {
    Json j = Json::parse(R"({"variables":["x","y","z"], "weights":[3,2,1],
                             "relations":["x^2 - y^3"]})");
    auto a = domain_from_json(j);
    CHECK(a->nvars() == 3);
    CHECK(a->relations().size() == 1);
    Json back = domain_to_json(*a);
    CHECK(domain_from_json(back)->relations() == a->relations());

    Json dj = Json::parse(R"({"x":"0","y":"0","z":"1"})");
    auto d = derivation_from_json(dj, a);
    CHECK(d.degree() == -1);
    CHECK(derivation_from_json(derivation_to_json(d), a) == d);
}

TEST_CASE("divisor descriptions round-trip") {
    Json j = Json::parse(R"({"points":["0","1","inf"], "coeffs":["1/2","2/3","-8/7"]})");
    auto d = divisor_from_json(j);
    CHECK(d.degree() == make_rational(1, 42));
    CHECK(divisor_from_json(divisor_to_json(d)).terms() == d.terms());
}

TEST_CASE("problem files reject unknown keys") {
    Json j = Json::parse(R"({"ring":{"variables":["x"],"weights":[1]}, "frobnicate":1})");
    CHECK_THROWS_WITH_AS(problem_from_json(j), doctest::Contains("frobnicate"), input_error);
    Json j2 = Json::parse(R"({"ring":{"variables":["x"],"weights":[1],"extra":[]}})");
    CHECK_THROWS_AS(problem_from_json(j2), input_error);
}

TEST_CASE("byte-identical serialization for identical inputs") {
    auto h = pham_brieskorn_divisor(2, 3, 7);
    auto r1 = cylindricity_spectrum(h, 100, 10);
    auto r2 = cylindricity_spectrum(pham_brieskorn_divisor(2, 3, 7), 100, 10);
    CHECK(spectrum_to_json(r1).dump(2) == spectrum_to_json(r2).dump(2));
}

TEST_CASE("certificates re-verify through the JSON layer") {
    auto r21 = Ring::make({"x", "y"}, {2, 1});
    auto b = GradedDomain::make(r21, {});
    Derivation dy(b, {parse_poly("0", r21), parse_poly("1", r21)});

    auto slice = positive_degree_slice(dy);
    auto sres = verify_certificate(slice_to_json(slice));
    CHECK(sres.ok);

    // tampering breaks it
    Json bad = slice_to_json(slice);
    bad["h"] = "y";
    auto bres = verify_certificate(bad);
    CHECK(!bres.ok);

    auto q = cyclic_quotient(dy, parse_poly("x", r21), 20);
    CHECK(verify_certificate(cyclic_to_json(q)).ok);

    auto pc = polar_cylinder(dy);
    CHECK(verify_certificate(polar_to_json(pc)).ok);
    Json badp = polar_to_json(pc);
    badp["k"] = 1;
    CHECK(!verify_certificate(badp).ok);

    // a certificate whose slice sits against a power of h
    auto rs = Ring::make({"x", "y"}, {1, 1});
    auto plane = GradedDomain::make(rs, {});
    Derivation y3dx(plane, {parse_poly("y^3", rs), parse_poly("0", rs)});
    PolarCylinderOptions opt;
    opt.verified_degree = 12;
    auto pc3 = polar_cylinder(y3dx, opt);
    CHECK(pc3.hpow == 3);
    CHECK(verify_certificate(polar_to_json(pc3)).ok);

    auto spec = cylindricity_spectrum(pham_brieskorn_divisor(2, 3, 7), 60, 6);
    CHECK(verify_certificate(spectrum_to_json(spec)).ok);

    QDivisor d;
    d.add(PointP1::zero(), make_rational(1, 4));
    auto w = veronese_cylinder(21, 2, d, pham_brieskorn_divisor(2, 3, 7), nullptr);
    CHECK(verify_certificate(veronese_cyl_to_json(w)).ok);

    CHECK_THROWS_AS(verify_certificate(Json::parse(R"({"kind":"nope"})")), input_error);
}

TEST_CASE("veronese reports re-verify") {
    auto r = Ring::make({"x", "y"}, {1, 1});
    auto a = GradedDomain::make(r, {});
    auto rep = veronese(*a, 2, 12);
    auto res = verify_certificate(veronese_to_json(rep, *a));
    CHECK(res.ok);
    Json bad = veronese_to_json(rep, *a);
    bad["relations"].push_back("g0 - g1");
    CHECK(!verify_certificate(bad).ok);
}
