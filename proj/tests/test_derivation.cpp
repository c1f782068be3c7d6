#include <doctest.h>

#include <random>

#include <cylforge/derivation.hpp>
#include <cylforge/subalgebra.hpp>

using namespace cylforge;

namespace {
    GradedDomainPtr cusp_ring() {
        auto r = Ring::make({"x", "y", "z"}, {3, 2, 1});
        return GradedDomain::make(r, {parse_poly("x^2 - y^3", r)});
    }
    Poly rand_in_piece(const GradedDomain& a, long nu, std::mt19937& rng) {
        Poly p(a.ring());
        for (auto& m : a.piece_basis(nu))
            p += Poly(a.ring(), m, Rational(static_cast<long>(rng() % 7) - 3));
        return p;
    }
}

TEST_CASE("well-definedness on the quotient") {
    auto a = cusp_ring();
    auto r = a->ring();
    // d/dz descends
    Derivation dz(a, {parse_poly("0", r), parse_poly("0", r), parse_poly("1", r)});
    CHECK(dz.degree() == -1);
    // d/dx does not: image of the relation is 2x with nonzero normal form
    CHECK_THROWS_WITH_AS(Derivation(a, {parse_poly("1", r), parse_poly("0", r),
                                        parse_poly("0", r)}),
                         doctest::Contains("2*x"), input_error);
    // weighted plane, image (y, 0)
    auto r21 = Ring::make({"x", "y"}, {2, 1});
    auto b = GradedDomain::make(r21, {});
    Derivation d(b, {parse_poly("y", r21), parse_poly("0", r21)});
    CHECK(d.is_homogeneous());
    CHECK(d.degree() == -1);
}

TEST_CASE("Leibniz rule on random pairs") {
    auto a = cusp_ring();
    auto r = a->ring();
    Derivation dz(a, {parse_poly("0", r), parse_poly("0", r), parse_poly("1", r)});
    Derivation mix(a, {parse_poly("0", r), parse_poly("0", r), parse_poly("y + z^2", r)});
    std::mt19937 rng(42);
    for (int i = 0; i < 100; ++i) {
        Poly p = rand_in_piece(*a, 1 + rng() % 6, rng);
        Poly q = rand_in_piece(*a, 1 + rng() % 6, rng);
        for (auto* d : {&dz, &mix})
            CHECK(a->is_zero_in_quotient(d->apply(p * q) - p * d->apply(q) - q * d->apply(p)));
    }
}

TEST_CASE("degree components decompose and re-sum") {
    auto r = Ring::make({"x", "y"}, {2, 1});
    auto a = GradedDomain::make(r, {});
    // images (y^3, 1): components at degrees +1 (x -> y^3) and -1 (y -> 1)
    Derivation d(a, {parse_poly("y^3", r), parse_poly("1", r)});
    auto comps = d.degree_components();
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].first == -1);
    CHECK(comps[1].first == 1);
    auto principal = d.principal_component();
    CHECK(principal.images()[0] == parse_poly("y^3", r));
    CHECK(principal.images()[1].is_zero());
    // components re-sum on every generator
    for (std::size_t i = 0; i < 2; ++i) {
        Poly sum(r);
        for (auto& [deg, c] : comps) sum += c.images()[i];
        CHECK(sum == d.images()[i]);
    }
    // a homogeneous derivation is its own principal component
    Derivation hom(a, {parse_poly("0", r), parse_poly("1", r)});
    CHECK(hom.principal_component() == hom);
    // the full derivation is locally nilpotent, and the principal component
    // is re-verified to be one rather than trusted
    CHECK(is_locally_nilpotent(d).status == NilpotencyVerdict::Status::nilpotent);
    CHECK(is_locally_nilpotent(principal).status == NilpotencyVerdict::Status::nilpotent);
}

TEST_CASE("homogeneous derivations shift graded pieces") {
    auto a = cusp_ring();
    auto r = a->ring();
    Derivation dz(a, {parse_poly("0", r), parse_poly("0", r), parse_poly("1", r)});
    for (long nu = 0; nu <= 40; ++nu)
        for (auto& m : a->piece_basis(nu)) {
            Poly im = dz.apply(Poly(r, m, Rational(1)));
            if (!im.is_zero()) {
                CHECK(im.is_homogeneous());
                CHECK(im.wdeg() == nu - 1);
            }
        }
}

TEST_CASE("nilpotency verdicts") {
    auto a = cusp_ring();
    auto r = a->ring();
    Derivation dz(a, {parse_poly("0", r), parse_poly("0", r), parse_poly("1", r)});
    auto v = is_locally_nilpotent(dz);
    CHECK(v.status == NilpotencyVerdict::Status::nilpotent);
    CHECK(v.reason == NilpotencyVerdict::Reason::negative_degree_automatic);
    REQUIRE(v.vanishing_steps.size() == 3);
    CHECK(v.vanishing_steps[2] == 2); // D^2(z) = 0

    auto r1 = Ring::make({"x"}, {1});
    auto b = GradedDomain::make(r1, {});
    Derivation euler(b, {parse_poly("x", r1)});
    auto v2 = is_locally_nilpotent(euler);
    CHECK(v2.status == NilpotencyVerdict::Status::not_nilpotent);
    CHECK(!v2.witness.empty());

    auto rs = Ring::make({"x", "y"}, {1, 1});
    auto c = GradedDomain::make(rs, {});
    Derivation ydx(c, {parse_poly("y", rs), parse_poly("0", rs)});
    auto v3 = is_locally_nilpotent(ydx);
    CHECK(v3.status == NilpotencyVerdict::Status::nilpotent);
    CHECK(v3.vanishing_steps[0] == 2); // D^2(x) = 0

    // positive-degree homogeneous nilpotent
    Derivation y3dx(c, {parse_poly("y^3", rs), parse_poly("0", rs)});
    CHECK(is_locally_nilpotent(y3dx).status == NilpotencyVerdict::Status::nilpotent);
    CHECK(y3dx.degree() == 2);
}

TEST_CASE("kernel pieces solve the graded linear system") {
    auto r21 = Ring::make({"x", "y"}, {2, 1});
    auto b = GradedDomain::make(r21, {});
    Derivation dy(b, {parse_poly("0", r21), parse_poly("1", r21)});
    auto k2 = kernel_piece(dy, 2);
    REQUIRE(k2.size() == 1);
    CHECK(k2[0] == parse_poly("x", r21));
    CHECK(kernel_piece(dy, 1).empty());

    auto a = cusp_ring();
    auto r = a->ring();
    Derivation dz(a, {parse_poly("0", r), parse_poly("0", r), parse_poly("1", r)});
    auto kc = kernel_piece(dz, 2);
    REQUIRE(kc.size() == 1);
    CHECK(kc[0] == parse_poly("y", r));
    // kernel is a subring: products of kernel pieces are annihilated
    for (long i = 2; i <= 6; ++i)
        for (long j = 2; j + i <= 12; ++j)
            for (auto& u : kernel_piece(dz, i))
                for (auto& w : kernel_piece(dz, j))
                    CHECK(dz.apply(u * w).is_zero());
}

TEST_CASE("kernel saturation index") {
    auto r21 = Ring::make({"x", "y"}, {2, 1});
    auto b = GradedDomain::make(r21, {});
    Derivation dy(b, {parse_poly("0", r21), parse_poly("1", r21)});
    auto rep = kernel_saturation_index(dy, 40);
    CHECK(rep.index == 2);
    CHECK(rep.certified);
    CHECK(rep.coprime_with_degree); // gcd(2, 1) = 1

    auto a = cusp_ring();
    auto r = a->ring();
    Derivation dz(a, {parse_poly("0", r), parse_poly("0", r), parse_poly("1", r)});
    CHECK(kernel_saturation_index(dz, 40).index == 1);

    auto rs = Ring::make({"x", "y"}, {1, 1});
    auto c = GradedDomain::make(rs, {});
    Derivation ydx(c, {parse_poly("y", rs), parse_poly("0", rs)});
    CHECK(kernel_saturation_index(ydx, 40).index == 1);
}

TEST_CASE("replicas into Veronese subrings") {
    auto rs = Ring::make({"x", "y"}, {1, 1});
    auto c = GradedDomainPtr(GradedDomain::make(rs, {}));
    Derivation ydx(c, {parse_poly("y", rs), parse_poly("0", rs)});
    // deg D = 0 is already divisible by any m: the trivial coefficient
    auto rep = replica(ydx, 2, 40);
    CHECK(rep.coefficient == parse_poly("1", rs));
    CHECK(rep.induced_degree == 0);

    // the kernel-degree congruence can be obstructed
    auto r21 = Ring::make({"x", "y"}, {2, 1});
    auto b = GradedDomainPtr(GradedDomain::make(r21, {}));
    Derivation dy(b, {parse_poly("0", r21), parse_poly("1", r21)});
    CHECK_THROWS_WITH_AS(replica(dy, 2, 40), doctest::Contains("classes"), input_error);

    // nontrivial coefficient: d/dz on the cusp ring into the square Veronese
    auto a = cusp_ring();
    auto r = a->ring();
    Derivation dz(a, {parse_poly("0", r), parse_poly("0", r), parse_poly("1", r)});
    auto rep2 = replica(dz, 2, 40);
    CHECK(rep2.coefficient == parse_poly("x", r));
    CHECK(rep2.j == 3);
    CHECK(rep2.induced_degree == 2);
    // the scaled derivation maps Veronese generators into the subring
    auto vrep = veronese(*a, 2, 24);
    Derivation scaled = dz.scaled_by(rep2.coefficient);
    std::vector<Poly> vgens;
    for (auto& [g, deg] : vrep.generators) vgens.push_back(g);
    for (auto& g : vgens) {
        Poly im = scaled.apply(g);
        if (im.is_zero()) continue;
        auto mem = subalgebra_member(im, vgens, 200, a.get());
        CHECK(mem.status == Membership::Status::yes);
    }
}
