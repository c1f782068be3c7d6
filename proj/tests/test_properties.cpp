#include <doctest.h>

#include <random>

#include <cylforge/corpus.hpp>

using namespace cylforge;

// Cross-module property suites over the bundled rings and derivations.

namespace {
    struct NamedDerivation {
        std::string name;
        Derivation d;
    };

    std::vector<NamedDerivation> corpus_derivations() {
        std::vector<NamedDerivation> out;
        auto r3 = Ring::make({"x", "y", "z"}, {3, 2, 1});
        auto cusp = GradedDomain::make(r3, {parse_poly("x^2 - y^3", r3)});
        out.push_back({"d/dz on the cusp",
                       Derivation(cusp, {parse_poly("0", r3), parse_poly("0", r3),
                                         parse_poly("1", r3)})});
        auto r21 = Ring::make({"x", "y"}, {2, 1});
        auto half = GradedDomain::make(r21, {});
        out.push_back({"d/dy half-weighted",
                       Derivation(half, {parse_poly("0", r21), parse_poly("1", r21)})});
        auto rs = Ring::make({"x", "y"}, {1, 1});
        auto plane = GradedDomain::make(rs, {});
        out.push_back({"y d/dx", Derivation(plane, {parse_poly("y", rs), parse_poly("0", rs)})});
        out.push_back({"x d/dy", Derivation(plane, {parse_poly("0", rs), parse_poly("x", rs)})});
        out.push_back({"y^3 d/dx",
                       Derivation(plane, {parse_poly("y^3", rs), parse_poly("0", rs)})});
        auto r111 = Ring::make({"x", "y", "z"}, {1, 1, 1});
        auto space = GradedDomain::make(r111, {});
        out.push_back({"d/dz in three variables",
                       Derivation(space, {parse_poly("0", r111), parse_poly("0", r111),
                                          parse_poly("1", r111)})});
        return out;
    }
}

TEST_CASE("Leibniz holds on random pairs for every bundled derivation") {
    std::mt19937 rng(777);
    for (auto& [name, d] : corpus_derivations()) {
        CAPTURE(name);
        const auto& A = *d.domain();
        for (int i = 0; i < 100; ++i) {
            Poly p(A.ring()), q(A.ring());
            for (auto& m : A.piece_basis(1 + rng() % 5))
                p += Poly(A.ring(), m, Rational(static_cast<long>(rng() % 5) - 2));
            for (auto& m : A.piece_basis(1 + rng() % 5))
                q += Poly(A.ring(), m, Rational(static_cast<long>(rng() % 5) - 2));
            CHECK(A.is_zero_in_quotient(d.apply(p * q) - p * d.apply(q) - q * d.apply(p)));
        }
    }
}

TEST_CASE("kernel index is coprime to the co-degree for every bundled derivation") {
    auto all = corpus_derivations();
    REQUIRE(all.size() >= 5);
    for (auto& [name, d] : all) {
        CAPTURE(name);
        auto rep = kernel_saturation_index(d, 40);
        long dd = -d.degree();
        CHECK(long_gcd(rep.index, dd) == 1);
        CHECK(rep.coprime_with_degree);
    }
}

TEST_CASE("every bundled derivation is verified locally nilpotent") {
    for (auto& [name, d] : corpus_derivations()) {
        CAPTURE(name);
        CHECK(is_locally_nilpotent(d).status == NilpotencyVerdict::Status::nilpotent);
    }
}

TEST_CASE("slice certificates hold identities across bundled derivations") {
    std::mt19937 rng(91);
    for (auto& [name, d] : corpus_derivations()) {
        CAPTURE(name);
        auto cert = slice_construct(d, 24);
        CHECK(slice_identities_hold(cert));
        // kernel generators are kernel elements of the recorded degrees
        for (auto& [g, deg] : cert.kernel_generators) {
            CHECK(d.apply(g).is_zero());
            CHECK(g.wdeg() == deg);
        }
        // a couple of Taylor samples per derivation
        const auto& A = *d.domain();
        for (long nu = 2; nu <= 6; ++nu) {
            Poly p(A.ring());
            for (auto& m : A.piece_basis(nu))
                p += Poly(A.ring(), m, Rational(static_cast<long>(rng() % 5) - 2));
            if (p.is_zero()) continue;
            CHECK(taylor_projection_in_kernel(cert, p));
        }
    }
}

TEST_CASE("groebner bases are stable under generator shuffles on random ideals") {
    std::mt19937 rng(5150);
    auto r = Ring::make({"x", "y", "z"}, {1, 1, 1});
    for (int round = 0; round < 10; ++round) {
        std::vector<Poly> gens;
        for (int g = 0; g < 3; ++g) {
            Poly p(r);
            for (int t = 0; t < 3; ++t) {
                Monomial m(3, 0);
                for (auto& e : m) e = rng() % 3;
                p += Poly(r, m, Rational(static_cast<long>(rng() % 7) - 3));
            }
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.empty()) continue;
        auto gb1 = groebner(gens);
        std::shuffle(gens.begin(), gens.end(), rng);
        auto gb2 = groebner(gens);
        CHECK(gb1 == gb2);
    }
}

TEST_CASE("Veronese coherence on the bundled rings") {
    std::vector<GradedDomainPtr> rings;
    auto rs = Ring::make({"x", "y"}, {1, 1});
    rings.push_back(GradedDomain::make(rs, {}));
    auto r21 = Ring::make({"x", "y"}, {2, 1});
    rings.push_back(GradedDomain::make(r21, {}));
    auto r3 = Ring::make({"x", "y", "z"}, {3, 2, 1});
    rings.push_back(GradedDomain::make(r3, {parse_poly("x^2 - y^3", r3)}));
    for (auto& a : rings)
        for (long d : {2L, 3L}) {
            long bound = 3 * d * 5;
            auto rep = veronese(*a, d, bound);
            auto pres = rep.presentation();
            for (long nu = 0; nu * d <= bound - d; ++nu)
                CHECK(pres->hilbert_dim(nu) == a->hilbert_dim(nu * d));
        }
}

TEST_CASE("spectrum members close under integer multiples across divisors") {
    for (auto [a, b, c] : {std::array<long, 3>{2, 3, 7}, {2, 3, 5}}) {
        auto h = pham_brieskorn_divisor(a, b, c);
        auto rep = cylindricity_spectrum(h, 60, 6);
        for (auto& w : rep.members)
            for (long n = 2; n <= 3; ++n) {
                Rational rn = w.r * n;
                if (rat_num(rn) > 60 || rat_den(rn) > 6) continue;
                bool found = false;
                for (auto& w2 : rep.members)
                    if (w2.r == rn) found = true;
                CHECK(found);
            }
    }
}

TEST_CASE("the bundled corpus passes end to end") {
    for (auto& id : corpus_ids()) {
        auto res = run_corpus_case(id);
        CAPTURE(id);
        for (auto& c : res.checks) {
            CAPTURE(c.label);
            CAPTURE(c.detail);
            CHECK(c.pass);
        }
    }
}
