/**
 * @file graded_domain.hpp
 * @brief Positively graded domain presentations A = Q[x1..xn]/I with
 *        weighted-homogeneous relations: validation, saturation index,
 *        graded-piece bases (standard monomials) and the Hilbert function.
 */
#ifndef CYLFORGE_GRADED_DOMAIN_HH
#define CYLFORGE_GRADED_DOMAIN_HH

#include <memory>
#include <string>
#include <vector>

#include <cylforge/groebner.hpp>
#include <cylforge/linalg.hpp>
#include <cylforge/polynomial.hpp>

namespace cylforge {

    struct ValidationReport {
        bool valid = true;
        long saturation_index = 0;
        std::vector<std::string> errors;
        std::vector<std::string> warnings;
    };

    class GradedDomain;
    using GradedDomainPtr = std::shared_ptr<const GradedDomain>;

    /// Presentation of a positively graded affine domain. Immutable; the
    /// reduced Groebner basis of the relation ideal is computed once at
    /// construction. Domain-ness itself is not verified globally (see
    /// zero_divisor_probe for the on-demand sanity filter).
    class GradedDomain {
    public:
        GradedDomain(RingPtr ring, std::vector<Poly> relations)
            : ring_(std::move(ring)), relations_(std::move(relations)) {
            for (const auto& r : relations_) {
                if (r.is_zero())
                    throw input_error("zero relation");
                if (!r.is_homogeneous()) {
                    auto comps = r.homogeneous_components();
                    throw input_error(
                        "relation '" + r.str() + "' is not weighted-homogeneous: term degrees " +
                        std::to_string(comps.begin()->first) + " and " +
                        std::to_string(comps.rbegin()->first));
                }
                if (!same_ambient(r.ring(), ring_))
                    throw input_error("relation in a different ring");
            }
            if (!relations_.empty())
                gb_ = groebner(relations_);
        }

        static GradedDomainPtr make(RingPtr ring, std::vector<Poly> relations) {
            return std::make_shared<const GradedDomain>(std::move(ring), std::move(relations));
        }

        const RingPtr& ring() const { return ring_; }
        const std::vector<Poly>& relations() const { return relations_; }
        const std::vector<Poly>& gb() const { return gb_; }
        std::size_t nvars() const { return ring_->nvars(); }

        Poly nf(const Poly& p) const { return normal_form(p, gb_); }
        bool is_zero_in_quotient(const Poly& p) const { return nf(p).is_zero(); }

        Poly parse(const std::string& s) const { return parse_poly(s, ring_); }
        Poly var(std::size_t i) const { return Poly::variable(ring_, i); }
        Poly constant(const Rational& c) const { return Poly(ring_, c); }

        bool is_trivial() const { // I = (1)
            return gb_.size() == 1 && mono_is_one(gb_.front().leading_monomial());
        }

        /// gcd of the weights of the variables that survive in the quotient.
        long saturation_index() const {
            long e = 0;
            for (std::size_t i = 0; i < nvars(); ++i) {
                if (ring_->weights()[i] == 0) continue;
                if (!is_zero_in_quotient(var(i)))
                    e = long_gcd(e, ring_->weights()[i]);
            }
            if (e == 0)
                throw input_error("not positively graded in the quotient: "
                                  "no surviving variable of positive weight");
            return e;
        }

        /// Standard monomials of weighted degree nu: the monomial basis of
        /// A_nu, listed in the deterministic enumeration order.
        std::vector<Monomial> piece_basis(long nu) const {
            std::vector<Monomial> out;
            if (nu < 0) return out;
            for (auto& m : ring_->monomials_of_degree(nu))
                if (!reducible(m)) out.push_back(m);
            return out;
        }

        std::vector<Poly> piece_basis_polys(long nu) const {
            std::vector<Poly> out;
            for (auto& m : piece_basis(nu)) out.emplace_back(ring_, m, Rational(1));
            return out;
        }

        long hilbert_dim(long nu) const {
            if (nu < 0) return 0;
            long dim = 0;
            for (auto& m : ring_->monomials_of_degree(nu))
                if (!reducible(m)) ++dim;
            return dim;
        }

        /// Coordinates of nf(p) in the standard-monomial basis of A_nu.
        /// p must be homogeneous of degree nu (or reduce to 0).
        QVec piece_coordinates(const Poly& p, const std::vector<Monomial>& basis) const {
            QVec v(basis.size(), Rational(0));
            Poly r = nf(p);
            for (auto& [m, c] : r.terms()) {
                bool found = false;
                for (std::size_t k = 0; k < basis.size(); ++k)
                    if (basis[k] == m) { v[k] = c; found = true; break; }
                if (!found)
                    throw input_error("polynomial does not lie in the given graded piece");
            }
            return v;
        }

        Poly from_coordinates(const QVec& v, const std::vector<Monomial>& basis) const {
            Poly p(ring_);
            for (std::size_t k = 0; k < basis.size(); ++k)
                if (v[k] != 0) p += Poly(ring_, basis[k], v[k]);
            return p;
        }

        ValidationReport report() const {
            ValidationReport rep;
            bool weight0 = false;
            for (std::size_t i = 0; i < nvars(); ++i)
                if (ring_->weights()[i] == 0) weight0 = true;
            if (weight0)
                rep.warnings.push_back(
                    "weight-0 variables present: A_0 is a nontrivial affine ring; "
                    "graded-piece operations are unavailable");
            if (is_trivial()) {
                rep.valid = false;
                rep.errors.push_back("relations generate the unit ideal: quotient is zero");
                return rep;
            }
            rep.saturation_index = saturation_index();
            if (rep.saturation_index != 1)
                rep.warnings.push_back("saturation index e(A) = " +
                                       std::to_string(rep.saturation_index) +
                                       " differs from 1 (torus action not effective); "
                                       "constructions still run");
            return rep;
        }

        /// Bounded zero-divisor probe: looks for nonzero a, b of degree at
        /// most degree_cap with a*b = 0 in the quotient. Finding one proves
        /// the presentation is not a domain; finding none proves nothing.
        std::optional<std::pair<Poly, Poly>> zero_divisor_probe(long degree_cap) const {
            for (long da = 1; da <= degree_cap; ++da) {
                auto ba = piece_basis(da);
                for (long db = da; da + db <= 2 * degree_cap && db <= degree_cap; ++db) {
                    auto bb = piece_basis(db);
                    for (auto& ma : ba)
                        for (auto& mb : bb) {
                            Poly a(ring_, ma, Rational(1)), b(ring_, mb, Rational(1));
                            if (is_zero_in_quotient(a) || is_zero_in_quotient(b)) continue;
                            if (is_zero_in_quotient(a * b))
                                return std::make_pair(a, b);
                        }
                }
            }
            return std::nullopt;
        }

    private:
        bool reducible(const Monomial& m) const {
            for (const auto& g : gb_)
                if (mono_divides(g.leading_monomial(), m)) return true;
            return false;
        }

        RingPtr ring_;
        std::vector<Poly> relations_;
        std::vector<Poly> gb_;
    };

    /// Presentation validation that reports instead of throwing; used by the
    /// CLI front end. Checks homogeneity of every relation and computes the
    /// saturation index when valid.
    inline ValidationReport validate_presentation(const RingPtr& ring,
                                                  const std::vector<Poly>& relations) {
        ValidationReport rep;
        for (const auto& r : relations) {
            if (r.is_zero()) {
                rep.valid = false;
                rep.errors.push_back("zero relation");
                continue;
            }
            if (!r.is_homogeneous()) {
                auto comps = r.homogeneous_components();
                rep.valid = false;
                rep.errors.push_back("relation '" + r.str() +
                                     "' is not weighted-homogeneous: term degrees " +
                                     std::to_string(comps.begin()->first) + " and " +
                                     std::to_string(comps.rbegin()->first));
            }
        }
        if (!rep.valid) return rep;
        GradedDomain a(ring, relations);
        return a.report();
    }

} // namespace cylforge
#endif
