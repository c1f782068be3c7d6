/**
 * @file subalgebra.hpp
 * @brief Veronese subrings (generators and relations, degree-by-degree with
 *        certified bounds) and graded subalgebra membership with explicit
 *        re-evaluating expressions.
 */
#ifndef CYLFORGE_SUBALGEBRA_HH
#define CYLFORGE_SUBALGEBRA_HH

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <cylforge/derivation.hpp>
#include <cylforge/graded_domain.hpp>

namespace cylforge {

    namespace detail {

        /// Enumerates exponent vectors e with sum_i e_i * deg_i = total,
        /// degrees all positive, in a fixed deterministic order.
        inline void weighted_exponents(const std::vector<long>& degs, long total,
                                       std::size_t i, std::vector<long>& cur,
                                       const std::function<void(const std::vector<long>&)>& emit) {
            if (i == degs.size()) {
                if (total == 0) emit(cur);
                return;
            }
            for (long e = total / degs[i]; e >= 0; --e) {
                cur[i] = e;
                weighted_exponents(degs, total - e * degs[i], i + 1, cur, emit);
            }
            cur[i] = 0;
        }

    } // namespace detail

    // ------------------------------------------------------------------
    // Veronese subrings
    // ------------------------------------------------------------------

    struct VeroneseReport {
        long d = 1;
        /// Minimal generators with their degrees (in the grading of A).
        std::vector<std::pair<Poly, long>> generators;
        /// Relations among the generators, in the generator ring below.
        std::vector<Poly> relations;
        /// Generator ring: one variable per generator, weight = degree / d.
        RingPtr generator_ring;
        long generation_bound = 0; ///< largest degree where a new generator appeared
        long verified_up_to = 0;   ///< products certified to span up to here
        /// True when at least one further Veronese degree past the last new
        /// generator was checked and produced nothing new; a report with a
        /// generator found at the very end of the search stays unverified.
        bool generation_certified = false;

        /// The Veronese subring presented as a graded domain in its own
        /// right, with degrees renormalized by d.
        GradedDomainPtr presentation() const {
            return GradedDomain::make(generator_ring, relations);
        }
    };

    /// Finds minimal generators of A^(d) degree-by-degree (a new generator
    /// is an element of A_{nu d} outside the span of products of earlier
    /// generators) and the minimal relations among them up to the bound.
    inline VeroneseReport veronese(const GradedDomain& A, long d, long bound = 0) {
        if (d < 1) throw input_error("veronese index must be positive");
        long maxw = 0;
        for (long w : A.ring()->weights()) maxw = std::max(maxw, w);
        if (bound <= 0) bound = 3 * d * maxw;

        VeroneseReport rep;
        rep.d = d;
        rep.verified_up_to = bound;

        std::vector<Poly> gens;
        std::vector<long> gdeg;

        for (long nu = 1; nu * d <= bound; ++nu) {
            long deg = nu * d;
            auto basis = A.piece_basis(deg);
            if (basis.empty()) continue;
            SpanBuilder span(basis.size());
            std::vector<long> cur(gens.size(), 0);
            detail::weighted_exponents(gdeg, deg, 0, cur, [&](const std::vector<long>& e) {
                Poly prod = A.constant(1);
                for (std::size_t i = 0; i < gens.size(); ++i)
                    if (e[i] > 0) prod *= gens[i].pow(e[i]);
                span.insert(A.piece_coordinates(prod, basis));
            });
            if (span.dim() == basis.size()) continue;
            // extend by standard monomials outside the current span
            for (auto& m : basis) {
                Poly cand(A.ring(), m, Rational(1));
                if (span.insert(A.piece_coordinates(cand, basis))) {
                    gens.push_back(cand);
                    gdeg.push_back(deg);
                    rep.generation_bound = deg;
                }
            }
        }

        // generator ring with renormalized weights
        std::vector<std::string> names;
        std::vector<long> weights;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            names.push_back("g" + std::to_string(i));
            weights.push_back(gdeg[i] / d);
        }
        if (gens.empty())
            throw input_error("Veronese subring has no generators up to degree " +
                              std::to_string(bound));
        rep.generator_ring = Ring::make(names, weights);
        for (std::size_t i = 0; i < gens.size(); ++i)
            rep.generators.emplace_back(gens[i], gdeg[i]);
        rep.generation_certified = rep.generation_bound + d <= bound;

        // relations: kernel of the evaluation map, degree by degree, keeping
        // only elements not already in the ideal of earlier relations
        std::vector<Poly> rel_gb;
        for (long nu = 1; nu * d <= bound; ++nu) {
            long deg = nu * d;
            auto basis = A.piece_basis(deg);
            std::vector<Monomial> gmonos;
            std::vector<long> cur(gens.size(), 0);
            detail::weighted_exponents(gdeg, deg, 0, cur, [&](const std::vector<long>& e) {
                gmonos.push_back(Monomial(e));
            });
            if (gmonos.empty()) continue;
            QMat mat(basis.size(), QVec(gmonos.size(), Rational(0)));
            for (std::size_t j = 0; j < gmonos.size(); ++j) {
                Poly prod = A.constant(1);
                for (std::size_t i = 0; i < gens.size(); ++i)
                    if (gmonos[j][i] > 0) prod *= gens[i].pow(gmonos[j][i]);
                QVec col = A.piece_coordinates(prod, basis);
                for (std::size_t r = 0; r < basis.size(); ++r) mat[r][j] = col[r];
            }
            QMat ker = kernel_basis(mat, gmonos.size());
            rref(ker);
            for (auto& row : ker) {
                Poly relp(rep.generator_ring);
                for (std::size_t j = 0; j < gmonos.size(); ++j)
                    if (row[j] != 0)
                        relp += Poly(rep.generator_ring, gmonos[j], row[j]);
                if (relp.is_zero()) continue;
                Poly nf = normal_form(relp, rel_gb);
                if (nf.is_zero()) continue;
                rep.relations.push_back(relp);
                rel_gb = groebner(rep.relations);
            }
        }
        return rep;
    }

    // ------------------------------------------------------------------
    // Subalgebra membership
    // ------------------------------------------------------------------

    struct Membership {
        enum class Status { yes, no, unknown };
        Status status = Status::unknown;
        /// For yes: terms (coefficient, exponent vector over the generators)
        /// whose evaluation equals the query exactly.
        std::vector<std::pair<Rational, std::vector<long>>> expression;
        /// For no over monomial generators: a monomial of the query outside
        /// the exponent semigroup.
        std::optional<Poly> witness;
    };

    inline const char* to_string(Membership::Status s) {
        switch (s) {
            case Membership::Status::yes: return "yes";
            case Membership::Status::no: return "no";
            default: return "unknown";
        }
    }

    /// Evaluates a membership expression against the generator list.
    inline Poly evaluate_expression(const Membership& m, const std::vector<Poly>& gens,
                                    const RingPtr& ring) {
        Poly out(ring);
        for (auto& [c, e] : m.expression) {
            Poly prod(ring, c);
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (e[i] > 0) prod *= gens[i].pow(e[i]);
            out += prod;
        }
        return out;
    }

    namespace detail {

        /// Exact decision for one exponent vector in the semigroup generated
        /// by monomial exponents (depth-first with pruning).
        inline std::optional<std::vector<long>>
        semigroup_decompose(const Monomial& target, const std::vector<Monomial>& gens,
                            std::size_t i = 0) {
            if (mono_is_one(target)) return std::vector<long>(gens.size(), 0);
            if (i == gens.size()) return std::nullopt;
            long maxe = -1;
            for (std::size_t k = 0; k < target.size(); ++k) {
                if (gens[i][k] == 0) continue;
                long q = target[k] / gens[i][k];
                maxe = maxe < 0 ? q : std::min(maxe, q);
            }
            if (maxe < 0) maxe = 0; // generator is 1? (excluded upstream)
            for (long e = maxe; e >= 0; --e) {
                Monomial rest = target;
                bool ok = true;
                for (std::size_t k = 0; k < target.size(); ++k) {
                    rest[k] -= e * gens[i][k];
                    if (rest[k] < 0) { ok = false; break; }
                }
                if (!ok) continue;
                if (auto tail = semigroup_decompose(rest, gens, i + 1)) {
                    (*tail)[i] = e;
                    return tail;
                }
            }
            return std::nullopt;
        }

    } // namespace detail

    /// Membership of a homogeneous p in the subalgebra generated by
    /// homogeneous gens. In a free ring with monomial generators this is the
    /// exact semigroup decision; otherwise graded linear algebra on
    /// generator products of total degree deg p (taken modulo the relations
    /// when an ambient quotient is supplied). unknown only when
    /// bound < deg p.
    inline Membership subalgebra_member(const Poly& p, const std::vector<Poly>& gens,
                                        long bound = 200,
                                        const GradedDomain* ambient = nullptr) {
        Membership res;
        if (p.is_zero()) {
            res.status = Membership::Status::yes;
            return res;
        }
        if (!p.is_homogeneous())
            throw input_error("subalgebra_member expects a homogeneous query");
        for (auto& g : gens) {
            if (g.is_zero() || !g.is_homogeneous())
                throw input_error("subalgebra generators must be nonzero homogeneous");
            if (g.wdeg() == 0)
                throw input_error("degree-0 generators are not supported");
        }
        if (p.wdeg() > bound) {
            res.status = Membership::Status::unknown;
            return res;
        }

        bool free_ambient = ambient == nullptr || ambient->relations().empty();
        bool monomial_gens = free_ambient;
        for (auto& g : gens)
            if (g.term_count() != 1) monomial_gens = false;

        if (monomial_gens) {
            std::vector<Monomial> gm;
            for (auto& g : gens) gm.push_back(g.leading_monomial());
            for (auto& [m, c] : p.terms()) {
                auto dec = detail::semigroup_decompose(m, gm);
                if (!dec) {
                    res.status = Membership::Status::no;
                    res.witness = Poly(p.ring(), m, Rational(1));
                    return res;
                }
                Rational scale = c;
                for (std::size_t i = 0; i < gens.size(); ++i)
                    scale /= rat_pow(gens[i].leading_coeff(),
                                     static_cast<unsigned long>((*dec)[i]));
                res.expression.emplace_back(scale, *dec);
            }
            res.status = Membership::Status::yes;
            return res;
        }

        // graded linear algebra in degree deg p, modulo the relations when a
        // quotient ambient is given
        long deg = p.wdeg();
        std::vector<long> gdeg;
        for (auto& g : gens) gdeg.push_back(g.wdeg());
        std::vector<Monomial> monos = ambient ? ambient->piece_basis(deg)
                                              : p.ring()->monomials_of_degree(deg);
        auto coords = [&](const Poly& q) {
            Poly r = ambient ? ambient->nf(q) : q;
            QVec v(monos.size(), Rational(0));
            for (auto& [m, c] : r.terms())
                for (std::size_t k = 0; k < monos.size(); ++k)
                    if (monos[k] == m) { v[k] = c; break; }
            return v;
        };
        SpanBuilder span(monos.size());
        std::vector<std::vector<long>> product_exps;
        std::vector<long> cur(gens.size(), 0);
        detail::weighted_exponents(gdeg, deg, 0, cur, [&](const std::vector<long>& e) {
            Poly prod(p.ring(), Rational(1));
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (e[i] > 0) prod *= gens[i].pow(e[i]);
            if (span.insert(coords(prod)))
                product_exps.push_back(e);
        });
        auto sol = span.coordinates(coords(p));
        if (!sol) {
            res.status = Membership::Status::no;
            return res;
        }
        for (std::size_t k = 0; k < product_exps.size(); ++k)
            if ((*sol)[k] != 0)
                res.expression.emplace_back((*sol)[k], product_exps[k]);
        res.status = Membership::Status::yes;
        return res;
    }

} // namespace cylforge
#endif
