/**
 * @file groebner.hpp
 * @brief Buchberger's algorithm and normal forms for ideals in a weighted
 *        polynomial ring. Plain critical-pair loop with the coprime
 *        leading-monomial criterion; instances here are tiny.
 *
 * A global step cap guards against runaway inputs (exceeding it raises
 * resource_error); the CLI wires it to CYLFORGE_MAX_STEPS.
 */
#ifndef CYLFORGE_GROEBNER_HH
#define CYLFORGE_GROEBNER_HH

#include <algorithm>
#include <vector>

#include <cylforge/polynomial.hpp>

namespace cylforge {

    inline long& groebner_step_cap() {
        static long cap = 1000000;
        return cap;
    }

    /// Fully reduced remainder of p modulo basis (every term reduced).
    inline Poly normal_form(const Poly& p, const std::vector<Poly>& basis) {
        if (p.is_zero() || basis.empty()) return p;
        Poly h = p;
        Poly r(p.ring());
        while (!h.is_zero()) {
            bool divided = false;
            const Monomial& lm = h.leading_monomial();
            for (const auto& g : basis) {
                if (g.is_zero()) continue;
                if (!mono_divides(g.leading_monomial(), lm)) continue;
                Monomial q = mono_div(lm, g.leading_monomial());
                Rational c = h.leading_coeff() / g.leading_coeff();
                h -= g.term_multiple(q, c);
                divided = true;
                break;
            }
            if (!divided) {
                r.mutable_terms().push_back(h.terms().front());
                Poly lt(p.ring(), h.leading_monomial(), h.leading_coeff());
                h -= lt;
            }
        }
        return r;
    }

    inline Poly s_polynomial(const Poly& f, const Poly& g) {
        Monomial l = mono_lcm(f.leading_monomial(), g.leading_monomial());
        Poly a = f.term_multiple(mono_div(l, f.leading_monomial()), 1 / f.leading_coeff());
        Poly b = g.term_multiple(mono_div(l, g.leading_monomial()), 1 / g.leading_coeff());
        return a - b;
    }

    namespace detail {

        inline void make_monic(Poly& f) {
            if (!f.is_zero() && f.leading_coeff() != 1)
                f = f.scaled(1 / f.leading_coeff());
        }

        /// Removes redundant elements and fully reduces each survivor.
        inline void interreduce(std::vector<Poly>& g) {
            for (std::size_t i = 0; i < g.size();) {
                bool redundant = false;
                for (std::size_t j = 0; j < g.size(); ++j) {
                    if (i == j || g[j].is_zero()) continue;
                    if (mono_divides(g[j].leading_monomial(), g[i].leading_monomial())) {
                        redundant = true;
                        break;
                    }
                }
                if (redundant) g.erase(g.begin() + i);
                else ++i;
            }
            for (std::size_t i = 0; i < g.size(); ++i) {
                std::vector<Poly> others;
                others.reserve(g.size() - 1);
                for (std::size_t j = 0; j < g.size(); ++j)
                    if (j != i) others.push_back(g[j]);
                g[i] = normal_form(g[i], others);
                make_monic(g[i]);
            }
        }

    } // namespace detail

    /// Reduced Groebner basis of the ideal generated by gens, monic and
    /// sorted by descending leading monomial (canonical for the ring order).
    inline std::vector<Poly> groebner(std::vector<Poly> gens) {
        std::vector<Poly> g;
        for (auto& f : gens)
            if (!f.is_zero()) {
                detail::make_monic(f);
                g.push_back(std::move(f));
            }
        if (g.empty()) return g;
        const RingPtr ring = g.front().ring();

        struct Pair { std::size_t i, j; };
        std::vector<Pair> pairs;
        auto push_pairs = [&](std::size_t upto) {
            for (std::size_t i = 0; i < upto; ++i)
                pairs.push_back({i, upto});
        };
        for (std::size_t k = 1; k < g.size(); ++k) push_pairs(k);

        auto pair_key = [&](const Pair& p) {
            Monomial l = mono_lcm(g[p.i].leading_monomial(), g[p.j].leading_monomial());
            return std::tuple<long, Monomial, std::size_t, std::size_t>(
                ring->wdeg(l), l, p.i, p.j);
        };

        long steps = 0;
        while (!pairs.empty()) {
            // normal selection: smallest lcm degree first, ties broken
            // deterministically
            std::size_t best = 0;
            auto best_key = pair_key(pairs[0]);
            for (std::size_t k = 1; k < pairs.size(); ++k) {
                auto key = pair_key(pairs[k]);
                if (key < best_key) { best = k; best_key = key; }
            }
            Pair cp = pairs[best];
            pairs.erase(pairs.begin() + best);

            if (mono_coprime(g[cp.i].leading_monomial(), g[cp.j].leading_monomial()))
                continue; // first criterion

            if (++steps > groebner_step_cap())
                throw resource_error("groebner step cap exceeded (" +
                                     std::to_string(groebner_step_cap()) + ")");

            Poly h = normal_form(s_polynomial(g[cp.i], g[cp.j]), g);
            if (h.is_zero()) continue;
            detail::make_monic(h);
            g.push_back(std::move(h));
            push_pairs(g.size() - 1);
        }

        detail::interreduce(g);
        std::sort(g.begin(), g.end(), [&](const Poly& a, const Poly& b) {
            return ring->compare(a.leading_monomial(), b.leading_monomial()) > 0;
        });
        return g;
    }

    /// Ideal membership via normal form against a Groebner basis.
    inline bool in_ideal(const Poly& p, const std::vector<Poly>& gb) {
        return normal_form(p, gb).is_zero();
    }

} // namespace cylforge
#endif
