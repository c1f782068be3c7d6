/**
 * @file factor.hpp
 * @brief Desk-scale factorization helpers: exact perfect-power roots of
 *        polynomials, univariate irreducibility over Q (rational roots,
 *        squarefree part, exact decision through degree 3), and the
 *        irreducibility classification of fiber ideals I + (h - 1).
 *
 * Everything here decides exactly or answers `unknown`; nothing guesses.
 */
#ifndef CYLFORGE_FACTOR_HH
#define CYLFORGE_FACTOR_HH

#include <optional>
#include <string>
#include <vector>

#include <cylforge/graded_domain.hpp>

namespace cylforge {

    /// Largest l >= 2 with h = root^l, found by leading-term root extraction.
    inline std::optional<std::pair<Poly, long>> perfect_power_root(const Poly& h) {
        if (h.is_zero() || h.term_count() == 0) return std::nullopt;
        long maxl = 0;
        for (long e : h.leading_monomial()) maxl = std::max(maxl, e);
        for (long l = maxl; l >= 2; --l) {
            // leading term must be an exact l-th power
            const Monomial& lm = h.leading_monomial();
            bool ok = true;
            Monomial rm(lm);
            for (auto& e : rm) {
                if (e % l != 0) { ok = false; break; }
                e /= l;
            }
            if (!ok) continue;
            auto rc = exact_root(h.leading_coeff(), static_cast<unsigned long>(l));
            if (!rc) continue;
            Poly u(h.ring(), rm, *rc);
            // grow u term by term: next term t = LT(h - u^l) / (l * LT(u)^(l-1))
            bool failed = false;
            for (;;) {
                Poly r = h - u.pow(l);
                if (r.is_zero()) break;
                Monomial denm = mono_pow(u.leading_monomial(), l - 1);
                if (!mono_divides(denm, r.leading_monomial())) { failed = true; break; }
                Monomial tm = mono_div(r.leading_monomial(), denm);
                if (h.ring()->compare(tm, u.terms().back().first) >= 0) { failed = true; break; }
                Rational tc = r.leading_coeff() /
                              (Rational(l) * rat_pow(u.leading_coeff(),
                                                     static_cast<unsigned long>(l - 1)));
                u += Poly(h.ring(), tm, tc);
            }
            if (!failed) return std::make_pair(u, l);
        }
        return std::nullopt;
    }

    // ------------------------------------------------------------------
    // Univariate irreducibility over Q
    // ------------------------------------------------------------------

    enum class Irreducibility { irreducible, reducible, unknown };

    inline const char* to_string(Irreducibility s) {
        switch (s) {
            case Irreducibility::irreducible: return "irreducible";
            case Irreducibility::reducible: return "reducible";
            default: return "unknown";
        }
    }

    namespace detail {

        /// Coefficients c[0..n] of a univariate polynomial, c[n] != 0.
        using UniPoly = std::vector<Rational>;

        inline long uni_deg(const UniPoly& p) {
            for (std::size_t i = p.size(); i-- > 0;)
                if (p[i] != 0) return static_cast<long>(i);
            return -1;
        }

        inline UniPoly uni_trim(UniPoly p) {
            while (!p.empty() && p.back() == 0) p.pop_back();
            return p;
        }

        inline UniPoly uni_rem(UniPoly a, const UniPoly& b) {
            long db = uni_deg(b);
            for (long da = uni_deg(a); da >= db && da >= 0; da = uni_deg(a)) {
                Rational f = a[da] / b[db];
                for (long i = 0; i <= db; ++i)
                    a[da - db + i] -= f * b[i];
                a[da] = 0;
            }
            return uni_trim(std::move(a));
        }

        inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
            a = uni_trim(std::move(a));
            b = uni_trim(std::move(b));
            while (uni_deg(b) >= 0) {
                UniPoly r = uni_rem(a, b);
                a = std::move(b);
                b = std::move(r);
            }
            return a;
        }

        inline UniPoly uni_derivative(const UniPoly& p) {
            UniPoly d;
            for (std::size_t i = 1; i < p.size(); ++i)
                d.push_back(p[i] * Rational(static_cast<long>(i)));
            return uni_trim(std::move(d));
        }

        /// Divisors of |n| up to a trial bound (exact for the small constants
        /// seen here; gives up past the bound).
        inline std::optional<std::vector<BigInt>> small_divisors(const BigInt& n) {
            BigInt a = abs(n);
            if (a == 0) return std::nullopt;
            std::vector<BigInt> divs;
            const long trial_cap = 1000000;
            BigInt i = 1;
            while (i * i <= a) {
                if (a % i == 0) {
                    divs.push_back(i);
                    divs.push_back(a / i);
                }
                ++i;
                if (i > trial_cap) return std::nullopt;
            }
            return divs;
        }

        /// Exact rational-root search via the rational root theorem.
        inline std::optional<Rational> rational_root(const UniPoly& p) {
            long d = uni_deg(p);
            if (d <= 0) return std::nullopt;
            // clear denominators
            BigInt lcm_den = 1;
            for (auto& c : p)
                lcm_den = lcm_den / int_gcd(lcm_den, rat_den(c)) * rat_den(c);
            std::vector<BigInt> zc(d + 1);
            for (long i = 0; i <= d; ++i)
                zc[i] = rat_num(p[i]) * (lcm_den / rat_den(p[i]));
            // strip powers of x
            long shift = 0;
            while (shift <= d && zc[shift] == 0) ++shift;
            if (shift > 0) return Rational(0);
            auto p_divs = small_divisors(zc[0]);
            auto q_divs = small_divisors(zc[d]);
            if (!p_divs || !q_divs) return std::nullopt;
            auto eval = [&](const Rational& x) {
                Rational acc(0);
                for (long i = d; i >= 0; --i) acc = acc * x + Rational(zc[i]);
                return acc;
            };
            for (auto& pn : *p_divs)
                for (auto& qd : *q_divs) {
                    Rational cand = make_rational(pn, qd);
                    if (eval(cand) == 0) return cand;
                    if (eval(-cand) == 0) return -cand;
                }
            return std::nullopt;
        }

        struct UniVerdict {
            Irreducibility status;
            std::string note;
        };

        inline UniVerdict univariate_irreducible(const UniPoly& p0) {
            UniPoly p = uni_trim(p0);
            long d = uni_deg(p);
            if (d <= 0) return {Irreducibility::reducible, "constant"};
            if (d == 1) return {Irreducibility::irreducible, "linear"};
            if (p[0] == 0) return {Irreducibility::reducible, "root 0"};
            if (auto r = rational_root(p))
                return {Irreducibility::reducible, "rational root " + to_string(*r)};
            if (d <= 3)
                return {Irreducibility::irreducible,
                        "degree <= 3 without a rational root"};
            UniPoly g = uni_gcd(p, uni_derivative(p));
            if (uni_deg(g) > 0)
                return {Irreducibility::reducible, "not squarefree"};
            return {Irreducibility::unknown,
                    "degree > 3, squarefree, no rational root: not decided at desk scale"};
        }

    } // namespace detail

    // ------------------------------------------------------------------
    // Fiber ideal classification
    // ------------------------------------------------------------------

    struct FiberReport {
        Irreducibility status = Irreducibility::unknown;
        std::string detail; ///< witness factor / reduction trail
    };

    /// Classifies Q[vars]/(ideal) as a domain or not, by Groebner reduction,
    /// elimination of pinned variables (v - rest with v absent from rest),
    /// and a univariate test on what remains.
    inline FiberReport fiber_domain_check(const RingPtr& ring, std::vector<Poly> ideal) {
        FiberReport rep;
        auto gb = groebner(ideal);
        if (gb.empty()) {
            rep.status = Irreducibility::irreducible;
            rep.detail = "zero ideal: polynomial ring";
            return rep;
        }
        if (gb.size() == 1 && mono_is_one(gb.front().leading_monomial())) {
            rep.status = Irreducibility::reducible;
            rep.detail = "unit ideal: quotient is the zero ring";
            return rep;
        }

        // eliminate pinned variables
        std::size_t n = ring->nvars();
        std::vector<bool> eliminated(n, false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t gi = 0; gi < gb.size() && !changed; ++gi) {
                const Poly& g = gb[gi];
                if (g.is_zero()) continue;
                const Monomial& lm = g.leading_monomial();
                long v = -1, total = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    total += lm[k];
                    if (lm[k] == 1) v = static_cast<long>(k);
                }
                if (total != 1 || v < 0) continue; // leading term must be one bare variable
                // rest must not involve v
                Poly rest = g - Poly(ring, lm, g.leading_coeff());
                bool involves = false;
                for (auto& [m, c] : rest.terms())
                    if (m[v] != 0) involves = true;
                if (involves) continue;
                Poly value = rest.scaled(-1 / g.leading_coeff());
                std::vector<Poly> next;
                for (std::size_t gj = 0; gj < gb.size(); ++gj) {
                    if (gj == gi) continue;
                    Poly s = gb[gj].substituted(v, value);
                    if (!s.is_zero()) next.push_back(s);
                }
                eliminated[v] = true;
                gb = next.empty() ? std::vector<Poly>{} : groebner(next);
                changed = true;
            }
        }

        if (gb.empty()) {
            rep.status = Irreducibility::irreducible;
            rep.detail = "pinned variables eliminate all relations: polynomial ring";
            return rep;
        }
        if (gb.size() == 1 && mono_is_one(gb.front().leading_monomial())) {
            rep.status = Irreducibility::reducible;
            rep.detail = "unit ideal after elimination";
            return rep;
        }

        if (gb.size() == 1) {
            const Poly& g = gb.front();
            // common monomial factor?
            Monomial common = g.terms().front().first;
            for (auto& [m, c] : g.terms())
                for (std::size_t k = 0; k < n; ++k)
                    common[k] = std::min(common[k], m[k]);
            if (!mono_is_one(common)) {
                rep.status = Irreducibility::reducible;
                rep.detail = "common monomial factor " +
                             Poly(ring, common, Rational(1)).str();
                return rep;
            }
            if (auto pw = perfect_power_root(g)) {
                rep.status = Irreducibility::reducible;
                rep.detail = "perfect power: (" + pw->first.str() + ")^" +
                             std::to_string(pw->second);
                return rep;
            }
            // univariate in exactly one variable?
            long uvar = -1;
            bool univariate = true;
            for (auto& [m, c] : g.terms())
                for (std::size_t k = 0; k < n; ++k)
                    if (m[k] > 0) {
                        if (uvar < 0) uvar = static_cast<long>(k);
                        else if (uvar != static_cast<long>(k)) univariate = false;
                    }
            if (univariate && uvar >= 0) {
                long dmax = 0;
                for (auto& [m, c] : g.terms()) dmax = std::max(dmax, m[uvar]);
                detail::UniPoly up(dmax + 1, Rational(0));
                for (auto& [m, c] : g.terms()) up[m[uvar]] = c;
                auto verdict = detail::univariate_irreducible(up);
                rep.status = verdict.status;
                rep.detail = "univariate in " + ring->var_name(uvar) + ": " + verdict.note;
                return rep;
            }
            rep.status = Irreducibility::unknown;
            rep.detail = "single multivariate relation, not decided at desk scale";
            return rep;
        }

        rep.status = Irreducibility::unknown;
        rep.detail = "several relations remain after elimination, not decided at desk scale";
        return rep;
    }

} // namespace cylforge
#endif
