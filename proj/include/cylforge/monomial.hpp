/**
 * @file monomial.hpp
 * @brief Exponent vectors and their elementary operations.
 */
#ifndef CYLFORGE_MONOMIAL_HH
#define CYLFORGE_MONOMIAL_HH

#include <algorithm>
#include <cstddef>
#include <vector>

namespace cylforge {

    /// A monomial is an exponent vector, one entry per ring variable.
    using Monomial = std::vector<long>;

    inline Monomial mono_one(std::size_t nvars) { return Monomial(nvars, 0); }

    inline bool mono_is_one(const Monomial& m) {
        return std::all_of(m.begin(), m.end(), [](long e) { return e == 0; });
    }

    inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
        return r;
    }

    inline bool mono_divides(const Monomial& a, const Monomial& b) {
        // a | b
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    }

    inline Monomial mono_div(const Monomial& b, const Monomial& a) {
        Monomial r(b);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= a[i];
        return r;
    }

    inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(a[i], b[i]);
        return r;
    }

    inline bool mono_coprime(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > 0 && b[i] > 0) return false;
        return true;
    }

    inline Monomial mono_pow(const Monomial& a, long e) {
        Monomial r(a);
        for (auto& x : r) x *= e;
        return r;
    }

    /// Descending pure-lex comparison (first variable most significant);
    /// used only for deterministic listing of graded-piece bases.
    inline bool mono_lex_greater(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }

} // namespace cylforge
#endif
