/**
 * @file rational.hpp
 * @brief Exact integers and rationals (GMP-backed) with the helpers used
 *        throughout: floors, gcds, exact roots, parsing and printing.
 */
#ifndef CYLFORGE_RATIONAL_HH
#define CYLFORGE_RATIONAL_HH

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <string>

#include <cylforge/errors.hpp>

namespace cylforge {

    using BigInt   = mpz_class;
    // Always canonical: lowest terms, positive denominator (mpq invariant).
    using Rational = mpq_class;

    inline Rational make_rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw input_error("rational with zero denominator");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    inline BigInt rat_num(const Rational& r) { return r.get_num(); }
    inline BigInt rat_den(const Rational& r) { return r.get_den(); }

    /// Floor of a rational as an exact integer.
    inline BigInt rational_floor(const Rational& r) {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
        return q;
    }

    /// Fractional part r - floor(r), in [0, 1).
    inline Rational fractional_part(const Rational& r) {
        return r - Rational(rational_floor(r));
    }

    inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

    inline BigInt int_gcd(const BigInt& a, const BigInt& b) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return g;
    }

    inline long long_gcd(long a, long b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) { long t = a % b; a = b; b = t; }
        return a;
    }

    inline BigInt int_pow(const BigInt& base, unsigned long e) {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
        return r;
    }

    inline Rational rat_pow(const Rational& base, unsigned long e) {
        return Rational(int_pow(base.get_num(), e), int_pow(base.get_den(), e));
    }

    /// Exact n-th root of an integer, or nullopt if it is not a perfect power.
    inline std::optional<BigInt> exact_root(const BigInt& v, unsigned long n) {
        if (n == 0) return std::nullopt;
        if (v < 0 && n % 2 == 0) return std::nullopt;
        BigInt r;
        int exact = mpz_root(r.get_mpz_t(), v.get_mpz_t(), n);
        if (!exact) return std::nullopt;
        return r;
    }

    /// Exact n-th root of a rational, or nullopt.
    inline std::optional<Rational> exact_root(const Rational& v, unsigned long n) {
        auto p = exact_root(rat_num(v), n);
        if (!p) return std::nullopt;
        auto q = exact_root(rat_den(v), n);
        if (!q) return std::nullopt;
        return make_rational(*p, *q);
    }

    inline std::string to_string(const Rational& r) { return r.get_str(); }
    inline std::string to_string(const BigInt& z) { return z.get_str(); }

    /// Parses "p", "-p" or "p/q". Throws input_error on anything else.
    inline Rational parse_rational(const std::string& s) {
        if (s.empty()) throw input_error("empty rational literal");
        Rational r;
        if (r.set_str(s, 10) != 0)
            throw input_error("bad rational literal: '" + s + "'");
        if (r.get_den() == 0) throw input_error("zero denominator in '" + s + "'");
        r.canonicalize();
        return r;
    }

    /// Modular inverse in [0, m); requires gcd(a, m) = 1.
    inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
        BigInt inv;
        if (!mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
            throw input_error("not invertible: " + to_string(a) + " mod " + to_string(m));
        return inv;
    }

} // namespace cylforge
#endif
