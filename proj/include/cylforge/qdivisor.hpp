/**
 * @file qdivisor.hpp
 * @brief Q-divisors on the projective line and the divisor side of the
 *        theory: the coprime-triple divisor normalization, the section-count
 *        identity with the Hilbert function, the two-point fractional-
 *        support cylindricity criterion, the Veronese divisibility
 *        criterion, the cylindricity spectrum, and the Veronese principal
 *        cylinder witness.
 *
 * Points are the labels 0, 1, inf, explicit rational coordinates, or one
 * symbolic generic point; on the line every integral degree-0 divisor is
 * principal, so coordinates never matter beyond membership in the support.
 */
#ifndef CYLFORGE_QDIVISOR_HH
#define CYLFORGE_QDIVISOR_HH

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <cylforge/graded_domain.hpp>
#include <cylforge/rational.hpp>

namespace cylforge {

    struct PointP1 {
        enum class Kind { zero, one, infinity, coordinate, generic };
        Kind kind = Kind::zero;
        Rational coord; ///< used when kind == coordinate

        static PointP1 zero() { return {Kind::zero, Rational(0)}; }
        static PointP1 one() { return {Kind::one, Rational(1)}; }
        static PointP1 inf() { return {Kind::infinity, Rational(0)}; }
        static PointP1 generic() { return {Kind::generic, Rational(0)}; }
        static PointP1 at(const Rational& c) {
            if (c == 0) return zero();
            if (c == 1) return one();
            return {Kind::coordinate, c};
        }

        bool operator==(const PointP1& o) const {
            if (kind != o.kind) return false;
            return kind != Kind::coordinate || coord == o.coord;
        }
        bool operator<(const PointP1& o) const {
            if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
            return kind == Kind::coordinate && coord < o.coord;
        }

        std::string str() const {
            switch (kind) {
                case Kind::zero: return "0";
                case Kind::one: return "1";
                case Kind::infinity: return "inf";
                case Kind::generic: return "generic";
                default: return to_string(coord);
            }
        }

        static PointP1 parse(const std::string& s) {
            if (s == "inf" || s == "infinity" || s == "oo") return inf();
            if (s == "generic") return generic();
            return at(parse_rational(s));
        }
    };

    /// Formal Q-linear combination of distinct points of P^1; zero
    /// coefficients are never stored.
    class QDivisor {
    public:
        QDivisor() = default;

        void add(const PointP1& p, const Rational& c) {
            if (c == 0) return;
            for (auto& [q, a] : terms_) {
                if (q == p) {
                    a += c;
                    if (a == 0)
                        terms_.erase(std::find_if(terms_.begin(), terms_.end(),
                                                  [&](auto& t) { return t.first == p; }));
                    return;
                }
            }
            terms_.emplace_back(p, c);
            std::sort(terms_.begin(), terms_.end(),
                      [](auto& a, auto& b) { return a.first < b.first; });
        }

        const std::vector<std::pair<PointP1, Rational>>& terms() const { return terms_; }

        Rational coeff(const PointP1& p) const {
            for (auto& [q, c] : terms_)
                if (q == p) return c;
            return Rational(0);
        }

        Rational degree() const {
            Rational d(0);
            for (auto& [q, c] : terms_) d += c;
            return d;
        }

        QDivisor scaled(const Rational& r) const {
            QDivisor out;
            for (auto& [q, c] : terms_) out.add(q, r * c);
            return out;
        }

        QDivisor operator+(const QDivisor& o) const {
            QDivisor out = *this;
            for (auto& [q, c] : o.terms_) out.add(q, c);
            return out;
        }
        QDivisor operator-(const QDivisor& o) const { return *this + o.scaled(-1); }

        /// Coefficient-wise fractional part (the Seifert divisor of the cone).
        QDivisor fractional_part() const {
            QDivisor out;
            for (auto& [q, c] : terms_) out.add(q, cylforge::fractional_part(c));
            return out;
        }

        QDivisor floor() const {
            QDivisor out;
            for (auto& [q, c] : terms_) out.add(q, Rational(rational_floor(c)));
            return out;
        }

        bool is_integral() const {
            for (auto& [q, c] : terms_)
                if (!is_integer(c)) return false;
            return true;
        }

        bool is_effective() const {
            for (auto& [q, c] : terms_)
                if (c < 0) return false;
            return true;
        }

        std::string str() const {
            if (terms_.empty()) return "0";
            std::string s;
            bool first = true;
            for (auto& [q, c] : terms_) {
                Rational a = c;
                if (first) {
                    if (a < 0) { s += "-"; a = -a; }
                } else {
                    s += (a < 0) ? " - " : " + ";
                    if (a < 0) a = -a;
                }
                first = false;
                if (a != 1) s += to_string(a) + "*";
                s += "[" + q.str() + "]";
            }
            return s;
        }

    private:
        std::vector<std::pair<PointP1, Rational>> terms_;
    };

    // ------------------------------------------------------------------
    // The coprime-triple divisor
    // ------------------------------------------------------------------

    /// The normalized divisor (alpha/a)[0] + (beta/b)[1] + (gamma/c)[inf]
    /// with alpha*bc + beta*ac + gamma*ab = 1, alpha in [0,a), beta in
    /// [0,b); its degree is 1/(abc). This is the polarization of the
    /// surface x^a + y^b + z^c = 0 over the line.
    inline QDivisor pham_brieskorn_divisor(long a, long b, long c) {
        if (a < 1 || b < 1 || c < 1)
            throw input_error("exponents must be positive");
        if (long_gcd(a, b) != 1 || long_gcd(a, c) != 1 || long_gcd(b, c) != 1)
            throw input_error("exponents must be pairwise coprime");
        BigInt alpha = (a == 1) ? 0 : mod_inverse(BigInt(b) * c % a, a);
        BigInt beta = (b == 1) ? 0 : mod_inverse(BigInt(a) * c % b, b);
        BigInt num = 1 - alpha * b * c - beta * a * c;
        BigInt gamma = num / (BigInt(a) * b);
        if (gamma * a * b != num)
            throw input_error("internal: triple normalization failed");
        QDivisor h;
        h.add(PointP1::zero(), make_rational(alpha, a));
        h.add(PointP1::one(), make_rational(beta, b));
        h.add(PointP1::inf(), make_rational(gamma, c));
        return h;
    }

    /// The weighted ring x^a + y^b + z^c with weights (bc, ac, ab), the
    /// quasicone presented by the divisor above.
    inline GradedDomainPtr pham_brieskorn_ring(long a, long b, long c) {
        auto ring = Ring::make({"x", "y", "z"}, {b * c, a * c, a * b});
        Poly rel = Poly::variable(ring, 0).pow(a) + Poly::variable(ring, 1).pow(b) +
                   Poly::variable(ring, 2).pow(c);
        return GradedDomain::make(ring, {rel});
    }

    // ------------------------------------------------------------------
    // Sections
    // ------------------------------------------------------------------

    /// Number of sections of floor(nu*H) on the line:
    /// max(0, sum_P floor(nu*coeff_P) + 1).
    inline long h0_floor(const QDivisor& h, long nu) {
        if (nu < 0) return 0;
        BigInt deg(0);
        for (auto& [q, c] : h.terms()) deg += rational_floor(Rational(nu) * c);
        BigInt ans = deg + 1;
        if (ans < 0) return 0;
        return static_cast<long>(ans.get_si());
    }

    // ------------------------------------------------------------------
    // Cylindricity criteria
    // ------------------------------------------------------------------

    /// Two-point criterion: the cone over (P^1, H) carries a nontrivial
    /// additive action iff the fractional part of H is supported on at most
    /// two points.
    inline bool liendo_cylindrical(const QDivisor& h) {
        if (!(h.degree() > 0))
            throw input_error("criterion needs an ample divisor (positive degree)");
        return h.fractional_part().terms().size() <= 2;
    }

    /// Veronese divisibility criterion for the coprime triple: the d-th
    /// Veronese cone of x^a + y^b + z^c is cylindrical iff one of a, b, c
    /// divides d. Computed from the divisibility test and asserted against
    /// the two-point criterion on d*H.
    inline bool veronese_cylindrical_pb(long a, long b, long c, long d) {
        if (d < 1) throw input_error("Veronese index must be positive");
        bool divides = (d % a == 0) || (d % b == 0) || (d % c == 0);
        bool twopoint = liendo_cylindrical(pham_brieskorn_divisor(a, b, c).scaled(d));
        if (divides != twopoint)
            throw input_error("criterion coherence violated for (" + std::to_string(a) + "," +
                              std::to_string(b) + "," + std::to_string(c) + "), d = " +
                              std::to_string(d));
        return divides;
    }

    // ------------------------------------------------------------------
    // Cylindricity spectrum
    // ------------------------------------------------------------------

    struct SpectrumWitness {
        Rational r;
        PointP1 point;
        QDivisor d; ///< the effective divisor r*degH*[P]
    };

    struct SpectrumReport {
        QDivisor h;           ///< the representative used
        long max_numerator = 0;
        long max_denominator = 0;
        std::vector<SpectrumWitness> members;
        std::vector<Rational> primitive_members;
        bool dense = false;   ///< some point admits every positive rational
        std::vector<PointP1> dense_points;
    };

    /// On the line a cylinder complement is a single point, so r is in the
    /// spectrum iff for some point P the divisor D = (r deg H)[P] is
    /// effective with rH - D integral (of degree 0, hence principal).
    /// Candidate points: the support of H plus one generic point.
    inline bool spectrum_member(const QDivisor& h, const Rational& r, const PointP1& p) {
        if (!(r > 0)) return false;
        QDivisor d;
        d.add(p, r * h.degree());
        return (h.scaled(r) - d).is_integral();
    }

    inline SpectrumReport cylindricity_spectrum(const QDivisor& h, long max_num = 100,
                                                long max_den = 10) {
        if (!(h.degree() > 0))
            throw input_error("spectrum needs an ample divisor (positive degree)");
        SpectrumReport rep;
        rep.h = h;
        rep.max_numerator = max_num;
        rep.max_denominator = max_den;

        std::vector<PointP1> candidates;
        for (auto& [q, c] : h.terms()) candidates.push_back(q);
        candidates.push_back(PointP1::generic());

        for (auto& pt : candidates) {
            // the membership conditions at pt are r*c_q integral for every
            // support point q != pt, plus r*(c_pt - deg H) integral; they
            // are all vacuous exactly when supp H is contained in {pt},
            // and then every positive rational qualifies (the dense ray)
            bool any_constraint = false;
            for (auto& [q, c] : h.terms())
                if (!(q == pt)) any_constraint = true;
            if (h.coeff(pt) != h.degree()) any_constraint = true;
            if (!any_constraint) {
                rep.dense = true;
                rep.dense_points.push_back(pt);
            }
        }

        for (long q = 1; q <= max_den; ++q)
            for (long p = 1; p <= max_num; ++p) {
                if (long_gcd(p, q) != 1) continue;
                Rational r = make_rational(p, q);
                for (auto& pt : candidates) {
                    if (spectrum_member(h, r, pt)) {
                        QDivisor d;
                        d.add(pt, r * h.degree());
                        rep.members.push_back({r, pt, d});
                        break;
                    }
                }
            }
        std::sort(rep.members.begin(), rep.members.end(),
                  [](const SpectrumWitness& a, const SpectrumWitness& b) { return a.r < b.r; });

        for (auto& w : rep.members) {
            bool divisible = false;
            for (auto& w2 : rep.members) {
                if (w2.r == w.r) continue;
                Rational q = w.r / w2.r;
                if (is_integer(q) && q > 1) { divisible = true; break; }
            }
            if (!divisible) rep.primitive_members.push_back(w.r);
        }
        return rep;
    }

    // ------------------------------------------------------------------
    // Veronese principal cylinder witness
    // ------------------------------------------------------------------

    struct VeroneseCylinderWitness {
        long p = 0, q = 0;        ///< D ~ (p/q) H, coprime
        QDivisor h_divisor;       ///< H
        QDivisor d_divisor;       ///< D, effective, supported off the cylinder
        QDivisor phi_q_divisor;   ///< div(phi^q) = qD - pH, integral of degree 0
        long section_degree = 0;  ///< the witness section lives in A_p
        /// When a ring is attached and dim A_p = 1, the section realized as
        /// a ring element.
        std::optional<Poly> section;
        long section_space_dim = -1;
    };

    /// The principal cylinder in the p-th Veronese cone attached to an
    /// H-polar cylinder datum D ~ (p/q)H on the line: the section
    /// h = phi^q u^p lies in A_p, its zero set is supp D, and
    /// (A^(p))_h = (A^(p))_(h)[h, h^(-1)] is a cylinder over Z x A^1_*.
    inline VeroneseCylinderWitness veronese_cylinder(long p, long q, const QDivisor& d,
                                                     const QDivisor& h,
                                                     const GradedDomain* ring = nullptr) {
        if (p <= 0 || q <= 0) throw input_error("p, q must be positive");
        if (long_gcd(p, q) != 1)
            throw input_error("p/q must be in lowest terms (normalize the ray)");
        if (!d.is_effective())
            throw input_error("D must be effective");
        VeroneseCylinderWitness w;
        w.p = p;
        w.q = q;
        w.h_divisor = h;
        w.d_divisor = d;
        w.phi_q_divisor = d.scaled(q) - h.scaled(p);
        if (!w.phi_q_divisor.is_integral())
            throw input_error("qD - pH is not integral: D is not linearly equivalent "
                              "to (p/q)H");
        if (w.phi_q_divisor.degree() != 0)
            throw input_error("qD - pH has nonzero degree");
        w.section_degree = p;
        if (ring) {
            long dim = ring->hilbert_dim(p);
            w.section_space_dim = dim;
            if (h0_floor(h, p) != dim)
                throw input_error("attached ring disagrees with H: dim A_" +
                                  std::to_string(p) + " = " + std::to_string(dim) +
                                  " but the divisor gives " + std::to_string(h0_floor(h, p)));
            if (dim == 1) {
                auto basis = ring->piece_basis(p);
                w.section = Poly(ring->ring(), basis.front(), Rational(1));
            }
        }
        return w;
    }

} // namespace cylforge
#endif
