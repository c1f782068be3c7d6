/**
 * @file cylinder.hpp
 * @brief The constructive core: graded slice construction, the cyclic
 *        quotient F = A/(h-1) with its residue grading, and the polar
 *        cylinder certificate built from a homogeneous locally nilpotent
 *        derivation. Certificates carry bounded, exact verification data.
 */
#ifndef CYLFORGE_CYLINDER_HH
#define CYLFORGE_CYLINDER_HH

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <cylforge/derivation.hpp>
#include <cylforge/factor.hpp>
#include <cylforge/subalgebra.hpp>

namespace cylforge {

    // ------------------------------------------------------------------
    // Exact division in the quotient ring
    // ------------------------------------------------------------------

    /// q with q * den = num in A (homogeneous data), or nullopt. Unique in a
    /// domain when it exists.
    inline std::optional<Poly> divide_in(const GradedDomain& A, const Poly& num,
                                         const Poly& den) {
        if (den.is_zero()) return std::nullopt;
        Poly n = A.nf(num);
        if (n.is_zero()) return Poly(A.ring());
        long delta = n.wdeg() - den.wdeg();
        if (delta < 0) return std::nullopt;
        auto qbasis = A.piece_basis(delta);
        if (qbasis.empty()) return std::nullopt;
        auto tbasis = A.piece_basis(n.wdeg());
        QMat mat(tbasis.size(), QVec(qbasis.size(), Rational(0)));
        for (std::size_t j = 0; j < qbasis.size(); ++j) {
            Poly prod = A.nf(Poly(A.ring(), qbasis[j], Rational(1)) * den);
            QVec col = A.piece_coordinates(prod, tbasis);
            for (std::size_t i = 0; i < tbasis.size(); ++i) mat[i][j] = col[i];
        }
        auto sol = solve(mat, A.piece_coordinates(n, tbasis));
        if (!sol) return std::nullopt;
        return A.from_coordinates(*sol, qbasis);
    }

    // ------------------------------------------------------------------
    // Kernel algebra generators (shared by certificates)
    // ------------------------------------------------------------------

    /// Minimal algebra generators of ker D found degree-by-degree up to the
    /// bound, as (generator, degree) pairs.
    inline std::vector<std::pair<Poly, long>>
    kernel_algebra_generators(const Derivation& d, long bound) {
        const auto& A = *d.domain();
        std::vector<std::pair<Poly, long>> gens;
        std::vector<long> gdeg;
        for (long nu = 1; nu <= bound; ++nu) {
            auto kp = kernel_piece(d, nu);
            if (kp.empty()) continue;
            auto basis = A.piece_basis(nu);
            SpanBuilder span(basis.size());
            std::vector<long> cur(gdeg.size(), 0);
            detail::weighted_exponents(gdeg, nu, 0, cur, [&](const std::vector<long>& e) {
                Poly prod = A.constant(1);
                for (std::size_t i = 0; i < gens.size(); ++i)
                    if (e[i] > 0) prod *= gens[i].first.pow(e[i]);
                span.insert(A.piece_coordinates(prod, basis));
            });
            for (auto& v : kp)
                if (span.insert(A.piece_coordinates(v, basis))) {
                    gens.emplace_back(v, nu);
                    gdeg.push_back(nu);
                }
        }
        return gens;
    }

    // ------------------------------------------------------------------
    // Slice construction
    // ------------------------------------------------------------------

    struct SliceCertificate {
        GradedDomainPtr domain;
        Derivation der;
        Poly g;  ///< homogeneous, in ker D^2 \ ker D
        Poly h;  ///< h = D(g), nonzero, in ker D
        std::vector<std::pair<Poly, long>> kernel_generators; ///< of ker D, up to bound
        long verified_degree = 0;

        /// The slice as a fraction string g/h.
        std::string slice_str() const {
            if (!h.is_zero() && h.term_count() == 1 && mono_is_one(h.leading_monomial()) &&
                h.leading_coeff() == 1)
                return g.str();
            return "(" + g.str() + ")/(" + h.str() + ")";
        }
    };

    namespace detail {

        inline void require_homogeneous_lnd(const Derivation& d, long cap = 200) {
            if (d.is_zero()) throw input_error("derivation is zero");
            if (!d.is_homogeneous())
                throw input_error("construction needs a homogeneous derivation; "
                                  "take the principal component first");
            auto v = is_locally_nilpotent(d, cap);
            if (v.status == NilpotencyVerdict::Status::not_nilpotent)
                throw input_error("derivation is not locally nilpotent: " + v.witness);
            if (v.status == NilpotencyVerdict::Status::unknown)
                throw input_error("local nilpotency undecided within cap: " + v.witness);
        }

    } // namespace detail

    /// Minimal-degree homogeneous g in ker D^2 \ ker D by graded linear
    /// algebra; h = D(g); the certificate carries kernel generators of
    /// ker D up to the bound (h becomes invertible on the cylinder).
    inline SliceCertificate slice_construct(const Derivation& d, long degree_bound = 60) {
        detail::require_homogeneous_lnd(d);
        const auto& A = *d.domain();
        for (long nu = 1; nu <= degree_bound; ++nu) {
            auto basis = A.piece_basis(nu);
            if (basis.empty()) continue;
            auto k1 = kernel_piece(d, nu);
            SpanBuilder span1(basis.size());
            for (auto& v : k1) span1.insert(A.piece_coordinates(v, basis));
            // kernel of D^2 on the piece
            std::vector<Poly> k2;
            long deg2 = nu + 2 * d.degree();
            auto target = A.piece_basis(deg2);
            if (target.empty()) {
                for (auto& m : basis) k2.emplace_back(A.ring(), m, Rational(1));
            } else {
                QMat mat(target.size(), QVec(basis.size(), Rational(0)));
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    Poly im = d.apply_power(Poly(A.ring(), basis[j], Rational(1)), 2);
                    QVec col = A.piece_coordinates(im, target);
                    for (std::size_t i = 0; i < target.size(); ++i) mat[i][j] = col[i];
                }
                QMat ker = kernel_basis(mat, basis.size());
                rref(ker);
                for (auto& row : ker) k2.push_back(A.from_coordinates(row, basis));
            }
            std::vector<Poly> fresh;
            for (auto& v : k2)
                if (!span1.contains(A.piece_coordinates(v, basis)))
                    fresh.push_back(v);
            if (fresh.empty()) continue;
            SliceCertificate cert{d.domain(), d, canonical_pick(fresh), Poly(A.ring()),
                                  {}, degree_bound};
            cert.h = d.apply(cert.g);
            cert.kernel_generators = kernel_algebra_generators(d, degree_bound);
            return cert;
        }
        throw resource_error("no slice-producing element in ker D^2 \\ ker D up to degree " +
                             std::to_string(degree_bound));
    }

    /// As slice_construct, then multiplies (g, h) by a minimal positive-
    /// degree kernel element when deg h = 0, so the cylinder D_+(h) sits in
    /// the orbit space.
    inline SliceCertificate positive_degree_slice(const Derivation& d, long degree_bound = 60) {
        SliceCertificate cert = slice_construct(d, degree_bound);
        if (cert.h.wdeg() > 0) return cert;
        const auto& A = *d.domain();
        for (long alpha = 1; alpha <= degree_bound; ++alpha) {
            auto kp = kernel_piece(d, alpha);
            if (kp.empty()) continue;
            Poly a = canonical_pick(kp);
            cert.g = A.nf(a * cert.g);
            cert.h = A.nf(a * cert.h);
            return cert;
        }
        throw input_error("ker D lies in A_0 up to degree " + std::to_string(degree_bound) +
                          ": the construction assumes the orbit space has positive "
                          "dimension over Spec A_0");
    }

    /// Exact slice identities: D(h) = 0 and D(g) = h != 0, so D(s) = 1 in A_h.
    inline bool slice_identities_hold(const SliceCertificate& c) {
        const auto& A = *c.domain;
        if (c.h.is_zero()) return false;
        if (!c.der.apply(c.h).is_zero()) return false;
        return A.nf(c.der.apply(c.g) - c.h).is_zero();
    }

    /// Taylor kernel projection of a, cleared of denominators:
    /// sum_i (-1)^i/i! * g^i * h^(N-i) * D^i(a) with N+1 the nilpotency
    /// order of a. This equals h^N * pi(a) for the projection pi onto
    /// ker D along the slice, hence is killed by D.
    inline Poly taylor_projection_cleared(const SliceCertificate& c, const Poly& a) {
        const auto& A = *c.domain;
        std::vector<Poly> iter{A.nf(a)};
        while (!iter.back().is_zero())
            iter.push_back(c.der.apply(iter.back()));
        long n = static_cast<long>(iter.size()) - 1; // D^n(a) = 0
        if (n <= 0) return A.nf(a);
        long N = n - 1;
        Poly acc(A.ring());
        Rational fact(1);
        for (long i = 0; i <= N; ++i) {
            if (i > 0) fact *= Rational(i);
            Rational coeff = Rational((i % 2 == 0) ? 1 : -1) / fact;
            acc += (c.g.pow(i) * c.h.pow(N - i) * iter[i]).scaled(coeff);
        }
        return A.nf(acc);
    }

    inline bool taylor_projection_in_kernel(const SliceCertificate& c, const Poly& a) {
        return c.der.apply(taylor_projection_cleared(c, a)).is_zero();
    }

    // ------------------------------------------------------------------
    // Cyclic quotient F = A/(h-1)
    // ------------------------------------------------------------------

    struct CyclicQuotientData {
        GradedDomainPtr domain;
        Derivation der;
        Poly h;
        long m = 0;                       ///< deg h
        std::vector<long> residue_labels; ///< variable weights mod m
        std::vector<Poly> fiber_gb;       ///< GB of I + (h-1)
        FiberReport fiber;
        long n = 0;                       ///< order of {[i] : (ker Dbar)_[i] != 0}
        long k = 0;                       ///< m / n
        long kernel_index = 0;            ///< e(ker D) up to the bound
        bool lemma_consistent = false;    ///< k == e(ker D)
        long plain_reading_n = 0;         ///< from plain pieces F_[i]
        bool reading_disagreement = false;
        /// Generators of the invariant part F_[0] as a filtered algebra:
        /// (representative a in A_{m*level}, level); fraction a/h^level.
        std::vector<std::pair<Poly, long>> invariant_generators;
        long verified_degree = 0;
        bool injective_on_pieces = false; ///< rho injective on A_{m j} pieces

        Poly nf_F(const Poly& p) const { return normal_form(p, fiber_gb); }
    };

    namespace detail {

        /// Fixed monomial coordinates inside the normal-form space of an
        /// (inhomogeneous) quotient, frozen over a family of polynomials.
        class NfCoords {
        public:
            explicit NfCoords(RingPtr ring) : ring_(std::move(ring)) {}

            void collect(const Poly& p) {
                for (auto& [m, c] : p.terms())
                    if (std::find(monos_.begin(), monos_.end(), m) == monos_.end())
                        monos_.push_back(m);
            }
            void freeze() {
                std::sort(monos_.begin(), monos_.end(),
                          [&](const Monomial& a, const Monomial& b) {
                              return ring_->compare(a, b) > 0;
                          });
            }
            std::size_t size() const { return monos_.size(); }
            QVec coords(const Poly& p) const {
                QVec v(monos_.size(), Rational(0));
                for (auto& [m, c] : p.terms()) {
                    auto it = std::find(monos_.begin(), monos_.end(), m);
                    if (it == monos_.end())
                        throw input_error("monomial outside the frozen index");
                    v[static_cast<std::size_t>(it - monos_.begin())] = c;
                }
                return v;
            }

        private:
            RingPtr ring_;
            std::vector<Monomial> monos_;
        };

    } // namespace detail

    /// The quotient F = A/(h-1) for homogeneous h of degree m > 0 with
    /// D(h) = 0, carrying the residue grading, invariant-part generators and
    /// the kernel-index consistency data. The defining set for n is read on
    /// the kernel side, {[i] : (ker Dbar)_[i] != 0}; the plain reading is
    /// recorded too and any disagreement flagged.
    inline CyclicQuotientData cyclic_quotient(const Derivation& d, const Poly& h_in,
                                              long bound = 40) {
        detail::require_homogeneous_lnd(d);
        const auto& A = *d.domain();
        Poly h = A.nf(h_in);
        if (h.is_zero() || !h.is_homogeneous() || h.wdeg() <= 0)
            throw input_error("h must be homogeneous of positive degree and nonzero in A");
        if (!d.apply(h).is_zero())
            throw input_error("h is not in the kernel of the derivation");

        CyclicQuotientData q{d.domain(), d, h};
        q.m = h.wdeg();
        q.verified_degree = bound;
        for (long w : A.ring()->weights())
            q.residue_labels.push_back(((w % q.m) + q.m) % q.m);

        std::vector<Poly> fiber_ideal = A.relations();
        fiber_ideal.push_back(h - A.constant(1));
        q.fiber_gb = groebner(fiber_ideal);
        q.fiber = fiber_domain_check(A.ring(), fiber_ideal);

        // kernel reading of n: residue classes of degrees with a nonzero
        // kernel piece (homogeneous elements never die in F: a homogeneous
        // element of (h-1)A is zero)
        auto krep = kernel_saturation_index(d, std::max(bound, 2 * q.m));
        q.kernel_index = krep.index;
        long gcd_classes = q.m;
        for (long nu : krep.degrees) gcd_classes = long_gcd(gcd_classes, nu % q.m);
        if (gcd_classes == 0) gcd_classes = q.m;
        q.k = gcd_classes;
        q.n = q.m / q.k;
        q.lemma_consistent = (q.k == q.kernel_index);

        // plain reading: classes of degrees with A_nu != 0
        long gcd_plain = q.m;
        for (long nu = 1; nu <= std::max(bound, 2 * q.m); ++nu)
            if (A.hilbert_dim(nu) > 0) gcd_plain = long_gcd(gcd_plain, nu % q.m);
        if (gcd_plain == 0) gcd_plain = q.m;
        q.plain_reading_n = q.m / gcd_plain;
        q.reading_disagreement = (q.plain_reading_n != q.n);

        long jmax = bound / q.m;

        // rho injectivity on pieces A_{m j}
        q.injective_on_pieces = true;
        for (long j = 0; j <= jmax && q.injective_on_pieces; ++j) {
            detail::NfCoords idx(A.ring());
            std::vector<Poly> nfs;
            for (auto& mono : A.piece_basis(q.m * j)) {
                nfs.push_back(q.nf_F(Poly(A.ring(), mono, Rational(1))));
                idx.collect(nfs.back());
            }
            idx.freeze();
            SpanBuilder span(idx.size());
            for (auto& p : nfs)
                if (!span.insert(idx.coords(p))) { q.injective_on_pieces = false; break; }
        }

        // invariant-part generators: new directions of rho(A_{m j}) outside
        // products of earlier generators (levels sum <= j; h-bar = 1, so
        // lower levels embed identically)
        {
            std::vector<Poly> gens;
            std::vector<long> glevel;
            for (long j = 1; j <= jmax; ++j) {
                std::vector<Poly> prods;
                std::vector<long> levels_slack = glevel;
                levels_slack.push_back(1); // slack slot: multiply by h-bar = 1
                std::vector<long> cur(levels_slack.size(), 0);
                detail::weighted_exponents(levels_slack, j, 0, cur,
                                           [&](const std::vector<long>& e) {
                    Poly prod = A.constant(1);
                    for (std::size_t i = 0; i < gens.size(); ++i)
                        if (e[i] > 0) prod *= gens[i].pow(e[i]);
                    prods.push_back(q.nf_F(prod));
                });
                std::vector<Poly> reps;
                for (auto& mono : A.piece_basis(q.m * j))
                    reps.emplace_back(A.ring(), mono, Rational(1));
                detail::NfCoords idx(A.ring());
                for (auto& p : prods) idx.collect(p);
                std::vector<Poly> rep_nfs;
                for (auto& rp : reps) {
                    rep_nfs.push_back(q.nf_F(rp));
                    idx.collect(rep_nfs.back());
                }
                idx.freeze();
                SpanBuilder span(idx.size());
                for (auto& p : prods) span.insert(idx.coords(p));
                for (std::size_t t = 0; t < reps.size(); ++t)
                    if (span.insert(idx.coords(rep_nfs[t]))) {
                        gens.push_back(reps[t]);
                        glevel.push_back(j);
                        q.invariant_generators.emplace_back(reps[t], j);
                    }
            }
        }
        return q;
    }

    // ------------------------------------------------------------------
    // Polar cylinder certificate
    // ------------------------------------------------------------------

    /// A fraction num / f^level over a fixed homogeneous f; degree-0
    /// fractions satisfy wdeg(num) = level * wdeg(f).
    struct FFraction {
        Poly num;
        long level = 0;
    };

    struct PolarCylinderCertificate {
        GradedDomainPtr domain;
        Derivation der;
        Poly g, h, t, f;     ///< D(g) = h^hpow; f = h*t, fixed by D
        long hpow = 1;       ///< the slice fraction is s = g / h^hpow
        long m = 0;          ///< deg h
        long d = 0;          ///< -deg D
        long k = 0;          ///< e(ker D)
        long r = 0;          ///< d mod m
        long alpha = 0;      ///< deg t = k + alpha*m
        FFraction s1;        ///< the cylinder coordinate, s^k t^{-r}, over f
        /// Generators of the degree-0 coordinate ring (the localized
        /// invariant ring): kernel representative v with t-level l, the
        /// fraction being v / t^l (padded by h-powers to degree 0).
        std::vector<std::pair<Poly, long>> coordinate_generators;
        CyclicQuotientData quotient;
        long verified_degree = 0;
        std::vector<long> piece_dims; ///< dim A_{j * deg f}, j = 0..J, once verified
    };

    namespace detail {

        /// Reduces num / f^level to minimal level by exact division by f.
        inline FFraction reduce_fraction(const GradedDomain& A, const Poly& f, FFraction x) {
            x.num = A.nf(x.num);
            while (x.level > 0) {
                auto q = divide_in(A, x.num, f);
                if (!q) break;
                x.num = *q;
                --x.level;
            }
            return x;
        }

        /// Canonical f-fraction of num / (h^eh * t^et); negative exponents
        /// mean numerator powers. nullopt if division never closes under the
        /// cap.  Requires the datum to have fraction degree 0.
        inline std::optional<FFraction> fraction_of(const GradedDomain& A, const Poly& f,
                                                    const Poly& h, const Poly& t,
                                                    Poly num, long eh, long et,
                                                    long level_cap) {
            if (eh < 0) { num = A.nf(num * h.pow(-eh)); eh = 0; }
            if (et < 0) { num = A.nf(num * t.pow(-et)); et = 0; }
            Poly den = A.nf(h.pow(eh) * t.pow(et));
            for (long N = 0; N <= level_cap; ++N) {
                auto a = divide_in(A, A.nf(num * f.pow(N)), den);
                if (a) return reduce_fraction(A, f, FFraction{*a, N});
            }
            return std::nullopt;
        }

        inline FFraction fraction_mul(const GradedDomain& A, const Poly& f,
                                      const FFraction& a, const FFraction& b) {
            return reduce_fraction(A, f, FFraction{A.nf(a.num * b.num), a.level + b.level});
        }

        inline bool fractions_equal(const GradedDomain& A, const FFraction& a,
                                    const FFraction& b, const Poly& f) {
            return A.is_zero_in_quotient(a.num * f.pow(b.level) - b.num * f.pow(a.level));
        }

    } // namespace detail

    /// Checks a polar cylinder certificate piece by piece: f fixed by D,
    /// gcd(k, d) = 1, the s1 identity, and for every level j with
    /// j * deg f <= verified_degree the monomials in the coordinate
    /// generators and s1 of reduced level <= j are exactly dim A_{j deg f}
    /// many, linearly independent, hence a basis of the filtration piece.
    /// Fills piece_dims on success.
    inline bool verify_polar_cylinder(PolarCylinderCertificate& cert) {
        const auto& A = *cert.domain;
        if (cert.f.is_zero() || !cert.der.apply(cert.f).is_zero()) return false;
        if (long_gcd(cert.k, cert.d) != 1) return false;
        if (!A.is_zero_in_quotient(cert.f - A.nf(cert.h * cert.t))) return false;
        if (!cert.der.apply(cert.h).is_zero() || !cert.der.apply(cert.t).is_zero())
            return false;
        if (cert.hpow < 1) return false;
        if (!A.is_zero_in_quotient(cert.der.apply(cert.g) - cert.h.pow(cert.hpow)))
            return false;

        // the slice fraction s = g / h^hpow has degree d, so
        // s1 = s^k t^{-r} = g^k / (h^(hpow*k + p) t^r), p = (k d - r deg t)/m
        long degt = cert.t.wdeg();
        if ((cert.k * cert.d - cert.r * degt) % cert.m != 0) return false;
        long p = (cert.k * cert.d - cert.r * degt) / cert.m;
        {
            auto s1 = detail::fraction_of(A, cert.f, cert.h, cert.t,
                                          cert.g.pow(cert.k),
                                          cert.hpow * cert.k + p, cert.r,
                                          cert.verified_degree + cert.hpow * cert.k + 4);
            if (!s1) return false;
            if (!detail::fractions_equal(A, *s1, cert.s1, cert.f)) return false;
        }

        // coordinate generators: kernel membership, class, reduced fractions
        std::vector<FFraction> gen_frac;
        for (auto& [v, l] : cert.coordinate_generators) {
            if (!cert.der.apply(v).is_zero()) return false;
            long delta = v.wdeg() - l * degt;
            if (((delta % cert.m) + cert.m) % cert.m != 0) return false;
            auto fr = detail::fraction_of(A, cert.f, cert.h, cert.t, v, delta / cert.m, l,
                                          cert.verified_degree + l + 4);
            if (!fr) return false;
            gen_frac.push_back(*fr);
        }

        long M = cert.f.wdeg();
        long J = cert.verified_degree / M;
        cert.piece_dims.clear();

        // enumerate monomials of reduced level <= J over the generators and
        // s1, with a safety cap against runaway (which would itself falsify
        // the polynomial-ring claim)
        std::map<std::vector<long>, FFraction> monomials;
        std::vector<FFraction> factors = gen_frac;
        factors.push_back(cert.s1);
        long total_cap = 16;
        for (long j = 0; j <= J; ++j) total_cap += 2 * A.hilbert_dim(M * j);
        {
            std::vector<std::vector<long>> frontier{std::vector<long>(factors.size(), 0)};
            monomials.emplace(frontier.front(), FFraction{A.constant(1), 0});
            while (!frontier.empty()) {
                auto key = frontier.back();
                frontier.pop_back();
                FFraction cur = monomials.at(key);
                for (std::size_t i = 0; i < factors.size(); ++i) {
                    auto nk = key;
                    nk[i] += 1;
                    if (monomials.count(nk)) continue;
                    FFraction nx = detail::fraction_mul(A, cert.f, cur, factors[i]);
                    if (nx.level > J) continue;
                    if (static_cast<long>(monomials.size()) > total_cap) return false;
                    monomials.emplace(nk, nx);
                    frontier.push_back(nk);
                }
            }
        }

        for (long j = 0; j <= J; ++j) {
            auto basis = A.piece_basis(M * j);
            SpanBuilder span(basis.size());
            long count = 0;
            for (auto& [key, fr] : monomials) {
                if (fr.level > j) continue;
                Poly cleared = A.nf(fr.num * cert.f.pow(j - fr.level));
                if (!span.insert(A.piece_coordinates(cleared, basis))) return false;
                ++count;
            }
            if (count != static_cast<long>(basis.size())) return false;
            cert.piece_dims.push_back(static_cast<long>(basis.size()));
        }
        return true;
    }

    struct PolarCylinderOptions {
        long degree_bound = 60;     ///< search bound for g, kernel pieces, t
        long verified_degree = 40;  ///< graded pieces of A_(f) checked up to here
        std::optional<Poly> designated_h; ///< overrides the slice-derived h
    };

    /// The polar cylinder construction: from a homogeneous locally nilpotent
    /// derivation, produces f in ker D together with the presentation of
    /// A_(f) as a polynomial ring in s1 over the localized invariant ring,
    /// verified exactly on graded pieces. Reducible fibers abort with the
    /// factor witness; the caller may then designate h.
    inline PolarCylinderCertificate polar_cylinder(const Derivation& der,
                                                   PolarCylinderOptions opt = {}) {
        detail::require_homogeneous_lnd(der);
        const auto& A = *der.domain();
        long d = -der.degree();

        Poly g(A.ring()), h(A.ring());
        if (opt.designated_h) {
            h = A.nf(*opt.designated_h);
            if (h.is_zero() || !h.is_homogeneous() || h.wdeg() <= 0)
                throw input_error("designated h must be nonzero homogeneous of positive degree");
            if (!der.apply(h).is_zero())
                throw input_error("designated h is not in ker D");
        } else {
            auto cert = positive_degree_slice(der, opt.degree_bound);
            g = cert.g;
            h = cert.h;
        }

        // radical replacement h = h1^l -> h1 keeps the fiber reduced
        while (auto pw = perfect_power_root(h)) {
            h = A.nf(pw->first);
            if (h.is_zero() || !der.apply(h).is_zero())
                throw input_error("radical of h left ker D; designate h explicitly");
        }

        long m = h.wdeg();

        // solve D(g) = h^l for the smallest feasible l: after the radical
        // replacement the slice numerator may only exist against a power of
        // h (the slice fraction g/h^l lives in the localization)
        long hpow = 0;
        for (long l = 1; l * m + d <= opt.degree_bound; ++l) {
            long gdeg = l * m + d;
            if (gdeg < 0) continue;
            auto gbasis = A.piece_basis(gdeg);
            if (gbasis.empty()) continue;
            Poly target = A.nf(h.pow(l));
            auto hbasis = A.piece_basis(target.wdeg());
            QMat mat(hbasis.size(), QVec(gbasis.size(), Rational(0)));
            for (std::size_t j = 0; j < gbasis.size(); ++j) {
                QVec col = A.piece_coordinates(
                    der.apply(Poly(A.ring(), gbasis[j], Rational(1))), hbasis);
                for (std::size_t i = 0; i < hbasis.size(); ++i) mat[i][j] = col[i];
            }
            auto sol = solve(mat, A.piece_coordinates(target, hbasis));
            if (sol) {
                g = A.from_coordinates(*sol, gbasis);
                hpow = l;
                break;
            }
        }
        if (hpow == 0)
            throw input_error("no power of h = '" + h.str() +
                              "' is an image D(g) within the bound; designate a "
                              "different h");

        {
            std::vector<Poly> fiber_ideal = A.relations();
            fiber_ideal.push_back(h - A.constant(1));
            FiberReport fr = fiber_domain_check(A.ring(), fiber_ideal);
            if (fr.status == Irreducibility::reducible)
                throw input_error("fiber of h = '" + h.str() + "' at 1 is reducible (" +
                                  fr.detail + "); replace h by an irreducible factor or "
                                  "designate h");
            if (fr.status == Irreducibility::unknown)
                throw input_error("fiber of h = '" + h.str() + "' could not be certified "
                                  "irreducible (" + fr.detail + "); designate h");
        }

        PolarCylinderCertificate cert;
        cert.domain = der.domain();
        cert.der = der;
        cert.g = g;
        cert.h = h;
        cert.hpow = hpow;
        cert.m = m;
        cert.d = d;
        cert.verified_degree = opt.verified_degree;
        cert.quotient = cyclic_quotient(der, h, std::min(opt.verified_degree, opt.degree_bound));
        if (!cert.quotient.lemma_consistent)
            throw input_error("cyclic quotient index k disagrees with e(ker D) at the bound; "
                              "enlarge bounds or check e(A) = 1");
        cert.k = cert.quotient.k;
        cert.r = ((d % m) + m) % m;

        bool found_t = false;
        for (long alpha = 0; cert.k + alpha * m <= opt.degree_bound; ++alpha) {
            auto kp = kernel_piece(der, cert.k + alpha * m);
            if (kp.empty()) continue;
            cert.t = canonical_pick(kp);
            cert.alpha = alpha;
            found_t = true;
            break;
        }
        if (!found_t)
            throw resource_error("no kernel element of degree k + alpha*m up to " +
                                 std::to_string(opt.degree_bound));

        cert.f = A.nf(h * cert.t);

        // s1 = s^k t^{-r} = g^k / (h^(hpow*k + p) t^r), p balancing the degree
        long degt = cert.t.wdeg();
        long p = (cert.k * cert.d - cert.r * degt) / cert.m;
        {
            auto s1 = detail::fraction_of(A, cert.f, h, cert.t, g.pow(cert.k),
                                          hpow * cert.k + p, cert.r,
                                          opt.verified_degree + hpow * cert.k + 4);
            if (!s1)
                throw resource_error("could not express s1 over powers of f");
            cert.s1 = *s1;
        }

        // coordinate ring generators: kernel elements v with
        // deg v == k*l (mod m) at t-level l, discovered level by level
        // against products of earlier generators (cleared by t-bar). The
        // product enumeration is budgeted both by level and by A-degree so
        // that level-0 generators stay finite; degree truncation can only
        // add redundant generators, never lose spanning.
        {
            const auto& q = cert.quotient;
            long jmax = opt.verified_degree / cert.f.wdeg();
            long lmax = jmax + 2;
            long degt = cert.t.wdeg();
            std::vector<std::vector<Poly>> W(lmax + 1);
            for (long nu = 1; nu <= opt.degree_bound; ++nu) {
                auto kp = kernel_piece(der, nu);
                if (kp.empty()) continue;
                for (long l = 0; l <= lmax; ++l)
                    if (((nu - cert.k * l) % m + m) % m == 0)
                        for (auto& v : kp) W[l].push_back(v);
            }
            std::vector<Poly> gens;
            std::vector<long> glevel, gdeg;
            // recursive enumeration of exponents with level budget L and
            // A-degree budget dmax; slack level is spent on powers of t
            std::function<void(std::size_t, long, long, std::vector<long>&,
                               const std::function<void(const std::vector<long>&, long)>&)>
                enum_products = [&](std::size_t i, long lev, long dmax, std::vector<long>& e,
                                    const std::function<void(const std::vector<long>&, long)>& emit) {
                    if (i == gens.size()) {
                        for (long s = 0; s <= lev && s * degt <= dmax; ++s)
                            emit(e, s);
                        return;
                    }
                    long emax = gdeg[i] > 0 ? dmax / gdeg[i] : 0;
                    if (glevel[i] > 0) emax = std::min(emax, lev / glevel[i]);
                    for (long ee = emax; ee >= 0; --ee) {
                        e[i] = ee;
                        enum_products(i + 1, lev - ee * glevel[i], dmax - ee * gdeg[i], e, emit);
                    }
                    e[i] = 0;
                };
            for (long L = 0; L <= lmax; ++L) {
                long dmax = opt.degree_bound + L * degt;
                // group candidates by ascending degree; products are rebuilt
                // per group so powers of a fresh generator are available to
                // later groups
                std::map<long, std::vector<Poly>> by_degree;
                for (auto& v : W[L]) {
                    if (v.wdeg() == 0 && L == 0) continue;
                    by_degree[v.wdeg()].push_back(v);
                }
                for (auto& [cdeg, cands] : by_degree) {
                    std::vector<Poly> prods;
                    std::vector<long> e(gens.size(), 0);
                    enum_products(0, L, dmax, e,
                                  [&](const std::vector<long>& exps, long slack) {
                        Poly prod = A.constant(1);
                        for (std::size_t i = 0; i < gens.size(); ++i)
                            if (exps[i] > 0) prod *= gens[i].pow(exps[i]);
                        prod = A.nf(prod * cert.t.pow(slack));
                        prods.push_back(q.nf_F(prod));
                    });
                    std::vector<Poly> cand_nfs;
                    for (auto& v : cands) cand_nfs.push_back(q.nf_F(v));
                    detail::NfCoords idx(A.ring());
                    for (auto& pp : prods) idx.collect(pp);
                    for (auto& pp : cand_nfs) idx.collect(pp);
                    idx.freeze();
                    SpanBuilder span(idx.size());
                    for (auto& pp : prods) span.insert(idx.coords(pp));
                    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
                        if (span.insert(idx.coords(cand_nfs[ci]))) {
                            gens.push_back(cands[ci]);
                            glevel.push_back(L);
                            gdeg.push_back(cands[ci].wdeg());
                            cert.coordinate_generators.emplace_back(cands[ci], L);
                        }
                    }
                }
            }
        }

        if (!verify_polar_cylinder(cert))
            throw input_error("polar cylinder verification failed on a graded piece; "
                              "enlarge bounds");
        return cert;
    }

} // namespace cylforge
#endif
