/**
 * @file derivation.hpp
 * @brief Derivations of a graded domain given by generator images: Leibniz
 *        extension, well-definedness on the quotient, homogeneous
 *        decomposition, local nilpotency verdicts, graded kernels, the
 *        kernel saturation index, and replicas into Veronese subrings.
 */
#ifndef CYLFORGE_DERIVATION_HH
#define CYLFORGE_DERIVATION_HH

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <cylforge/graded_domain.hpp>

namespace cylforge {

    class Derivation {
    public:
        /// Empty state for containers/certificates; not usable until assigned.
        Derivation() = default;

        /// Extends the generator images by the Leibniz rule and verifies the
        /// derivation descends to the quotient: the image of every relation
        /// must reduce to zero modulo the relation ideal.
        Derivation(GradedDomainPtr domain, std::vector<Poly> images)
            : domain_(std::move(domain)), images_(std::move(images)) {
            if (images_.size() != domain_->nvars())
                throw input_error("need one image per variable");
            for (auto& im : images_) {
                if (!same_ambient(im.ring(), domain_->ring()))
                    throw input_error("derivation image in a different ring");
                im = domain_->nf(im);
            }
            for (const auto& r : domain_->relations()) {
                Poly dr = apply_raw(r);
                Poly rem = domain_->nf(dr);
                if (!rem.is_zero())
                    throw input_error("not a derivation of the quotient: image of relation '" +
                                      r.str() + "' has nonzero normal form '" + rem.str() + "'");
            }
        }

        const GradedDomainPtr& domain() const { return domain_; }
        const std::vector<Poly>& images() const { return images_; }
        const RingPtr& ring() const { return domain_->ring(); }

        bool is_zero() const {
            for (auto& im : images_) if (!im.is_zero()) return false;
            return true;
        }

        /// Image of p, reduced to normal form.
        Poly apply(const Poly& p) const { return domain_->nf(apply_raw(p)); }

        Poly apply_power(Poly p, long k) const {
            for (long i = 0; i < k && !p.is_zero(); ++i) p = apply(p);
            return p;
        }

        /// Homogeneous decomposition: pairs (degree d, component), ascending
        /// in d. The degree-d component sends a weight-w variable to the
        /// (w+d)-homogeneous part of its image.
        std::vector<std::pair<long, Derivation>> degree_components() const {
            std::map<long, std::vector<Poly>> parts;
            const auto& w = ring()->weights();
            for (std::size_t i = 0; i < images_.size(); ++i) {
                for (auto& [deg, comp] : images_[i].homogeneous_components()) {
                    long d = deg - w[i];
                    auto it = parts.find(d);
                    if (it == parts.end()) {
                        std::vector<Poly> imgs(images_.size(), Poly(ring()));
                        imgs[i] = comp;
                        parts.emplace(d, std::move(imgs));
                    } else {
                        it->second[i] = comp;
                    }
                }
            }
            std::vector<std::pair<long, Derivation>> out;
            for (auto& [d, imgs] : parts)
                out.emplace_back(d, Derivation(domain_, imgs));
            return out;
        }

        bool is_homogeneous() const {
            return degree_components().size() <= 1;
        }

        /// Degree of a nonzero homogeneous derivation.
        long degree() const {
            auto comps = degree_components();
            if (comps.empty()) throw input_error("zero derivation has no degree");
            if (comps.size() > 1) throw input_error("derivation is not homogeneous");
            return comps.front().first;
        }

        /// Highest-degree homogeneous component of a nonzero derivation.
        Derivation principal_component() const {
            auto comps = degree_components();
            if (comps.empty()) throw input_error("zero derivation has no principal component");
            return comps.back().second;
        }

        Derivation scaled_by(const Poly& a) const {
            std::vector<Poly> imgs;
            imgs.reserve(images_.size());
            for (auto& im : images_) imgs.push_back(domain_->nf(a * im));
            return Derivation(domain_, imgs);
        }

        std::string str() const {
            std::string s;
            for (std::size_t i = 0; i < images_.size(); ++i) {
                if (images_[i].is_zero()) continue;
                if (!s.empty()) s += " + ";
                s += "(" + images_[i].str() + ")*d/d" + ring()->var_name(i);
            }
            return s.empty() ? "0" : s;
        }

        bool operator==(const Derivation& o) const { return images_ == o.images_; }

    private:
        Poly apply_raw(const Poly& p) const {
            Poly out(ring());
            for (std::size_t i = 0; i < images_.size(); ++i) {
                if (images_[i].is_zero()) continue;
                out += p.partial(i) * images_[i];
            }
            return out;
        }

        GradedDomainPtr domain_;
        std::vector<Poly> images_;
    };

    // ------------------------------------------------------------------
    // Local nilpotency
    // ------------------------------------------------------------------

    struct NilpotencyVerdict {
        enum class Status { nilpotent, not_nilpotent, unknown };
        enum class Reason { negative_degree_automatic, iteration, cap_exceeded };

        Status status = Status::unknown;
        Reason reason = Reason::cap_exceeded;
        /// For nilpotent: k per variable with D^k(var) = 0 (minimal).
        std::vector<long> vanishing_steps;
        /// For not_nilpotent: the surviving element and why it survives.
        std::string witness;

        bool nilpotent() const { return status == Status::nilpotent; }
    };

    inline const char* to_string(NilpotencyVerdict::Status s) {
        switch (s) {
            case NilpotencyVerdict::Status::nilpotent: return "nilpotent";
            case NilpotencyVerdict::Status::not_nilpotent: return "not_nilpotent";
            default: return "unknown";
        }
    }
    inline const char* to_string(NilpotencyVerdict::Reason r) {
        switch (r) {
            case NilpotencyVerdict::Reason::negative_degree_automatic:
                return "negative_degree_automatic";
            case NilpotencyVerdict::Reason::iteration: return "iteration";
            default: return "cap_exceeded";
        }
    }

    namespace detail {
        /// Looks for a scalar recurrence D^{k+1}(v) = c * D^k(v), c != 0,
        /// among consecutive iterates; such a recurrence certifies that no
        /// iterate ever vanishes.
        inline std::optional<std::string> eigen_recurrence(const std::vector<Poly>& iterates) {
            for (std::size_t k = 0; k + 1 < iterates.size(); ++k) {
                const Poly& a = iterates[k];
                const Poly& b = iterates[k + 1];
                if (a.is_zero() || b.is_zero()) continue;
                if (a.term_count() != b.term_count()) continue;
                Rational c = b.leading_coeff() / a.leading_coeff();
                if (b == a.scaled(c))
                    return "D^" + std::to_string(k + 1) + "(v) = " + to_string(c) +
                           " * D^" + std::to_string(k) + "(v)";
            }
            return std::nullopt;
        }
    } // namespace detail

    /// Decides local nilpotency where an exact argument exists, otherwise
    /// iterates up to cap. Negative homogeneous degree on a positively
    /// graded ring is automatic (degrees strictly decrease). Homogeneous
    /// degree zero is decided exactly on the finite-dimensional graded
    /// pieces. not_nilpotent is only ever claimed with a certificate.
    inline NilpotencyVerdict is_locally_nilpotent(const Derivation& d, long cap = 200) {
        NilpotencyVerdict v;
        const auto& A = *d.domain();
        std::size_t n = d.ring()->nvars();

        if (d.is_zero()) {
            v.status = NilpotencyVerdict::Status::nilpotent;
            v.reason = NilpotencyVerdict::Reason::iteration;
            v.vanishing_steps.assign(n, 1);
            return v;
        }

        auto comps = d.degree_components();
        bool homogeneous = comps.size() == 1;
        long deg = homogeneous ? comps.front().first : 0;

        if (homogeneous && deg < 0) {
            v.status = NilpotencyVerdict::Status::nilpotent;
            v.reason = NilpotencyVerdict::Reason::negative_degree_automatic;
            for (std::size_t i = 0; i < n; ++i) {
                Poly p = d.apply(A.var(i));
                long k = 1;
                while (!p.is_zero()) { p = d.apply(p); ++k; }
                v.vanishing_steps.push_back(k);
            }
            return v;
        }

        if (homogeneous && deg == 0) {
            // Each iterate of a generator stays in one finite-dimensional
            // piece; after dim-many steps the kernel filtration of the
            // restricted linear map has stabilized, deciding both ways.
            v.reason = NilpotencyVerdict::Reason::iteration;
            for (std::size_t i = 0; i < n; ++i) {
                long w = d.ring()->weights()[i];
                long bound = A.hilbert_dim(w);
                Poly p = A.nf(A.var(i));
                long k = 0;
                std::vector<Poly> iterates{p};
                while (!p.is_zero() && k <= bound) {
                    p = d.apply(p);
                    ++k;
                    iterates.push_back(p);
                }
                if (!p.is_zero()) {
                    v.status = NilpotencyVerdict::Status::not_nilpotent;
                    auto eig = detail::eigen_recurrence(iterates);
                    v.witness = "generator " + d.ring()->var_name(i) + ": D^" +
                                std::to_string(k) + " nonzero with dim A_" +
                                std::to_string(w) + " = " + std::to_string(bound) +
                                " (kernel filtration on the piece has stabilized)" +
                                (eig ? "; " + *eig : "");
                    return v;
                }
                v.vanishing_steps.push_back(k == 0 ? 1 : k);
            }
            v.status = NilpotencyVerdict::Status::nilpotent;
            return v;
        }

        // General case: iterate with cap; claim not_nilpotent only on a
        // scalar recurrence certificate.
        v.reason = NilpotencyVerdict::Reason::iteration;
        for (std::size_t i = 0; i < n; ++i) {
            Poly p = A.nf(A.var(i));
            std::vector<Poly> iterates{p};
            long k = 0;
            while (!p.is_zero() && k < cap) {
                p = d.apply(p);
                ++k;
                iterates.push_back(p);
                if (auto eig = detail::eigen_recurrence(iterates)) {
                    v.status = NilpotencyVerdict::Status::not_nilpotent;
                    v.witness = "generator " + d.ring()->var_name(i) + ": " + *eig;
                    return v;
                }
            }
            if (!p.is_zero()) {
                v.status = NilpotencyVerdict::Status::unknown;
                v.reason = NilpotencyVerdict::Reason::cap_exceeded;
                v.witness = "generator " + d.ring()->var_name(i) + " survived " +
                            std::to_string(cap) + " iterations without a certificate";
                return v;
            }
            v.vanishing_steps.push_back(k == 0 ? 1 : k);
        }
        v.status = NilpotencyVerdict::Status::nilpotent;
        return v;
    }

    // ------------------------------------------------------------------
    // Graded kernel
    // ------------------------------------------------------------------

    /// Basis of (ker D)_nu for a homogeneous derivation: solves the graded
    /// linear system on the standard-monomial basis. Canonical output:
    /// kernel vectors in reduced echelon form over the piece basis.
    inline std::vector<Poly> kernel_piece(const Derivation& d, long nu) {
        const auto& A = *d.domain();
        if (!d.is_homogeneous())
            throw input_error("kernel_piece needs a homogeneous derivation");
        auto basis = A.piece_basis(nu);
        std::vector<Poly> out;
        if (basis.empty()) return out;
        if (d.is_zero()) {
            for (auto& m : basis) out.emplace_back(A.ring(), m, Rational(1));
            return out;
        }
        auto target = A.piece_basis(nu + d.degree());
        if (target.empty()) {
            // the whole piece maps to the zero space
            for (auto& m : basis) out.emplace_back(A.ring(), m, Rational(1));
            return out;
        }
        std::size_t nb = basis.size(), nt = target.size();
        QMat mat(nt, QVec(nb, Rational(0)));
        for (std::size_t j = 0; j < nb; ++j) {
            Poly im = d.apply(Poly(A.ring(), basis[j], Rational(1)));
            QVec col = A.piece_coordinates(im, target);
            for (std::size_t i = 0; i < nt; ++i) mat[i][j] = col[i];
        }
        QMat ker = kernel_basis(mat, nb);
        rref(ker);
        for (auto& row : ker) out.push_back(A.from_coordinates(row, basis));
        return out;
    }

    /// Deterministic pick among homogeneous candidates: the canonical-least
    /// polynomial (used for slice elements, kernel multipliers, t-search).
    inline Poly canonical_pick(const std::vector<Poly>& candidates) {
        if (candidates.empty()) throw input_error("no candidate to pick");
        const Poly* best = &candidates.front();
        for (auto& c : candidates)
            if (Poly::canonical_less(c, *best)) best = &c;
        return *best;
    }

    struct KernelIndexReport {
        long index = 0;           ///< gcd of degrees with nonzero kernel piece
        bool certified = false;   ///< gcd stable over a tail window and coprimality holds
        bool coprime_with_degree = false; ///< gcd(index, -deg D) == 1
        long bound = 0;
        std::vector<long> degrees; ///< degrees <= bound with nonzero kernel piece
    };

    /// Saturation index of the kernel subring, explored up to bound.
    inline KernelIndexReport kernel_saturation_index(const Derivation& d, long bound = 60) {
        KernelIndexReport rep;
        rep.bound = bound;
        long dd = -d.degree(); // d = -deg D per the usual sign convention
        long stable_window = std::max(2 * std::abs(dd), 10L);
        long e = 0, stable_since = 0;
        for (long nu = 1; nu <= bound; ++nu) {
            if (!kernel_piece(d, nu).empty()) {
                rep.degrees.push_back(nu);
                long ne = long_gcd(e, nu);
                if (ne != e) stable_since = nu;
                e = ne;
            }
        }
        if (rep.degrees.empty())
            throw input_error("no nonzero kernel piece up to degree " + std::to_string(bound) +
                              "; enlarge the bound (the kernel exceeds A_0 whenever the "
                              "orbit space has positive dimension)");
        rep.index = e;
        rep.coprime_with_degree = (long_gcd(e, dd) == 1);
        rep.certified = rep.coprime_with_degree && (bound - stable_since >= stable_window);
        return rep;
    }

    struct Replica {
        Poly coefficient;      ///< a in (ker D)_j
        long j = 0;            ///< its degree
        long induced_degree = 0; ///< j + deg D, divisible by m
        long m = 0;
    };

    /// Minimal-degree homogeneous kernel coefficient a with
    /// deg(a*D) = j + deg D divisible by m, so a*D restricts to the m-th
    /// Veronese subring. j = 0 (a = 1) is allowed when deg D is already
    /// divisible by m.
    inline Replica replica(const Derivation& d, long m, long bound = 60) {
        if (m <= 0) throw input_error("replica modulus must be positive");
        long deg = d.degree();
        for (long j = 0; j <= bound; ++j) {
            if (((j + deg) % m + m) % m != 0) continue;
            if (j == 0)
                return Replica{d.domain()->constant(1), 0, deg, m};
            auto kp = kernel_piece(d, j);
            if (!kp.empty())
                return Replica{canonical_pick(kp), j, j + deg, m};
        }
        // congruence obstruction report
        long want = ((-deg) % m + m) % m;
        auto rep = kernel_saturation_index(d, bound);
        std::string classes;
        std::vector<bool> seen(m, false);
        for (long nu : rep.degrees) seen[nu % m] = true;
        for (long c = 0; c < m; ++c)
            if (seen[c]) classes += (classes.empty() ? "" : ",") + std::to_string(c);
        throw input_error("no replica coefficient up to degree " + std::to_string(bound) +
                          ": need kernel degree j = " + std::to_string(want) + " (mod " +
                          std::to_string(m) + ") but nonzero kernel degrees lie in classes {" +
                          classes + "} (mod " + std::to_string(m) + ")");
    }

} // namespace cylforge
#endif
