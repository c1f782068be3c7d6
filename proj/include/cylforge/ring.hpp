/**
 * @file ring.hpp
 * @brief The ambient weighted polynomial ring: named variables, positive
 *        integer weights, the weighted-degree/reverse-lexicographic order,
 *        and enumeration of monomials in a fixed weighted degree.
 */
#ifndef CYLFORGE_RING_HH
#define CYLFORGE_RING_HH

#include <memory>
#include <string>
#include <vector>

#include <cylforge/errors.hpp>
#include <cylforge/monomial.hpp>

namespace cylforge {

    class Ring;
    using RingPtr = std::shared_ptr<const Ring>;

    /// Immutable ambient ring data. Polynomials hold a shared pointer to it;
    /// two polynomials interoperate only if they share the same Ring object
    /// (or an equal one, see same_ambient).
    class Ring {
    public:
        Ring(std::vector<std::string> vars, std::vector<long> weights)
            : vars_(std::move(vars)), weights_(std::move(weights)) {
            if (vars_.size() != weights_.size())
                throw input_error("variable/weight count mismatch");
            if (vars_.empty())
                throw input_error("ring needs at least one variable");
            bool positive = false;
            for (long w : weights_) {
                if (w < 0) throw input_error("negative weight");
                if (w > 0) positive = true;
            }
            if (!positive) throw input_error("not positively graded: all weights are zero");
            for (std::size_t i = 0; i < vars_.size(); ++i)
                for (std::size_t j = i + 1; j < vars_.size(); ++j)
                    if (vars_[i] == vars_[j])
                        throw input_error("duplicate variable '" + vars_[i] + "'");
        }

        static RingPtr make(std::vector<std::string> vars, std::vector<long> weights) {
            return std::make_shared<const Ring>(std::move(vars), std::move(weights));
        }

        std::size_t nvars() const { return vars_.size(); }
        const std::vector<std::string>& variables() const { return vars_; }
        const std::vector<long>& weights() const { return weights_; }
        const std::string& var_name(std::size_t i) const { return vars_[i]; }

        long var_index(const std::string& name) const {
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name) return static_cast<long>(i);
            return -1;
        }

        bool all_weights_positive() const {
            for (long w : weights_) if (w == 0) return false;
            return true;
        }

        long wdeg(const Monomial& m) const {
            long d = 0;
            for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * weights_[i];
            return d;
        }

        /// Weighted degree first, then reverse lexicographic:
        /// a > b iff wdeg a > wdeg b, or degrees tie and the last nonzero
        /// entry of a-b is negative. Returns +1 / 0 / -1.
        int compare(const Monomial& a, const Monomial& b) const {
            long da = wdeg(a), db = wdeg(b);
            if (da != db) return da > db ? 1 : -1;
            for (std::size_t i = a.size(); i-- > 0;) {
                if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
            }
            return 0;
        }

        bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

        /// All monomials of weighted degree nu, listed in descending pure-lex
        /// order (deterministic). Requires every weight positive.
        std::vector<Monomial> monomials_of_degree(long nu) const {
            if (!all_weights_positive())
                throw input_error("graded enumeration requires all-positive weights");
            std::vector<Monomial> out;
            if (nu < 0) return out;
            Monomial cur(nvars(), 0);
            enumerate(0, nu, cur, out);
            return out;
        }

        bool operator==(const Ring& o) const {
            return vars_ == o.vars_ && weights_ == o.weights_;
        }

    private:
        void enumerate(std::size_t i, long rest, Monomial& cur,
                       std::vector<Monomial>& out) const {
            if (i + 1 == nvars()) {
                if (rest % weights_[i] == 0) {
                    cur[i] = rest / weights_[i];
                    out.push_back(cur);
                    cur[i] = 0;
                }
                return;
            }
            for (long e = rest / weights_[i]; e >= 0; --e) {
                cur[i] = e;
                enumerate(i + 1, rest - e * weights_[i], cur, out);
            }
            cur[i] = 0;
        }

        std::vector<std::string> vars_;
        std::vector<long> weights_;
    };

    inline bool same_ambient(const RingPtr& a, const RingPtr& b) {
        return a == b || (a && b && *a == *b);
    }

} // namespace cylforge
#endif
