/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials with exact rational coefficients
 *        over a weighted ring, plus the input grammar parser and the
 *        canonical printer.
 *
 * Terms are kept sorted in descending monomial order (leading term first),
 * with no zero coefficients stored.
 */
#ifndef CYLFORGE_POLYNOMIAL_HH
#define CYLFORGE_POLYNOMIAL_HH

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include <cylforge/rational.hpp>
#include <cylforge/ring.hpp>

namespace cylforge {

    class Poly {
    public:
        using Term = std::pair<Monomial, Rational>;

        Poly() = default;
        explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

        Poly(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
            if (c != 0) terms_.push_back({mono_one(ring_->nvars()), c});
        }

        Poly(RingPtr ring, const Monomial& m, const Rational& c)
            : ring_(std::move(ring)) {
            if (c != 0) terms_.push_back({m, c});
        }

        static Poly variable(const RingPtr& ring, std::size_t i) {
            Monomial m = mono_one(ring->nvars());
            m[i] = 1;
            return Poly(ring, m, 1);
        }

        const RingPtr& ring() const { return ring_; }
        bool is_zero() const { return terms_.empty(); }
        std::size_t term_count() const { return terms_.size(); }
        const std::vector<Term>& terms() const { return terms_; }

        const Monomial& leading_monomial() const {
            require_nonzero();
            return terms_.front().first;
        }
        const Rational& leading_coeff() const {
            require_nonzero();
            return terms_.front().second;
        }

        /// Weighted degree (max over terms). Zero polynomial -> -1.
        long wdeg() const {
            long d = -1;
            for (auto& [m, c] : terms_) d = std::max(d, ring_->wdeg(m));
            return d;
        }

        bool is_homogeneous() const {
            if (terms_.empty()) return true;
            long d = ring_->wdeg(terms_.front().first);
            for (auto& [m, c] : terms_)
                if (ring_->wdeg(m) != d) return false;
            return true;
        }

        /// Homogeneous components keyed by weighted degree (ascending).
        std::map<long, Poly> homogeneous_components() const {
            std::map<long, Poly> out;
            for (auto& [m, c] : terms_) {
                long d = ring_->wdeg(m);
                auto it = out.find(d);
                if (it == out.end()) {
                    Poly p(ring_);
                    p.terms_.push_back({m, c});
                    out.emplace(d, std::move(p));
                } else {
                    it->second.terms_.push_back({m, c});
                }
            }
            return out; // each component inherits sorted order
        }

        Poly homogeneous_part(long d) const {
            Poly p(ring_);
            for (auto& [m, c] : terms_)
                if (ring_->wdeg(m) == d) p.terms_.push_back({m, c});
            return p;
        }

        Poly operator-() const {
            Poly r(*this);
            for (auto& t : r.terms_) t.second = -t.second;
            return r;
        }

        friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, 1); }
        friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, -1); }

        friend Poly operator*(const Poly& a, const Poly& b) {
            check_ambient(a, b);
            Poly r(a.ring_);
            if (a.is_zero() || b.is_zero()) return r;
            std::map<Monomial, Rational> acc; // any strict order works for accumulation
            for (auto& [ma, ca] : a.terms_)
                for (auto& [mb, cb] : b.terms_) {
                    Rational c = ca * cb;
                    auto [it, fresh] = acc.try_emplace(mono_mul(ma, mb), c);
                    if (!fresh) it->second += c;
                }
            for (auto& [m, c] : acc)
                if (c != 0) r.terms_.push_back({m, c});
            r.sort_terms();
            return r;
        }

        Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
        Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
        Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }

        Poly scaled(const Rational& c) const {
            Poly r(ring_);
            if (c == 0) return r;
            r.terms_ = terms_;
            for (auto& t : r.terms_) t.second *= c;
            return r;
        }

        /// this * c * x^m
        Poly term_multiple(const Monomial& m, const Rational& c) const {
            Poly r(ring_);
            if (c == 0) return r;
            r.terms_.reserve(terms_.size());
            for (auto& [mm, cc] : terms_)
                r.terms_.push_back({mono_mul(mm, m), cc * c});
            return r; // order preserved: multiplication by a monomial is monotone
        }

        Poly pow(long e) const {
            if (e < 0) throw input_error("negative power");
            Poly r(ring_, Rational(1));
            Poly base(*this);
            while (e > 0) {
                if (e & 1) r *= base;
                base = (e >>= 1) ? base * base : base;
            }
            return r;
        }

        /// Formal partial derivative with respect to variable i.
        Poly partial(std::size_t i) const {
            Poly r(ring_);
            for (auto& [m, c] : terms_) {
                if (m[i] == 0) continue;
                Monomial mm(m);
                mm[i] -= 1;
                r.terms_.push_back({mm, c * Rational(m[i])});
            }
            r.sort_terms();
            return r;
        }

        /// Substitute variable i by a polynomial of the same ring.
        Poly substituted(std::size_t i, const Poly& value) const {
            Poly r(ring_);
            for (auto& [m, c] : terms_) {
                Monomial mm(m);
                long e = mm[i];
                mm[i] = 0;
                r += Poly(ring_, mm, c) * value.pow(e);
            }
            return r;
        }

        bool operator==(const Poly& o) const {
            return same_ambient(ring_, o.ring_) && terms_ == o.terms_;
        }
        bool operator!=(const Poly& o) const { return !(*this == o); }

        /// Deterministic total order on polynomials of one ring: compare term
        /// lists from the leading end; used for canonical tie-breaking.
        static bool canonical_less(const Poly& a, const Poly& b) {
            std::size_t n = std::min(a.terms_.size(), b.terms_.size());
            for (std::size_t i = 0; i < n; ++i) {
                int cmp = a.ring_->compare(a.terms_[i].first, b.terms_[i].first);
                if (cmp != 0) return cmp < 0;
                if (a.terms_[i].second != b.terms_[i].second)
                    return a.terms_[i].second < b.terms_[i].second;
            }
            return a.terms_.size() < b.terms_.size();
        }

        std::string str() const {
            if (terms_.empty()) return "0";
            std::ostringstream os;
            bool first = true;
            for (auto& [m, c] : terms_) {
                Rational a = c;
                if (first) {
                    if (a < 0) { os << "-"; a = -a; }
                } else {
                    os << (a < 0 ? " - " : " + ");
                    if (a < 0) a = -a;
                }
                first = false;
                bool unit = (a == 1);
                if (!unit || mono_is_one(m)) os << to_string(a);
                bool star = !unit;
                for (std::size_t i = 0; i < m.size(); ++i) {
                    if (m[i] == 0) continue;
                    if (star) os << "*";
                    os << ring_->var_name(i);
                    if (m[i] > 1) os << "^" << m[i];
                    star = true;
                }
            }
            return os.str();
        }

        /// Raw sorted-term access for algorithms that build results in order.
        std::vector<Term>& mutable_terms() { return terms_; }
        void sort_terms() {
            std::sort(terms_.begin(), terms_.end(),
                      [this](const Term& a, const Term& b) {
                          return ring_->compare(a.first, b.first) > 0;
                      });
        }

    private:
        static void check_ambient(const Poly& a, const Poly& b) {
            if (!same_ambient(a.ring_, b.ring_))
                throw input_error("ambient ring mismatch");
        }

        void require_nonzero() const {
            if (terms_.empty()) throw input_error("zero polynomial has no leading term");
        }

        static Poly merge(const Poly& a, const Poly& b, int sign) {
            check_ambient(a, b);
            Poly r(a.ring_ ? a.ring_ : b.ring_);
            std::size_t i = 0, j = 0;
            while (i < a.terms_.size() || j < b.terms_.size()) {
                int take;
                if (i == a.terms_.size()) take = -1;
                else if (j == b.terms_.size()) take = 1;
                else take = r.ring_->compare(a.terms_[i].first, b.terms_[j].first);
                if (take > 0) {
                    r.terms_.push_back(a.terms_[i++]);
                } else if (take < 0) {
                    auto t = b.terms_[j++];
                    t.second *= sign;
                    r.terms_.push_back(std::move(t));
                } else {
                    Rational c = a.terms_[i].second + Rational(sign) * b.terms_[j].second;
                    if (c != 0) r.terms_.push_back({a.terms_[i].first, c});
                    ++i; ++j;
                }
            }
            return r;
        }

        RingPtr ring_;
        std::vector<Term> terms_;
    };

    // ------------------------------------------------------------------
    // Input grammar: terms joined by + / -; a term is coeff, coeff*mono or
    // mono; coeff is an integer or p/q; mono is var, var^k or products with
    // optional '*'.  Example: "x^2 - y^3", "1/2*x*y^2".
    // ------------------------------------------------------------------

    class PolyParser {
    public:
        PolyParser(std::string text, RingPtr ring)
            : s_(std::move(text)), ring_(std::move(ring)) {}

        Poly parse() {
            Poly result(ring_);
            skip_ws();
            if (eof()) fail("empty polynomial");
            bool first = true;
            while (!eof()) {
                int sign = 1;
                if (peek() == '+' || peek() == '-') {
                    if (peek() == '-') sign = -1;
                    ++pos_;
                    skip_ws();
                } else if (!first) {
                    fail("expected '+' or '-'");
                }
                result += parse_term().scaled(Rational(sign));
                skip_ws();
                first = false;
            }
            return result;
        }

    private:
        [[noreturn]] void fail(const std::string& why) const {
            throw input_error("parse error at position " + std::to_string(pos_) +
                              " in '" + s_ + "': " + why);
        }

        bool eof() const { return pos_ >= s_.size(); }
        char peek() const { return s_[pos_]; }
        void skip_ws() { while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_; }

        Poly parse_term() {
            Rational coeff(1);
            Monomial mono = mono_one(ring_->nvars());
            bool any = false;
            for (;;) {
                skip_ws();
                if (eof()) break;
                char c = peek();
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    coeff *= parse_number();
                    any = true;
                } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                    auto [idx, exp] = parse_var_power();
                    mono[idx] += exp;
                    any = true;
                } else {
                    break;
                }
                skip_ws();
                if (!eof() && peek() == '*') { ++pos_; continue; }
                // juxtaposition like "2x" or "x y" is allowed too
                if (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                    continue;
                break;
            }
            if (!any) fail("expected a term");
            return Poly(ring_, mono, coeff);
        }

        Rational parse_number() {
            std::size_t start = pos_;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (start == pos_) fail("expected a number");
            BigInt num(s_.substr(start, pos_ - start));
            skip_ws();
            if (!eof() && peek() == '/') {
                ++pos_;
                skip_ws();
                std::size_t dstart = pos_;
                while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                if (dstart == pos_) fail("expected a denominator");
                BigInt den(s_.substr(dstart, pos_ - dstart));
                if (den == 0) fail("zero denominator");
                return make_rational(num, den);
            }
            return Rational(num);
        }

        std::pair<std::size_t, long> parse_var_power() {
            std::size_t start = pos_;
            while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            long idx = ring_->var_index(name);
            if (idx < 0) fail("unknown variable '" + name + "'");
            long exp = 1;
            skip_ws();
            if (!eof() && peek() == '^') {
                ++pos_;
                skip_ws();
                std::size_t estart = pos_;
                while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                if (estart == pos_) fail("expected an exponent");
                exp = std::stol(s_.substr(estart, pos_ - estart));
            }
            return {static_cast<std::size_t>(idx), exp};
        }

        std::string s_;
        std::size_t pos_ = 0;
        RingPtr ring_;
    };

    inline Poly parse_poly(const std::string& text, const RingPtr& ring) {
        return PolyParser(text, ring).parse();
    }

} // namespace cylforge
#endif
