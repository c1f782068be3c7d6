/**
 * @file linalg.hpp
 * @brief Dense exact linear algebra over the rationals: reduced row echelon
 *        form, kernels, linear solving, and an incremental span tracker with
 *        coefficient recovery. Dimensions stay small here, so dense is fine.
 */
#ifndef CYLFORGE_LINALG_HH
#define CYLFORGE_LINALG_HH

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include <cylforge/rational.hpp>

namespace cylforge {

    using QVec = std::vector<Rational>;
    using QMat = std::vector<QVec>;

    /// In-place reduced row echelon form. Returns pivot column per row.
    inline std::vector<std::size_t> rref(QMat& m) {
        std::vector<std::size_t> pivots;
        if (m.empty()) return pivots;
        std::size_t rows = m.size(), cols = m[0].size(), r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t sel = r;
            while (sel < rows && m[sel][c] == 0) ++sel;
            if (sel == rows) continue;
            std::swap(m[r], m[sel]);
            Rational inv = 1 / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || m[i][c] == 0) continue;
                Rational f = m[i][c];
                for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
            }
            pivots.push_back(c);
            ++r;
        }
        m.resize(r); // drop zero rows
        return pivots;
    }

    inline std::size_t rank(QMat m) { return rref(m).size(); }

    /// Basis of the null space of m (columns = unknowns), canonical form:
    /// one vector per free column in ascending column order, with that free
    /// coordinate set to 1.
    inline QMat kernel_basis(QMat m, std::size_t cols) {
        auto pivots = rref(m);
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivots) is_pivot[c] = true;
        QMat out;
        for (std::size_t fc = 0; fc < cols; ++fc) {
            if (is_pivot[fc]) continue;
            QVec v(cols, Rational(0));
            v[fc] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i)
                v[pivots[i]] = -m[i][fc];
            out.push_back(std::move(v));
        }
        return out;
    }

    /// One solution of A x = b (free unknowns set to 0), or nullopt.
    inline std::optional<QVec> solve(QMat a, const QVec& b) {
        std::size_t rows = a.size();
        std::size_t cols = rows ? a[0].size() : 0;
        for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
        if (rows == 0) {
            for (auto& x : b) if (x != 0) return std::nullopt;
            return QVec(cols, Rational(0));
        }
        auto pivots = rref(a);
        QVec x(cols, Rational(0));
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (pivots[i] == cols) return std::nullopt; // pivot in rhs column
            x[pivots[i]] = a[i][cols];
        }
        return x;
    }

    /// Incremental row space with expression recovery. Rows are inserted one
    /// at a time; membership queries return coordinates over the independent
    /// inserted rows, in insertion order. Internally a pivot-indexed
    /// Gaussian sieve: reducing a vector strictly advances its leading
    /// column, so one pass terminates.
    class SpanBuilder {
    public:
        explicit SpanBuilder(std::size_t cols) : cols_(cols) {}

        std::size_t dim() const { return rows_.size(); }
        std::size_t cols() const { return cols_; }

        /// Inserts v; returns true if it enlarged the span.
        bool insert(const QVec& v) {
            QVec r = v;
            QVec expr(rows_.size() + 1, Rational(0));
            expr.back() = 1;
            std::size_t p = sieve(r, &expr);
            if (p == cols_) return false;
            Rational inv = 1 / r[p];
            for (auto& x : r) x *= inv;
            for (auto& x : expr) x *= inv;
            by_pivot_[p] = rows_.size();
            rows_.push_back(std::move(r));
            exprs_.push_back(std::move(expr));
            return true;
        }

        bool contains(const QVec& v) const {
            QVec r = v;
            return sieve(r, nullptr) == cols_;
        }

        /// Coordinates of v over the independent inserted rows, or nullopt.
        std::optional<QVec> coordinates(const QVec& v) const {
            QVec r = v;
            QVec expr(rows_.size(), Rational(0));
            if (sieve(r, &expr) != cols_) return std::nullopt;
            for (auto& x : expr) x = -x; // sieve subtracts; flip to combination
            return expr;
        }

        const QMat& rows() const { return rows_; }

    private:
        // Reduces r against stored rows; returns leading column of the
        // residual, or cols_ if it vanished. expr (if given) accumulates the
        // row combination subtracted, padded to current dim (+1 for insert).
        std::size_t sieve(QVec& r, QVec* expr) const {
            for (;;) {
                std::size_t p = cols_;
                for (std::size_t j = 0; j < cols_; ++j)
                    if (r[j] != 0) { p = j; break; }
                if (p == cols_) return cols_;
                auto it = by_pivot_.find(p);
                if (it == by_pivot_.end()) return p;
                std::size_t i = it->second;
                Rational f = r[p];
                for (std::size_t j = p; j < cols_; ++j) r[j] -= f * rows_[i][j];
                if (expr)
                    for (std::size_t k = 0; k < exprs_[i].size(); ++k)
                        (*expr)[k] -= f * exprs_[i][k];
            }
        }

        std::size_t cols_;
        std::map<std::size_t, std::size_t> by_pivot_;
        QMat rows_;
        std::vector<QVec> exprs_;
    };

} // namespace cylforge
#endif
