#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kuzcalc/errors.hpp"
#include "kuzcalc/rational.hpp"

namespace kuzcalc {

/// Sparse vectors sorted by column index, no explicit zeros.
using SparseIntRow = std::vector<std::pair<int, Int>>;
using SparseRatRow = std::vector<std::pair<int, Rat>>;

namespace detail {

/// Divide by the content and make the leading coefficient positive.
inline void make_primitive(SparseIntRow& row) {
    if (row.empty()) return;
    Int g = 0;
    for (const auto& [c, v] : row) {
        g = int_gcd(g, v);
        if (g == 1) break;
    }
    if (row.front().second < 0) g = -g;
    if (g != 1)
        for (auto& [c, v] : row) v /= g;
}

/// a*x - b*y, merged by column.
inline SparseIntRow linear_combine(const Int& a, const SparseIntRow& x, const Int& b,
                                   const SparseIntRow& y) {
    SparseIntRow out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].first < y[j].first) {
            out.emplace_back(x[i].first, a * x[i].second);
            ++i;
        } else if (x[i].first > y[j].first) {
            out.emplace_back(y[j].first, -b * y[j].second);
            ++j;
        } else {
            Int v = a * x[i].second - b * y[j].second;
            if (v != 0) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    for (; i < x.size(); ++i) out.emplace_back(x[i].first, a * x[i].second);
    for (; j < y.size(); ++j) out.emplace_back(y[j].first, -b * y[j].second);
    return out;
}

}  // namespace detail

/// Scale a rational row to a primitive integer row (same span).
inline SparseIntRow to_primitive_int_row(const SparseRatRow& row) {
    Int l = 1;
    for (const auto& [c, v] : row) l = int_lcm(l, den(v));
    SparseIntRow out;
    out.reserve(row.size());
    for (const auto& [c, v] : row) {
        Int x = num(v) * (l / den(v));
        if (x != 0) out.emplace_back(c, std::move(x));
    }
    detail::make_primitive(out);
    return out;
}

/// Incremental exact row echelon form. Rows are kept as primitive integer
/// vectors; each elimination step is the fraction-free cross-multiplication
/// a*row - b*pivot followed by content removal, so no rational arithmetic
/// happens until the final reduced form is requested. The reduced row
/// echelon form of a row space is unique, so results do not depend on
/// insertion order.
class SparseEchelon {
public:
    explicit SparseEchelon(int ncols) : ncols_(ncols) {}

    int ncols() const { return ncols_; }
    int rank() const { return static_cast<int>(pivots_.size()); }

    /// Reduce `row` against the current pivots and install the remainder as a
    /// new pivot if it is nonzero. Returns true when the rank grew.
    bool insert(SparseIntRow row) {
        while (!row.empty()) {
            if (row.front().first >= ncols_) throw internal_error("echelon: column out of range");
            auto it = pivots_.find(row.front().first);
            if (it == pivots_.end()) {
                detail::make_primitive(row);
                pivots_.emplace(row.front().first, std::move(row));
                return true;
            }
            const SparseIntRow& p = it->second;
            Int a = p.front().second;
            Int b = row.front().second;
            Int g = int_gcd(a, b);
            row = detail::linear_combine(a / g, row, b / g, p);
            detail::make_primitive(row);
        }
        return false;
    }

    bool insert(const SparseRatRow& row) { return insert(to_primitive_int_row(row)); }

    std::vector<int> pivot_columns() const {
        std::vector<int> out;
        out.reserve(pivots_.size());
        for (const auto& [c, r] : pivots_) out.push_back(c);
        return out;
    }

    bool is_pivot(int col) const { return pivots_.count(col) > 0; }

    /// Canonical reduced form: pivot coefficient 1, pivot columns eliminated
    /// from all other rows. Keyed by pivot column.
    std::map<int, SparseRatRow> reduced_rows() const {
        std::map<int, SparseRatRow> out;
        // process pivots right to left so every entry hit is already reduced
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            const SparseIntRow& r = it->second;
            const Int& lead = r.front().second;
            SparseRatRow row;
            row.reserve(r.size());
            for (const auto& [c, v] : r) row.emplace_back(c, Rat(v, lead));
            // eliminate later pivot columns: row -= coeff * reduced_row_p
            // replaces the e_p entry by -coeff * tail_p
            SparseRatRow acc;
            acc.push_back(row.front());
            for (std::size_t k = 1; k < row.size(); ++k) {
                auto p = out.find(row[k].first);
                if (p == out.end()) {
                    append_entry(acc, row[k].first, row[k].second);
                } else {
                    const Rat coeff = row[k].second;
                    for (std::size_t j = 1; j < p->second.size(); ++j)
                        append_entry(acc, p->second[j].first, -coeff * p->second[j].second);
                }
            }
            normalize(acc);
            out.emplace(it->first, std::move(acc));
        }
        return out;
    }

private:
    static void append_entry(SparseRatRow& acc, int col, const Rat& v) {
        if (v != 0) acc.emplace_back(col, v);
    }

    static void normalize(SparseRatRow& acc) {
        // merge duplicate columns accumulated out of order
        std::map<int, Rat> m;
        for (auto& [c, v] : acc) m[c] += v;
        acc.clear();
        for (auto& [c, v] : m)
            if (v != 0) acc.emplace_back(c, std::move(v));
    }

    int ncols_;
    std::map<int, SparseIntRow> pivots_;
};

/// Rank by one-step Bareiss elimination: fully fraction-free, every division
/// exact, intermediate entries bounded by minors of the input. Preferred over
/// the sparse echelon when the matrix is small and dense, where per-row
/// content removal no longer controls growth.
inline int dense_bareiss_rank(const std::vector<SparseIntRow>& sparse_rows, int ncols) {
    std::vector<std::vector<Int>> m;
    m.reserve(sparse_rows.size());
    for (const auto& row : sparse_rows) {
        std::vector<Int> dense(static_cast<std::size_t>(ncols), Int(0));
        for (const auto& [c, v] : row) dense[static_cast<std::size_t>(c)] = v;
        m.push_back(std::move(dense));
    }
    std::size_t rows = m.size();
    std::size_t cols = static_cast<std::size_t>(ncols);
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

/// Rank of a row collection, routed by shape. Rows averaging more than a
/// handful of entries fill in heavily under sparse elimination, so small
/// matrices of that kind go through Bareiss; large or genuinely sparse
/// systems (monomial-dominated Macaulay slices) use the incremental echelon.
inline int rows_rank(std::vector<SparseIntRow> rows, int ncols) {
    std::size_t nnz = 0;
    for (const auto& r : rows) nnz += r.size();
    bool dense = ncols > 0 && ncols <= 800 && rows.size() <= 2000 && !rows.empty() &&
                 nnz >= 6 * rows.size();
    if (dense) return dense_bareiss_rank(rows, ncols);
    SparseEchelon ech(ncols);
    for (auto& r : rows) ech.insert(std::move(r));
    return ech.rank();
}

/// Reduce a rational vector modulo a reduced row space: subtract, for each
/// pivot column hit, the corresponding reduced row. The result is supported
/// on non-pivot columns only and is the canonical normal form of `v`.
inline SparseRatRow reduce_against(const SparseRatRow& v,
                                   const std::map<int, SparseRatRow>& reduced) {
    std::map<int, Rat> acc;
    for (const auto& [c, x] : v) acc[c] += x;
    SparseRatRow out;
    // ascending columns: a reduced row only introduces columns right of its pivot
    while (!acc.empty()) {
        auto [c, x] = *acc.begin();
        acc.erase(acc.begin());
        if (x == 0) continue;
        auto p = reduced.find(c);
        if (p == reduced.end()) {
            out.emplace_back(c, x);
            continue;
        }
        for (std::size_t j = 1; j < p->second.size(); ++j)
            acc[p->second[j].first] -= x * p->second[j].second;
    }
    return out;
}

/// Small dense exact matrix, used for substitution matrices and witnesses.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    bool operator==(const RatMatrix& o) const = default;

    RatMatrix operator*(const RatMatrix& o) const {
        if (cols_ != o.rows_) throw math_error("matrix product: shape mismatch");
        RatMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& x = (*this)(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    Rat determinant() const {
        if (rows_ != cols_) throw math_error("determinant: not square");
        RatMatrix m = *this;
        Rat det = 1;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t p = c;
            while (p < rows_ && m(p, c) == 0) ++p;
            if (p == rows_) return Rat(0);
            if (p != c) {
                for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(c, j));
                det = -det;
            }
            det *= m(c, c);
            for (std::size_t i = c + 1; i < rows_; ++i) {
                if (m(i, c) == 0) continue;
                Rat f = m(i, c) / m(c, c);
                for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
            }
        }
        return det;
    }

    std::optional<RatMatrix> inverse() const {
        if (rows_ != cols_) throw math_error("inverse: not square");
        std::size_t n = rows_;
        RatMatrix m = *this;
        RatMatrix inv = identity(n);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && m(p, c) == 0) ++p;
            if (p == n) return std::nullopt;
            if (p != c)
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(m(p, j), m(c, j));
                    std::swap(inv(p, j), inv(c, j));
                }
            Rat piv = m(c, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(c, j) /= piv;
                inv(c, j) /= piv;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (i == c || m(i, c) == 0) continue;
                Rat f = m(i, c);
                for (std::size_t j = 0; j < n; ++j) {
                    m(i, j) -= f * m(c, j);
                    inv(i, j) -= f * inv(c, j);
                }
            }
        }
        return inv;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

}  // namespace kuzcalc
