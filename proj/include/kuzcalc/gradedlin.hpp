#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "kuzcalc/errors.hpp"
#include "kuzcalc/linalg.hpp"
#include "kuzcalc/monomial.hpp"
#include "kuzcalc/polynomial.hpp"

namespace kuzcalc {

namespace detail {

inline void require_uniform_weights(const std::vector<int>& weights,
                                    const std::vector<WeightedPolynomial>& gens) {
    for (const auto& g : gens)
        if (g.weights() != weights) throw math_error("generators carry mixed weight vectors");
}

inline std::map<Monomial, int> column_index(const std::vector<Monomial>& ambient) {
    std::map<Monomial, int> idx;
    for (std::size_t i = 0; i < ambient.size(); ++i) idx.emplace(ambient[i], static_cast<int>(i));
    return idx;
}

/// Rows of the degree-t Macaulay matrix of <gens>: one primitive integer row
/// per product m*g with deg(m*g) = t, in coordinates of the descending
/// ambient basis.
inline std::vector<SparseIntRow> collect_slice_rows(const std::vector<int>& weights,
                                                    const std::vector<WeightedPolynomial>& gens,
                                                    long t, const std::map<Monomial, int>& col_of) {
    std::vector<SparseIntRow> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!g.is_homogeneous()) throw math_error("ideal_slice: generator is not homogeneous");
        long dg = *g.degree();
        if (dg > t) continue;
        for (const Monomial& m : monomials_of_degree(t - dg, weights)) {
            SparseRatRow row;
            row.reserve(g.term_count());
            for (const auto& [mg, c] : g.terms()) row.emplace_back(col_of.at(m * mg), c);
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            rows.push_back(to_primitive_int_row(row));
        }
    }
    return rows;
}

inline SparseEchelon slice_echelon(const std::vector<int>& weights,
                                   const std::vector<WeightedPolynomial>& gens, long t,
                                   const std::map<Monomial, int>& col_of, int ncols) {
    SparseEchelon ech(ncols);
    for (auto& row : collect_slice_rows(weights, gens, t, col_of)) ech.insert(std::move(row));
    return ech;
}

}  // namespace detail

/// The degree-t slice of a graded ideal, held as its canonical reduced row
/// echelon form over the descending monomial basis of degree t. The reduced
/// rows span the slice, so `rank` is recomputable from them.
struct GradedSubspace {
    long degree = 0;
    std::vector<Monomial> ambient_basis;
    std::vector<int> pivot_cols;
    std::map<int, SparseRatRow> reduced;  // pivot column -> canonical row

    int ambient_dim() const { return static_cast<int>(ambient_basis.size()); }
    int rank() const { return static_cast<int>(pivot_cols.size()); }

    /// Canonical-form equality: same degree, ambient, pivots and rows.
    bool same_span(const GradedSubspace& o) const {
        return degree == o.degree && ambient_basis == o.ambient_basis &&
               pivot_cols == o.pivot_cols && reduced == o.reduced;
    }
};

/// Quotient basis of degree t: the ambient monomials at non-pivot columns
/// (the smallest monomials outside the pivot set), plus the reduction data
/// needed to express any degree-t polynomial in those representatives.
class QuotientBasis {
public:
    QuotientBasis() = default;

    QuotientBasis(GradedSubspace slice)
        : slice_(std::move(slice)), col_of_(detail::column_index(slice_.ambient_basis)) {
        std::size_t p = 0;
        for (int c = 0; c < slice_.ambient_dim(); ++c) {
            if (p < slice_.pivot_cols.size() && slice_.pivot_cols[p] == c) {
                ++p;
                continue;
            }
            rep_of_col_[c] = static_cast<int>(representatives_.size());
            representatives_.push_back(slice_.ambient_basis[c]);
        }
    }

    long degree() const { return slice_.degree; }
    const GradedSubspace& slice() const { return slice_; }
    const std::vector<Monomial>& representatives() const { return representatives_; }
    std::size_t size() const { return representatives_.size(); }

    /// Coordinates of p's class, in the order of `representatives`.
    /// p must be homogeneous of this degree (zero is fine).
    std::vector<Rat> reduce(const WeightedPolynomial& p) const {
        if (!p.is_homogeneous_of(slice_.degree))
            throw math_error("normal_form: polynomial degree does not match slice degree " +
                             std::to_string(slice_.degree));
        SparseRatRow v;
        v.reserve(p.term_count());
        for (const auto& [m, c] : p.terms()) v.emplace_back(col_of_.at(m), c);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return coords_from_residue(reduce_against(v, slice_.reduced));
    }

    /// Reduction of a single ambient monomial.
    std::vector<Rat> reduce_monomial(const Monomial& m) const {
        auto it = col_of_.find(m);
        if (it == col_of_.end()) throw math_error("reduce_monomial: monomial not in ambient basis");
        SparseRatRow v{{it->second, Rat(1)}};
        return coords_from_residue(reduce_against(v, slice_.reduced));
    }

    /// Representative combination as a polynomial (a section of reduce).
    WeightedPolynomial lift(const std::vector<Rat>& coords, const std::vector<int>& weights) const {
        if (coords.size() != representatives_.size())
            throw math_error("lift: coordinate length mismatch");
        WeightedPolynomial p(weights);
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] != 0)
                p += WeightedPolynomial::monomial_term(weights, representatives_[i], coords[i]);
        return p;
    }

private:
    std::vector<Rat> coords_from_residue(const SparseRatRow& residue) const {
        std::vector<Rat> out(representatives_.size(), Rat(0));
        for (const auto& [c, v] : residue) out[rep_of_col_.at(c)] = v;
        return out;
    }

    GradedSubspace slice_;
    std::map<Monomial, int> col_of_;
    std::vector<Monomial> representatives_;
    std::map<int, int> rep_of_col_;
};

/// Rank of the degree-t slice of <gens>, without materializing reduced rows.
/// Routed through the dense Bareiss kernel when the slice is small and dense.
inline int ideal_slice_rank(const std::vector<int>& weights,
                            const std::vector<WeightedPolynomial>& gens, long t) {
    detail::require_uniform_weights(weights, gens);
    if (t < 0) return 0;
    auto ambient = monomials_of_degree(t, weights);
    auto col_of = detail::column_index(ambient);
    return rows_rank(detail::collect_slice_rows(weights, gens, t, col_of),
                     static_cast<int>(ambient.size()));
}

inline GradedSubspace ideal_slice(const std::vector<int>& weights,
                                  const std::vector<WeightedPolynomial>& gens, long t) {
    detail::require_uniform_weights(weights, gens);
    if (t < 0) throw math_error("ideal_slice: negative degree");
    GradedSubspace s;
    s.degree = t;
    s.ambient_basis = monomials_of_degree(t, weights);
    auto col_of = detail::column_index(s.ambient_basis);
    auto ech = detail::slice_echelon(weights, gens, t, col_of, s.ambient_dim());
    s.pivot_cols = ech.pivot_columns();
    s.reduced = ech.reduced_rows();
    return s;
}

inline GradedSubspace ideal_slice(const std::vector<WeightedPolynomial>& gens, long t) {
    if (gens.empty()) throw math_error("ideal_slice: no generators (weights unknown)");
    return ideal_slice(gens.front().weights(), gens, t);
}

inline QuotientBasis quotient_basis(const std::vector<int>& weights,
                                    const std::vector<WeightedPolynomial>& gens, long t) {
    return QuotientBasis(ideal_slice(weights, gens, t));
}

inline QuotientBasis quotient_basis(const std::vector<WeightedPolynomial>& gens, long t) {
    if (gens.empty()) throw math_error("quotient_basis: no generators (weights unknown)");
    return quotient_basis(gens.front().weights(), gens, t);
}

/// Coordinates of p modulo the degree-t ideal slice, over the quotient basis.
inline std::vector<Rat> normal_form(const WeightedPolynomial& p,
                                    const std::vector<WeightedPolynomial>& gens, long t) {
    if (gens.empty()) throw math_error("normal_form: no generators (weights unknown)");
    return quotient_basis(gens.front().weights(), gens, t).reduce(p);
}

}  // namespace kuzcalc
