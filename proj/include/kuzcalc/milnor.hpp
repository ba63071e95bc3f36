#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kuzcalc/errors.hpp"
#include "kuzcalc/gradedlin.hpp"
#include "kuzcalc/polynomial.hpp"
#include "kuzcalc/series.hpp"

namespace kuzcalc {

/// Classical Poincare series of a quasi-homogeneous Milnor algebra,
/// prod_j (1-s^{d-q_j})/(1-s^{q_j}), expanded to `len` coefficients.
/// Valid as a Hilbert series exactly when the partials form a regular
/// sequence, which makes it an oracle independent of the linear algebra.
inline std::vector<Int> poincare_oracle(const std::vector<int>& weights, long d, std::size_t len) {
    for (int q : weights)
        if (d <= q) throw math_error("poincare_oracle: requires degree > every weight");
    IntSeries s = IntSeries::one(len);
    for (int q : weights) {
        s.mul_one_minus_pow(static_cast<std::size_t>(d - q));
        s.div_one_minus_pow(static_cast<std::size_t>(q));
    }
    return s.coeffs();
}

/// Coefficients up to the socle degree sum_j (d - 2 q_j) (or just the
/// constant term when that is negative).
inline std::vector<Int> poincare_oracle(const std::vector<int>& weights, long d) {
    long socle = 0;
    for (int q : weights) socle += d - 2 * q;
    return poincare_oracle(weights, d, static_cast<std::size_t>(std::max(socle, 0L)) + 1);
}

struct IsolatedCertificate {
    bool isolated = false;
    long socle_degree = 0;
    // when not isolated: the first degree where the Hilbert function and the
    // Poincare oracle disagree, with both values
    long mismatch_degree = -1;
    long expected_dim = 0;
    long actual_dim = 0;

    std::string describe() const {
        if (isolated) return "isolated: Hilbert function matches Poincare oracle through the socle";
        return "not isolated: dim Jac_" + std::to_string(mismatch_degree) + " = " +
               std::to_string(actual_dim) + ", oracle expects " + std::to_string(expected_dim);
    }
};

/// The graded Jacobian (Milnor) algebra Jac(w) = k[x]/<dw/dx_j>. A value
/// with a shared memo: copies see the same per-degree bases, and the memo
/// fills idempotently under a lock so concurrent readers observe consistent
/// data.
class JacobianAlgebra {
public:
    explicit JacobianAlgebra(const WeightedPolynomial& omega) : s_(std::make_shared<State>()) {
        if (omega.is_zero()) throw math_error("jacobian: zero polynomial");
        if (!omega.is_homogeneous()) throw math_error("jacobian: polynomial is not homogeneous");
        s_->omega = omega;
        s_->gens = all_partials(omega);
        s_->d = *omega.degree();
        s_->socle = 0;
        s_->max_weight = 0;
        for (int q : omega.weights()) {
            s_->socle += s_->d - 2 * q;
            s_->max_weight = std::max(s_->max_weight, static_cast<long>(q));
        }
    }

    const WeightedPolynomial& omega() const { return s_->omega; }
    const std::vector<WeightedPolynomial>& generators() const { return s_->gens; }
    const std::vector<int>& weights() const { return s_->omega.weights(); }
    long degree() const { return s_->d; }

    /// sum_j (d - 2 q_j); the top nonzero degree when the singularity is
    /// isolated. May be negative for degenerate weight data.
    long socle_degree() const { return s_->socle; }

    /// dim Jac(w)_t. Negative degrees are 0; degrees above the socle are 0
    /// once the algebra is certified isolated (regular-sequence fact),
    /// otherwise they are computed honestly.
    long dim(long t) const {
        if (t < 0) return 0;
        std::lock_guard<std::mutex> lock(s_->mu);
        return dim_locked(t);
    }

    std::vector<long> hilbert_function(long t_max) const {
        std::vector<long> out;
        if (t_max < 0) return out;
        out.reserve(static_cast<std::size_t>(t_max) + 1);
        for (long t = 0; t <= t_max; ++t) out.push_back(dim(t));
        return out;
    }

    /// Quotient basis of degree t (memoized; built on demand).
    const QuotientBasis& basis(long t) const {
        if (t < 0) throw math_error("basis: negative degree");
        std::lock_guard<std::mutex> lock(s_->mu);
        auto it = s_->bases.find(t);
        if (it == s_->bases.end()) {
            it = s_->bases.emplace(t, quotient_basis(weights(), s_->gens, t)).first;
            s_->dims[t] = static_cast<long>(it->second.size());
        }
        return it->second;
    }

    /// Certify the isolated-singularity property: the Hilbert function must
    /// match the Poincare oracle on 0..socle and vanish on a window of width
    /// max(q_j) above it. A mismatch anywhere is a disproof.
    const IsolatedCertificate& certify() const {
        std::lock_guard<std::mutex> lock(s_->mu);
        if (s_->cert) return *s_->cert;
        IsolatedCertificate cert;
        long top = std::max(s_->socle, 0L);
        cert.socle_degree = s_->socle;
        auto oracle = poincare_oracle(weights(), s_->d,
                                      static_cast<std::size_t>(top + s_->max_weight) + 1);
        cert.isolated = true;
        for (long t = 0; t <= top + s_->max_weight; ++t) {
            long expect = (t <= top) ? static_cast<long>(oracle[static_cast<std::size_t>(t)]) : 0;
            long actual = dim_locked(t);
            if (actual != expect) {
                cert.isolated = false;
                cert.mismatch_degree = t;
                cert.expected_dim = expect;
                cert.actual_dim = actual;
                break;
            }
        }
        s_->cert = cert;
        return *s_->cert;
    }

    bool is_isolated() const { return certify().isolated; }

    void require_isolated() const {
        const auto& cert = certify();
        if (!cert.isolated) throw math_error("input must have an isolated singularity at 0 (" +
                                             cert.describe() + ")");
    }

    /// Product of classes: coordinates w.r.t. basis(t1) x basis(t2) ->
    /// coordinates w.r.t. basis(t1+t2). Bilinear; extends the basis cache on
    /// demand.
    std::vector<Rat> multiply(const std::vector<Rat>& a, long t1, const std::vector<Rat>& b,
                              long t2) const {
        const QuotientBasis& b1 = basis(t1);
        const QuotientBasis& b2 = basis(t2);
        WeightedPolynomial pa = b1.lift(a, weights());
        WeightedPolynomial pb = b2.lift(b, weights());
        return basis(t1 + t2).reduce(pa * pb);
    }

private:
    struct State {
        WeightedPolynomial omega;
        std::vector<WeightedPolynomial> gens;
        long d = 0;
        long socle = 0;
        long max_weight = 0;
        mutable std::mutex mu;
        mutable std::map<long, long> dims;
        mutable std::map<long, QuotientBasis> bases;
        mutable std::optional<IsolatedCertificate> cert;
    };

    long dim_locked(long t) const {
        auto it = s_->dims.find(t);
        if (it != s_->dims.end()) return it->second;
        long value;
        if (s_->cert && s_->cert->isolated && t > std::max(s_->socle, 0L)) {
            value = 0;
        } else {
            auto ambient = monomials_of_degree(t, weights());
            auto col_of = detail::column_index(ambient);
            int rank = rows_rank(detail::collect_slice_rows(weights(), s_->gens, t, col_of),
                                 static_cast<int>(ambient.size()));
            value = static_cast<long>(ambient.size()) - rank;
        }
        s_->dims.emplace(t, value);
        return value;
    }

    std::shared_ptr<State> s_;
};

inline JacobianAlgebra jacobian(const WeightedPolynomial& omega) { return JacobianAlgebra(omega); }

inline std::vector<long> hilbert_function(const WeightedPolynomial& omega, long t_max) {
    return JacobianAlgebra(omega).hilbert_function(t_max);
}

inline IsolatedCertificate is_isolated_singularity(const WeightedPolynomial& omega) {
    return JacobianAlgebra(omega).certify();
}

inline std::vector<Rat> multiply_in_jac(const std::vector<Rat>& a, long t1,
                                        const std::vector<Rat>& b, long t2,
                                        const JacobianAlgebra& J) {
    return J.multiply(a, t1, b, t2);
}

}  // namespace kuzcalc
