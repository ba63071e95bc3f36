#pragma once

#include <vector>

#include "kuzcalc/errors.hpp"
#include "kuzcalc/rational.hpp"

namespace kuzcalc {

/// Truncated power series with integer coefficients, coeffs[k] = [s^k].
/// Just enough machinery for the generating-function oracles.
class IntSeries {
public:
    explicit IntSeries(std::size_t len) : c_(len, Int(0)) {}

    static IntSeries one(std::size_t len) {
        IntSeries s(len);
        if (len > 0) s.c_[0] = 1;
        return s;
    }

    std::size_t size() const { return c_.size(); }
    const Int& operator[](std::size_t k) const { return c_[k]; }
    Int& operator[](std::size_t k) { return c_[k]; }
    const std::vector<Int>& coeffs() const { return c_; }

    /// Multiply by (1 - s^k).
    void mul_one_minus_pow(std::size_t k) {
        if (k == 0) {
            for (auto& x : c_) x = 0;
            return;
        }
        for (std::size_t i = c_.size(); i-- > k;) c_[i] -= c_[i - k];
    }

    /// Divide by (1 - s^k), i.e. multiply by the geometric series in s^k.
    void div_one_minus_pow(std::size_t k) {
        if (k == 0) throw math_error("series division by zero unit");
        for (std::size_t i = k; i < c_.size(); ++i) c_[i] += c_[i - k];
    }

private:
    std::vector<Int> c_;
};

/// Coefficients of prod_j 1/(1-s^{q_j}) up to t_max: the number of monomials
/// of each weighted degree.
inline std::vector<Int> monomial_count_series(const std::vector<int>& weights, long t_max) {
    IntSeries s = IntSeries::one(static_cast<std::size_t>(t_max) + 1);
    for (int q : weights) {
        if (q <= 0) throw math_error("monomial_count_series: nonpositive weight");
        s.div_one_minus_pow(static_cast<std::size_t>(q));
    }
    return s.coeffs();
}

}  // namespace kuzcalc
