#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kuzcalc/errors.hpp"

namespace kuzcalc {

/// Exponent vector of a monomial in variables x0..xn. The total order used
/// everywhere is graded-lex: first by weighted degree, ties broken
/// lexicographically with x0 dominating (so x0^2 > x0*x1 > x1^2).
/// Degree-slice enumerations list monomials in descending order.
struct Monomial {
    std::vector<int> exponents;

    Monomial() = default;
    explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {}
    static Monomial one(std::size_t n_vars) { return Monomial(std::vector<int>(n_vars, 0)); }

    std::size_t n_vars() const { return exponents.size(); }

    long total_degree() const {
        long t = 0;
        for (int e : exponents) t += e;
        return t;
    }

    long weighted_degree(const std::vector<int>& weights) const {
        if (weights.size() != exponents.size())
            throw math_error("weighted_degree: weight vector size mismatch");
        long t = 0;
        for (std::size_t j = 0; j < exponents.size(); ++j)
            t += static_cast<long>(weights[j]) * exponents[j];
        return t;
    }

    bool operator==(const Monomial& o) const = default;

    // lex with x0 dominating; within a fixed weighted degree this is the
    // monomial order restricted to the slice
    std::strong_ordering operator<=>(const Monomial& o) const {
        return exponents <=> o.exponents;
    }

    Monomial operator*(const Monomial& o) const {
        if (o.exponents.size() != exponents.size())
            throw math_error("monomial product: variable count mismatch");
        Monomial r = *this;
        for (std::size_t j = 0; j < exponents.size(); ++j) r.exponents[j] += o.exponents[j];
        return r;
    }

    std::string str() const {
        std::string s;
        for (std::size_t j = 0; j < exponents.size(); ++j) {
            if (exponents[j] == 0) continue;
            if (!s.empty()) s += "*";
            s += "x" + std::to_string(j);
            if (exponents[j] != 1) s += "^" + std::to_string(exponents[j]);
        }
        return s.empty() ? "1" : s;
    }
};

/// All monomials of weighted degree exactly t, descending in the monomial
/// order. Deterministic; t < 0 yields the empty list.
inline std::vector<Monomial> monomials_of_degree(long t, const std::vector<int>& weights) {
    std::vector<Monomial> out;
    if (t < 0) return out;
    std::vector<int> cur(weights.size(), 0);
    // descending choice of each exponent yields descending lex output
    auto rec = [&](auto&& self, std::size_t j, long rem) -> void {
        if (j == weights.size()) {
            if (rem == 0) out.push_back(Monomial(cur));
            return;
        }
        if (j + 1 == weights.size()) {
            if (rem % weights[j] == 0) {
                cur[j] = static_cast<int>(rem / weights[j]);
                out.push_back(Monomial(cur));
                cur[j] = 0;
            }
            return;
        }
        for (long e = rem / weights[j]; e >= 0; --e) {
            cur[j] = static_cast<int>(e);
            self(self, j + 1, rem - e * weights[j]);
        }
        cur[j] = 0;
    };
    if (weights.empty()) {
        if (t == 0) out.push_back(Monomial::one(0));
        return out;
    }
    rec(rec, 0, t);
    return out;
}

}  // namespace kuzcalc
