#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kuzcalc/errors.hpp"
#include "kuzcalc/monomial.hpp"
#include "kuzcalc/rational.hpp"

namespace kuzcalc {

/// Sparse multivariate polynomial over Q with a per-variable positive weight
/// vector. Stored in canonical form: no zero coefficients. Immutable in
/// spirit; all operations return new values.
class WeightedPolynomial {
public:
    using TermMap = std::map<Monomial, Rat>;

    WeightedPolynomial() = default;

    explicit WeightedPolynomial(std::vector<int> weights) : weights_(std::move(weights)) {
        check_weights();
    }

    WeightedPolynomial(std::vector<int> weights, TermMap terms)
        : weights_(std::move(weights)), terms_(std::move(terms)) {
        check_weights();
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.n_vars() != weights_.size())
                throw math_error("polynomial term has wrong variable count");
            if (it->second == 0)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    static WeightedPolynomial zero(std::vector<int> weights) {
        return WeightedPolynomial(std::move(weights));
    }

    static WeightedPolynomial constant(std::vector<int> weights, const Rat& c) {
        WeightedPolynomial p(std::move(weights));
        if (c != 0) p.terms_[Monomial::one(p.n_vars())] = c;
        return p;
    }

    static WeightedPolynomial monomial_term(std::vector<int> weights, Monomial m, const Rat& c) {
        WeightedPolynomial p(std::move(weights));
        if (c != 0) p.terms_[std::move(m)] = c;
        return p;
    }

    static WeightedPolynomial variable(std::vector<int> weights, std::size_t j) {
        if (j >= weights.size()) throw math_error("variable index out of range");
        Monomial m = Monomial::one(weights.size());
        m.exponents[j] = 1;
        return monomial_term(std::move(weights), std::move(m), Rat(1));
    }

    std::size_t n_vars() const { return weights_.size(); }
    const std::vector<int>& weights() const { return weights_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rat coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    /// Weighted degree when the polynomial is homogeneous; nullopt for the
    /// zero polynomial (which has no degree but is vacuously homogeneous).
    std::optional<long> degree() const {
        if (terms_.empty()) return std::nullopt;
        long d = terms_.begin()->first.weighted_degree(weights_);
        for (const auto& [m, c] : terms_)
            if (m.weighted_degree(weights_) != d) throw math_error("degree(): polynomial is not homogeneous");
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        long d = terms_.begin()->first.weighted_degree(weights_);
        for (const auto& [m, c] : terms_)
            if (m.weighted_degree(weights_) != d) return false;
        return true;
    }

    /// Zero is homogeneous of every degree.
    bool is_homogeneous_of(long d) const {
        for (const auto& [m, c] : terms_)
            if (m.weighted_degree(weights_) != d) return false;
        return true;
    }

    /// First stored monomial of weighted degree != d, if any.
    std::optional<Monomial> inhomogeneous_witness(long d) const {
        for (const auto& [m, c] : terms_)
            if (m.weighted_degree(weights_) != d) return m;
        return std::nullopt;
    }

    bool operator==(const WeightedPolynomial& o) const {
        return weights_ == o.weights_ && terms_ == o.terms_;
    }

    WeightedPolynomial& operator+=(const WeightedPolynomial& o) {
        require_same_ring(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    WeightedPolynomial& operator-=(const WeightedPolynomial& o) {
        require_same_ring(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend WeightedPolynomial operator+(WeightedPolynomial a, const WeightedPolynomial& b) {
        a += b;
        return a;
    }

    friend WeightedPolynomial operator-(WeightedPolynomial a, const WeightedPolynomial& b) {
        a -= b;
        return a;
    }

    WeightedPolynomial operator-() const {
        WeightedPolynomial r(weights_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend WeightedPolynomial operator*(const WeightedPolynomial& a, const WeightedPolynomial& b) {
        a.require_same_ring(b);
        WeightedPolynomial r(a.weights_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend WeightedPolynomial operator*(const Rat& c, const WeightedPolynomial& p) {
        WeightedPolynomial r(p.weights_);
        if (c == 0) return r;
        for (const auto& [m, coeff] : p.terms_) r.terms_[m] = c * coeff;
        return r;
    }

    /// Formal partial derivative with respect to x_j. Homogeneous of weighted
    /// degree d - q_j when the input is homogeneous of degree d (or zero).
    WeightedPolynomial partial(std::size_t j) const {
        if (j >= n_vars()) throw math_error("partial: variable index out of range");
        WeightedPolynomial r(weights_);
        for (const auto& [m, c] : terms_) {
            int e = m.exponents[j];
            if (e == 0) continue;
            Monomial m2 = m;
            m2.exponents[j] = e - 1;
            r.add_term(m2, c * e);
        }
        return r;
    }

    /// Substitute 0 for every variable not in `keep` (indicator by index).
    WeightedPolynomial restrict_to(const std::vector<bool>& keep) const {
        if (keep.size() != n_vars()) throw math_error("restrict_to: mask size mismatch");
        WeightedPolynomial r(weights_);
        for (const auto& [m, c] : terms_) {
            bool ok = true;
            for (std::size_t j = 0; j < keep.size(); ++j)
                if (!keep[j] && m.exponents[j] != 0) {
                    ok = false;
                    break;
                }
            if (ok) r.terms_[m] = c;
        }
        return r;
    }

    /// Substitute x_j <- images[j] simultaneously for all variables. The
    /// images live in an arbitrary target ring; powers are memoized.
    WeightedPolynomial substitute(const std::vector<WeightedPolynomial>& images) const {
        if (images.size() != n_vars()) throw math_error("substitute: needs one image per variable");
        std::vector<int> target_weights =
            images.empty() ? weights_ : images.front().weights();
        for (const auto& im : images)
            if (im.weights() != target_weights) throw math_error("substitute: images in different rings");
        // power cache per variable
        std::vector<std::vector<WeightedPolynomial>> pows(images.size());
        auto power = [&](std::size_t j, int e) -> const WeightedPolynomial& {
            auto& cache = pows[j];
            if (cache.empty()) cache.push_back(constant(target_weights, Rat(1)));
            while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[j]);
            return cache[e];
        };
        WeightedPolynomial r(target_weights);
        for (const auto& [m, c] : terms_) {
            WeightedPolynomial t = constant(target_weights, c);
            for (std::size_t j = 0; j < images.size(); ++j)
                if (m.exponents[j] > 0) t = t * power(j, m.exponents[j]);
            r += t;
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        // print largest monomial first
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            bool neg = c < 0;
            Rat a = neg ? Rat(-c) : c;
            if (s.empty())
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            bool is_one = (a == 1) && m.total_degree() > 0;
            if (!is_one) s += rat_to_string(a);
            if (m.total_degree() > 0) {
                if (!is_one) s += "*";
                s += m.str();
            }
        }
        return s;
    }

private:
    void check_weights() const {
        for (int q : weights_)
            if (q <= 0) throw math_error("weights must be positive integers");
    }

    void require_same_ring(const WeightedPolynomial& o) const {
        if (weights_ != o.weights_)
            throw math_error("operation on polynomials with different weight vectors");
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::vector<int> weights_;
    TermMap terms_;
};

/// All partial derivatives of p, in variable order.
inline std::vector<WeightedPolynomial> all_partials(const WeightedPolynomial& p) {
    std::vector<WeightedPolynomial> out;
    out.reserve(p.n_vars());
    for (std::size_t j = 0; j < p.n_vars(); ++j) out.push_back(p.partial(j));
    return out;
}

}  // namespace kuzcalc
