#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kuzcalc/errors.hpp"
#include "kuzcalc/gradedlin.hpp"
#include "kuzcalc/hsalgebra.hpp"
#include "kuzcalc/linalg.hpp"
#include "kuzcalc/milnor.hpp"
#include "kuzcalc/polynomial.hpp"

namespace kuzcalc {

/// Invariant bundle used to compare two potentials before any witness
/// search. Stable under every weight-compatible invertible substitution.
struct Fingerprint {
    std::vector<int> weights;
    long d = 0;
    long socle = 0;
    std::vector<long> hilbert;                      // dim Jac_t for t = 0..max(socle,0)
    std::vector<long> hom;                          // Hom(Delta,Delta(t)) for t = 0..max(socle,0)+d
    std::vector<std::pair<long, long>> exceptional;  // (t, hom - jac part) where nonzero

    bool operator==(const Fingerprint&) const = default;
};

inline Fingerprint fingerprint(const WeightedPolynomial& omega) {
    SerreAlgebra alg(omega);  // certifies isolatedness
    Fingerprint fp;
    fp.weights = omega.weights();
    fp.d = alg.d();
    fp.socle = alg.jac().socle_degree();
    long top = std::max(fp.socle, 0L);
    for (long t = 0; t <= top; ++t) fp.hilbert.push_back(alg.jac().dim(t));
    for (long t = 0; t <= top + fp.d; ++t) {
        HSCell cell = alg.hs_dim(t, 0);
        fp.hom.push_back(cell.total);
        long extra = cell.total - cell.per_sector.front().dim;
        if (extra != 0) fp.exceptional.emplace_back(t, extra);
    }
    return fp;
}

/// x_j -> sum_k A(j,k) x_k preserves the grading iff A(j,k) != 0 implies
/// q_j = q_k (block structure grouped by weight).
inline bool weight_compatible(const RatMatrix& A, const std::vector<int>& weights) {
    if (A.rows() != weights.size() || A.cols() != weights.size()) return false;
    for (std::size_t j = 0; j < weights.size(); ++j)
        for (std::size_t k = 0; k < weights.size(); ++k)
            if (A(j, k) != 0 && weights[j] != weights[k]) return false;
    return true;
}

/// omega(Ax): substitute x_j <- sum_k A(j,k) x_k.
inline WeightedPolynomial pullback(const WeightedPolynomial& omega, const RatMatrix& A) {
    if (A.rows() != omega.n_vars() || A.cols() != omega.n_vars())
        throw math_error("pullback: matrix shape does not match variable count");
    std::vector<WeightedPolynomial> images;
    images.reserve(omega.n_vars());
    for (std::size_t j = 0; j < omega.n_vars(); ++j) {
        WeightedPolynomial row(omega.weights());
        for (std::size_t k = 0; k < omega.n_vars(); ++k)
            if (A(j, k) != 0)
                row += A(j, k) * WeightedPolynomial::variable(omega.weights(), k);
        images.push_back(std::move(row));
    }
    return omega.substitute(images);
}

enum class WitnessMode { ExactPullback, IdealEquality };

inline std::string witness_mode_name(WitnessMode m) {
    return m == WitnessMode::ExactPullback ? "exact-pullback" : "ideal-equality";
}

struct EquivalenceWitness {
    RatMatrix A;
    Rat c = 1;
    WitnessMode mode = WitnessMode::ExactPullback;
    bool verified = false;
};

/// Exact verification. ExactPullback: omega(Ax) = c * omega'(x) as
/// polynomials. IdealEquality: the graded ideals <d_i(omega o A)> and
/// <d_i omega'> agree; both are generated in degrees {d - q_j}, so slicewise
/// agreement there decides equality, with one extra degree checked as a
/// guard. Throws on a non-invertible or weight-incompatible A.
inline bool verify_equivalence(const RatMatrix& A, const Rat& c, const WeightedPolynomial& omega,
                               const WeightedPolynomial& omega_prime, WitnessMode mode) {
    if (omega.weights() != omega_prime.weights())
        throw math_error("verify_equivalence: polynomials live in different rings");
    if (c == 0) throw math_error("verify_equivalence: scalar must be nonzero");
    if (!weight_compatible(A, omega.weights()))
        throw math_error("verify_equivalence: matrix is not weight-compatible");
    if (!A.inverse()) throw math_error("verify_equivalence: matrix is not invertible");

    WeightedPolynomial moved = pullback(omega, A);
    if (mode == WitnessMode::ExactPullback) return moved == c * omega_prime;

    std::vector<WeightedPolynomial> g1 = all_partials(moved);
    std::vector<WeightedPolynomial> g2 = all_partials(omega_prime);
    long d = *omega_prime.degree();
    std::set<long> degrees;
    for (int q : omega.weights()) degrees.insert(d - q);
    degrees.insert(*degrees.rbegin() + 1);  // guard degree
    for (long t : degrees) {
        if (t < 0) continue;
        GradedSubspace s1 = ideal_slice(omega.weights(), g1, t);
        GradedSubspace s2 = ideal_slice(omega.weights(), g2, t);
        if (!s1.same_span(s2)) return false;
    }
    return true;
}

enum class SearchStrategy { PermDiagBounded, PermDiagSolve, Randomized };

inline std::string strategy_name(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::PermDiagBounded: return "perm-diag-bounded";
        case SearchStrategy::PermDiagSolve: return "perm-diag-solve";
        case SearchStrategy::Randomized: return "randomized";
    }
    return "?";
}

struct SearchOptions {
    std::uint64_t seed = 0;
    int random_trials = 200;
    std::vector<Rat> scalar_set = {Rat(1),     Rat(-1),     Rat(2),  Rat(-2),
                                   Rat(1, 2),  Rat(-1, 2),  Rat(3),  Rat(-3),
                                   Rat(1, 3),  Rat(-1, 3)};
};

/// A found witness is always verified before being returned; absence of a
/// witness is a normal outcome whose meaning is limited to the searched
/// family, spelled out in `completeness`.
struct SearchOutcome {
    std::optional<EquivalenceWitness> witness;
    std::string completeness;
};

namespace detail {

// platform-stable generator (std:: distributions are not pinned across libs)
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long below(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }
};

inline std::vector<std::vector<int>> weight_preserving_permutations(const std::vector<int>& weights) {
    std::vector<int> perm(weights.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (std::size_t j = 0; j < perm.size(); ++j)
            if (weights[static_cast<std::size_t>(perm[j])] != weights[j]) {
                ok = false;
                break;
            }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Candidate A for x_j <- lambda_{perm[j]} * x_{perm[j]}.
inline RatMatrix perm_diag_matrix(const std::vector<int>& perm, const std::vector<Rat>& lambda) {
    RatMatrix A(perm.size(), perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j)
        A(j, static_cast<std::size_t>(perm[j])) = lambda[static_cast<std::size_t>(perm[j])];
    return A;
}

inline Monomial permute_monomial(const Monomial& m, const std::vector<int>& perm) {
    Monomial out(std::vector<int>(m.n_vars(), 0));
    for (std::size_t j = 0; j < m.n_vars(); ++j)
        out.exponents[static_cast<std::size_t>(perm[j])] = m.exponents[j];
    return out;
}

inline bool support_matches(const WeightedPolynomial& omega, const WeightedPolynomial& omega_prime,
                            const std::vector<int>& perm) {
    if (omega.term_count() != omega_prime.term_count()) return false;
    for (const auto& [m, c] : omega.terms())
        if (omega_prime.coefficient(permute_monomial(m, perm)) == 0) return false;
    return true;
}

/// Check whether the perm-diag candidate maps omega to a scalar multiple of
/// omega_prime; returns that scalar if so. Pure coefficient arithmetic, no
/// polynomial expansion.
inline std::optional<Rat> perm_diag_scalar(const WeightedPolynomial& omega,
                                           const WeightedPolynomial& omega_prime,
                                           const std::vector<int>& perm,
                                           const std::vector<Rat>& lambda) {
    std::optional<Rat> c;
    for (const auto& [m, a] : omega.terms()) {
        Monomial pm = permute_monomial(m, perm);
        Rat b = omega_prime.coefficient(pm);
        if (b == 0) return std::nullopt;
        Rat scale = a;
        for (std::size_t k = 0; k < pm.n_vars(); ++k)
            if (pm.exponents[k] != 0) scale *= rat_pow(lambda[k], pm.exponents[k]);
        Rat ratio = scale / b;
        if (!c)
            c = ratio;
        else if (*c != ratio)
            return std::nullopt;
    }
    return c;
}

/// Greedy multiplicative solve for the diagonal scalars of one permutation.
/// Equations are Laurent relations prod_k lambda_k^{e_k} = rhs relative to an
/// anchor term. Relative equations carry a scaling gauge (the weighted
/// exponent sums vanish), so propagation alone can stall with every equation
/// holding two or more unknowns; at a stall one unknown is branched over a
/// small gauge set. Single-unknown equations are solved by exact rational
/// root extraction, branching on the sign for even roots. Scalars the system
/// never touches fall back to 1 and the final exact check decides.
inline bool solve_diagonal(const WeightedPolynomial& omega, const WeightedPolynomial& omega_prime,
                           const std::vector<int>& perm, const std::vector<Rat>& gauge_set,
                           std::vector<std::optional<Rat>> lambda,
                           std::vector<std::pair<Monomial, Rat>> pending, std::vector<Rat>& out,
                           long& budget) {
    if (--budget < 0) return false;
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (auto it = pending.begin(); it != pending.end();) {
            Rat rhs = it->second;
            int unknown = -1;
            long exp_unknown = 0;
            bool postponed = false;
            for (std::size_t k = 0; k < it->first.n_vars(); ++k) {
                long e = it->first.exponents[k];
                if (e == 0) continue;
                if (lambda[k]) {
                    rhs /= rat_pow(*lambda[k], e);
                } else if (unknown < 0) {
                    unknown = static_cast<int>(k);
                    exp_unknown = e;
                } else {
                    postponed = true;  // two unknowns, retry later
                    break;
                }
            }
            if (postponed) {
                ++it;
                continue;
            }
            if (unknown < 0) {
                if (rhs != 1) return false;  // inconsistent permutation
                it = pending.erase(it);
                progressed = true;
                continue;
            }
            if (exp_unknown < 0) {
                if (rhs == 0) return false;
                rhs = Rat(1) / rhs;
                exp_unknown = -exp_unknown;
            }
            auto root = rat_nth_root(rhs, static_cast<unsigned>(exp_unknown));
            if (!root) return false;
            if (exp_unknown % 2 == 0 && *root != 0) {
                std::vector<std::pair<Monomial, Rat>> rest(pending.begin(), it);
                rest.insert(rest.end(), it + 1, pending.end());
                auto branch = lambda;
                branch[static_cast<std::size_t>(unknown)] = *root;
                if (solve_diagonal(omega, omega_prime, perm, gauge_set, branch, rest, out, budget))
                    return true;
                lambda[static_cast<std::size_t>(unknown)] = Rat(-*root);
            } else {
                lambda[static_cast<std::size_t>(unknown)] = *root;
            }
            it = pending.erase(it);
            progressed = true;
        }
    }
    if (!pending.empty()) {
        // stalled: every equation still has >= 2 unknowns. Fix the smallest
        // unknown that occurs in a pending equation and branch over the gauge
        // candidates.
        int pick = -1;
        for (const auto& [mono, rhs] : pending)
            for (std::size_t k = 0; k < mono.n_vars(); ++k)
                if (mono.exponents[k] != 0 && !lambda[k] &&
                    (pick < 0 || static_cast<int>(k) < pick))
                    pick = static_cast<int>(k);
        if (pick < 0) return false;
        for (const Rat& g : gauge_set) {
            auto branch = lambda;
            branch[static_cast<std::size_t>(pick)] = g;
            if (solve_diagonal(omega, omega_prime, perm, gauge_set, branch, pending, out, budget))
                return true;
            if (budget < 0) return false;
        }
        return false;
    }
    std::vector<Rat> values(lambda.size());
    for (std::size_t k = 0; k < lambda.size(); ++k) values[k] = lambda[k].value_or(Rat(1));
    if (perm_diag_scalar(omega, omega_prime, perm, values)) {
        out = values;
        return true;
    }
    return false;
}

}  // namespace detail

inline SearchOutcome search_equivalence(const WeightedPolynomial& omega,
                                        const WeightedPolynomial& omega_prime,
                                        SearchStrategy strategy, const SearchOptions& opts = {}) {
    SearchOutcome outcome;
    if (fingerprint(omega) != fingerprint(omega_prime)) {
        outcome.completeness = "fingerprints differ: no witness can exist";
        return outcome;
    }
    const auto& weights = omega.weights();
    auto finish = [&](const RatMatrix& A, const Rat& c) -> bool {
        try {
            if (!verify_equivalence(A, c, omega, omega_prime, WitnessMode::ExactPullback))
                return false;
        } catch (const math_error&) {
            return false;  // structurally invalid candidate (e.g. zero scalar)
        }
        EquivalenceWitness w;
        w.A = A;
        w.c = c;
        w.mode = WitnessMode::ExactPullback;
        w.verified = true;
        outcome.witness = w;
        return true;
    };

    if (strategy == SearchStrategy::PermDiagBounded) {
        auto perms = detail::weight_preserving_permutations(weights);
        std::size_t n = weights.size();
        for (const auto& perm : perms) {
            if (!detail::support_matches(omega, omega_prime, perm)) continue;
            std::vector<std::size_t> odo(n, 0);
            for (;;) {
                std::vector<Rat> lambda(n);
                for (std::size_t k = 0; k < n; ++k) lambda[k] = opts.scalar_set[odo[k]];
                if (auto c = detail::perm_diag_scalar(omega, omega_prime, perm, lambda))
                    if (finish(detail::perm_diag_matrix(perm, lambda), *c)) return outcome;
                std::size_t k = 0;
                while (k < n && ++odo[k] == opts.scalar_set.size()) odo[k++] = 0;
                if (k == n) break;
            }
        }
        outcome.completeness =
            "exhausted weight-preserving permutations x diagonals over the bounded scalar set (" +
            std::to_string(opts.scalar_set.size()) +
            " scalars); not-found-within-strategy is not a proof of non-equivalence";
        return outcome;
    }

    if (strategy == SearchStrategy::PermDiagSolve) {
        auto perms = detail::weight_preserving_permutations(weights);
        for (const auto& perm : perms) {
            if (!detail::support_matches(omega, omega_prime, perm)) continue;
            // relative equations against the anchor (first term):
            // prod_k lambda_k^{f_k - f0_k} = (b/a) / (b0/a0), a Laurent system
            auto anchor = omega.terms().begin();
            Monomial f0 = detail::permute_monomial(anchor->first, perm);
            Rat r0 = omega_prime.coefficient(f0) / anchor->second;
            std::vector<std::pair<Monomial, Rat>> eqs;
            for (auto it = std::next(omega.terms().begin()); it != omega.terms().end(); ++it) {
                Monomial f = detail::permute_monomial(it->first, perm);
                Monomial rel(std::vector<int>(f.n_vars(), 0));
                for (std::size_t k = 0; k < f.n_vars(); ++k)
                    rel.exponents[k] = f.exponents[k] - f0.exponents[k];
                Rat rhs = (omega_prime.coefficient(f) / it->second) / r0;
                eqs.emplace_back(rel, rhs);
            }
            std::vector<std::optional<Rat>> lambda(weights.size());
            std::vector<Rat> solved;
            long budget = 100000;
            if (detail::solve_diagonal(omega, omega_prime, perm, opts.scalar_set,
                                       std::move(lambda), std::move(eqs), solved, budget)) {
                if (auto c = detail::perm_diag_scalar(omega, omega_prime, perm, solved))
                    if (finish(detail::perm_diag_matrix(perm, solved), *c)) return outcome;
            }
        }
        outcome.completeness =
            "exhausted weight-preserving permutations with symbolically solved diagonal scalars "
            "(rational roots only); not-found-within-strategy is not a proof of non-equivalence";
        return outcome;
    }

    // Randomized invertible trials over small integer entries.
    detail::SplitMix64 rng(opts.seed);
    std::size_t n = weights.size();
    for (int trial = 0; trial < opts.random_trials; ++trial) {
        RatMatrix A(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (weights[j] == weights[k]) A(j, k) = Rat(rng.below(5) - 2);
        if (!A.inverse()) continue;
        WeightedPolynomial moved = pullback(omega, A);
        if (moved.is_zero() || moved.terms().size() != omega_prime.terms().size()) continue;
        auto lead = moved.terms().begin();
        Rat b = omega_prime.coefficient(lead->first);
        if (b == 0) continue;
        Rat c = lead->second / b;
        if (moved == c * omega_prime && finish(A, c)) return outcome;
    }
    outcome.completeness = "randomized search over " + std::to_string(opts.random_trials) +
                           " weight-compatible trials (seed " + std::to_string(opts.seed) +
                           "); not-found-within-strategy is not a proof of non-equivalence";
    return outcome;
}

}  // namespace kuzcalc
