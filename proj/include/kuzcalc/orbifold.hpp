#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "kuzcalc/errors.hpp"
#include "kuzcalc/polynomial.hpp"

namespace kuzcalc {

/// One sector of the mu_d-action inside the weighted C*-action: g = lambda^i
/// acting by x_j -> lambda^{i q_j} x_j. Carries the fixed variable set, the
/// conormal rank rk W_g, the character k_g of det(W_g), and (once attached)
/// the restricted potential omega_g.
struct SectorData {
    int g_index = 0;                // i with g = lambda^i, 1 <= i <= d; i = d is the identity
    std::vector<int> fixed_vars;    // { j : i*q_j = 0 mod d }
    int rkW = 0;                    // (n+1) - |fixed_vars|
    long k_g = 0;                   // -(sum of non-fixed weights)
    WeightedPolynomial omega_g;     // omega with non-fixed variables set to 0

    bool is_identity(int d) const { return g_index == d; }

    std::vector<bool> fixed_mask(std::size_t n_vars) const {
        std::vector<bool> mask(n_vars, false);
        for (int j : fixed_vars) mask[static_cast<std::size_t>(j)] = true;
        return mask;
    }
};

/// The d sectors i = 1..d for the given weights, fixed data only (omega_g is
/// attached by `restrict_potential`). For all-ones weights this reproduces
/// fixed = {}, rkW = n+1, k_g = -(n+1) on every non-identity sector.
inline std::vector<SectorData> sectors(const std::vector<int>& weights, long d) {
    if (d < 2) throw math_error("sectors: degree must be at least 2");
    if (weights.empty()) throw math_error("sectors: empty weight vector");
    int g = 0;
    for (int q : weights) g = std::gcd(g, q);
    if (g != 1) throw math_error("sectors: weights must have gcd 1");
    std::vector<SectorData> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int i = 1; i <= d; ++i) {
        SectorData s;
        s.g_index = i;
        long k = 0;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            if ((static_cast<long>(i) * weights[j]) % d == 0)
                s.fixed_vars.push_back(static_cast<int>(j));
            else
                k += weights[j];
        }
        s.rkW = static_cast<int>(weights.size() - s.fixed_vars.size());
        s.k_g = -k;
        out.push_back(std::move(s));
    }
    return out;
}

/// omega restricted to the fixed locus of the sector: non-fixed variables
/// set to 0, kept in the ambient ring.
inline WeightedPolynomial restrict_potential(const WeightedPolynomial& omega,
                                             const SectorData& sector) {
    return omega.restrict_to(sector.fixed_mask(omega.n_vars()));
}

inline SectorData with_potential(SectorData sector, const WeightedPolynomial& omega) {
    sector.omega_g = restrict_potential(omega, sector);
    return sector;
}

/// The restricted potential re-expressed in the polynomial ring on the fixed
/// variables only (with their weights), as used by Jac(omega_g) and the
/// sector Koszul complexes.
inline WeightedPolynomial sector_subring_polynomial(const WeightedPolynomial& omega,
                                                    const SectorData& sector) {
    std::vector<int> sub_weights;
    sub_weights.reserve(sector.fixed_vars.size());
    for (int j : sector.fixed_vars) sub_weights.push_back(omega.weights()[static_cast<std::size_t>(j)]);
    WeightedPolynomial restricted = restrict_potential(omega, sector);
    WeightedPolynomial out(sub_weights);
    for (const auto& [m, c] : restricted.terms()) {
        Monomial sub(std::vector<int>(sector.fixed_vars.size(), 0));
        for (std::size_t k = 0; k < sector.fixed_vars.size(); ++k)
            sub.exponents[k] = m.exponents[static_cast<std::size_t>(sector.fixed_vars[k])];
        out += WeightedPolynomial::monomial_term(sub_weights, sub, c);
    }
    return out;
}

}  // namespace kuzcalc
