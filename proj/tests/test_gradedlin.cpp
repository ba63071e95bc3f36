#include <catch2/catch_amalgamated.hpp>

#include "kuzcalc/gradedlin.hpp"
#include "kuzcalc/milnor.hpp"
#include "kuzcalc/parse.hpp"
#include "test_util.hpp"

using namespace kuzcalc;

namespace {
std::vector<WeightedPolynomial> fermat_cubic_gens_3vars() {
    std::vector<int> w{1, 1, 1};
    return all_partials(parse_poly("x0^3+x1^3+x2^3", 3, w, 3));
}
}  // namespace

TEST_CASE("ideal_slice: Fermat cubic, degree 2") {
    auto gens = fermat_cubic_gens_3vars();
    auto s = ideal_slice(gens, 2);
    // hand row-reduction oracle: the three rows 3x0^2, 3x1^2, 3x2^2 are
    // already independent monomials in the 6-dim ambient space
    CHECK(s.ambient_dim() == 6);
    CHECK(s.rank() == 3);
    CHECK(s.pivot_cols == std::vector<int>{0, 3, 5});  // x0^2, x1^2, x2^2
}

TEST_CASE("ideal_slice: degree below all generators has rank 0") {
    auto gens = fermat_cubic_gens_3vars();
    CHECK(ideal_slice(gens, 1).rank() == 0);
    CHECK(ideal_slice(gens, 0).rank() == 0);
}

TEST_CASE("ideal_slice: principal ideal <x0> in two variables, degree 3") {
    std::vector<int> w{1, 1};
    std::vector<WeightedPolynomial> gens{parse_poly("x0", 2, w, 1)};
    auto s = ideal_slice(gens, 3);
    // enumeration oracle: x0^3, x0^2 x1, x0 x1^2 out of ambient {x0^3, x0^2x1, x0x1^2, x1^3}
    CHECK(s.ambient_dim() == 4);
    CHECK(s.rank() == 3);
}

TEST_CASE("ideal_slice rejects mixed weight vectors") {
    std::vector<WeightedPolynomial> gens{parse_poly("x0", 2, {1, 1}, 1),
                                         parse_poly("x0", 2, {1, 2}, 1)};
    CHECK_THROWS_AS(ideal_slice({1, 1}, gens, 2), math_error);
}

TEST_CASE("quotient_basis: representatives are the standard monomials") {
    auto gens = fermat_cubic_gens_3vars();
    auto qb = quotient_basis(gens, 2);
    REQUIRE(qb.size() == 3);
    CHECK(qb.representatives()[0] == Monomial({1, 1, 0}));  // x0x1
    CHECK(qb.representatives()[1] == Monomial({1, 0, 1}));  // x0x2
    CHECK(qb.representatives()[2] == Monomial({0, 1, 1}));  // x1x2

    auto unit = quotient_basis(gens, 0);
    REQUIRE(unit.size() == 1);
    CHECK(unit.representatives()[0] == Monomial({0, 0, 0}));

    // beyond the socle degree of a smooth form the quotient is empty
    long socle = JacobianAlgebra(parse_poly("x0^3+x1^3+x2^3", 3, {1, 1, 1}, 3)).socle_degree();
    CHECK(socle == 3);
    CHECK(quotient_basis(gens, socle + 1).size() == 0);
}

TEST_CASE("normal_form: generators, representatives, hand reduction") {
    auto gens = fermat_cubic_gens_3vars();
    std::vector<int> w{1, 1, 1};

    auto nf_gen = normal_form(parse_poly("x0^2", 3, w, 2), gens, 2);
    CHECK(nf_gen == std::vector<Rat>{0, 0, 0});

    auto nf_rep = normal_form(parse_poly("x0x1", 3, w, 2), gens, 2);
    CHECK(nf_rep == std::vector<Rat>{1, 0, 0});

    // hand reduction oracle: x0^3 = x0*(x0^2 - x1^2) + x0 x1^2
    std::vector<int> w2{1, 1};
    std::vector<WeightedPolynomial> g2{parse_poly("x0^2-x1^2", 2, w2, 2)};
    auto qb = quotient_basis(g2, 3);
    REQUIRE(qb.size() == 2);
    CHECK(qb.representatives()[0] == Monomial({1, 2}));  // x0 x1^2
    CHECK(qb.representatives()[1] == Monomial({0, 3}));  // x1^3
    auto nf = qb.reduce(parse_poly("x0^3", 2, w2, 3));
    CHECK(nf == std::vector<Rat>{1, 0});

    CHECK_THROWS_AS(normal_form(parse_poly("x0^3", 3, w, 3), gens, 2), math_error);
}

TEST_CASE("rank-nullity: ambient dim = rank + quotient size") {
    testutil::Rng rng(99);
    std::vector<int> w{1, 1, 1};
    for (int it = 0; it < 6; ++it) {
        std::vector<WeightedPolynomial> gens;
        for (int k = 0; k < 2; ++k)
            gens.push_back(testutil::random_homogeneous(rng, w, 2 + rng.below(2), 3));
        for (long t = 0; t <= 5; ++t) {
            auto s = ideal_slice(w, gens, t);
            auto qb = quotient_basis(w, gens, t);
            CHECK(s.ambient_dim() == s.rank() + static_cast<int>(qb.size()));
        }
    }
}

TEST_CASE("normal_form is linear") {
    testutil::Rng rng(123);
    std::vector<int> w{1, 1, 1};
    auto gens = fermat_cubic_gens_3vars();
    for (int it = 0; it < 8; ++it) {
        long t = 1 + rng.below(3);
        auto p = testutil::random_homogeneous(rng, w, t, 4);
        auto q = testutil::random_homogeneous(rng, w, t, 4);
        Rat alpha = rng.nonzero_coeff(), beta = rng.nonzero_coeff();
        auto qb = quotient_basis(w, gens, t);
        auto lhs = qb.reduce(alpha * p + beta * q);
        auto nfp = qb.reduce(p), nfq = qb.reduce(q);
        std::vector<Rat> rhs(nfp.size());
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = alpha * nfp[i] + beta * nfq[i];
        CHECK(lhs == rhs);
    }
}

TEST_CASE("ideal_slice is monotone under generator addition") {
    testutil::Rng rng(321);
    std::vector<int> w{1, 1, 1};
    for (int it = 0; it < 6; ++it) {
        std::vector<WeightedPolynomial> gens{testutil::random_homogeneous(rng, w, 2, 3)};
        auto extended = gens;
        extended.push_back(testutil::random_homogeneous(rng, w, 3, 3));
        for (long t = 0; t <= 5; ++t)
            CHECK(ideal_slice(w, extended, t).rank() >= ideal_slice(w, gens, t).rank());
    }
}

TEST_CASE("subspace equality is canonical: reflexive, symmetric, order-free") {
    std::vector<int> w{1, 1};
    std::vector<WeightedPolynomial> g1{parse_poly("x0^2-x1^2", 2, w, 2),
                                       parse_poly("x0x1", 2, w, 2)};
    std::vector<WeightedPolynomial> g2{parse_poly("x0x1", 2, w, 2),
                                       parse_poly("2x0^2-2x1^2+3x0x1", 2, w, 2)};
    auto s1 = ideal_slice(w, g1, 3);
    auto s2 = ideal_slice(w, g2, 3);
    CHECK(s1.same_span(s1));
    CHECK(s1.same_span(s2));
    CHECK(s2.same_span(s1));

    std::vector<WeightedPolynomial> g3{parse_poly("x0^2", 2, w, 2)};
    CHECK(!s1.same_span(ideal_slice(w, g3, 3)));
}

TEST_CASE("normal form is congruent to the input modulo the slice") {
    // p - lift(NF(p)) must lie in the ideal slice: inserting it into the
    // slice echelon must not increase the rank
    testutil::Rng rng(606);
    std::vector<int> w{1, 1, 1};
    for (int it = 0; it < 10; ++it) {
        std::vector<WeightedPolynomial> gens{testutil::random_homogeneous(rng, w, 2, 4),
                                             testutil::random_homogeneous(rng, w, 2, 4),
                                             testutil::random_homogeneous(rng, w, 3, 4)};
        long t = 3 + rng.below(3);
        auto p = testutil::random_homogeneous(rng, w, t, 6);
        auto qb = quotient_basis(w, gens, t);
        auto residue = p - qb.lift(qb.reduce(p), w);
        if (residue.is_zero()) continue;

        auto ambient = monomials_of_degree(t, w);
        auto col_of = detail::column_index(ambient);
        SparseEchelon ech(static_cast<int>(ambient.size()));
        for (auto& row : detail::collect_slice_rows(w, gens, t, col_of)) ech.insert(std::move(row));
        int rank_before = ech.rank();
        SparseRatRow v;
        for (const auto& [m, c] : residue.terms()) v.emplace_back(col_of.at(m), c);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        CHECK(!ech.insert(v));
        CHECK(ech.rank() == rank_before);
    }
}

TEST_CASE("reduction of a representative is itself (idempotence)") {
    auto gens = fermat_cubic_gens_3vars();
    auto qb = quotient_basis(gens, 2);
    for (std::size_t i = 0; i < qb.size(); ++i) {
        auto coords = qb.reduce_monomial(qb.representatives()[i]);
        for (std::size_t j = 0; j < coords.size(); ++j) CHECK(coords[j] == (i == j ? 1 : 0));
    }
}
