#include <catch2/catch_amalgamated.hpp>

#include "kuzcalc/monomial.hpp"
#include "kuzcalc/parse.hpp"
#include "kuzcalc/polynomial.hpp"
#include "kuzcalc/series.hpp"
#include "test_util.hpp"

using namespace kuzcalc;

TEST_CASE("parse reads canonical sparse polynomials") {
    auto p = parse_poly("x0^3+x1^3+x2^3", 3, {1, 1, 1}, 3);
    CHECK(p.term_count() == 3);
    CHECK(p.is_homogeneous_of(3));
    CHECK(p.coefficient(Monomial({3, 0, 0})) == 1);

    // weighted sextic from the genus-2 threefold family
    auto w = parse_poly("x4^2 + x0^6 + x1^6 + x2^6 + x3^6", 5, {1, 1, 1, 1, 3}, 6);
    CHECK(w.term_count() == 5);
    CHECK(*w.degree() == 6);
}

TEST_CASE("parse supports coefficients, implicit products, parentheses") {
    auto p = parse_poly("2x0^2 - 3/4 x0 x1 + (x1)^2", 2, {1, 1}, 2);
    CHECK(p.coefficient(Monomial({2, 0})) == 2);
    CHECK(p.coefficient(Monomial({1, 1})) == Rat(-3, 4));
    CHECK(p.coefficient(Monomial({0, 2})) == 1);

    auto q = parse_poly("(x0+x1)^2", 2, {1, 1}, 2);
    CHECK(q.coefficient(Monomial({1, 1})) == 2);

    CHECK(parse_poly("0", 2, {1, 1}, 5).is_zero());
}

TEST_CASE("parse rejects malformed and inhomogeneous input") {
    CHECK_THROWS_AS(parse_poly("x0^", 1, {1}, 2), parse_error);
    CHECK_THROWS_AS(parse_poly("x5", 2, {1, 1}, 1), parse_error);
    CHECK_THROWS_AS(parse_poly("x0 + + x1", 2, {1, 1}, 1), parse_error);
    try {
        parse_poly("x0)", 1, {1}, 1);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.position() == 2);
    }

    try {
        parse_poly("x0^2+x1^3", 2, {1, 1}, 3);
        FAIL("expected math_error");
    } catch (const math_error& e) {
        CHECK(std::string(e.what()).find("x0^2") != std::string::npos);
    }
}

TEST_CASE("partial derivatives") {
    auto p = parse_poly("x0^3+x1^3", 2, {1, 1}, 3);
    CHECK(p.partial(0) == parse_poly("3x0^2", 2, {1, 1}, 2));

    auto w = parse_poly("x4^2 + x0^6 + x1^6 + x2^6 + x3^6", 5, {1, 1, 1, 1, 3}, 6);
    auto d4 = w.partial(4);
    CHECK(d4 == parse_poly("2x4", 5, {1, 1, 1, 1, 3}, 3));
    CHECK(*d4.degree() == 3);

    CHECK(parse_poly("x0^3", 2, {1, 1}, 3).partial(1).is_zero());
}

TEST_CASE("multiplication") {
    std::vector<int> w{1, 1};
    auto a = parse_poly("x0+x1", 2, w, 1);
    auto b = parse_poly("x0-x1", 2, w, 1);
    CHECK(a * b == parse_poly("x0^2-x1^2", 2, w, 2));

    CHECK((a * WeightedPolynomial::zero(w)).is_zero());

    auto sq = parse_poly("x0^2", 2, w, 2) * parse_poly("x0", 2, w, 1);
    CHECK(*sq.degree() == 3);

    WeightedPolynomial other({1, 2});
    CHECK_THROWS_AS(a * other, math_error);
}

TEST_CASE("monomials_of_degree: order, counts, zero case") {
    auto ms = monomials_of_degree(2, {1, 1, 1});
    REQUIRE(ms.size() == 6);
    CHECK(ms[0] == Monomial({2, 0, 0}));
    CHECK(ms[1] == Monomial({1, 1, 0}));
    CHECK(ms[2] == Monomial({1, 0, 1}));
    CHECK(ms[3] == Monomial({0, 2, 0}));
    CHECK(ms[4] == Monomial({0, 1, 1}));
    CHECK(ms[5] == Monomial({0, 0, 2}));

    // brute-force oracle: 20 cubics in x0..x3 plus x4 itself
    auto w13 = std::vector<int>{1, 1, 1, 1, 3};
    CHECK(testutil::brute_force_monomial_count(w13, 3) == 21);
    auto slice = monomials_of_degree(3, w13);
    CHECK(slice.size() == 21);
    CHECK(slice.back() == Monomial({0, 0, 0, 0, 1}));  // x4 is lex-smallest

    auto unit = monomials_of_degree(0, {1, 1});
    REQUIRE(unit.size() == 1);
    CHECK(unit[0] == Monomial({0, 0}));

    CHECK(monomials_of_degree(-1, {1, 1}).empty());
}

TEST_CASE("monomial counts match the generating-function expansion") {
    std::vector<std::vector<int>> weight_sets{{1, 1, 1}, {1, 1, 1, 1, 3}, {1, 2, 3}, {2, 3, 5}};
    for (const auto& w : weight_sets) {
        auto series = monomial_count_series(w, 12);
        for (long t = 0; t <= 12; ++t) {
            CAPTURE(w, t);
            CHECK(Int(monomials_of_degree(t, w).size()) == series[static_cast<std::size_t>(t)]);
        }
    }
}

TEST_CASE("Euler relation sum q_j x_j d_j(p) = d*p on random forms") {
    testutil::Rng rng(2024);
    std::vector<std::vector<int>> weight_sets{{1, 1}, {1, 1, 1}, {1, 1, 2}, {1, 1, 1, 3}};
    for (const auto& w : weight_sets) {
        for (int it = 0; it < 10; ++it) {
            long d = 2 + rng.below(5);
            auto p = testutil::random_homogeneous(rng, w, d, 4);
            WeightedPolynomial lhs(w);
            for (std::size_t j = 0; j < w.size(); ++j)
                lhs += Rat(w[j]) * (WeightedPolynomial::variable(w, j) * p.partial(j));
            CHECK(lhs == Rat(d) * p);
        }
    }
}

TEST_CASE("multiply is associative and commutative on random triples") {
    testutil::Rng rng(77);
    std::vector<int> w{1, 1, 1};
    for (int it = 0; it < 12; ++it) {
        auto a = testutil::random_homogeneous(rng, w, 1 + rng.below(3), 3);
        auto b = testutil::random_homogeneous(rng, w, 1 + rng.below(3), 3);
        auto c = testutil::random_homogeneous(rng, w, 1 + rng.below(3), 3);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("exact rational roots") {
    CHECK(rat_nth_root(Rat(8), 3) == Rat(2));
    CHECK(rat_nth_root(Rat(-27, 8), 3) == Rat(-3, 2));
    CHECK(rat_nth_root(Rat(9, 4), 2) == Rat(3, 2));
    CHECK(!rat_nth_root(Rat(2), 2).has_value());
    CHECK(!rat_nth_root(Rat(-4), 2).has_value());
    CHECK(rat_nth_root(Rat(0), 5) == Rat(0));
    CHECK(rat_nth_root(Rat(7, 3), 1) == Rat(7, 3));
    CHECK(int_nth_root_floor(Int(1000), 3) == 10);
    CHECK(int_nth_root_floor(Int(999), 3) == 9);
}

TEST_CASE("zero polynomial is vacuously homogeneous, has no degree") {
    WeightedPolynomial z({1, 1});
    CHECK(z.is_homogeneous());
    CHECK(z.is_homogeneous_of(0));
    CHECK(z.is_homogeneous_of(7));
    CHECK(!z.degree().has_value());
}
