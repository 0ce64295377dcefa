#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace koszul;

namespace {
const FieldSpec Q0 = FieldSpec::rationals();

KoszulInput input_k_zero(std::size_t n, FieldSpec f = Q0) {
    return make_koszul_input(f, n, std::vector<std::vector<Rational>>{});
}

KoszulInput input_k_full(std::size_t n, FieldSpec f = Q0) {
    return KoszulInput{f, n, SubspaceSpec::full(binomial_ull(n, 2), f)};
}

/// K from a K-perp spanned by the listed wedge-index unit vectors.
KoszulInput input_from_kperp_units(std::size_t n, const std::vector<std::vector<std::uint8_t>>& pairs,
                                   FieldSpec f = Q0) {
    WedgeBasis w(n, 2);
    std::vector<std::vector<Rational>> gens;
    for (const auto& pr : pairs) gens.push_back(koszul_test::unit_vector(w.size(), w.index_of(pr)));
    SubspaceSpec kperp = SubspaceSpec::span(w.size(), gens, f);
    return KoszulInput{f, n, annihilator(kperp, wedge_pairing(n), f)};
}
} // namespace

TEST_CASE("free module dimension formula") {
    CHECK(free_module_dim(3, 0) == 3);
    CHECK(free_module_dim(3, 1) == 8);
    for (std::size_t q = 0; q <= 6; ++q) CHECK(free_module_dim(2, q) == q + 1);
    CHECK(free_module_dim(1, 3) == 0);
}

TEST_CASE("koszul_dim with K = 0 matches the closed form") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t q = 0; q <= 5; ++q)
            CHECK(koszul_dim(input_k_zero(n), q) == free_module_dim(n, q));
}

TEST_CASE("koszul_dim with K = wedge^2 V vanishes") {
    for (std::size_t n = 2; n <= 5; ++n)
        for (std::size_t q = 0; q <= 3; ++q) CHECK(koszul_dim(input_k_full(n), q) == 0);
}

TEST_CASE("degree zero is the quotient dimension") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        std::size_t n = 3 + t % 3;
        std::size_t amb = binomial_ull(n, 2);
        SubspaceSpec k = koszul_test::random_subspace(rng, amb, rng() % (amb + 1), Q0);
        KoszulInput in{Q0, n, k};
        CHECK(koszul_dim(in, 0) == amb - k.dim());
    }
}

TEST_CASE("two-component instance has dim 2(q+1) for q >= 1") {
    KoszulInput in = input_from_kperp_units(4, {{0, 1}, {2, 3}});
    CHECK(koszul_dim(in, 0) == 2);
    for (std::size_t q = 1; q <= 4; ++q) {
        CHECK(koszul_dim(in, q) == 2 * (q + 1));
        CHECK(koszul_dim_presentation(in, q) == 2 * (q + 1));
    }
}

TEST_CASE("presentation route base cases") {
    CHECK(koszul_dim_presentation(input_k_zero(3), 0) == 3);
    for (std::size_t q = 0; q <= 3; ++q)
        CHECK(koszul_dim_presentation(input_k_full(4), q) == 0);
}

TEST_CASE("dual routes agree on random instances") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 25; ++t) {
        std::size_t n = 3 + rng() % 3; // 3..5
        std::size_t amb = binomial_ull(n, 2);
        FieldSpec f = (t % 5 == 4) ? FieldSpec(t % 2 ? 3 : 2) : Q0;
        SubspaceSpec k = koszul_test::random_subspace(rng, amb, rng() % (amb + 1), f);
        KoszulInput in{f, n, k};
        for (std::size_t q = 0; q <= 3; ++q)
            CHECK(koszul_dim(in, q) == koszul_dim_presentation(in, q));
    }
}

TEST_CASE("functoriality: larger K gives smaller dimensions") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 15; ++t) {
        std::size_t n = 4;
        std::size_t amb = binomial_ull(n, 2);
        SubspaceSpec k1 = koszul_test::random_subspace(rng, amb, 1 + rng() % 3, Q0);
        // enlarge: K2 = K1 + extra vectors
        SubspaceSpec k2 = subspace_sum(
            k1, koszul_test::random_subspace(rng, amb, 1 + rng() % 2, Q0), Q0);
        REQUIRE(subspace_contains(k2, k1, Q0));
        KoszulInput in1{Q0, n, k1}, in2{Q0, n, k2};
        for (std::size_t q = 0; q <= 3; ++q)
            CHECK(koszul_dim(in1, q) >= koszul_dim(in2, q));
    }
}

TEST_CASE("hilbert table and monotone vanishing") {
    GradedDimTable t = hilbert_table(input_k_full(4), 3);
    CHECK(t.dims() == std::vector<std::size_t>{0, 0, 0, 0});
    GradedDimTable t2 = hilbert_table(input_k_zero(3), 2);
    CHECK(t2.dims() == std::vector<std::size_t>{3, 8, 15});
    // a non-monotone table is rejected outright
    CHECK_THROWS_AS(GradedDimTable(0, {1, 0, 2}), InternalInconsistency);
}

TEST_CASE("hilbert table parallel matches sequential") {
    KoszulInput in = input_from_kperp_units(4, {{0, 1}, {2, 3}});
    CHECK(hilbert_table(in, 4, 3) == hilbert_table(in, 4, 1));
}

TEST_CASE("vanishing threshold") {
    CHECK(vanishing_threshold(input_k_full(4), 3) == 0);
    CHECK(vanishing_threshold(input_k_zero(4), 6) == std::nullopt);
    // generic K of dim 2n-3 for n=4 vanishes at exactly q=1 (W_0 = 1 there)
    std::mt19937_64 rng(57);
    SubspaceSpec k = koszul_test::random_subspace(rng, 6, 5, Q0);
    KoszulInput in{Q0, 4, k};
    auto th = vanishing_threshold(in, 3);
    REQUIRE(th.has_value());
    CHECK(*th <= 1);
}

TEST_CASE("char p inputs reduce and compute") {
    FieldSpec f2(2);
    KoszulInput in = input_k_zero(3, f2);
    for (std::size_t q = 0; q <= 3; ++q) CHECK(koszul_dim(in, q) == free_module_dim(3, q));
    // denominators divisible by p are rejected
    std::vector<std::vector<Rational>> bad{{Rational(1, 2), 0, 0}};
    CHECK_THROWS_AS(make_koszul_input(f2, 3, bad), DenominatorDivisibleByP);
}

TEST_CASE("koszul input validation") {
    CHECK_THROWS_AS(make_koszul_input(Q0, 4, {{1, 2, 3}}), DimensionMismatch);
}
