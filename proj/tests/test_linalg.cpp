#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace koszul;
using koszul_test::naive_rank;
using koszul_test::random_dense;
using koszul_test::to_matrix;
using koszul_test::unit_vector;

namespace {
const FieldSpec Q0 = FieldSpec::rationals();
}

TEST_CASE("field spec accepts 0 and primes only") {
    CHECK(FieldSpec(0).is_rational());
    CHECK(FieldSpec(2).characteristic() == 2);
    CHECK(FieldSpec(1000003).characteristic() == 1000003);
    CHECK_THROWS_AS(FieldSpec(1), PreconditionFailed);
    CHECK_THROWS_AS(FieldSpec(4), PreconditionFailed);
    CHECK_THROWS_AS(FieldSpec(91), PreconditionFailed); // 7 * 13
}

TEST_CASE("rational serialization is a/b in lowest terms") {
    CHECK(rational_to_string(Rational(6, 4)) == "3/2");
    CHECK(rational_to_string(Rational(-4, 2)) == "-2");
    CHECK(rational_to_string(Rational(0)) == "0");
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("4/6") == Rational(2, 3));
    CHECK_THROWS_AS(parse_rational("x"), UsageError);
}

TEST_CASE("mod p reduction") {
    FieldSpec f5(5);
    CHECK(f5.reduce(Rational(7)) == 2);
    CHECK(f5.reduce(Rational(-1)) == 4);
    CHECK(f5.reduce(Rational(1, 2)) == 3); // 2 * 3 = 6 = 1
    CHECK_THROWS_AS(f5.reduce(Rational(1, 5)), DenominatorDivisibleByP);
    CHECK_THROWS_AS(f5.reduce(Rational(3, 10)), DenominatorDivisibleByP);
}

TEST_CASE("rank examples") {
    CHECK(rank(ExactMatrix::identity(4), Q0) == 4);
    CHECK(rank(ExactMatrix(3, 5), Q0) == 0);
    ExactMatrix m = to_matrix({{2, 4}, {1, 2}});
    CHECK(rank(m, Q0) == 1);
    CHECK(rank(m, FieldSpec(2)) == 1); // reduces to [[0,0],[1,0]]
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(ExactMatrix::identity(5), Q0).dim() == 0);
    SubspaceSpec full = kernel_basis(ExactMatrix(2, 3), Q0);
    CHECK(full.dim() == 3);
    SubspaceSpec k = kernel_basis(to_matrix({{1, 1, 0}}), Q0);
    CHECK(k.dim() == 2);
    CHECK(k.contains_vector({Rational(1), Rational(-1), Rational(0)}, Q0));
    CHECK_FALSE(k.contains_vector({Rational(1), Rational(0), Rational(0)}, Q0));
}

TEST_CASE("rank plus kernel dimension equals column count") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 40; ++t) {
        std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 7;
        auto m = random_dense(rng, rows, cols);
        FieldSpec f = (t % 3 == 0) ? FieldSpec(t % 2 ? 3 : 2) : Q0;
        ExactMatrix mat = to_matrix(m);
        CHECK(rank(mat, f) + kernel_basis(mat, f).dim() == cols);
    }
}

TEST_CASE("rank agrees with the dense oracle and is permutation/scaling invariant") {
    std::mt19937_64 rng(202);
    for (int t = 0; t < 30; ++t) {
        std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        auto m = random_dense(rng, rows, cols);
        std::size_t r0 = rank(to_matrix(m), Q0);
        CHECK(r0 == naive_rank(m, Q0));
        // permute rows and columns, scale a row
        auto m2 = m;
        std::shuffle(m2.begin(), m2.end(), rng);
        std::vector<std::size_t> perm(cols);
        for (std::size_t c = 0; c < cols; ++c) perm[c] = c;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (auto& row : m2) {
            auto old = row;
            for (std::size_t c = 0; c < cols; ++c) row[c] = old[perm[c]];
        }
        Rational scale(static_cast<long>(1 + rng() % 5), static_cast<long>(1 + rng() % 3));
        for (auto& x : m2[rng() % rows]) x *= scale;
        CHECK(rank(to_matrix(m2), Q0) == r0);
    }
}

TEST_CASE("rank over Q dominates rank mod p") {
    std::mt19937_64 rng(303);
    for (int t = 0; t < 30; ++t) {
        std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        auto m = random_dense(rng, rows, cols); // integer entries, any p admissible
        std::size_t rq = rank(to_matrix(m), Q0);
        for (std::uint64_t p : {2ull, 3ull, 5ull})
            CHECK(rank(to_matrix(m), FieldSpec(p)) <= rq);
    }
}

TEST_CASE("subspace span canonical form and equality") {
    SubspaceSpec a = SubspaceSpec::span(3, {{1, 1, 0}, {0, 0, 2}}, Q0);
    SubspaceSpec b = SubspaceSpec::span(3, {{2, 2, 2}, {0, 0, -1}}, Q0);
    CHECK(a == b);
    CHECK(a.dim() == 2);
    CHECK(a.pivot_cols() == std::vector<std::size_t>{0, 2});
}

TEST_CASE("subspace sum is idempotent and monotone") {
    std::mt19937_64 rng(404);
    SubspaceSpec s = koszul_test::random_subspace(rng, 6, 3, Q0);
    CHECK(subspace_sum(s, s, Q0) == s);
    SubspaceSpec t = koszul_test::random_subspace(rng, 6, 2, Q0);
    SubspaceSpec u = subspace_sum(s, t, Q0);
    CHECK(subspace_contains(u, s, Q0));
    CHECK(subspace_contains(u, t, Q0));
}

TEST_CASE("intersection dimension formula") {
    std::mt19937_64 rng(505);
    for (int t = 0; t < 15; ++t) {
        std::size_t amb = 5 + rng() % 3;
        SubspaceSpec a = koszul_test::random_subspace(rng, amb, 1 + rng() % 3, Q0);
        SubspaceSpec b = koszul_test::random_subspace(rng, amb, 1 + rng() % 3, Q0);
        SubspaceSpec sum = subspace_sum(a, b, Q0);
        SubspaceSpec inter = subspace_intersection(a, b, Q0);
        CHECK(inter.dim() == a.dim() + b.dim() - sum.dim());
        CHECK(subspace_contains(a, inter, Q0));
        CHECK(subspace_contains(b, inter, Q0));
    }
}

TEST_CASE("annihilator examples in wedge^2 of k^4") {
    ExactMatrix pairing = wedge_pairing(4);
    CHECK(pairing.rows() == 6);
    SubspaceSpec full = SubspaceSpec::full(6, Q0);
    CHECK(annihilator(full, pairing, Q0).dim() == 0);
    // span{e1 ^ e2} sits at wedge index 0 in lexicographic order
    SubspaceSpec s = SubspaceSpec::span(6, {unit_vector(6, 0)}, Q0);
    SubspaceSpec ann = annihilator(s, pairing, Q0);
    CHECK(ann.dim() == 5);
    CHECK_FALSE(ann.contains_vector(unit_vector(6, 0), Q0));
    CHECK(ann.contains_vector(unit_vector(6, 3), Q0)); // e2* ^ e3* pairs to zero
}

TEST_CASE("annihilator is an involution") {
    std::mt19937_64 rng(606);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = 4 + t % 2;
        std::size_t amb = binomial_ull(n, 2);
        FieldSpec f = (t % 4 == 0) ? FieldSpec(3) : Q0;
        SubspaceSpec s = koszul_test::random_subspace(rng, amb, 1 + rng() % (amb - 1), f);
        ExactMatrix pairing = wedge_pairing(n);
        SubspaceSpec back = annihilator(annihilator(s, pairing, f), pairing, f);
        CHECK(back == s);
    }
}

TEST_CASE("char p kernel entries are canonical lifts") {
    FieldSpec f3(3);
    SubspaceSpec k = kernel_basis(to_matrix({{1, 2, 0}}), f3);
    CHECK(k.dim() == 2);
    for (const auto& row : k.basis())
        for (const auto& x : row) {
            CHECK(x.get_den() == 1);
            CHECK(x >= 0);
            CHECK(x < 3);
        }
}

TEST_CASE("budget cap raises BudgetExceeded") {
    // guard is driven by KOSZUL_BUDGET; the default of 50000 columns is far
    // above anything here, so just probe the helper directly
    CHECK_THROWS_AS(check_budget_cols(matrix_budget() + 1, "test"), BudgetExceeded);
    CHECK_NOTHROW(check_budget_cols(1, "test"));
}
