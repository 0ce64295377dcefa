#include <catch_amalgamated.hpp>

#include <map>

#include "test_support.hpp"

using namespace koszul;

namespace {
const FieldSpec Q0 = FieldSpec::rationals();

Arrangement braid4() {
    // z_i - z_j for 1 <= i < j <= 4: the K4 graphic arrangement
    std::vector<std::vector<Rational>> forms;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            std::vector<Rational> f(4, Rational(0));
            f[i] = 1;
            f[j] = -1;
            forms.push_back(f);
        }
    return parse_arrangement(4, forms);
}

Arrangement pencil3() {
    return parse_arrangement(2, {{1, 0}, {0, 1}, {1, -1}});
}

/// Independent construction of the cup-product map wedge^2 H^1 -> A^2 from
/// the local pencil quotients: for a flat X with members h_1 < ... < h_s,
/// the class of e_i ^ e_j (i, j in X) is e_{h_1} ^ e_j - e_{h_1} ^ e_i.
ExactMatrix cup_product_matrix(const Arrangement& a) {
    auto flats = rank2_flats(a);
    WedgeBasis w2(a.size(), 2);
    std::vector<std::pair<std::size_t, std::size_t>> rows; // (flat index, member)
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> row_of;
    for (std::size_t fi = 0; fi < flats.size(); ++fi)
        for (std::size_t t = 1; t < flats[fi].members.size(); ++t) {
            row_of[{fi, flats[fi].members[t]}] = rows.size();
            rows.emplace_back(fi, flats[fi].members[t]);
        }
    ExactMatrix m(rows.size(), w2.size());
    for (std::size_t c = 0; c < w2.size(); ++c) {
        std::size_t i = w2.element_at(c)[0], j = w2.element_at(c)[1];
        std::size_t fi = flats.size();
        for (std::size_t t = 0; t < flats.size(); ++t) {
            const auto& mem = flats[t].members;
            if (std::binary_search(mem.begin(), mem.end(), i) &&
                std::binary_search(mem.begin(), mem.end(), j)) {
                fi = t;
                break;
            }
        }
        REQUIRE(fi < flats.size());
        std::size_t h1 = flats[fi].members[0];
        if (i == h1) {
            m.add(row_of[{fi, j}], c, 1);
        } else if (j == h1) {
            m.add(row_of[{fi, i}], c, -1); // e_i ^ e_{h1} = -(e_{h1} ^ e_i)
        } else {
            m.add(row_of[{fi, j}], c, 1);
            m.add(row_of[{fi, i}], c, -1);
        }
    }
    return m;
}
} // namespace

TEST_CASE("parse_arrangement validates") {
    Arrangement a = parse_arrangement(2, {{1, 0}, {0, 1}, {1, -1}});
    CHECK(a.size() == 3);
    CHECK_THROWS_AS(parse_arrangement(2, {{1, 0}, {2, 0}}), DuplicateHyperplane);
    CHECK_THROWS_AS(parse_arrangement(2, {{0, 0}}), ZeroForm);
    CHECK_THROWS_AS(parse_arrangement(2, {{1, 0, 0}}), DimensionMismatch);
    // normalization: first nonzero coordinate becomes 1
    Arrangement b = parse_arrangement(2, {{0, 3}});
    CHECK(b.forms[0] == std::vector<Rational>{0, 1});
    CHECK(braid4().size() == 6);
}

TEST_CASE("rank2 flats") {
    // generic 3 planes in 3-space: three flats of size 2
    Arrangement gen = parse_arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto f1 = rank2_flats(gen);
    CHECK(f1.size() == 3);
    for (const auto& f : f1) CHECK(f.members.size() == 2);
    // pencil: one flat of size 3
    auto f2 = rank2_flats(pencil3());
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].members == std::vector<std::size_t>{0, 1, 2});
    // braid: four triples and three pairs
    auto f3 = rank2_flats(braid4());
    std::map<std::size_t, int> sizes;
    for (const auto& f : f3) ++sizes[f.members.size()];
    CHECK(sizes[3] == 4);
    CHECK(sizes[2] == 3);
}

TEST_CASE("os_kperp dimensions") {
    Arrangement gen = parse_arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(os_kperp(gen).dim() == 0);
    CHECK(os_kperp(pencil3()).dim() == 1);
    CHECK(os_kperp(braid4()).dim() == 4);
}

TEST_CASE("os_kperp agrees with the independent cup-product construction") {
    for (const Arrangement& a : {pencil3(), braid4()}) {
        ExactMatrix cup = cup_product_matrix(a);
        SubspaceSpec kperp = os_kperp(a);
        // every generator lies in the kernel of the cup product
        for (const auto& gen : kperp.basis()) {
            auto y = cup.apply(gen);
            for (const auto& x : y) CHECK(x == 0);
        }
        // and the kernel has no more than that
        CHECK(kperp.dim() == cup.cols() - rank(cup, Q0));
    }
}

TEST_CASE("local components") {
    CHECK(local_components(parse_arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
    auto pcs = local_components(pencil3());
    REQUIRE(pcs.size() == 1);
    CHECK(pcs[0].subspace.dim() == 2);
    auto bcs = local_components(braid4());
    CHECK(bcs.size() == 4);
    for (const auto& c : bcs) CHECK(c.subspace.dim() == 2);
    // local components are isotropic for the OS ideal
    KoszulInput in = arrangement_koszul_input(braid4());
    auto iso = check_isotropic(in, bcs);
    for (bool b : iso) CHECK(b);
}

TEST_CASE("multinet validation on the pencil") {
    Arrangement a = pencil3();
    Multinet mn = validate_multinet(a, {{0}, {1}, {2}}, {1, 1, 1});
    CHECK(mn.class_weight == 1);
    CHECK(mn.component.subspace.dim() == 2);
    CHECK_FALSE(mn.axiom4_checked);
    REQUIRE(mn.base_locus.size() == 1);
    // the multinet component is isotropic against the OS K-perp
    KoszulInput in = arrangement_koszul_input(a);
    CHECK(check_isotropic(in, {mn.component})[0]);
}

TEST_CASE("multinet axiom violations") {
    Arrangement a = pencil3();
    // unequal class weights
    CHECK_THROWS_MATCHES(validate_multinet(a, {{0, 1}, {2}}, {1, 1, 1}), AxiomViolation,
                         Catch::Matchers::Predicate<AxiomViolation>(
                             [](const AxiomViolation& e) { return e.axiom == 1; }));
    // braid with a partition violating per-flat balance: put {01,23} vs rest
    Arrangement b = braid4();
    CHECK_THROWS_AS(validate_multinet(b, {{0, 1, 2}, {3, 4, 5}}, {1, 1, 1, 1, 1, 1}),
                    AxiomViolation);
    CHECK_THROWS_AS(validate_multinet(a, {{0}, {1}}, {1, 1, 1}), PreconditionFailed);
    CHECK_THROWS_AS(validate_multinet(a, {{0}, {1}, {2}}, {1, 1}), PreconditionFailed);
}

TEST_CASE("braid admits the (3,2)-multinet from opposite pairs") {
    // partition of K4's edges into perfect matchings: {01|23}, {02|13}, {03|12}
    // with edge order (0,1)(0,2)(0,3)(1,2)(1,3)(2,3) -> indices {0,5},{1,4},{2,3}
    Arrangement b = braid4();
    Multinet mn = validate_multinet(b, {{0, 5}, {1, 4}, {2, 3}}, {1, 1, 1, 1, 1, 1});
    CHECK(mn.class_weight == 2);
    CHECK(mn.component.subspace.dim() == 2);
    KoszulInput in = arrangement_koszul_input(b);
    CHECK(check_isotropic(in, {mn.component})[0]);
}

TEST_CASE("chen ranks: theta_2 equals dim K-perp") {
    for (const Arrangement& a : {pencil3(), braid4()}) {
        GradedDimTable t = chen_ranks(a, 3);
        CHECK(t.at(2) == os_kperp(a).dim());
    }
}

TEST_CASE("boolean arrangement has zero Chen ranks") {
    Arrangement boolean = parse_arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    GradedDimTable t = chen_ranks(boolean, 5);
    for (std::size_t q = 2; q <= 5; ++q) CHECK(t.at(q) == 0);
}

TEST_CASE("free group Chen ranks via K = 0") {
    for (std::size_t n = 2; n <= 4; ++n) {
        KoszulInput in = make_koszul_input(Q0, n, std::vector<std::vector<Rational>>{});
        for (std::size_t q = 2; q <= 6; ++q) {
            unsigned long long expect =
                (q - 1) * binomial_ull(n + q - 2, static_cast<std::int64_t>(q));
            CHECK(koszul_dim(in, q - 2) == expect);
        }
    }
}

TEST_CASE("suciu formula instances") {
    for (std::size_t q = 2; q <= 6; ++q) CHECK(suciu_formula({{2, 1}}, q) == q - 1);
    CHECK(suciu_formula({{3, 2}}, 3) == 16);
    CHECK(suciu_formula({}, 4) == 0);
    CHECK_THROWS_AS(suciu_formula({{2, 1}}, 1), PreconditionFailed);
}

TEST_CASE("pencil chen ranks match the suciu formula from local components") {
    Arrangement a = pencil3();
    auto comps = local_components(a);
    std::map<std::size_t, std::size_t> h;
    for (const auto& c : comps) ++h[c.subspace.dim()];
    GradedDimTable t = chen_ranks(a, 6);
    for (std::size_t q = 2; q <= 6; ++q) CHECK(t.at(q) == suciu_formula(h, q));
}

TEST_CASE("graphic: triangle") {
    GraphicReport rep = graphic(3, {{0, 1}, {0, 2}, {1, 2}}, 5);
    CHECK(rep.k2 == 3);
    CHECK(rep.k3 == 1);
    CHECK(rep.k4 == 0);
    CHECK(rep.formula_valid_from == 2);
    CHECK(rep.agrees);
    for (std::size_t q = 2; q <= 5; ++q) CHECK(rep.direct.at(q) == q - 1);
}

TEST_CASE("graphic: K4 minus an edge has only local components") {
    // vertices 0..3, edges all but {2,3}: two triangles share edge {0,1}
    GraphicReport rep = graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}, 5);
    CHECK(rep.k2 == 5);
    CHECK(rep.k3 == 2);
    CHECK(rep.k4 == 0);
    CHECK(rep.formula_valid_from == 4);
    CHECK(rep.agrees);
    for (std::size_t q = 4; q <= 5; ++q) CHECK(rep.direct.at(q) == 2 * (q - 1));
    // all flats of size <= 3 and all components local: the suciu census from
    // local components matches in the stable range
    auto comps = local_components(rep.arrangement);
    std::map<std::size_t, std::size_t> h;
    for (const auto& c : comps) ++h[c.subspace.dim()];
    for (std::size_t q = 4; q <= 5; ++q) CHECK(rep.direct.at(q) == suciu_formula(h, q));
}

TEST_CASE("graphic rejects non-simple graphs, empty graph is zero") {
    CHECK_THROWS_AS(graphic(3, {{0, 0}}, 4), NonSimpleGraph);
    CHECK_THROWS_AS(graphic(3, {{0, 1}, {1, 0}}, 4), NonSimpleGraph);
    CHECK_THROWS_AS(graphic(2, {{0, 5}}, 4), NonSimpleGraph);
    GraphicReport rep = graphic(4, {}, 4);
    CHECK(rep.k2 == 0);
    CHECK(rep.direct.dims().empty());
}
