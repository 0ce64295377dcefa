#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "koszul/resonance.hpp"

namespace koszul {

/// A hyperplane arrangement: pairwise non-proportional linear forms in m
/// coordinates, normalized so the first nonzero coordinate is 1. Defining
/// data is rational; the group-theoretic side is characteristic 0.
struct Arrangement {
    std::size_t ambient_dim = 0;
    std::vector<std::vector<Rational>> forms;
    std::size_t size() const { return forms.size(); }
};

inline Arrangement parse_arrangement(std::size_t ambient_dim,
                                     std::vector<std::vector<Rational>> forms) {
    Arrangement a;
    a.ambient_dim = ambient_dim;
    for (auto& f : forms) {
        if (f.size() != ambient_dim) throw DimensionMismatch("form length != ambient dim");
        std::size_t lead = 0;
        while (lead < f.size() && f[lead] == 0) ++lead;
        if (lead == f.size()) throw ZeroForm("arrangement contains the zero form");
        Rational pivot = f[lead];
        for (auto& x : f) x /= pivot;
        for (const auto& g : a.forms)
            if (g == f)
                throw DuplicateHyperplane("proportional hyperplanes in arrangement");
        a.forms.push_back(std::move(f));
    }
    return a;
}

/// A rank-2 flat: the maximal set of hyperplanes through a common
/// codimension-2 subspace.
struct Flat2 {
    std::vector<std::size_t> members; // sorted, |members| >= 2
};

inline std::vector<Flat2> rank2_flats(const Arrangement& a) {
    FieldSpec q0 = FieldSpec::rationals();
    // group pairs by the canonical form of their 2-dimensional span of forms
    std::map<std::string, std::set<std::size_t>> buckets;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            SubspaceSpec span = SubspaceSpec::span(a.ambient_dim, {a.forms[i], a.forms[j]}, q0);
            std::string key;
            for (const auto& row : span.basis())
                for (const auto& x : row) key += rational_to_string(x) + ",";
            auto& members = buckets[key];
            members.insert(i);
            members.insert(j);
        }
    std::vector<Flat2> flats;
    for (const auto& [key, members] : buckets)
        flats.push_back(Flat2{{members.begin(), members.end()}});
    std::sort(flats.begin(), flats.end(),
              [](const Flat2& x, const Flat2& y) { return x.members < y.members; });
    return flats;
}

/// Degree-2 Orlik-Solomon ideal as a subspace of wedge^2 k^{|A|}: spanned by
/// e_j^e_k - e_i^e_k + e_i^e_j over triples {i<j<k} inside a rank-2 flat.
/// This is the K-perp of the arrangement group.
inline SubspaceSpec os_kperp(const Arrangement& a) {
    FieldSpec q0 = FieldSpec::rationals();
    std::size_t nh = a.size();
    WedgeBasis w2(nh, 2);
    std::vector<std::vector<Rational>> gens;
    for (const auto& flat : rank2_flats(a)) {
        const auto& m = flat.members;
        if (m.size() < 3) continue;
        for (std::size_t x = 0; x < m.size(); ++x)
            for (std::size_t y = x + 1; y < m.size(); ++y)
                for (std::size_t z = y + 1; z < m.size(); ++z) {
                    std::vector<Rational> v(w2.size(), Rational(0));
                    auto idx = [&](std::size_t s, std::size_t t) {
                        return w2.index_of({static_cast<std::uint8_t>(s), static_cast<std::uint8_t>(t)});
                    };
                    v[idx(m[y], m[z])] += 1;
                    v[idx(m[x], m[z])] -= 1;
                    v[idx(m[x], m[y])] += 1;
                    gens.push_back(std::move(v));
                }
    }
    return SubspaceSpec::span(w2.size(), gens, q0);
}

/// Koszul input of the arrangement group: V = k^{|A|}, K = annihilator of
/// the degree-2 Orlik-Solomon ideal.
inline KoszulInput arrangement_koszul_input(const Arrangement& a) {
    FieldSpec q0 = FieldSpec::rationals();
    std::size_t nh = a.size();
    SubspaceSpec kperp = os_kperp(a);
    SubspaceSpec k = annihilator(kperp, wedge_pairing(nh), q0);
    return KoszulInput{q0, nh, k};
}

/// Local resonance components: for each flat with >= 3 members, the span of
/// e_H - e_H' over its members, of dimension |members| - 1.
inline std::vector<ComponentSpec> local_components(const Arrangement& a) {
    FieldSpec q0 = FieldSpec::rationals();
    std::vector<ComponentSpec> comps;
    for (const auto& flat : rank2_flats(a)) {
        if (flat.members.size() < 3) continue;
        std::vector<std::vector<Rational>> gens;
        for (std::size_t t = 1; t < flat.members.size(); ++t) {
            std::vector<Rational> v(a.size(), Rational(0));
            v[flat.members[t]] = 1;
            v[flat.members[0]] = -1;
            gens.push_back(std::move(v));
        }
        comps.push_back(ComponentSpec{SubspaceSpec::span(a.size(), gens, q0)});
    }
    return comps;
}

/// A validated multinet: partition with multiplicities satisfying axioms
/// (1)-(3) of the defining combinatorial structure; the connectivity axiom
/// (4) is not checked and is reported as such.
struct Multinet {
    std::vector<std::vector<std::size_t>> classes;
    std::vector<unsigned long> multiplicities; // per hyperplane
    unsigned long class_weight = 0;            // the common d
    std::vector<Flat2> base_locus;
    std::vector<std::vector<Rational>> class_vectors; // u_i = sum m_H e_H
    ComponentSpec component;                          // span{u_2 - u_1, ..., u_k - u_1}
    bool axiom4_checked = false;
};

inline Multinet validate_multinet(const Arrangement& a,
                                  const std::vector<std::vector<std::size_t>>& classes,
                                  const std::vector<unsigned long>& mults) {
    std::size_t nh = a.size();
    if (mults.size() != nh) throw PreconditionFailed("multiplicities must list every hyperplane");
    for (auto m : mults)
        if (m == 0) throw PreconditionFailed("multiplicities must be positive");
    std::vector<int> cls(nh, -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (auto h : classes[c]) {
            if (h >= nh || cls[h] != -1)
                throw PreconditionFailed("classes must partition the hyperplanes");
            cls[h] = static_cast<int>(c);
        }
    for (std::size_t h = 0; h < nh; ++h)
        if (cls[h] == -1) throw PreconditionFailed("classes must cover every hyperplane");
    std::size_t k = classes.size();
    if (k < 2) throw PreconditionFailed("a multinet needs at least 2 classes");

    Multinet mn;
    mn.classes = classes;
    mn.multiplicities = mults;

    // axiom (1): equal class weights
    std::vector<unsigned long> weight(k, 0);
    for (std::size_t c = 0; c < k; ++c)
        for (auto h : classes[c]) weight[c] += mults[h];
    for (std::size_t c = 1; c < k; ++c)
        if (weight[c] != weight[0])
            throw AxiomViolation(1, "class " + std::to_string(c) + " has weight " +
                                        std::to_string(weight[c]) + ", class 0 has " +
                                        std::to_string(weight[0]));
    mn.class_weight = weight[0];

    // base locus: flats meeting >= 2 classes
    auto flats = rank2_flats(a);
    std::vector<char> in_locus(flats.size(), 0);
    for (std::size_t fi = 0; fi < flats.size(); ++fi) {
        std::set<int> seen;
        for (auto h : flats[fi].members) seen.insert(cls[h]);
        if (seen.size() >= 2) {
            in_locus[fi] = 1;
            mn.base_locus.push_back(flats[fi]);
        }
    }
    // axiom (2): cross-class pairs meet inside the base locus
    for (std::size_t i = 0; i < nh; ++i)
        for (std::size_t j = i + 1; j < nh; ++j) {
            if (cls[i] == cls[j]) continue;
            bool found = false;
            for (std::size_t fi = 0; fi < flats.size() && !found; ++fi) {
                if (!in_locus[fi]) continue;
                const auto& m = flats[fi].members;
                found = std::binary_search(m.begin(), m.end(), i) &&
                        std::binary_search(m.begin(), m.end(), j);
            }
            if (!found)
                throw AxiomViolation(2, "hyperplanes " + std::to_string(i) + "," + std::to_string(j) +
                                            " meet outside the base locus");
        }
    // axiom (3): per-flat class weights agree across all classes
    for (const auto& flat : mn.base_locus) {
        std::vector<unsigned long> s(k, 0);
        for (auto h : flat.members) s[cls[h]] += mults[h];
        for (std::size_t c = 1; c < k; ++c)
            if (s[c] != s[0]) {
                std::string desc = "flat {";
                for (auto h : flat.members) desc += std::to_string(h) + " ";
                desc += "} has class weights " + std::to_string(s[0]) + " vs " + std::to_string(s[c]);
                throw AxiomViolation(3, desc);
            }
    }

    FieldSpec q0 = FieldSpec::rationals();
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<Rational> u(nh, Rational(0));
        for (auto h : classes[c]) u[h] = static_cast<long>(mults[h]);
        mn.class_vectors.push_back(std::move(u));
    }
    std::vector<std::vector<Rational>> gens;
    for (std::size_t c = 1; c < k; ++c) {
        std::vector<Rational> v(nh);
        for (std::size_t h = 0; h < nh; ++h) v[h] = mn.class_vectors[c][h] - mn.class_vectors[0][h];
        gens.push_back(std::move(v));
    }
    mn.component = ComponentSpec{SubspaceSpec::span(nh, gens, q0)};
    if (mn.component.subspace.dim() != k - 1)
        throw AxiomViolation(1, "class vectors are not in general position (component dim < k-1)");
    mn.axiom4_checked = false;
    return mn;
}

/// Chen ranks theta_q of the arrangement group for q in [2, q_max]:
/// theta_q = dim W_{q-2}(k^{|A|}, K) with K from the Orlik-Solomon ideal.
inline GradedDimTable chen_ranks(const Arrangement& a, std::size_t q_max, unsigned threads = 1) {
    if (q_max < 2) throw PreconditionFailed("chen_ranks: need q_max >= 2");
    if (a.size() < 2)
        return GradedDimTable(2, std::vector<std::size_t>(q_max - 1, 0));
    KoszulInput in = arrangement_koszul_input(a);
    GradedDimTable w = hilbert_table(in, q_max - 2, threads);
    std::vector<std::size_t> dims(w.dims());
    return GradedDimTable(2, std::move(dims));
}

/// (q-1) * sum_m h_m * C(m+q-2, q) for a component-dimension census h.
inline unsigned long long suciu_formula(const std::map<std::size_t, std::size_t>& h, std::size_t q) {
    if (q < 2) throw PreconditionFailed("suciu_formula: need q >= 2");
    unsigned long long sum = 0;
    for (const auto& [m, count] : h) {
        if (m < 2) continue;
        sum += count * binomial_ull(m + q - 2, static_cast<std::int64_t>(q));
    }
    return (q - 1) * sum;
}

struct GraphicReport {
    Arrangement arrangement;
    std::size_t k2 = 0, k3 = 0, k4 = 0;
    GradedDimTable formula;           // (q-1)(k3+k4) on [q_lo, q_hi]
    GradedDimTable direct;            // chen_ranks on the same range
    std::size_t formula_valid_from = 0; // kappa_2 - 1
    bool agrees = true;
};

/// Graphic arrangement of a simple graph: hyperplanes z_i = z_j per edge.
/// Emits the closed-form Chen ranks and cross-checks the Koszul computation
/// on [max(2, kappa_2 - 1), q_max].
inline GraphicReport graphic(std::size_t vertices,
                             const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                             std::size_t q_max, unsigned threads = 1) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::vector<Rational>> forms;
    for (auto [i, j] : edges) {
        if (i == j || i >= vertices || j >= vertices)
            throw NonSimpleGraph("graph has a loop or an out-of-range vertex");
        auto key = std::minmax(i, j);
        if (!seen.insert(key).second) throw NonSimpleGraph("graph has a repeated edge");
        std::vector<Rational> f(vertices, Rational(0));
        f[key.first] = 1;
        f[key.second] = -1;
        forms.push_back(std::move(f));
    }
    GraphicReport rep;
    rep.arrangement = parse_arrangement(vertices, forms);
    auto has_edge = [&](std::size_t i, std::size_t j) {
        return seen.count(std::minmax(i, j)) > 0;
    };
    rep.k2 = edges.size();
    for (std::size_t i = 0; i < vertices; ++i)
        for (std::size_t j = i + 1; j < vertices; ++j)
            for (std::size_t k = j + 1; k < vertices; ++k) {
                if (!(has_edge(i, j) && has_edge(i, k) && has_edge(j, k))) continue;
                ++rep.k3;
                for (std::size_t l = k + 1; l < vertices; ++l)
                    if (has_edge(i, l) && has_edge(j, l) && has_edge(k, l)) ++rep.k4;
            }
    rep.formula_valid_from = rep.k2 >= 1 ? rep.k2 - 1 : 0;
    if (rep.k2 == 0 || q_max < 2) {
        rep.formula = GradedDimTable(2, {});
        rep.direct = GradedDimTable(2, {});
        return rep;
    }
    std::size_t q_lo = std::max<std::size_t>(2, rep.formula_valid_from);
    if (q_lo > q_max) q_lo = q_max + 1;
    std::vector<std::size_t> form_vals;
    for (std::size_t q = q_lo; q <= q_max; ++q) form_vals.push_back((q - 1) * (rep.k3 + rep.k4));
    rep.formula = GradedDimTable(q_lo, form_vals);

    GradedDimTable chen = chen_ranks(rep.arrangement, q_max, threads);
    std::vector<std::size_t> direct_vals;
    for (std::size_t q = q_lo; q <= q_max; ++q) direct_vals.push_back(chen.at(q));
    rep.direct = GradedDimTable(q_lo, direct_vals);
    rep.agrees = (form_vals == direct_vals);
    return rep;
}

} // namespace koszul
