#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "koszul/arrangements.hpp"
#include "koszul/bgg.hpp"
#include "koszul/cg_green.hpp"

namespace koszul {

using Json = nlohmann::ordered_json;

inline Json field_to_json(const FieldSpec& f) {
    return Json{{"char", f.characteristic()}};
}

inline FieldSpec field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("char"))
        throw UsageError("field spec must be an object with a \"char\" key");
    return FieldSpec(j.at("char").get<std::uint64_t>());
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw UsageError("rationals must be integers or \"a/b\" strings");
}

inline Json rational_vector_to_json(const std::vector<Rational>& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(rational_to_string(x));
    return arr;
}

inline std::vector<Rational> rational_vector_from_json(const Json& j) {
    if (!j.is_array()) throw UsageError("expected an array of rationals");
    std::vector<Rational> v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

inline Json subspace_to_json(const SubspaceSpec& s) {
    Json basis = Json::array();
    for (const auto& row : s.basis()) basis.push_back(rational_vector_to_json(row));
    return Json{{"ambient_dim", s.ambient_dim()}, {"basis", basis}};
}

inline SubspaceSpec subspace_from_json(const Json& j, const FieldSpec& f) {
    if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("basis"))
        throw UsageError("subspace must have \"ambient_dim\" and \"basis\"");
    std::size_t amb = j.at("ambient_dim").get<std::size_t>();
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : j.at("basis")) rows.push_back(rational_vector_from_json(r));
    return SubspaceSpec::span(amb, rows, f);
}

/// {"field":{"char":0},"dim":n,"K":[[rational strings in wedge-basis order]]}
inline KoszulInput koszul_input_from_json(const Json& j) {
    if (!j.is_object()) throw UsageError("Koszul input must be a JSON object");
    if (!j.contains("field") || !j.contains("dim") || !j.contains("K"))
        throw UsageError("Koszul input needs \"field\", \"dim\", and \"K\"");
    FieldSpec f = field_from_json(j.at("field"));
    std::size_t n = j.at("dim").get<std::size_t>();
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : j.at("K")) rows.push_back(rational_vector_from_json(r));
    return make_koszul_input(f, n, rows);
}

inline Json koszul_input_to_json(const KoszulInput& in) {
    Json k = Json::array();
    for (const auto& row : in.K.basis()) k.push_back(rational_vector_to_json(row));
    return Json{{"field", field_to_json(in.field)}, {"dim", in.n}, {"K", k}};
}

inline Json table_to_json(const GradedDimTable& t) {
    return Json{{"q_start", t.q_start()}, {"dims", t.dims()}};
}

inline Json witness_to_json(const ResonanceWitness& w) {
    if (w.rational)
        return Json{{"type", "rational"},
                    {"a", rational_vector_to_json(w.a_rat)},
                    {"b", rational_vector_to_json(w.b_rat)}};
    return Json{{"type", "finite-field"}, {"p", w.p},          {"ext_degree", w.ext_degree},
                {"modulus", w.modulus},   {"a", w.a_ext},      {"b", w.b_ext}};
}

inline Json resonance_report_to_json(const ResonanceReport& r) {
    Json j{{"trivial", to_string(r.trivial)}, {"method", to_string(r.method)}};
    j["witness"] = r.witness ? witness_to_json(*r.witness) : Json(nullptr);
    j["rv_evidence"] = r.rv_evidence ? Json(*r.rv_evidence) : Json(nullptr);
    j["witness_search_exhausted"] = r.witness_search_exhausted;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

/// {"ambient_dim":m,"forms":[[rationals]]}
inline Arrangement arrangement_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("forms"))
        throw UsageError("arrangement needs \"ambient_dim\" and \"forms\"");
    std::size_t m = j.at("ambient_dim").get<std::size_t>();
    std::vector<std::vector<Rational>> forms;
    for (const auto& f : j.at("forms")) forms.push_back(rational_vector_from_json(f));
    return parse_arrangement(m, forms);
}

inline Json arrangement_to_json(const Arrangement& a) {
    Json forms = Json::array();
    for (const auto& f : a.forms) forms.push_back(rational_vector_to_json(f));
    return Json{{"ambient_dim", a.ambient_dim}, {"forms", forms}};
}

/// {"vertices":n,"edges":[[i,j]]}
inline std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> graph_from_json(
    const Json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw UsageError("graph needs \"vertices\" and \"edges\"");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw UsageError("edges must be [i, j] pairs");
        edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return {j.at("vertices").get<std::size_t>(), edges};
}

/// {"classes":[[indices]],"mults":[per-hyperplane]} with mults optional.
inline std::pair<std::vector<std::vector<std::size_t>>, std::vector<unsigned long>>
partition_from_json(const Json& j, std::size_t hyperplanes) {
    if (!j.is_object() || !j.contains("classes"))
        throw UsageError("partition needs \"classes\"");
    std::vector<std::vector<std::size_t>> classes;
    for (const auto& c : j.at("classes")) classes.push_back(c.get<std::vector<std::size_t>>());
    std::vector<unsigned long> mults(hyperplanes, 1);
    if (j.contains("mults")) mults = j.at("mults").get<std::vector<unsigned long>>();
    return {classes, mults};
}

inline Json multinet_to_json(const Multinet& m) {
    Json locus = Json::array();
    for (const auto& f : m.base_locus) locus.push_back(f.members);
    Json classes = Json::array();
    for (const auto& c : m.classes) classes.push_back(c);
    return Json{{"valid", true},
                {"k", m.classes.size()},
                {"classes", classes},
                {"multiplicities", m.multiplicities},
                {"class_weight", m.class_weight},
                {"base_locus", locus},
                {"component", subspace_to_json(m.component.subspace)},
                {"axiom4", "unchecked"}};
}

inline Json betti_to_json(const BettiTable& t) {
    return Json{{"genus", t.g}, {"b_p_1", t.b1}, {"b_p_2", t.b2}};
}

inline Json tor_to_json(const TorTable& t) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < t.dims.size(); ++i)
        for (std::size_t j = 0; j < t.dims[i].size(); ++j)
            if (t.dims[i][j] != 0) rows.push_back(Json{{"i", i}, {"j", j}, {"dim", t.dims[i][j]}});
    return Json{{"i_max", t.i_max}, {"entries", rows}};
}

/// Aligned-text Betti table in the two-row layout of canonical-curve tables.
inline std::string betti_table_text(const BettiTable& t) {
    std::vector<std::string> header{"p"}, row1{"b_{p,1}"}, row2{"b_{p,2}"};
    for (std::size_t p = 1; p <= t.g - 2; ++p) {
        header.push_back(std::to_string(p));
        row1.push_back(std::to_string(t.b1_at(p)));
        row2.push_back(std::to_string(t.b2_at(p)));
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c)
        width[c] = std::max({header[c].size(), row1[c].size(), row2[c].size()});
    auto fmt = [&](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            line += std::string(width[c] - cells[c].size(), ' ') + cells[c];
            line += (c + 1 == cells.size()) ? "\n" : "  ";
        }
        return line;
    };
    return fmt(header) + fmt(row1) + fmt(row2);
}

inline std::string chen_table_text(const GradedDimTable& t, const std::string& label) {
    std::string out = "q";
    std::vector<std::string> vals;
    std::string row = label;
    for (std::size_t q = t.q_start(); q < t.q_end(); ++q) {
        out += "\t" + std::to_string(q);
        row += "\t" + std::to_string(t.at(q));
    }
    return out + "\n" + row + "\n";
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_hex(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return std::string(buf);
}

} // namespace koszul
