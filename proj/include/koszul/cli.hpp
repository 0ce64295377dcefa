#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "koszul/json_io.hpp"

namespace koszul::cli {

struct GlobalOpts {
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 20240501;
    unsigned threads = 1;
    bool timing = false;
};

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed JSON input: ") + e.what());
    }
}

struct ReportBuilder {
    Json report;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    ReportBuilder(const std::vector<std::string>& argv, const std::string& input_bytes,
                  const GlobalOpts& g, const FieldSpec& field) {
        report["command"] = argv;
        report["input_digest"] = digest_hex(input_bytes);
        report["seed"] = g.seed;
        report["field"] = field_to_json(field);
        report["timing_ms"] = nullptr; // filled only under --timing, reports stay byte-identical
    }

    void finish(const GlobalOpts& g, Json results, std::ostream& out,
                const std::string& table_text = "") {
        if (g.timing) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            report["timing_ms"] = ms;
        }
        report["results"] = std::move(results);
        std::string payload = (g.format == "table" && !table_text.empty())
                                  ? table_text
                                  : report.dump(2) + "\n";
        if (!g.out.empty()) {
            std::ofstream f(g.out, std::ios::binary);
            if (!f) throw UsageError("cannot open output file: " + g.out);
            f << payload;
        } else {
            out << payload;
        }
    }
};

} // namespace detail

/// Run the command line. Returns the process exit code: 0 success,
/// 1 usage/precondition error, 2 arithmetic or budget error.
inline int run(std::vector<std::string> argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"koszul - exact computations with Koszul modules, resonance, Chen ranks,\n"
                 "arrangements, and generic canonical curve syzygies"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOpts g;
    app.add_option("--out", g.out, "write the JSON report to a file instead of stdout");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--seed", g.seed, "seed recorded in the report and used by randomized flows");
    app.add_option("--threads", g.threads, "worker threads for per-degree computations");
    app.add_flag("--timing", g.timing, "include wall-clock timing in the report");

    // dims
    auto* dims = app.add_subcommand("dims", "graded dimensions of W(V,K)")->fallthrough();
    std::string dims_input;
    std::size_t dims_qmax = 4;
    std::string dims_route = "middle";
    dims->add_option("--input", dims_input, "Koszul input JSON file")->required();
    dims->add_option("--qmax", dims_qmax, "largest degree");
    dims->add_option("--route", dims_route, "computation route")
        ->check(CLI::IsMember({"middle", "presentation", "both"}));

    // resonance
    auto* reso = app.add_subcommand("resonance", "decide resonance triviality")->fallthrough();
    std::string reso_input;
    unsigned reso_kmax = 2;
    std::uint64_t reso_budget = 200000;
    reso->add_option("--input", reso_input, "Koszul input JSON file")->required();
    reso->add_option("--kmax", reso_kmax, "largest extension degree for the witness search");
    reso->add_option("--budget", reso_budget, "enumeration budget");

    // arrangement (chen | multinet)
    auto* arr = app.add_subcommand("arrangement", "hyperplane arrangement computations")->fallthrough();
    arr->require_subcommand(1);
    auto* arr_chen = arr->add_subcommand("chen", "Chen ranks of the arrangement group")->fallthrough();
    std::string arr_input;
    std::size_t arr_qmax = 6;
    arr_chen->add_option("--input", arr_input, "arrangement JSON file")->required();
    arr_chen->add_option("--qmax", arr_qmax, "largest Chen index");
    auto* arr_multi = arr->add_subcommand("multinet", "validate a multinet")->fallthrough();
    std::string multi_input, multi_partition;
    arr_multi->add_option("--input", multi_input, "arrangement JSON file")->required();
    arr_multi->add_option("--partition", multi_partition, "partition JSON file")->required();

    // top-level multinet alias
    auto* multi = app.add_subcommand("multinet", "validate a multinet (alias)")->fallthrough();
    std::string multi_input2, multi_partition2;
    multi->add_option("--input", multi_input2, "arrangement JSON file")->required();
    multi->add_option("--partition", multi_partition2, "partition JSON file")->required();

    // graphic
    auto* graph = app.add_subcommand("graphic", "Chen ranks of a graphic arrangement")->fallthrough();
    std::string graph_input;
    std::size_t graph_qmax = 6;
    graph->add_option("--input", graph_input, "graph JSON file")->required();
    graph->add_option("--qmax", graph_qmax, "largest Chen index for the cross-check");

    // green
    auto* green = app.add_subcommand("green", "Clebsch-Gordan module dimensions")->fallthrough();
    std::size_t green_i = 1;
    std::uint64_t green_char = 0;
    std::size_t green_qmax = 2;
    std::string green_route = "orbit";
    green->add_option("--i", green_i, "Clebsch-Gordan parameter i >= 1")->required();
    green->add_option("--char", green_char, "field characteristic (0 or prime)");
    green->add_option("--qmax", green_qmax, "largest degree");
    green->add_option("--route", green_route, "subspace construction route")
        ->check(CLI::IsMember({"orbit", "wronskian", "both"}));

    // betti
    auto* betti = app.add_subcommand("betti", "Betti table of a generic canonical curve")->fallthrough();
    std::size_t betti_genus = 7;
    betti->add_option("--genus", betti_genus, "genus g >= 3")->required();

    // bgg
    auto* bgg = app.add_subcommand("bgg", "exterior-algebra Tor of A(K)")->fallthrough();
    std::string bgg_input;
    std::size_t bgg_imax = 3;
    bgg->add_option("--input", bgg_input, "Koszul input JSON file")->required();
    bgg->add_option("--imax", bgg_imax, "largest homological index");

    try {
        std::vector<std::string> args_reversed(argv.rbegin(), argv.rend());
        app.parse(args_reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*dims) {
            std::string bytes = detail::slurp(dims_input);
            KoszulInput in = koszul_input_from_json(detail::parse_json(bytes));
            detail::ReportBuilder rb(argv, bytes, g, in.field);
            Json results;
            results["dim_V"] = in.n;
            results["dim_K"] = in.K.dim();
            results["route"] = dims_route;
            std::string text;
            if (dims_route == "middle" || dims_route == "both") {
                GradedDimTable t = hilbert_table(in, dims_qmax, g.threads);
                results["table"] = table_to_json(t);
                text = chen_table_text(t, "dim W_q");
            }
            if (dims_route == "presentation" || dims_route == "both") {
                std::vector<std::size_t> dims_p;
                for (std::size_t q = 0; q <= dims_qmax; ++q)
                    dims_p.push_back(koszul_dim_presentation(in, q));
                GradedDimTable t(0, dims_p);
                results["presentation_table"] = table_to_json(t);
                if (dims_route == "presentation") {
                    results["table"] = results["presentation_table"];
                    text = chen_table_text(t, "dim W_q");
                }
            }
            rb.finish(g, std::move(results), out, text);
            return 0;
        }
        if (*reso) {
            std::string bytes = detail::slurp(reso_input);
            KoszulInput in = koszul_input_from_json(detail::parse_json(bytes));
            detail::ReportBuilder rb(argv, bytes, g, in.field);
            ResonanceReport rep = is_resonance_trivial(in, {reso_kmax, reso_budget});
            rb.finish(g, resonance_report_to_json(rep), out);
            return 0;
        }
        if (*arr_chen) {
            std::string bytes = detail::slurp(arr_input);
            Arrangement a = arrangement_from_json(detail::parse_json(bytes));
            detail::ReportBuilder rb(argv, bytes, g, FieldSpec::rationals());
            GradedDimTable t = chen_ranks(a, arr_qmax, g.threads);
            Json results;
            results["hyperplanes"] = a.size();
            results["b1"] = a.size();
            results["kperp_dim"] = os_kperp(a).dim();
            Json flats = Json::array();
            for (const auto& f : rank2_flats(a)) flats.push_back(f.members);
            results["rank2_flats"] = flats;
            results["chen"] = table_to_json(t);
            rb.finish(g, std::move(results), out, chen_table_text(t, "theta_q"));
            return 0;
        }
        if (*arr_multi || *multi) {
            const std::string& mi = *arr_multi ? multi_input : multi_input2;
            const std::string& mp = *arr_multi ? multi_partition : multi_partition2;
            std::string bytes = detail::slurp(mi);
            std::string pbytes = detail::slurp(mp);
            Arrangement a = arrangement_from_json(detail::parse_json(bytes));
            auto [classes, mults] = partition_from_json(detail::parse_json(pbytes), a.size());
            detail::ReportBuilder rb(argv, bytes + pbytes, g, FieldSpec::rationals());
            Multinet mn = validate_multinet(a, classes, mults);
            Json results = multinet_to_json(mn);
            // cross-check: the multinet component is isotropic for the OS ideal
            KoszulInput in = arrangement_koszul_input(a);
            results["component_isotropic"] = check_isotropic(in, {mn.component})[0];
            rb.finish(g, std::move(results), out);
            return 0;
        }
        if (*graph) {
            std::string bytes = detail::slurp(graph_input);
            auto [nv, edges] = graph_from_json(detail::parse_json(bytes));
            detail::ReportBuilder rb(argv, bytes, g, FieldSpec::rationals());
            GraphicReport rep = graphic(nv, edges, graph_qmax, g.threads);
            Json results;
            results["kappa2"] = rep.k2;
            results["kappa3"] = rep.k3;
            results["kappa4"] = rep.k4;
            results["formula_valid_from"] = rep.formula_valid_from;
            results["formula"] = table_to_json(rep.formula);
            results["direct"] = table_to_json(rep.direct);
            results["agrees"] = rep.agrees;
            rb.finish(g, std::move(results), out, chen_table_text(rep.direct, "theta_q"));
            return 0;
        }
        if (*green) {
            FieldSpec f(green_char);
            CGParams params{green_i, f};
            std::string param_bytes = "green i=" + std::to_string(green_i) +
                                      " char=" + std::to_string(green_char);
            detail::ReportBuilder rb(argv, param_bytes, g, f);
            Json results;
            results["i"] = green_i;
            results["n"] = params.n();
            results["target_dim_K"] = params.target_dim();
            results["regime"] = charp_experimental_regime(params) ? "experimental" : "standard";
            CGSubspace orbit = cg_subspace_detailed(params);
            results["orbit_dim_K"] = orbit.achieved_dim;
            std::string text;
            if (green_route == "orbit" || green_route == "both") {
                if (orbit.achieved_dim < orbit.target_dim)
                    throw RankDeficient("orbit reduction has dim " +
                                        std::to_string(orbit.achieved_dim) + " < " +
                                        std::to_string(orbit.target_dim));
                GradedDimTable t = hilbert_table(KoszulInput{f, params.n(), orbit.K},
                                                 green_qmax, g.threads);
                results["table"] = table_to_json(t);
                Json genera = Json::array();
                for (std::size_t q = 0; q <= green_qmax; ++q)
                    genera.push_back(q + green_i + 3);
                results["genus_of_entry"] = genera;
                text = chen_table_text(t, "dim W_q");
            }
            if (green_route == "wronskian" || green_route == "both") {
                SubspaceSpec kp = wronskian_kperp(params.m(), f);
                SubspaceSpec kw = annihilator(kp, cg_equivariant_pairing(params.m()), f);
                results["wronskian_dim_K"] = kw.dim();
                if (green_route == "both")
                    results["routes_agree"] = (kw == orbit.K);
                if (green_route == "wronskian") {
                    GradedDimTable t = hilbert_table(KoszulInput{f, params.n(), kw},
                                                     green_qmax, g.threads);
                    results["table"] = table_to_json(t);
                    text = chen_table_text(t, "dim W_q");
                }
            }
            rb.finish(g, std::move(results), out, text);
            return 0;
        }
        if (*betti) {
            std::string param_bytes = "betti genus=" + std::to_string(betti_genus);
            detail::ReportBuilder rb(argv, param_bytes, g, FieldSpec::rationals());
            BettiTable t = betti_generic_canonical(betti_genus);
            rb.finish(g, betti_to_json(t), out, betti_table_text(t));
            return 0;
        }
        if (*bgg) {
            std::string bytes = detail::slurp(bgg_input);
            KoszulInput in = koszul_input_from_json(detail::parse_json(bytes));
            detail::ReportBuilder rb(argv, bytes, g, in.field);
            TorTable t = exterior_tor(make_exterior_presentation(in), bgg_imax);
            Json results = tor_to_json(t);
            Json wdims = Json::array();
            for (std::size_t q = 0; q + 1 <= bgg_imax; ++q)
                wdims.push_back(t.at(q + 1, q + 2));
            results["w_dims_via_tor"] = wdims;
            rb.finish(g, std::move(results), out);
            return 0;
        }
        err << "no subcommand selected\n";
        return 1;
    } catch (const DenominatorDivisibleByP& e) {
        err << "arithmetic error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const RankDeficient& e) {
        err << "rank deficiency: " << e.what() << "\n";
        return 2;
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const AxiomViolation& e) {
        err << "multinet axiom (" << e.axiom << ") violated: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

/// argv-style entry point.
inline int main_from_argv(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args), out, err);
}

} // namespace koszul::cli
