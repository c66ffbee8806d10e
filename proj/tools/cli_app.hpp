#pragma once

// Command-line front end. Kept in a header so the test suites can drive the
// exact same code in-process.
//
// Exit codes: 0 success, 2 parse error, 3 invalid parameter, 4 dependent
// edges, 5 resource guard.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "rigidity/rigidity.hpp"

namespace rigidity::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kParse = 2, kInvalid = 3, kDependent = 4, kGuard = 5 };

/// A parameter outside its allowed range.
class InvalidParameter : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Git blob id: SHA-1 over "blob <len>\0" followed by the content.
inline std::string git_blob_hash(const std::string& content) {
    const std::string payload = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(payload.data(), payload.size(), digest, &len, EVP_sha1(), nullptr) != 1) {
        throw std::runtime_error("SHA-1 digest failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Built-in names (k<N>, path-<N>, star-<N>, double-banana) or a JSON file.
inline Graph resolve_graph(const std::string& name) {
    auto number_after = [&](const std::string& prefix) -> int {
        const std::string tail = name.substr(prefix.size());
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos) return -1;
        return std::stoi(tail);
    };
    if (name == "double-banana") return double_banana();
    if (name.size() > 1 && name[0] == 'k' && number_after("k") >= 1) return complete_graph(number_after("k"));
    if (name.rfind("path-", 0) == 0 && number_after("path-") >= 2) return path_graph(number_after("path-"));
    if (name.rfind("star-", 0) == 0 && number_after("star-") >= 2) return star_graph(number_after("star-"));

    std::ifstream in(name, std::ios::binary);
    if (!in) throw ParseError("cannot read graph '" + name + "' (not a file or built-in name)");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

inline void require_dimension(int d) {
    if (d < 2) throw InvalidParameter("--d must be at least 2");
}

/// Writes `text` to `path` and the run manifest to `path`.manifest.json.
inline void write_output(const std::string& path, const std::string& text, const std::string& command, const Json& parameters,
                         const std::string& input_description) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    const Json manifest{{"command", command},
                        {"parameters", parameters},
                        {"seed", parameters.contains("seed") ? parameters.at("seed") : Json(nullptr)},
                        {"tool_version", kToolVersion},
                        {"outputs", Json::array({path})},
                        {"input_hash", git_blob_hash(input_description)}};
    std::ofstream mf(path + ".manifest.json", std::ios::binary);
    if (!mf) throw std::runtime_error("cannot write " + path + ".manifest.json");
    mf << manifest.dump(2) << "\n";
}

inline std::string render_table(const ThresholdReport& r) {
    std::ostringstream os;
    auto row = [&](const std::string& key, const std::string& value) { os << std::left << std::setw(34) << key << value << "\n"; };
    auto frac = [](const Fraction& f) { return to_string(f) + " (" + format_double(to_double(f)) + ")"; };
    row("ambient dimension d", std::to_string(r.d));
    row("vertices (k+1)", std::to_string(r.n_vertices));
    row("edges m", std::to_string(r.m));
    row("generic rank", std::to_string(r.generic_rank));
    row("distance set dimension |H|", std::to_string(r.predicted_distance_set_dimension));
    row("infinitesimally rigid", r.is_rigid ? "true" : "false");
    row("minimally rigid", r.is_minimally_rigid ? "true" : "false");
    row("sufficient threshold", frac(r.sufficient_threshold));
    row("pruned threshold", frac(r.pruned_threshold) + ", " + std::to_string(r.prune_count) + " pruned");
    row("necessary exponent", frac(r.necessary_exponent));
    row("natural measure exponent", frac(r.natural_measure_exponent));
    if (r.small_k_threshold) row("small-k threshold", frac(*r.small_k_threshold));
    if (!r.note.empty()) row("note", r.note);
    for (std::size_t c = 0; c < r.component_breakdown.size(); ++c) {
        const auto& sub = r.component_breakdown[c];
        std::string labels;
        for (auto v : sub.vertex_labels) labels += (labels.empty() ? "" : ",") + std::to_string(v);
        row("component " + std::to_string(c + 1), "vertices {" + labels + "}, dimension " + std::to_string(sub.predicted_distance_set_dimension) +
                                                      ", sufficient " + to_string(sub.sufficient_threshold));
    }
    return os.str();
}

struct Options {
    std::string graph;
    int d = 2;
    std::uint64_t seed = 0;
    bool json = false;
    std::string out;
    std::vector<int> q_list;
    int k = 1;
    double s = 0.0;
    std::string sampler = "unit-cube";
    int lattice_q = 4;
    double lattice_s = 0.0;
    std::size_t n = 0;
    std::string scales = "3:7";
};

inline int cmd_analyze(const Options& o, CLI::App& app, std::ostream& out) {
    require_dimension(o.d);
    const Graph g = resolve_graph(o.graph);
    if (g.edge_count() == 0) throw InvalidParameter("graph has no edges");
    const auto report = analyze(g, o.d, o.seed);
    const std::string json = report_to_json(report).dump(2) + "\n";
    out << (o.json ? json : render_table(report));
    if (!o.out.empty()) {
        const Json params{{"graph", o.graph}, {"d", o.d}, {"seed", o.seed}};
        write_output(o.out, json, app.get_name(), params, params.dump() + graph_to_json(g).dump());
    }
    return kOk;
}

inline int cmd_complete(const Options& o, CLI::App& app, std::ostream& out) {
    require_dimension(o.d);
    const Graph g = resolve_graph(o.graph);
    const Graph completed = minimal_rigid_completion(g, o.d, o.seed);
    const std::string json = graph_to_json(completed).dump() + "\n";
    out << json;
    if (!o.out.empty()) {
        const Json params{{"graph", o.graph}, {"d", o.d}, {"seed", o.seed}};
        write_output(o.out, json, app.get_name(), params, params.dump() + graph_to_json(g).dump());
    }
    return kOk;
}

inline int cmd_lattice(const Options& o, CLI::App& app, std::ostream& out) {
    require_dimension(o.d);
    if (o.k < 1) throw InvalidParameter("--k must be at least 1");
    if (o.q_list.empty()) throw InvalidParameter("--q-list is empty");
    const bool with_bound = app.count("--s") > 0;
    if (with_bound && !(o.s > o.d / 2.0 && o.s < o.d)) throw InvalidParameter("--s must lie in (d/2, d)");
    for (int q : o.q_list) {
        if (q < 1) throw InvalidParameter("--q-list entries must be positive");
        lattice_tuple_count(o.d, q, o.k);
    }

    std::ostringstream csv;
    csv << "q,classes,labeled_classes,count_bound" << (with_bound ? ",content_bound" : "") << "\n";
    for (int q : o.q_list) {
        const auto unlabeled = count_congruence_classes(o.d, q, o.k, CongruenceKind::unlabeled);
        const auto labeled = count_congruence_classes(o.d, q, o.k, CongruenceKind::labeled);
        boost::multiprecision::cpp_int bound = boost::multiprecision::pow(boost::multiprecision::cpp_int(2 * q + 1),
                                                                          static_cast<unsigned>(o.d * o.k));
        csv << q << "," << unlabeled << "," << labeled << "," << bound;
        if (with_bound) csv << "," << format_double(hausdorff_content_bound(o.d, q, o.k, o.s));
        csv << "\n";
    }
    out << csv.str();
    if (!o.out.empty()) {
        Json params{{"d", o.d}, {"q_list", o.q_list}, {"k", o.k}};
        if (with_bound) params["s"] = o.s;
        write_output(o.out, csv.str(), app.get_name(), params, params.dump());
    }
    return kOk;
}

inline std::vector<double> parse_scales(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
        std::size_t used = 0;
        const int lo = std::stoi(text.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("bad lower exponent");
        const std::string hi_text = text.substr(colon + 1);
        const int hi = std::stoi(hi_text, &used);
        if (used != hi_text.size()) throw std::invalid_argument("bad upper exponent");
        if (hi - lo < 1) throw std::invalid_argument("need at least two scales");
        return dyadic_scales(lo, hi);
    } catch (const std::exception&) {
        throw InvalidParameter("--scales must be LO:HI with LO < HI (scales 2^-LO .. 2^-HI)");
    }
}

inline int cmd_sample(const Options& o, CLI::App& app, std::ostream& out) {
    require_dimension(o.d);
    if (o.n < 1) throw InvalidParameter("--n must be at least 1");
    const auto scales = parse_scales(o.scales);
    const Graph g = resolve_graph(o.graph);
    if (g.edge_count() == 0) throw InvalidParameter("graph has no edges");

    PointSampler sampler;
    if (o.sampler == "unit-cube") {
        sampler = UnitCube{};
    } else if (o.sampler == "cantor") {
        sampler = CantorProduct{};
    } else if (o.sampler == "lattice") {
        if (o.lattice_q < 1) throw InvalidParameter("--lattice-q must be positive");
        if (!(o.lattice_s > o.d / 2.0 && o.lattice_s < o.d)) throw InvalidParameter("--lattice-s must lie in (d/2, d)");
        sampler = build_lattice_set(o.d, o.lattice_q, o.lattice_s);
    } else {
        throw InvalidParameter("--sampler must be unit-cube, lattice or cantor");
    }

    const auto tuples = sample_tuples(sampler, o.d, g.n_vertices(), o.n, o.seed);
    const auto cloud = distance_cloud(g, tuples);
    const auto est = fit_box_dimension(cloud, scales);

    std::ostringstream csv;
    csv << "metric,scale,value\n";
    for (std::size_t i = 0; i < est.scales.size(); ++i) csv << "covering_count," << format_double(est.scales[i]) << "," << est.counts[i] << "\n";
    csv << "box_dimension_slope,," << format_double(est.slope) << "\n";
    if (o.d == 2 && g == complete_graph(4)) {
        double worst = 0.0;
        for (const auto& x : tuples) worst = std::max(worst, euler_residual(x));
        csv << "max_euler_residual,," << format_double(worst) << "\n";
    }
    out << csv.str();
    if (!o.out.empty()) {
        Json params{{"graph", o.graph}, {"d", o.d}, {"seed", o.seed}, {"sampler", o.sampler}, {"n", o.n}, {"scales", o.scales}};
        if (o.sampler == "lattice") {
            params["lattice_q"] = o.lattice_q;
            params["lattice_s"] = o.lattice_s;
        }
        write_output(o.out, csv.str(), app.get_name(), params, params.dump() + graph_to_json(g).dump());
    }
    return kOk;
}

/// Parses argv and runs one subcommand. Output goes to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rigidity and distance-set dimension toolkit", "rigidity-cli"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool needs_graph) {
        if (needs_graph) sub->add_option("graph", o.graph, "built-in name (k4, path-5, star-4, double-banana) or graph JSON file")->required();
        sub->add_option("--d", o.d, "ambient dimension")->capture_default_str();
        sub->add_option("--out", o.out, "write output here plus a .manifest.json alongside");
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "threshold and dimension report for a graph");
    add_common(analyze_cmd, true);
    analyze_cmd->add_option("--seed", o.seed, "witness seed")->required();
    analyze_cmd->add_flag("--json", o.json, "print the JSON report instead of the table");

    auto* complete_cmd = app.add_subcommand("complete", "minimally rigid completion of an independent graph");
    add_common(complete_cmd, true);
    complete_cmd->add_option("--seed", o.seed, "witness seed")->required();

    auto* lattice_cmd = app.add_subcommand("lattice", "congruence classes and content bounds on integer lattices");
    add_common(lattice_cmd, false);
    lattice_cmd->add_option("--q-list", o.q_list, "comma-separated lattice sizes")->delimiter(',')->required();
    lattice_cmd->add_option("--k", o.k, "frameworks have k+1 vertices")->capture_default_str();
    lattice_cmd->add_option("--s", o.s, "exponent in (d/2, d) for the content bound");

    auto* sample_cmd = app.add_subcommand("sample", "covering estimate of a sampled distance set");
    add_common(sample_cmd, true);
    sample_cmd->add_option("--seed", o.seed, "sampling seed")->required();
    sample_cmd->add_option("--n", o.n, "number of sampled tuples")->required();
    sample_cmd->add_option("--sampler", o.sampler, "unit-cube | lattice | cantor")->capture_default_str();
    sample_cmd->add_option("--lattice-q", o.lattice_q, "lattice sampler: q")->capture_default_str();
    sample_cmd->add_option("--lattice-s", o.lattice_s, "lattice sampler: s in (d/2, d)");
    sample_cmd->add_option("--scales", o.scales, "dyadic exponents LO:HI")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(o, *analyze_cmd, out);
        if (*complete_cmd) return cmd_complete(o, *complete_cmd, out);
        if (*lattice_cmd) return cmd_lattice(o, *lattice_cmd, out);
        if (*sample_cmd) return cmd_sample(o, *sample_cmd, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const DependentEdgesError& e) {
        err << "error: " << e.what() << "\n";
        return kDependent;
    } catch (const ResourceGuardError& e) {
        err << "error: " << e.what() << "\n";
        return kGuard;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}

}  // namespace rigidity::cli
