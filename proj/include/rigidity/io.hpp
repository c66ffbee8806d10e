#pragma once

// JSON readers and writers for graphs, configurations, certificates and
// reports. Graph vertices are 1-indexed on the wire as in memory.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigidity/analysis.hpp"
#include "rigidity/framework.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/thresholds.hpp"

namespace rigidity {

using Json = nlohmann::json;

/// Malformed or schema-violating input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- graphs: {"vertices": n, "edges": [[i,j], ...]}

inline Json graph_to_json(const Graph& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges()) edges.push_back({e.i, e.j});
    return Json{{"vertices", g.n_vertices()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& j) {
    try {
        if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
            throw ParseError("graph JSON needs \"vertices\" and \"edges\"");
        }
        if (!j.at("vertices").is_number_integer()) throw ParseError("\"vertices\" must be an integer");
        std::vector<std::pair<int, int>> pairs;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                throw ParseError("each edge must be a pair of integers");
            }
            pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return Graph(j.at("vertices").get<int>(), pairs);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ParseError(std::string("invalid graph: ") + ex.what());
    }
}

inline Graph parse_graph(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& ex) {
        throw ParseError(std::string("malformed JSON: ") + ex.what());
    }
    return graph_from_json(j);
}

// --- configurations: {"d": d, "points": [[...], ...]}; rationals as "p/q"

inline Json configuration_to_json(const ExactConfiguration& x) {
    Json points = Json::array();
    for (std::size_t i = 0; i < x.size(); ++i) {
        Json p = Json::array();
        for (const auto& c : x[i]) p.push_back(format_rational(c));
        points.push_back(std::move(p));
    }
    return Json{{"d", x.dim()}, {"points", points}};
}

inline Json configuration_to_json(const FloatConfiguration& x) {
    Json points = Json::array();
    for (std::size_t i = 0; i < x.size(); ++i) points.push_back(std::vector<double>(x[i].begin(), x[i].end()));
    return Json{{"d", x.dim()}, {"points", points}};
}

namespace detail {

inline Rational exact_coordinate(const Json& c) {
    if (c.is_string()) return parse_rational(c.get<std::string>());
    if (c.is_number_integer()) return Rational(c.get<long long>());
    throw ParseError("exact coordinates must be integers or \"p/q\" strings");
}

inline double float_coordinate(const Json& c) {
    if (c.is_number()) return c.get<double>();
    if (c.is_string()) return to_double(parse_rational(c.get<std::string>()));
    throw ParseError("coordinates must be numbers or \"p/q\" strings");
}

template <class T, class F>
Configuration<T> configuration_from_json(const Json& j, F coordinate) {
    try {
        if (!j.is_object() || !j.contains("d") || !j.contains("points")) throw ParseError("configuration JSON needs \"d\" and \"points\"");
        std::vector<std::vector<T>> pts;
        for (const auto& p : j.at("points")) {
            if (!p.is_array()) throw ParseError("each point must be an array");
            std::vector<T> coords;
            for (const auto& c : p) coords.push_back(coordinate(c));
            pts.push_back(std::move(coords));
        }
        return Configuration<T>(j.at("d").get<int>(), pts);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ParseError(std::string("invalid configuration: ") + ex.what());
    }
}

}  // namespace detail

inline ExactConfiguration exact_configuration_from_json(const Json& j) {
    return detail::configuration_from_json<Rational>(j, detail::exact_coordinate);
}

inline FloatConfiguration float_configuration_from_json(const Json& j) {
    return detail::configuration_from_json<double>(j, detail::float_coordinate);
}

// --- certificates

inline Json certificate_to_json(const GenericCertificate& c) {
    return Json{{"seed", c.seed},
                {"samples", c.samples},
                {"agreed_rank", c.agreed_rank},
                {"sample_ranks", c.sample_ranks},
                {"witness_seed", c.witness_seed},
                {"witness", configuration_to_json(c.witness)}};
}

inline GenericCertificate certificate_from_json(const Json& j) {
    try {
        GenericCertificate c;
        c.seed = j.at("seed").get<std::uint64_t>();
        c.samples = j.at("samples").get<int>();
        c.agreed_rank = j.at("agreed_rank").get<std::size_t>();
        if (j.contains("sample_ranks")) c.sample_ranks = j.at("sample_ranks").get<std::vector<std::size_t>>();
        if (j.contains("witness_seed")) c.witness_seed = j.at("witness_seed").get<std::uint64_t>();
        c.witness = exact_configuration_from_json(j.at("witness"));
        return c;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ParseError(std::string("invalid certificate: ") + ex.what());
    }
}

/// Re-derives the rank recorded in a certificate from its witness alone.
inline bool verify_certificate(const Graph& g, const GenericCertificate& c) {
    return exact_rank(rigidity_matrix(g, c.witness)) == c.agreed_rank;
}

// --- reports

inline Json fraction_to_json(const Fraction& f) { return Json{{"exact", to_string(f)}, {"value", to_double(f)}}; }

inline Json report_to_json(const ThresholdReport& r) {
    Json basis = Json::array();
    for (const auto& e : r.basis) basis.push_back({e.i, e.j});
    Json j{{"d", r.d},
           {"vertices", r.n_vertices},
           {"edges", r.m},
           {"generic_rank", r.generic_rank},
           {"predicted_distance_set_dimension", r.predicted_distance_set_dimension},
           {"independent_basis", basis},
           {"sufficient_threshold", fraction_to_json(r.sufficient_threshold)},
           {"pruned_threshold", fraction_to_json(r.pruned_threshold)},
           {"prune_count", r.prune_count},
           {"necessary_exponent", fraction_to_json(r.necessary_exponent)},
           {"natural_measure_exponent", fraction_to_json(r.natural_measure_exponent)},
           {"is_rigid", r.is_rigid},
           {"is_minimally_rigid", r.is_minimally_rigid}};
    if (r.small_k_threshold) j["small_k_threshold"] = fraction_to_json(*r.small_k_threshold);
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.vertex_labels.empty()) j["vertex_labels"] = r.vertex_labels;
    if (!r.component_breakdown.empty()) {
        Json comps = Json::array();
        for (const auto& c : r.component_breakdown) comps.push_back(report_to_json(c));
        j["components"] = comps;
    }
    return j;
}

}  // namespace rigidity
