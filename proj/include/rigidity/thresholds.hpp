#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "rigidity/analysis.hpp"
#include "rigidity/graph.hpp"

namespace rigidity {

/// Exact rational threshold value.
using Fraction = boost::rational<std::int64_t>;

inline std::string to_string(const Fraction& f) {
    if (f.denominator() == 1) return std::to_string(f.numerator());
    return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

inline double to_double(const Fraction& f) { return boost::rational_cast<double>(f); }

constexpr std::int64_t binomial2(std::int64_t n) { return n * (n - 1) / 2; }

namespace detail {

inline void require_dims(int d, int n_vertices) {
    if (d < 2) throw std::invalid_argument("ambient dimension must be at least 2");
    if (n_vertices < 2) throw std::invalid_argument("need at least two vertices");
}

}  // namespace detail

/// d - 1/(k+1): sufficient dimension for a minimally rigid graph on k+1 vertices.
inline Fraction sufficient_threshold(int d, int n_vertices) {
    detail::require_dims(d, n_vertices);
    return Fraction(d) - Fraction(1, n_vertices);
}

/// d - 1/(k+1-n), where n counts the degree-1 vertices stripped by prune_degree_one.
inline Fraction pruned_threshold(const Graph& g, int d) {
    detail::require_dims(d, g.n_vertices());
    const auto trace = prune_degree_one(g);
    return Fraction(d) - Fraction(1, g.n_vertices() - trace.n);
}

/// d - C(d,2)/k: below this exponent the positive-measure conclusion can fail.
inline Fraction necessary_exponent(int d, int n_vertices) {
    detail::require_dims(d, n_vertices);
    return Fraction(d) - Fraction(binomial2(d), n_vertices - 1);
}

/// Frostman exponent needed for the natural measure on E - gE, k = n_vertices - 1:
///   d = 2:             4k/(2k+1)
///   d = 3, k in {1,2}: (12k-1)/(4k+2)
///   d > 3, k = 1:      d/2 + 1/3
///   otherwise:         (4kd-1)/(4k+1)
inline Fraction natural_measure_exponent(int d, int n_vertices) {
    detail::require_dims(d, n_vertices);
    const std::int64_t k = n_vertices - 1;
    if (d == 2) return Fraction(4 * k, 2 * k + 1);
    if (d == 3 && (k == 1 || k == 2)) return Fraction(12 * k - 1, 4 * k + 2);
    if (d > 3 && k == 1) return Fraction(d, 2) + Fraction(1, 3);
    return Fraction(4 * k * d - 1, 4 * k + 1);
}

/// Sum over connected components of the greedy basis size.
inline std::size_t predicted_distance_set_dimension(const Graph& g, int d, std::uint64_t seed) {
    std::size_t total = 0;
    for (const auto& c : connected_components(g)) {
        if (c.graph.edge_count() == 0) continue;
        total += max_independent_subset(c.graph, d, seed).rank;
    }
    return total;
}

struct ThresholdReport {
    int d = 2;
    int n_vertices = 0;
    std::size_t m = 0;
    std::size_t generic_rank = 0;
    std::size_t predicted_distance_set_dimension = 0;
    std::vector<Edge> basis;  ///< greedy independent edge set (connected graphs)
    Fraction sufficient_threshold;
    Fraction pruned_threshold;
    int prune_count = 0;
    Fraction necessary_exponent;
    Fraction natural_measure_exponent;
    bool is_rigid = false;
    bool is_minimally_rigid = false;
    /// Set when k <= d; then the complete-graph threshold (dk+1)/(k+1) applies.
    std::optional<Fraction> small_k_threshold;
    std::string note;
    std::vector<int> vertex_labels;  ///< original labels when this is a component report
    std::vector<ThresholdReport> component_breakdown;
};

namespace detail {

inline ThresholdReport analyze_connected(const Graph& g, int d, std::uint64_t seed) {
    ThresholdReport r;
    r.d = d;
    r.n_vertices = g.n_vertices();
    r.m = g.edge_count();
    const auto basis = max_independent_subset(g, d, seed);
    r.generic_rank = basis.rank;
    r.predicted_distance_set_dimension = basis.rank;
    r.basis = basis.edges;
    r.sufficient_threshold = sufficient_threshold(d, g.n_vertices());
    r.prune_count = prune_degree_one(g).n;
    r.pruned_threshold = Fraction(d) - Fraction(1, g.n_vertices() - r.prune_count);
    r.necessary_exponent = necessary_exponent(d, g.n_vertices());
    r.natural_measure_exponent = natural_measure_exponent(d, g.n_vertices());
    const auto target = required_edge_count(d, g.n_vertices());
    r.is_rigid = basis.rank == target;
    r.is_minimally_rigid = r.is_rigid && r.m == target;
    const int k = g.n_vertices() - 1;
    if (k <= d) {
        r.small_k_threshold = Fraction(static_cast<std::int64_t>(d) * k + 1, k + 1);
        r.note = "k <= d: the complete-graph case, where the sharper threshold (dk+1)/(k+1) is known";
    }
    return r;
}

}  // namespace detail

/// Full report. A disconnected graph is split into components; the dimension
/// is the sum over components and each threshold is the largest component
/// threshold, since E has to clear all of them. Isolated vertices contribute
/// nothing and get no sub-report.
inline ThresholdReport analyze(const Graph& g, int d, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("ambient dimension must be at least 2");
    if (g.edge_count() == 0) throw std::invalid_argument("analyze: graph has no edges");

    auto comps = connected_components(g);
    if (comps.size() == 1) return detail::analyze_connected(g, d, seed);

    ThresholdReport r;
    r.d = d;
    r.n_vertices = g.n_vertices();
    r.m = g.edge_count();
    const auto whole = max_independent_subset(g, d, seed);
    r.generic_rank = whole.rank;
    r.basis = whole.edges;
    const auto target = required_edge_count(d, g.n_vertices());
    r.is_rigid = whole.rank == target;
    r.is_minimally_rigid = r.is_rigid && r.m == target;
    bool first = true;
    for (auto& c : comps) {
        if (c.graph.edge_count() == 0) continue;
        auto sub = detail::analyze_connected(c.graph, d, seed);
        sub.vertex_labels = c.labels;
        r.predicted_distance_set_dimension += sub.predicted_distance_set_dimension;
        r.prune_count += sub.prune_count;
        if (first) {
            r.sufficient_threshold = sub.sufficient_threshold;
            r.pruned_threshold = sub.pruned_threshold;
            r.necessary_exponent = sub.necessary_exponent;
            r.natural_measure_exponent = sub.natural_measure_exponent;
            first = false;
        } else {
            r.sufficient_threshold = std::max(r.sufficient_threshold, sub.sufficient_threshold);
            r.pruned_threshold = std::max(r.pruned_threshold, sub.pruned_threshold);
            r.necessary_exponent = std::max(r.necessary_exponent, sub.necessary_exponent);
            r.natural_measure_exponent = std::max(r.natural_measure_exponent, sub.natural_measure_exponent);
        }
        r.component_breakdown.push_back(std::move(sub));
    }
    r.note = "disconnected: " + std::to_string(r.component_breakdown.size()) + " components with edges";
    return r;
}

}  // namespace rigidity
