#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidity/framework.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/linalg.hpp"
#include "rigidity/random.hpp"

namespace rigidity {

/// Raised when an edge set that must be independent has a redundant edge.
class DependentEdgesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Witness coordinates are integers drawn uniformly from [-kWitnessRange, kWitnessRange].
inline constexpr std::int64_t kWitnessRange = std::int64_t{1} << 20;
inline constexpr int kDefaultWitnessSamples = 5;

/// Integer configuration with coordinates uniform in [-2^20, 2^20]. Such a point
/// misses any fixed proper algebraic subset of R^{d n} with high probability,
/// which is what makes it a usable stand-in for a generic configuration.
inline ExactConfiguration sample_generic_config(int d, int n_vertices, std::uint64_t seed) {
    if (n_vertices < 1) throw std::invalid_argument("sample_generic_config: need at least one vertex");
    Rng rng(splitmix64(seed));
    std::uniform_int_distribution<std::int64_t> coord(-kWitnessRange, kWitnessRange);
    std::vector<Rational> flat;
    flat.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(n_vertices));
    for (int k = 0; k < d * n_vertices; ++k) flat.emplace_back(coord(rng));
    return ExactConfiguration(d, std::move(flat));
}

/// Record of a randomized rank computation. Rank is lower semicontinuous, so
/// the maximum over witnesses is a certified lower bound on the generic rank
/// and equals it unless every witness hit the critical variety.
struct GenericCertificate {
    std::uint64_t seed = 0;
    int samples = 0;
    std::size_t agreed_rank = 0;
    std::vector<std::size_t> sample_ranks;
    ExactConfiguration witness;  ///< first witness attaining agreed_rank
    std::uint64_t witness_seed = 0;
};

struct GenericRank {
    std::size_t rank = 0;
    GenericCertificate certificate;
};

/// An independent edge set together with the configuration that certifies it.
struct EdgeBasis {
    std::vector<Edge> edges;
    ExactConfiguration witness;
    std::size_t rank = 0;
};

/// Seed of the i-th witness drawn under a root seed.
inline std::uint64_t witness_seed(std::uint64_t seed, int i) { return derive_seed(seed, static_cast<std::uint64_t>(i) + 0x100); }

inline GenericRank generic_rank(const Graph& g, int d, std::uint64_t seed, int samples = kDefaultWitnessSamples) {
    if (samples < 1) throw std::invalid_argument("generic_rank: need at least one sample");
    GenericRank out;
    out.certificate.seed = seed;
    out.certificate.samples = samples;
    for (int i = 0; i < samples; ++i) {
        const auto ws = witness_seed(seed, i);
        auto x = sample_generic_config(d, g.n_vertices(), ws);
        const auto r = exact_rank(rigidity_matrix(g, x));
        out.certificate.sample_ranks.push_back(r);
        if (i == 0 || r > out.rank) {
            out.rank = r;
            out.certificate.witness = std::move(x);
            out.certificate.witness_seed = ws;
        }
    }
    out.certificate.agreed_rank = out.rank;
    return out;
}

/// Edge count of a minimally infinitesimally rigid graph on n vertices in R^d,
/// which is also the largest possible rigidity-matrix rank:
/// d n - C(d+1, 2) for n > d, and C(n, 2) (the complete graph) for n <= d.
constexpr std::size_t required_edge_count(int d, int n_vertices) {
    const auto n = static_cast<std::size_t>(n_vertices);
    const auto dd = static_cast<std::size_t>(d);
    if (n <= dd) return n * (n - (n > 0 ? 1 : 0)) / 2;
    return dd * n - dd * (dd + 1) / 2;
}

inline Graph edge_subgraph(const Graph& g, std::span<const Edge> subset) {
    for (const auto& e : subset) {
        if (!g.has_edge(e.i, e.j)) {
            throw std::invalid_argument("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") is not in the graph");
        }
    }
    return Graph(g.n_vertices(), std::vector<Edge>(subset.begin(), subset.end()));
}

/// True iff the rows of `subset` are generically independent in R^d.
inline bool is_independent(const Graph& g, std::span<const Edge> subset, int d, std::uint64_t seed,
                           int samples = kDefaultWitnessSamples) {
    const Graph h = edge_subgraph(g, subset);
    if (h.edge_count() == 0) return true;
    return generic_rank(h, d, seed, samples).rank == h.edge_count();
}

/// Greedy basis at one witness: scan the edges in `order`, keep an edge iff its
/// rigidity-matrix row raises the rank.
inline EdgeBasis greedy_basis(const Graph& g, const ExactConfiguration& witness, std::span<const Edge> order) {
    const auto full = clear_denominators(rigidity_matrix(g, witness));
    IncrementalRank acc(full.cols());
    EdgeBasis basis;
    basis.witness = witness;
    for (const auto& e : order) {
        const long r = g.index_of(e);
        if (r < 0) throw std::invalid_argument("greedy_basis: edge not in graph");
        if (acc.add(full.row(static_cast<std::size_t>(r)))) basis.edges.push_back(e);
    }
    basis.rank = acc.rank();
    return basis;
}

/// Maximal independent edge subset, greedy in lexicographic edge order at the
/// best witness found by generic_rank.
inline EdgeBasis max_independent_subset(const Graph& g, int d, std::uint64_t seed, int samples = kDefaultWitnessSamples) {
    const auto gr = generic_rank(g, d, seed, samples);
    return greedy_basis(g, gr.certificate.witness, g.edges());
}

/// Same, scanning candidates in a caller-chosen order.
inline EdgeBasis max_independent_subset(const Graph& g, int d, std::uint64_t seed, std::span<const Edge> order,
                                        int samples = kDefaultWitnessSamples) {
    const auto gr = generic_rank(g, d, seed, samples);
    return greedy_basis(g, gr.certificate.witness, order);
}

/// Kernel equality V(G,x) = D(x), tested as rank equality with the complete
/// graph since D(x) is always contained in V(G,x).
inline bool is_framework_inf_rigid(const Graph& g, const ExactConfiguration& x) {
    return exact_rank(rigidity_matrix(g, x)) == exact_rank(rigidity_matrix(complete_graph(g.n_vertices()), x));
}

inline bool is_generically_rigid(const Graph& g, int d, std::uint64_t seed, int samples = kDefaultWitnessSamples) {
    return generic_rank(g, d, seed, samples).rank == required_edge_count(d, g.n_vertices());
}

inline bool is_minimally_rigid(const Graph& g, int d, std::uint64_t seed, int samples = kDefaultWitnessSamples) {
    return g.edge_count() == required_edge_count(d, g.n_vertices()) && is_generically_rigid(g, d, seed, samples);
}

/// Adds edges of the complete graph, in lexicographic order, to an
/// independent graph until it is minimally rigid. Throws DependentEdgesError
/// if the input already has a redundant edge, since then no supergraph can be
/// minimally rigid.
inline Graph minimal_rigid_completion(const Graph& g, int d, std::uint64_t seed, int samples = kDefaultWitnessSamples) {
    const auto gr = generic_rank(g, d, seed, samples);
    if (gr.rank < g.edge_count()) {
        throw DependentEdgesError("dependent edges: generic rank " + std::to_string(gr.rank) + " < " + std::to_string(g.edge_count()) +
                                  " edges, so the graph cannot be completed to a minimally rigid graph");
    }
    const int n = g.n_vertices();
    if (n <= d) return complete_graph(n);

    const Graph kn = complete_graph(n);
    const std::size_t target = required_edge_count(d, n);
    for (int i = -1; i < samples; ++i) {
        const ExactConfiguration x = i < 0 ? gr.certificate.witness : sample_generic_config(d, n, witness_seed(seed, i));
        const auto rows = clear_denominators(rigidity_matrix(kn, x));
        IncrementalRank acc(rows.cols());
        bool ok = true;
        for (const auto& e : g.edges()) ok = acc.add(rows.row(static_cast<std::size_t>(kn.index_of(e)))) && ok;
        if (!ok) continue;

        std::vector<Edge> edges = g.edges();
        for (std::size_t r = 0; r < kn.edge_count() && acc.rank() < target; ++r) {
            const auto& e = kn.edges()[r];
            if (g.has_edge(e.i, e.j)) continue;
            if (acc.add(rows.row(r))) edges.push_back(e);
        }
        if (acc.rank() == target) return Graph(n, edges);
    }
    throw std::runtime_error("minimal_rigid_completion: no witness reached the rigid rank");
}

}  // namespace rigidity
