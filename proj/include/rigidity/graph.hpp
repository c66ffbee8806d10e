#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rigidity {

/// Undirected edge between 1-indexed vertices, stored with i < j.
struct Edge {
    int i = 0;
    int j = 0;

    auto operator<=>(const Edge&) const = default;
};

/// Simple undirected graph on vertices 1..n with a canonical edge list:
/// no duplicates, each edge (i,j) has i < j, edges sorted lexicographically.
/// The row order of every rigidity matrix follows this edge order.
class Graph {
public:
    Graph() = default;

    /// Builds a canonical graph. Pairs may be given in either orientation and
    /// may repeat; self-loops and out-of-range endpoints are rejected.
    Graph(int n_vertices, const std::vector<std::pair<int, int>>& pairs) : n_(n_vertices) {
        if (n_vertices < 1) {
            throw std::invalid_argument("graph needs at least one vertex");
        }
        edges_.reserve(pairs.size());
        for (auto [a, b] : pairs) {
            if (a < 1 || b < 1 || a > n_vertices || b > n_vertices) {
                throw std::out_of_range("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                        ") has an endpoint outside [1, " + std::to_string(n_vertices) + "]");
            }
            if (a == b) {
                throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
            }
            edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
        }
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    }

    Graph(int n_vertices, const std::vector<Edge>& edges) : Graph(n_vertices, to_pairs(edges)) {}

    int n_vertices() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    bool has_edge(int a, int b) const {
        const Edge e{std::min(a, b), std::max(a, b)};
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    /// Position of an edge in the canonical order, or -1.
    long index_of(const Edge& e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return -1;
        return static_cast<long>(it - edges_.begin());
    }

    /// Degree of every vertex; entry v-1 belongs to vertex v.
    std::vector<int> degrees() const {
        std::vector<int> deg(static_cast<std::size_t>(n_), 0);
        for (const auto& e : edges_) {
            ++deg[static_cast<std::size_t>(e.i - 1)];
            ++deg[static_cast<std::size_t>(e.j - 1)];
        }
        return deg;
    }

    bool operator==(const Graph&) const = default;

private:
    static std::vector<std::pair<int, int>> to_pairs(const std::vector<Edge>& edges) {
        std::vector<std::pair<int, int>> out;
        out.reserve(edges.size());
        for (const auto& e : edges) out.emplace_back(e.i, e.j);
        return out;
    }

    int n_ = 1;
    std::vector<Edge> edges_;
};

inline Graph make_graph(int n_vertices, const std::vector<std::pair<int, int>>& pairs) {
    return Graph(n_vertices, pairs);
}

/// A connected component relabeled to 1..k_j; labels[v-1] is the original vertex of v.
struct Component {
    Graph graph;
    std::vector<int> labels;
};

/// Result of iterated degree-1 vertex removal.
struct PruneTrace {
    std::vector<int> removed_vertices;  ///< original labels, in removal order
    Graph remaining;                    ///< relabeled to 1..(n_vertices - n)
    std::vector<int> remaining_labels;  ///< original label of each remaining vertex
    int n = 0;
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Restriction of g to the listed vertices (original labels, any order), relabeled
/// so that labels[v-1] maps to new vertex v.
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& labels) {
    std::vector<int> new_id(static_cast<std::size_t>(g.n_vertices()) + 1, 0);
    for (std::size_t v = 0; v < labels.size(); ++v) new_id[static_cast<std::size_t>(labels[v])] = static_cast<int>(v) + 1;
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : g.edges()) {
        const int a = new_id[static_cast<std::size_t>(e.i)];
        const int b = new_id[static_cast<std::size_t>(e.j)];
        if (a != 0 && b != 0) pairs.emplace_back(a, b);
    }
    return Graph(static_cast<int>(labels.size()), pairs);
}

/// Connected components ordered by their smallest original vertex. Isolated
/// vertices come back as single-vertex components.
inline std::vector<Component> connected_components(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.n_vertices());
    detail::UnionFind uf(n);
    for (const auto& e : g.edges()) uf.unite(static_cast<std::size_t>(e.i - 1), static_cast<std::size_t>(e.j - 1));

    std::vector<std::vector<int>> groups;
    std::vector<long> slot(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        const auto root = uf.find(v);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[root])].push_back(static_cast<int>(v) + 1);
    }

    std::vector<Component> out;
    out.reserve(groups.size());
    for (auto& labels : groups) {
        Graph sub = induced_subgraph(g, labels);
        out.push_back(Component{std::move(sub), std::move(labels)});
    }
    return out;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() == 1; }

/// Kruskal over the canonical edge order, so the lexicographically earliest
/// edges win.
inline Graph spanning_tree(const Graph& g) {
    detail::UnionFind uf(static_cast<std::size_t>(g.n_vertices()));
    std::vector<Edge> tree;
    for (const auto& e : g.edges()) {
        if (uf.unite(static_cast<std::size_t>(e.i - 1), static_cast<std::size_t>(e.j - 1))) tree.push_back(e);
    }
    if (static_cast<int>(tree.size()) != g.n_vertices() - 1) {
        throw std::invalid_argument("spanning_tree: graph is not connected");
    }
    return Graph(g.n_vertices(), tree);
}

/// Repeatedly deletes the lowest-numbered vertex of degree 1. A leaf whose
/// neighbour also has degree 1 (a K2 piece) is never removed, so a connected
/// graph stops at K2.
inline PruneTrace prune_degree_one(const Graph& g) {
    auto deg = g.degrees();
    for (std::size_t v = 0; v < deg.size(); ++v) {
        if (deg[v] == 0) {
            throw std::invalid_argument("prune_degree_one: vertex " + std::to_string(v + 1) + " is isolated");
        }
    }

    const auto n = static_cast<std::size_t>(g.n_vertices());
    std::vector<std::vector<int>> adj(n + 1);
    for (const auto& e : g.edges()) {
        adj[static_cast<std::size_t>(e.i)].push_back(e.j);
        adj[static_cast<std::size_t>(e.j)].push_back(e.i);
    }
    std::vector<bool> alive(n + 1, true);
    auto live_neighbour = [&](int v) {
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (alive[static_cast<std::size_t>(w)]) return w;
        }
        return 0;
    };

    PruneTrace trace;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int v = 1; v <= static_cast<int>(n); ++v) {
            const auto sv = static_cast<std::size_t>(v);
            if (!alive[sv] || deg[sv - 1] != 1) continue;
            const int w = live_neighbour(v);
            if (deg[static_cast<std::size_t>(w - 1)] == 1) continue;
            alive[sv] = false;
            deg[sv - 1] = 0;
            --deg[static_cast<std::size_t>(w - 1)];
            trace.removed_vertices.push_back(v);
            progress = true;
            break;
        }
    }

    for (int v = 1; v <= static_cast<int>(n); ++v) {
        if (alive[static_cast<std::size_t>(v)]) trace.remaining_labels.push_back(v);
    }
    trace.remaining = induced_subgraph(g, trace.remaining_labels);
    trace.n = static_cast<int>(trace.removed_vertices.size());
    return trace;
}

/// Applies a vertex permutation: vertex v becomes perm[v-1].
inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.n_vertices()) {
        throw std::invalid_argument("relabel: permutation size mismatch");
    }
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        pairs.emplace_back(perm[static_cast<std::size_t>(e.i - 1)], perm[static_cast<std::size_t>(e.j - 1)]);
    }
    return Graph(g.n_vertices(), pairs);
}

/// Vertices of b are shifted past those of a.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : a.edges()) pairs.emplace_back(e.i, e.j);
    for (const auto& e : b.edges()) pairs.emplace_back(e.i + a.n_vertices(), e.j + a.n_vertices());
    return Graph(a.n_vertices() + b.n_vertices(), pairs);
}

// ---------------------------------------------------------------------------
// Named generators

inline Graph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete_graph: n must be positive");
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) pairs.emplace_back(a, b);
    return Graph(n, pairs);
}

inline Graph path_graph(int n) {
    if (n < 2) throw std::invalid_argument("path_graph: n must be at least 2");
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a < n; ++a) pairs.emplace_back(a, a + 1);
    return Graph(n, pairs);
}

/// Star with centre 1.
inline Graph star_graph(int n) {
    if (n < 2) throw std::invalid_argument("star_graph: n must be at least 2");
    std::vector<std::pair<int, int>> pairs;
    for (int a = 2; a <= n; ++a) pairs.emplace_back(1, a);
    return Graph(n, pairs);
}

/// The 8-vertex, 18-edge double banana: two copies of K5 minus an edge glued at
/// the endpoints {1,2} of the missing edge. Triangles {3,4,5} and {6,7,8}.
inline Graph double_banana() {
    std::vector<std::pair<int, int>> pairs;
    auto add_banana = [&](const std::vector<int>& vs) {
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b) {
                if (vs[a] == 1 && vs[b] == 2) continue;
                pairs.emplace_back(vs[a], vs[b]);
            }
    };
    add_banana({1, 2, 3, 4, 5});
    add_banana({1, 2, 6, 7, 8});
    return Graph(8, pairs);
}

}  // namespace rigidity
