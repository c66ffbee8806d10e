// Walks through the double banana: counts, rank, basis, and why it cannot be
// completed to a minimally rigid graph in R^3.

#include <iostream>

#include "rigidity/rigidity.hpp"

int main() {
    using namespace rigidity;
    const Graph g = double_banana();
    const int d = 3;
    const std::uint64_t seed = 2024;

    const auto gr = generic_rank(g, d, seed);
    std::cout << "edges: " << g.edge_count() << ", required for minimal rigidity: " << required_edge_count(d, g.n_vertices()) << "\n";
    std::cout << "generic rank: " << gr.rank << "\n";

    const auto basis = max_independent_subset(g, d, seed);
    std::cout << "independent basis (" << basis.rank << " edges):";
    for (const auto& e : basis.edges) std::cout << " " << e.i << "-" << e.j;
    std::cout << "\n";

    const auto motions = infinitesimal_motions(g, gr.certificate.witness);
    std::cout << "infinitesimal motions: " << motions.size() << " (trivial: 6)\n";

    try {
        minimal_rigid_completion(g, d, seed);
    } catch (const DependentEdgesError& e) {
        std::cout << "completion: " << e.what() << "\n";
    }

    const auto report = analyze(g, d, seed);
    std::cout << report_to_json(report).dump(2) << "\n";
}
