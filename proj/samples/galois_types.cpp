// Galois types over a two-element set and over an edgeless pair of vertices.
#include <catmt/catmt.hpp>

#include <iostream>

int main() {
    using namespace catmt;
    Cached<SetCat> sets(SetCat(true, 4));
    auto st = enumerate_types(sets, FinSet{2}, 3);
    std::cout << "sets: " << st.classes.size() << " types from " << st.points << " points\n";

    Cached<GraphCat> graphs(GraphCat(GraphKind::full_embedding, 4));
    auto gt = enumerate_types(graphs, Graph(2), 3);
    std::cout << "graphs (full embeddings): " << gt.classes.size() << " types from " << gt.points << " points\n";
    for (const auto& c : gt.classes) {
        const auto& rep = c.rep;
        std::cout << "  type " << c.index << ": point " << rep.b << " of a graph with " << rep.f.cod.n
                  << " vertices and " << rep.f.cod.edges().size() << " edges, " << c.members.size() << " members\n";
    }
}
