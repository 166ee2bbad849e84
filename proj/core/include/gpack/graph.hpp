#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gpack/rational.hpp"

namespace gpack {

using Vertex = uint32_t;

// Undirected edge stored with u < v.
struct Edge {
    Vertex u;
    Vertex v;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) {
    if (a == b) throw ArgumentError("self-loop");
    return a < b ? Edge{a, b} : Edge{b, a};
}

struct ParseStats {
    size_t duplicate_edges = 0;
};

// Simple undirected graph. Edges are kept sorted and deduplicated;
// adjacency is mirrored into per-vertex bitsets for fast intersection.
class Graph {
  public:
    Graph() = default;
    explicit Graph(Vertex n) : n_(n), adj_bits_(n), neighbors_(n) {
        size_t words = (static_cast<size_t>(n) + 63) / 64;
        for (auto& row : adj_bits_) row.assign(words, 0);
    }
    Graph(Vertex n, const std::vector<Edge>& edges);

    Vertex order() const { return n_; }
    size_t size() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return neighbors_[v]; }
    size_t degree(Vertex v) const { return neighbors_[v].size(); }

    bool has_edge(Vertex a, Vertex b) const {
        if (a >= n_ || b >= n_ || a == b) return false;
        return (adj_bits_[a][b >> 6] >> (b & 63)) & 1u;
    }
    // Index of {a,b} in edges(), or SIZE_MAX when absent.
    size_t edge_index(Vertex a, Vertex b) const;

    void add_edge(Vertex a, Vertex b);

    const std::vector<uint64_t>& adjacency_bits(Vertex v) const { return adj_bits_[v]; }
    size_t word_count() const { return n_ == 0 ? 0 : adj_bits_[0].size(); }

    std::vector<Vertex> isolated_vertices() const;

    // Exact edge density 2m / n(n-1); zero for n < 2.
    Rat density() const;

    // Count of edges with one end in each (disjoint, nonempty) class.
    size_t edges_between(const std::vector<Vertex>& a, const std::vector<Vertex>& b) const;

    // Exact pair density e(A,B) / (|A|·|B|).
    Rat pair_density(const std::vector<Vertex>& a, const std::vector<Vertex>& b) const {
        return Rat(static_cast<long>(edges_between(a, b))) /
               (Rat(static_cast<long>(a.size())) * Rat(static_cast<long>(b.size())));
    }

    // Subgraph on the same vertex set keeping edges accepted by keep(edge index).
    template <class Pred>
    Graph filter_edges(Pred keep) const {
        Graph g(n_);
        for (size_t i = 0; i < edges_.size(); ++i)
            if (keep(i)) g.add_edge(edges_[i].u, edges_[i].v);
        return g;
    }

    std::string serialize() const;
    static Graph parse(const std::string& text, ParseStats* stats = nullptr);
    static Graph load(const std::string& path, ParseStats* stats = nullptr);

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

  private:
    Vertex n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<uint64_t>> adj_bits_;
    std::vector<std::vector<Vertex>> neighbors_;
    void finalize_edges();
};

Graph complete_graph(Vertex n);
Graph cycle_graph(Vertex n);
Graph path_graph(Vertex n);   // n vertices, n-1 edges
Graph star_graph(Vertex n);   // n vertices: one hub, n-1 leaves
Graph complete_multipartite(const std::vector<Vertex>& class_sizes);

// Named patterns: K<k> (k >= 2), C<k> (k >= 3), P<k> (k >= 2), S<k> (k >= 3).
Graph named_pattern(const std::string& name);

// G(n, p) with a dedicated seed stream; each pair flips an independent coin.
Graph gnp_random_graph(Vertex n, double p, uint64_t seed);

}  // namespace gpack
