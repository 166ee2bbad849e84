#include "gpack/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "gpack/errors.hpp"
#include "gpack/rng.hpp"

namespace gpack {

Graph::Graph(Vertex n, const std::vector<Edge>& edges) : Graph(n) {
    for (const Edge& e : edges) add_edge(e.u, e.v);
}

void Graph::add_edge(Vertex a, Vertex b) {
    if (a == b) throw ArgumentError("self-loop at vertex " + std::to_string(a));
    if (a >= n_ || b >= n_)
        throw ArgumentError("vertex out of range: " + std::to_string(std::max(a, b)) +
                            " >= " + std::to_string(n_));
    if (has_edge(a, b))
        throw ArgumentError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") already present");
    Edge e = make_edge(a, b);
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
    adj_bits_[a][b >> 6] |= uint64_t(1) << (b & 63);
    adj_bits_[b][a >> 6] |= uint64_t(1) << (a & 63);
    neighbors_[a].insert(std::lower_bound(neighbors_[a].begin(), neighbors_[a].end(), b), b);
    neighbors_[b].insert(std::lower_bound(neighbors_[b].begin(), neighbors_[b].end(), a), a);
}

size_t Graph::edge_index(Vertex a, Vertex b) const {
    if (!has_edge(a, b)) return SIZE_MAX;
    Edge e = make_edge(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    return static_cast<size_t>(it - edges_.begin());
}

std::vector<Vertex> Graph::isolated_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n_; ++v)
        if (neighbors_[v].empty()) out.push_back(v);
    return out;
}

Rat Graph::density() const {
    if (n_ < 2) return 0;
    return Rat(2 * static_cast<long>(edges_.size())) /
           (Rat(static_cast<long>(n_)) * Rat(static_cast<long>(n_) - 1));
}

size_t Graph::edges_between(const std::vector<Vertex>& a, const std::vector<Vertex>& b) const {
    if (a.empty() || b.empty()) throw ArgumentError("edges_between: empty class");
    std::vector<uint64_t> b_mask(word_count(), 0);
    for (Vertex v : b) {
        if (v >= n_) throw ArgumentError("edges_between: vertex out of range");
        if (b_mask[v >> 6] & (uint64_t(1) << (v & 63)))
            throw ArgumentError("edges_between: duplicate vertex in class");
        b_mask[v >> 6] |= uint64_t(1) << (v & 63);
    }
    size_t count = 0;
    for (Vertex v : a) {
        if (v >= n_) throw ArgumentError("edges_between: vertex out of range");
        if (b_mask[v >> 6] & (uint64_t(1) << (v & 63)))
            throw ArgumentError("edges_between: classes overlap");
        const auto& row = adj_bits_[v];
        for (size_t w = 0; w < row.size(); ++w)
            count += static_cast<size_t>(std::popcount(row[w] & b_mask[w]));
    }
    return count;
}

std::string Graph::serialize() const {
    std::ostringstream out;
    out << n_ << ' ' << edges_.size() << '\n';
    for (const Edge& e : edges_) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

namespace {

bool parse_fields(const std::string& line, long long& a, long long& b) {
    std::istringstream in(line);
    std::string extra;
    if (!(in >> a >> b)) return false;
    if (in >> extra) return false;
    return true;
}

}  // namespace

Graph Graph::parse(const std::string& text, ParseStats* stats) {
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    long long n = -1, m = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!parse_fields(line, n, m) || n < 0 || m < 0)
            throw ParseError("expected header \"n m\"", line_no);
        break;
    }
    if (n < 0) throw ParseError("missing header \"n m\"", line_no);
    Graph g(static_cast<Vertex>(n));
    size_t dupes = 0;
    long long seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        long long u, v;
        if (!parse_fields(line, u, v)) throw ParseError("expected edge \"u v\"", line_no);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("vertex out of range", line_no);
        if (u == v) throw ParseError("self-loop", line_no);
        ++seen;
        if (g.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
            ++dupes;
        else
            g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (seen != m)
        throw ParseError("header claims " + std::to_string(m) + " edges, found " +
                             std::to_string(seen),
                         line_no);
    if (stats) stats->duplicate_edges = dupes;
    return g;
}

Graph Graph::load(const std::string& path, ParseStats* stats) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), stats);
}

Graph complete_graph(Vertex n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph cycle_graph(Vertex n) {
    if (n < 3) throw ArgumentError("cycle needs at least 3 vertices");
    Graph g(n);
    for (Vertex v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

Graph path_graph(Vertex n) {
    if (n < 2) throw ArgumentError("path needs at least 2 vertices");
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph star_graph(Vertex n) {
    if (n < 2) throw ArgumentError("star needs at least 2 vertices");
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

Graph complete_multipartite(const std::vector<Vertex>& class_sizes) {
    Vertex n = 0;
    for (Vertex s : class_sizes) n += s;
    Graph g(n);
    std::vector<Vertex> start(class_sizes.size() + 1, 0);
    for (size_t i = 0; i < class_sizes.size(); ++i) start[i + 1] = start[i] + class_sizes[i];
    for (size_t i = 0; i < class_sizes.size(); ++i)
        for (size_t j = i + 1; j < class_sizes.size(); ++j)
            for (Vertex u = start[i]; u < start[i + 1]; ++u)
                for (Vertex v = start[j]; v < start[j + 1]; ++v) g.add_edge(u, v);
    return g;
}

Graph named_pattern(const std::string& name) {
    auto unknown = [&]() -> ParseError {
        return ParseError("unknown pattern \"" + name +
                          "\"; supported: K<k>, C<k>, P<k>, S<k>");
    };
    if (name.size() < 2) throw unknown();
    char kind = name[0];
    long long k = -1;
    try {
        size_t used = 0;
        k = std::stoll(name.substr(1), &used);
        if (used != name.size() - 1) k = -1;
    } catch (...) {
        k = -1;
    }
    if (k < 0) throw unknown();
    // S<k> is a star with k leaves, hence k+1 vertices.
    long long order = kind == 'S' ? k + 1 : k;
    if (order > 10)
        throw ParseError("pattern " + name + " exceeds the 10-vertex order cap");
    auto v = static_cast<Vertex>(k);
    switch (kind) {
        case 'K':
            if (k < 2) throw ParseError("K<k> needs k >= 2");
            return complete_graph(v);
        case 'C':
            if (k < 3) throw ParseError("C<k> needs k >= 3");
            return cycle_graph(v);
        case 'P':
            if (k < 2) throw ParseError("P<k> needs k >= 2");
            return path_graph(v);
        case 'S':
            if (k < 2) throw ParseError("S<k> needs k >= 2");
            return star_graph(v + 1);
        default:
            throw unknown();
    }
}

Graph gnp_random_graph(Vertex n, double p, uint64_t seed) {
    if (p < 0 || p > 1) throw ArgumentError("edge probability outside [0,1]");
    Rng rng(mix_seed(seed, Stream::GraphGen));
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

}  // namespace gpack
