#include "gpack/canonical.hpp"

#include <algorithm>
#include <numeric>

#include "gpack/errors.hpp"

namespace gpack {

namespace {

std::vector<Edge> relabel_edges(const Graph& g, const std::vector<Vertex>& perm) {
    std::vector<Edge> out;
    out.reserve(g.size());
    for (const Edge& e : g.edges()) out.push_back(make_edge(perm[e.u], perm[e.v]));
    std::sort(out.begin(), out.end());
    return out;
}

bool preserves_edges(const Graph& g, const std::vector<Vertex>& perm) {
    for (const Edge& e : g.edges())
        if (!g.has_edge(perm[e.u], perm[e.v])) return false;
    return true;
}

void check_order(const Graph& g) {
    if (g.order() > kMaxPatternOrder)
        throw BudgetError("pattern order " + std::to_string(g.order()) +
                          " exceeds the permutation-search bound " +
                          std::to_string(kMaxPatternOrder));
}

// Enumerates degree-preserving permutations of g, pruning partial maps
// that already break adjacency with an assigned vertex.
template <class Visit>
void for_each_permutation(const Graph& g, const Graph& target, Visit visit) {
    Vertex n = g.order();
    std::vector<Vertex> perm(n, 0);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, Vertex v) -> void {
        if (v == n) {
            visit(perm);
            return;
        }
        for (Vertex img = 0; img < n; ++img) {
            if (used[img] || g.degree(v) != target.degree(img)) continue;
            bool ok = true;
            for (Vertex w = 0; w < v && ok; ++w)
                if (g.has_edge(v, w) != target.has_edge(img, perm[w])) ok = false;
            if (!ok) continue;
            used[img] = true;
            perm[v] = img;
            self(self, v + 1);
            used[img] = false;
        }
    };
    rec(rec, 0);
}

}  // namespace

std::vector<std::vector<Vertex>> automorphisms(const Graph& g) {
    check_order(g);
    std::vector<std::vector<Vertex>> out;
    for_each_permutation(g, g, [&](const std::vector<Vertex>& perm) {
        // The partial check enforces edges both ways, so perm is an
        // automorphism already; keep the assertion cheap.
        out.push_back(perm);
    });
    return out;
}

size_t automorphism_count(const Graph& g) { return automorphisms(g).size(); }

std::vector<Edge> canonical_form(const Graph& g) {
    check_order(g);
    Vertex n = g.order();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex(0));
    bool first = true;
    std::vector<Edge> best;
    do {
        std::vector<Edge> candidate = relabel_edges(g, perm);
        if (first || candidate < best) {
            best = std::move(candidate);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool are_isomorphic(const Graph& a, const Graph& b) {
    if (a.order() != b.order() || a.size() != b.size()) return false;
    check_order(a);
    check_order(b);
    std::vector<size_t> da, db;
    for (Vertex v = 0; v < a.order(); ++v) da.push_back(a.degree(v));
    for (Vertex v = 0; v < b.order(); ++v) db.push_back(b.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    bool found = false;
    for_each_permutation(a, b, [&](const std::vector<Vertex>& perm) {
        if (!found && relabel_edges(a, perm) == b.edges()) found = true;
    });
    return found;
}

}  // namespace gpack
