#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpack/errors.hpp"
#include "gpack/exact.hpp"
#include "gpack/lp.hpp"
#include "oracles.hpp"

using namespace gpack;

namespace {

Family k3() { return Family::of({complete_graph(3)}, {"K3"}); }

}  // namespace

TEST_CASE("complete host fixtures") {
    ExactResult k7 = exact_packing(complete_graph(7), k3());
    CHECK(k7.size() == 7);
    CHECK(k7.status == SearchStatus::Optimal);
    CHECK(verify_integer_packing(complete_graph(7), k3(), k7.packing).ok);

    ExactResult k6 = exact_packing(complete_graph(6), k3());
    CHECK(k6.size() == 4);
    CHECK(k6.status == SearchStatus::Optimal);

    CHECK(exact_packing(cycle_graph(5), k3()).size() == 0);
    CHECK(exact_packing(Graph(4), k3()).size() == 0);
    CHECK(exact_packing(Graph(4), k3()).status == SearchStatus::Optimal);
}

TEST_CASE("solver matches brute force on random small graphs") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        Vertex n = static_cast<Vertex>(5 + seed % 4);
        double p = 0.3 + 0.2 * static_cast<double>(seed % 3);
        Graph g = gnp_random_graph(n, p, 1000 + seed);
        ExactResult got = exact_packing(g, k3());
        CHECK(got.status == SearchStatus::Optimal);
        CHECK(got.size() == oracle::max_triangle_packing(g));
        CHECK(verify_integer_packing(g, k3(), got.packing).ok);
    }
}

TEST_CASE("tiny budget yields a lower bound, never a crash") {
    ExactResult r = exact_packing(complete_graph(9), k3(), 1);
    CHECK(r.status == SearchStatus::LowerBound);
    CHECK(verify_integer_packing(complete_graph(9), k3(), r.packing).ok);
    ExactResult full = exact_packing(complete_graph(9), k3());
    CHECK(full.status == SearchStatus::Optimal);
    CHECK(r.size() <= full.size());
}

TEST_CASE("solution is sandwiched by greedy and the LP optimum") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = gnp_random_graph(12, 0.5, 600 + seed);
        size_t greedy = greedy_packing(g, k3(), seed).size();
        ExactResult ex = exact_packing(g, k3());
        REQUIRE(ex.status == SearchStatus::Optimal);
        Rat lp = solve_fractional_packing(g, k3(), LpMode::Exact).value;
        CHECK(greedy <= ex.size());
        CHECK(Rat(static_cast<unsigned long>(ex.size())) <= lp);
    }
}

TEST_CASE("greedy packings are maximal and deterministic") {
    Graph g = gnp_random_graph(14, 0.5, 77);
    IntegerPacking a = greedy_packing(g, k3(), 5);
    IntegerPacking b = greedy_packing(g, k3(), 5);
    CHECK(packing_to_text(a) == packing_to_text(b));
    CHECK(verify_integer_packing(g, k3(), a).ok);
    // Maximal: no triangle of g is edge-disjoint from the selection.
    std::vector<uint8_t> used(g.size(), 0);
    for (const PackedCopy& c : a.copies) {
        used[g.edge_index(c.vertices[0], c.vertices[1])] = 1;
        used[g.edge_index(c.vertices[0], c.vertices[2])] = 1;
        used[g.edge_index(c.vertices[1], c.vertices[2])] = 1;
    }
    for (auto [x, y, z] : oracle::all_triangles(g)) {
        bool free = !used[g.edge_index(x, y)] && !used[g.edge_index(x, z)] &&
                    !used[g.edge_index(y, z)];
        CHECK_FALSE(free);
    }
}

TEST_CASE("multi-member families prefer heavier copies first") {
    // K4 hosts one K4 copy (6 edges) or up to one triangle otherwise;
    // with both patterns allowed the optimum is 2: K4 cannot be split
    // into two triangles, but a triangle plus nothing wastes edges, so
    // cross-check against the LP bound.
    Family f = Family::of({complete_graph(4), complete_graph(3)}, {"K4", "K3"});
    ExactResult r = exact_packing(complete_graph(4), f);
    CHECK(r.status == SearchStatus::Optimal);
    CHECK(r.size() == 1);
    ExactResult r7 = exact_packing(complete_graph(7), f);
    CHECK(r7.status == SearchStatus::Optimal);
    CHECK(r7.size() == 7);  // the triangle decomposition still wins
}

TEST_CASE("verifier rejects corrupt packings") {
    Graph g = complete_graph(5);
    IntegerPacking p;
    p.copies.push_back({0, {0, 1, 2}});
    p.copies.push_back({0, {0, 1, 3}});  // shares edge (0,1)
    PackingVerdict v = verify_integer_packing(g, k3(), p);
    CHECK_FALSE(v.ok);
    CHECK(v.message.find("edge") != std::string::npos);

    IntegerPacking q;
    q.copies.push_back({0, {0, 0, 1}});  // repeated vertex
    CHECK_FALSE(verify_integer_packing(g, k3(), q).ok);

    IntegerPacking s;
    s.copies.push_back({0, {0, 1, 9}});  // out of range
    CHECK_FALSE(verify_integer_packing(g, k3(), s).ok);

    IntegerPacking t;
    t.copies.push_back({4, {0, 1, 2}});  // no such pattern
    CHECK_FALSE(verify_integer_packing(g, k3(), t).ok);

    IntegerPacking u;
    u.copies.push_back({0, {0, 1}});  // arity mismatch
    CHECK_FALSE(verify_integer_packing(g, k3(), u).ok);

    Graph sparse(4);
    sparse.add_edge(0, 1);
    sparse.add_edge(1, 2);
    IntegerPacking w;
    w.copies.push_back({0, {0, 1, 2}});  // edge (0,2) missing in host
    CHECK_FALSE(verify_integer_packing(sparse, k3(), w).ok);
}

TEST_CASE("packing text round trip") {
    ExactResult r = exact_packing(complete_graph(6), k3());
    std::string text = packing_to_text(r.packing);
    IntegerPacking back = packing_from_text(text);
    CHECK(back.copies == r.packing.copies);
    IntegerPacking commented = packing_from_text("# note\n" + text + "\n# trailing\n");
    CHECK(commented.copies == r.packing.copies);
    CHECK_THROWS_AS(packing_from_text("0 1 2 3\n"), ParseError);  // missing colon
    CHECK(packing_from_text("").size() == 0);
}
