#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpack/copies.hpp"
#include "gpack/errors.hpp"
#include "gpack/regularity.hpp"
#include "gpack/rng.hpp"
#include "oracles.hpp"

using namespace gpack;

namespace {

std::vector<Vertex> range_class(Vertex from, Vertex count) {
    std::vector<Vertex> out(count);
    for (Vertex i = 0; i < count; ++i) out[i] = from + i;
    return out;
}

Graph random_bipartite(Vertex s, double p, uint64_t seed) {
    Graph g(2 * s);
    Rng rng(seed);
    for (Vertex u = 0; u < s; ++u)
        for (Vertex v = 0; v < s; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, s + v);
    return g;
}

}  // namespace

TEST_CASE("density extremes are regular under both methods") {
    Graph full = complete_multipartite({4, 4});
    Graph empty(8);
    auto A = range_class(0, 4), B = range_class(4, 4);
    for (auto method : {RegularityMethod::Sampling, RegularityMethod::DegreeCodegree}) {
        PairVerdict v1 = check_regular_pair(full, A, B, 0.1, method, 3);
        CHECK(v1.regular);
        CHECK(v1.density == Rat(1));
        PairVerdict v0 = check_regular_pair(empty, A, B, 0.1, method, 3);
        CHECK(v0.regular);
        CHECK(v0.density == 0);
    }
}

TEST_CASE("sampling finds a witness in a matching-structured pair") {
    // Perfect matching between classes of four: density 1/4, but any
    // matched 2x2 sub-pair has density 1/2, deviating by gamma = 1/4.
    Graph g(8);
    for (Vertex i = 0; i < 4; ++i) g.add_edge(i, 4 + i);
    auto A = range_class(0, 4), B = range_class(4, 4);
    PairVerdict v = check_regular_pair(g, A, B, 0.25, RegularityMethod::Sampling, 1);
    CHECK_FALSE(v.regular);
    REQUIRE(v.has_witness());
    CHECK(v.witness_x.size() > 1);  // |X| > gamma |A| = 1
    CHECK(v.witness_y.size() > 1);
    Rat sub = g.pair_density(v.witness_x, v.witness_y);
    Rat dev = sub > v.density ? sub - v.density : v.density - sub;
    CHECK(dev >= rat_from_double(0.25));
}

TEST_CASE("sampling accepts a balanced random pair at coarse gamma") {
    Graph g = random_bipartite(40, 0.5, 21);
    auto A = range_class(0, 40), B = range_class(40, 40);
    PairVerdict v = check_regular_pair(g, A, B, 0.5, RegularityMethod::Sampling, 4);
    CHECK(v.regular);
    CHECK_FALSE(v.has_witness());
    CHECK(v.method == RegularityMethod::Sampling);
}

TEST_CASE("degree-codegree certificate needs large classes") {
    auto A = range_class(0, 128), B = range_class(128, 128);
    Graph small = random_bipartite(128, 0.5, 99);
    CHECK_FALSE(check_regular_pair(small, A, B, 0.5,
                                   RegularityMethod::DegreeCodegree, 1)
                    .regular);
    // At 1024 per side the deviation terms clear the gamma^2 bar.
    Graph big = random_bipartite(1024, 0.5, 99);
    auto A2 = range_class(0, 1024), B2 = range_class(1024, 1024);
    PairVerdict v =
        check_regular_pair(big, A2, B2, 0.5, RegularityMethod::DegreeCodegree, 1);
    CHECK(v.regular);
    CHECK_FALSE(v.has_witness());  // the certificate never names subsets
}

TEST_CASE("pair check validates its inputs") {
    Graph g(4);
    CHECK_THROWS_AS(
        check_regular_pair(g, {0, 1}, {1, 2}, 0.5, RegularityMethod::Sampling, 0),
        ArgumentError);  // overlap
    CHECK_THROWS_AS(check_regular_pair(g, {}, {2, 3}, 0.5, RegularityMethod::Sampling, 0),
                    ArgumentError);
    CHECK_THROWS_AS(
        check_regular_pair(g, {0, 1}, {2, 3}, 0.0, RegularityMethod::Sampling, 0),
        ArgumentError);
    CHECK_THROWS_AS(
        check_regular_pair(g, {0, 1}, {2, 3}, 1.0, RegularityMethod::Sampling, 0),
        ArgumentError);
}

TEST_CASE("assessment covers every pair once") {
    Graph g = gnp_random_graph(24, 0.5, 5);
    VertexPartition p = equitable_partition(24, 4, 5);
    PairAssessment a = assess_regular_pairs(g, p, 0.5, RegularityMethod::Sampling, 5);
    CHECK(a.class_count() == 4);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j) {
            const PairVerdict& v = a.verdict(i, j);
            CHECK(v.i == i);
            CHECK(v.j == j);
            // Symmetric access returns the same record.
            CHECK(&a.verdict(j, i) == &v);
            Rat recount = g.pair_density(p.class_members(i), p.class_members(j));
            CHECK(v.density == recount);
        }
    CHECK_THROWS_AS(a.verdict(1, 1), ArgumentError);
    std::string csv = a.to_csv();
    CHECK(csv.find("i,j,density,regular,method") == 0);
}

TEST_CASE("discard splits edges into the three stated categories") {
    // Classes {0,1},{2,3},{4,5}; one internal edge, pair (0,1) dense
    // regular, pair (0,2) regular but sparse, pair (1,2) irregular.
    Graph g(6);
    g.add_edge(0, 1);            // internal
    g.add_edge(0, 2);            // pair (0,1)
    g.add_edge(1, 3);            // pair (0,1)
    g.add_edge(0, 4);            // pair (0,2)
    g.add_edge(2, 4);            // pair (1,2)
    g.add_edge(3, 5);            // pair (1,2)
    VertexPartition p(6, {{0, 1}, {2, 3}, {4, 5}}, PartitionOrigin::Equitable);
    std::vector<PairVerdict> verdicts(3);
    verdicts[0] = {0, 1, Rat(1) / 2, true, RegularityMethod::Sampling, {}, {}};
    verdicts[1] = {0, 2, Rat(1) / 4, true, RegularityMethod::Sampling, {}, {}};
    verdicts[2] = {1, 2, Rat(1) / 2, false, RegularityMethod::Sampling, {}, {}};
    PairAssessment a(3, 0.5, verdicts);

    auto [g_star, report] = discard_edges(g, p, a, 0.3);
    CHECK(report.internal == 1);
    CHECK(report.irregular == 2);
    CHECK(report.sparse == 1);
    CHECK(report.discarded == 4);
    CHECK(report.kept == 2);
    CHECK(g_star.size() == 2);
    CHECK(g_star.has_edge(0, 2));
    CHECK(g_star.has_edge(1, 3));
    CHECK(report.bound == doctest::Approx(0.72 * 0.3 * 36));
    CHECK(report.within_bound);

    ReducedGraph R = build_reduced_graph(p, a, 0.3);
    CHECK(R.base.order() == 3);
    CHECK(R.base.size() == 1);
    CHECK(R.base.has_edge(0, 1));
    CHECK(R.density_of(0, 1) == Rat(1) / 2);
    CHECK(R.density_of(1, 0) == Rat(1) / 2);
}

TEST_CASE("projection identity on the complete tripartite example") {
    auto host = std::make_shared<Graph>(complete_multipartite({2, 2, 2}));
    VertexPartition p(6, {{0, 1}, {2, 3}, {4, 5}}, PartitionOrigin::Refined);
    std::vector<PairVerdict> verdicts(3);
    verdicts[0] = {0, 1, Rat(1), true, RegularityMethod::Sampling, {}, {}};
    verdicts[1] = {0, 2, Rat(1), true, RegularityMethod::Sampling, {}, {}};
    verdicts[2] = {1, 2, Rat(1), true, RegularityMethod::Sampling, {}, {}};
    PairAssessment a(3, 0.5, verdicts);
    ReducedGraph R = build_reduced_graph(p, a, 0.3);
    REQUIRE(R.base.size() == 3);

    CopyIndex labeled = enumerate_labeled_copies(
        host, Family::of({complete_graph(3)}, {"K3"}));
    REQUIRE(labeled.copy_count() == 48);  // 8 triangles, 6 labelings each
    FractionalPacking psi(std::make_shared<CopyIndex>(std::move(labeled)));
    for (size_t c = 0; c < 48; ++c) psi.set_weight(c, Rat(1) / 16);
    REQUIRE(verify_fractional(psi, 0.0).ok);

    FractionalPacking prime = project_packing_to_reduced(psi, p, R);
    CHECK(packing_weight(prime) == Rat(3) / 4);
    CHECK(packing_weight(prime) ==
          packing_weight(psi) * Rat(9) / Rat(36));  // m^2 / n^2
    ReducedLoadVerdict load = verify_reduced_load(prime, R);
    CHECK(load.ok);
    for (size_t e = 0; e < R.base.size(); ++e)
        CHECK(prime.edge_load(e) == Rat(3) / 4);
}

TEST_CASE("projection rejects illegal supports") {
    auto host = std::make_shared<Graph>(complete_graph(6));
    VertexPartition p(6, {{0, 1}, {2, 3}, {4, 5}}, PartitionOrigin::Refined);
    std::vector<PairVerdict> verdicts(3);
    verdicts[0] = {0, 1, Rat(1), false, RegularityMethod::Sampling, {}, {}};
    verdicts[1] = {0, 2, Rat(1), true, RegularityMethod::Sampling, {}, {}};
    verdicts[2] = {1, 2, Rat(1), true, RegularityMethod::Sampling, {}, {}};
    PairAssessment a(3, 0.5, verdicts);
    ReducedGraph R = build_reduced_graph(p, a, 0.3);  // edge (0,1) missing

    CopyIndex labeled = enumerate_labeled_copies(
        host, Family::of({complete_graph(3)}, {"K3"}));
    auto idx = std::make_shared<CopyIndex>(std::move(labeled));

    // Weight on a copy with two vertices in one class.
    FractionalPacking same_class(idx);
    for (size_t c = 0; c < idx->copy_count(); ++c) {
        auto t = idx->copy_vertices(c);
        if (p.class_of(t[0]) == p.class_of(t[1])) {
            same_class.set_weight(c, Rat(1) / 2);
            break;
        }
    }
    CHECK_THROWS_AS(project_packing_to_reduced(same_class, p, R), ArgumentError);

    // Weight on a copy over the discarded pair (0,1).
    FractionalPacking over_cut(idx);
    for (size_t c = 0; c < idx->copy_count(); ++c) {
        auto t = idx->copy_vertices(c);
        std::set<size_t> cls{p.class_of(t[0]), p.class_of(t[1]), p.class_of(t[2])};
        if (cls == std::set<size_t>{0, 1, 2}) {
            over_cut.set_weight(c, Rat(1) / 2);
            break;
        }
    }
    CHECK_THROWS_AS(project_packing_to_reduced(over_cut, p, R), ArgumentError);
}

TEST_CASE("reduced load verdict flags overload") {
    VertexPartition p(6, {{0, 1}, {2, 3}, {4, 5}}, PartitionOrigin::Refined);
    std::vector<PairVerdict> verdicts(3);
    verdicts[0] = {0, 1, Rat(1) / 2, true, RegularityMethod::Sampling, {}, {}};
    verdicts[1] = {0, 2, Rat(1) / 2, true, RegularityMethod::Sampling, {}, {}};
    verdicts[2] = {1, 2, Rat(1) / 2, true, RegularityMethod::Sampling, {}, {}};
    PairAssessment a(3, 0.5, verdicts);
    ReducedGraph R = build_reduced_graph(p, a, 0.3);
    auto ridx = std::make_shared<CopyIndex>(enumerate_labeled_copies(
        std::make_shared<Graph>(R.base), Family::of({complete_graph(3)}, {"K3"})));
    FractionalPacking prime(ridx);
    prime.set_weight(0, Rat(3) / 4);  // load 3/4 > density 1/2
    ReducedLoadVerdict v = verify_reduced_load(prime, R);
    CHECK_FALSE(v.ok);
    CHECK(v.load == Rat(3) / 4);
    CHECK(v.bound == Rat(1) / 2);
}

TEST_CASE("counting check on a random tripartite host") {
    size_t t = 60;
    Graph g(static_cast<Vertex>(3 * t));
    Rng rng(17);
    std::vector<std::vector<Vertex>> classes{range_class(0, 60), range_class(60, 60),
                                             range_class(120, 60)};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j)
            for (Vertex u : classes[i])
                for (Vertex v : classes[j])
                    if (rng.bernoulli(0.5)) g.add_edge(u, v);

    CountingReport r = counting_lemma_check(g, complete_graph(3), classes, 0.2, 0.2);
    CHECK(r.edges_total == g.size());
    CHECK(r.survives);
    CHECK(r.fraction_ok >= 0.8);
    CHECK(r.max_relative_deviation < 1.0);
    CHECK(r.counts.size() == r.edges_total);
    CHECK(r.expected.size() == r.edges_total);
    // Spot check one edge count against a direct recount.
    size_t e = r.edge_indices[0];
    Edge edge = g.edges()[e];
    uint64_t direct = 0;
    for (Vertex w : classes[2])
        if (g.has_edge(edge.u, w) && g.has_edge(edge.v, w)) ++direct;
    CHECK(r.counts[0] == direct);

    std::vector<std::vector<Vertex>> unequal{range_class(0, 60), range_class(60, 59),
                                             range_class(120, 60)};
    CHECK_THROWS_AS(counting_lemma_check(g, complete_graph(3), unequal, 0.2, 0.2),
                    ArgumentError);
    Graph sparse(static_cast<Vertex>(3 * t));
    sparse.add_edge(0, 60);
    CHECK_THROWS_AS(counting_lemma_check(sparse, complete_graph(3), classes, 0.2, 0.2),
                    ArgumentError);  // pair density below delta
}

TEST_CASE("partition heuristic certifies an easy graph and gives up honestly") {
    Graph easy = gnp_random_graph(48, 0.5, 33);
    auto [part, verdict] = regularity_partition(easy, 0.5, 64, 33);
    CHECK(verdict.certified);
    CHECK(verdict.irregular_fraction <= 0.5);
    CHECK(part.class_count() <= 64);
    size_t covered = 0;
    for (size_t i = 0; i < part.class_count(); ++i)
        covered += part.class_members(i).size();
    CHECK(covered == 48);

    // Tiny classes at small gamma judge everything irregular; with a
    // tight class budget the heuristic must admit defeat.
    Graph hard = gnp_random_graph(20, 0.5, 34);
    auto [part2, verdict2] = regularity_partition(hard, 0.2, 8, 34);
    CHECK_FALSE(verdict2.certified);
    CHECK(verdict2.irregular_fraction > 0.2);
    CHECK(part2.class_count() <= 8);
}
