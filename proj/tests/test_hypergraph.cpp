#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gpack/errors.hpp"
#include "gpack/hypergraph.hpp"

using namespace gpack;

namespace {

uint64_t binom(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    uint64_t r = 1;
    for (uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// True iff no hyperedge is disjoint from every matched vertex.
bool is_maximal(const UniformHypergraph& L, const HyperMatching& m) {
    std::vector<uint8_t> covered(L.order(), 0);
    for (uint32_t id : m.edge_ids)
        for (uint32_t v : L.edge(id)) covered[v] = 1;
    for (size_t e = 0; e < L.edge_count(); ++e) {
        bool free = true;
        for (uint32_t v : L.edge(e)) free = free && !covered[v];
        if (free) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("construction and validation") {
    UniformHypergraph h(5, 3);
    h.add_edge(std::vector<uint32_t>{2, 0, 1});
    CHECK(h.edge_count() == 1);
    CHECK(h.edge(0)[0] == 0);  // stored sorted
    CHECK(h.edge(0)[2] == 2);
    CHECK_THROWS_AS(h.add_edge(std::vector<uint32_t>{0, 1, 2}), ArgumentError);  // dup
    CHECK_THROWS_AS(h.add_edge(std::vector<uint32_t>{1, 2, 0}), ArgumentError);  // dup
    CHECK_THROWS_AS(h.add_edge(std::vector<uint32_t>{0, 1, 5}), ArgumentError);
    CHECK_THROWS_AS(h.add_edge(std::vector<uint32_t>{0, 1, 1}), ArgumentError);
    CHECK_THROWS_AS(h.add_edge(std::vector<uint32_t>{0, 1}), ArgumentError);
    CHECK_THROWS_AS(UniformHypergraph(2, 3), ArgumentError);
    CHECK_THROWS_AS(UniformHypergraph(3, 0), ArgumentError);
}

TEST_CASE("serialize parse round trip") {
    UniformHypergraph h(6, 3);
    h.add_edge(std::vector<uint32_t>{0, 1, 2});
    h.add_edge(std::vector<uint32_t>{3, 4, 5});
    UniformHypergraph back = UniformHypergraph::parse(h.serialize());
    CHECK(back.order() == 6);
    CHECK(back.uniformity() == 3);
    CHECK(back.edge_count() == 2);
    CHECK(back.serialize() == h.serialize());
    CHECK_THROWS_AS(UniformHypergraph::parse("3 3\n0 1 2\n0 1 2\n"), ParseError);
    CHECK_THROWS_AS(UniformHypergraph::parse(""), ParseError);
}

TEST_CASE("complete hypergraph degree statistics") {
    UniformHypergraph h6 = complete_uniform_hypergraph(6, 3);
    CHECK(h6.edge_count() == 20);
    DegreeProfile p6 = degree_profile(h6);
    CHECK(p6.d_min == 10);  // C(5,2)
    CHECK(p6.d_max == 10);
    CHECK(p6.max_codegree == 4);  // C(4,1)
    CHECK(p6.suggested_d == doctest::Approx(10.0));

    UniformHypergraph h30 = complete_uniform_hypergraph(30, 3);
    CHECK(h30.edge_count() == binom(30, 3));
    DegreeProfile p30 = degree_profile(h30);
    CHECK(p30.d_min == 406);  // C(29,2)
    CHECK(p30.max_codegree == 28);

    UniformHypergraph lonely(4, 3);
    lonely.add_edge(std::vector<uint32_t>{0, 1, 2});
    DegreeProfile pl = degree_profile(lonely);
    CHECK(pl.d_min == 0);  // vertex 3 in no edge
    CHECK(pl.d_max == 1);
}

TEST_CASE("pippenger style preconditions") {
    UniformHypergraph h = complete_uniform_hypergraph(30, 3);
    // Codegree 28 < 0.1 * 406 = 40.6 and degrees are exactly 406.
    CHECK(check_pippenger_conditions(h, 0.1, 406.0).ok);
    CHECK_FALSE(check_pippenger_conditions(h, 0.05, 406.0).ok);  // 28 >= 20.3
    CHECK_FALSE(check_pippenger_conditions(h, 0.1, 500.0).ok);   // degrees too low
    PippengerVerdict v = check_pippenger_conditions(h, 0.1, 500.0);
    CHECK_FALSE(v.message.empty());
}

TEST_CASE("nibble reaches the guarantee on complete 3-uniform hosts") {
    for (uint32_t q : {9u, 30u, 60u}) {
        UniformHypergraph h = complete_uniform_hypergraph(q, 3);
        size_t target = static_cast<size_t>((q / 3.0) * 0.9);
        size_t hits = 0;
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            HyperMatching m = nibble_matching(h, 0.1, 0.1, seed);
            CHECK(verify_matching(h, m).ok);
            CHECK(is_maximal(h, m));
            if (m.size() >= target) ++hits;
        }
        CHECK(hits == 5);  // maximality alone gives floor(q/3) here
    }
}

TEST_CASE("nibble is deterministic per seed") {
    UniformHypergraph h = complete_uniform_hypergraph(24, 3);
    HyperMatching a = nibble_matching(h, 0.1, 0.1, 42);
    HyperMatching b = nibble_matching(h, 0.1, 0.1, 42);
    CHECK(a.edge_ids == b.edge_ids);
}

TEST_CASE("greedy matching is valid and maximal") {
    UniformHypergraph h = complete_uniform_hypergraph(12, 4);
    HyperMatching m = greedy_matching(h, 9);
    CHECK(verify_matching(h, m).ok);
    CHECK(is_maximal(h, m));
    CHECK(m.size() == 3);  // 12/4 vertices, complete host always packs fully
}

TEST_CASE("verify_matching rejects shared vertices and bad ids") {
    UniformHypergraph h(6, 3);
    h.add_edge(std::vector<uint32_t>{0, 1, 2});
    h.add_edge(std::vector<uint32_t>{2, 3, 4});
    h.add_edge(std::vector<uint32_t>{3, 4, 5});
    HyperMatching overlap{{0, 1}};  // share vertex 2
    CHECK_FALSE(verify_matching(h, overlap).ok);
    HyperMatching ok{{0, 2}};
    CHECK(verify_matching(h, ok).ok);
    HyperMatching bogus{{7}};
    CHECK_FALSE(verify_matching(h, bogus).ok);
    HyperMatching repeated{{0, 0}};
    CHECK_FALSE(verify_matching(h, repeated).ok);
}

TEST_CASE("nibble stops within the round cap") {
    UniformHypergraph h = complete_uniform_hypergraph(15, 3);
    HyperMatching m = nibble_matching(h, 0.1, 0.1, 3, 1);
    // One sampled round plus the greedy sweep still yields maximality.
    CHECK(verify_matching(h, m).ok);
    CHECK(is_maximal(h, m));
    CHECK(m.size() == 5);
}
