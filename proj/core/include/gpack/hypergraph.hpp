#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace gpack {

// r-uniform hypergraph on vertices 0..q-1. Hyperedges are stored in
// insertion order with vertices sorted; duplicates are rejected.
class UniformHypergraph {
  public:
    UniformHypergraph() = default;
    UniformHypergraph(uint32_t q, uint32_t r);

    uint32_t order() const { return q_; }
    uint32_t uniformity() const { return r_; }
    size_t edge_count() const { return r_ == 0 ? 0 : verts_.size() / r_; }
    std::span<const uint32_t> edge(size_t i) const {
        return {verts_.data() + static_cast<size_t>(i) * r_, r_};
    }

    // Vertices must be distinct and < q; stored sorted ascending.
    void add_edge(std::span<const uint32_t> vertices);

    // First line "q r", then one hyperedge per line.
    std::string serialize() const;
    static UniformHypergraph parse(const std::string& text);

  private:
    uint32_t q_ = 0;
    uint32_t r_ = 0;
    std::vector<uint32_t> verts_;  // flat, r per edge
    std::unordered_multimap<uint64_t, uint32_t> edge_lookup_;  // hash -> id, dupe rejection
};

UniformHypergraph complete_uniform_hypergraph(uint32_t q, uint32_t r);

struct DegreeProfile {
    uint64_t d_min = 0;
    uint64_t d_max = 0;
    uint64_t max_codegree = 0;  // over pairs with codegree > 0
    double suggested_d = 0;     // average degree
};

DegreeProfile degree_profile(const UniformHypergraph& L);

struct PippengerVerdict {
    bool ok = true;
    std::string message;
};

// Accepts iff (1-mu)d < deg(x) < (1+mu)d for every vertex and
// deg(x,y) < mu*d for every pair; bounds are strict.
PippengerVerdict check_pippenger_conditions(const UniformHypergraph& L, double mu,
                                            double d);

struct HyperMatching {
    std::vector<uint32_t> edge_ids;
    size_t size() const { return edge_ids.size(); }
};

// Semi-random nibble: each round samples surviving hyperedges with
// probability bite_fraction / (current average degree), keeps the
// pairwise-disjoint sampled ones, removes covered vertices; a greedy
// sweep finishes the remainder, so the result is always maximal.
// beta is the caller's target slack, used only to stop the sampled
// rounds early once few vertices remain uncovered.
HyperMatching nibble_matching(const UniformHypergraph& L, double beta,
                              double bite_fraction, uint64_t seed,
                              size_t max_rounds = 200);

// Maximal matching in seed-shuffled edge order.
HyperMatching greedy_matching(const UniformHypergraph& L, uint64_t seed);

struct MatchingVerdict {
    bool ok = true;
    std::string message;
};

MatchingVerdict verify_matching(const UniformHypergraph& L, const HyperMatching& m);

}  // namespace gpack
