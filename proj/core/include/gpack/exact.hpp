#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpack/copies.hpp"
#include "gpack/family.hpp"
#include "gpack/graph.hpp"

namespace gpack {

// Self-contained copy record: verifiable against a host graph and a
// family without the enumeration index that produced it.
struct PackedCopy {
    uint32_t pattern_id = 0;
    std::vector<Vertex> vertices;  // pattern-vertex order
    friend bool operator==(const PackedCopy&, const PackedCopy&) = default;
};

struct IntegerPacking {
    std::vector<PackedCopy> copies;
    size_t size() const { return copies.size(); }
};

enum class SearchStatus { Optimal, LowerBound };

struct ExactResult {
    IntegerPacking packing;
    SearchStatus status = SearchStatus::Optimal;
    size_t nodes = 0;  // branch-and-bound nodes explored
    size_t size() const { return packing.size(); }
};

// Branch-and-bound over copies ordered by (edge count descending,
// canonical id). Returns Optimal with the packing number when the
// search completes within `budget` nodes, else LowerBound with the
// best packing found. Deterministic; no seed involved.
ExactResult exact_packing(const Graph& G, const Family& F, size_t budget = 1'000'000,
                          size_t cap = kDefaultCopyCap);

// Maximal packing built by repeatedly taking a uniformly random copy
// disjoint from the current selection.
IntegerPacking greedy_packing(const Graph& G, const Family& F, uint64_t seed,
                              size_t cap = kDefaultCopyCap);

struct PackingVerdict {
    bool ok = true;
    std::string message;  // first conflict found
};

// Accepts iff every copy is an injective edge-preserving placement of
// its family member in G and all copies are pairwise edge-disjoint.
PackingVerdict verify_integer_packing(const Graph& G, const Family& F,
                                      const IntegerPacking& p);

// One line per copy: "pattern_id: v1 v2 ... vk".
std::string packing_to_text(const IntegerPacking& p);
IntegerPacking packing_from_text(const std::string& text);

}  // namespace gpack
