#pragma once

#include <cstdint>
#include <vector>

#include "gpack/graph.hpp"

namespace gpack {

// Pattern-side routines; all take graphs of order <= kMaxPatternOrder and
// work by pruned search over vertex permutations.
inline constexpr Vertex kMaxPatternOrder = 10;

// All automorphisms of g, each as an image vector perm[v] = image of v.
// The identity is always present.
std::vector<std::vector<Vertex>> automorphisms(const Graph& g);

size_t automorphism_count(const Graph& g);

// Canonical form: the lexicographically smallest edge list over all
// relabelings of g. Equal canonical forms characterize isomorphism.
std::vector<Edge> canonical_form(const Graph& g);

bool are_isomorphic(const Graph& a, const Graph& b);

}  // namespace gpack
