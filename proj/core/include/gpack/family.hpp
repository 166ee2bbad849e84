#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpack/graph.hpp"

namespace gpack {

// A family of pattern graphs. Members must be pairwise non-isomorphic,
// have no isolated vertices, and each must have at least 3 vertices or
// at least 2 edges; the single-edge pattern K2 is rejected because
// packing it is ordinary matching and the reduction pipeline assumes
// every member contributes at least two edges per copy.
class Family {
  public:
    // Bounded family: max member order k_infinity is finite.
    static Family of(std::vector<Graph> members, std::vector<std::string> names);
    // Marks the family as a finite stand-in for an unbounded one: the
    // theoretical constants then use the unbounded branch.
    static Family of_unbounded(std::vector<Graph> members, std::vector<std::string> names);

    size_t size() const { return members_.size(); }
    const Graph& member(size_t i) const { return members_[i]; }
    const std::string& name(size_t i) const { return names_[i]; }
    const std::vector<Graph>& members() const { return members_; }
    bool bounded() const { return bounded_; }

    // Largest member order (k_infinity for bounded families).
    Vertex max_order() const;
    // Smallest member edge count; used for packing upper bounds.
    size_t min_edges() const;

    // Comma-separated member names, e.g. "K3,C5".
    std::string spec_string() const;

  private:
    Family() = default;
    std::vector<Graph> members_;
    std::vector<std::string> names_;
    bool bounded_ = true;
};

// Parses a comma-separated spec. Each item is a named pattern (K3, C5,
// P4, S4) or name:path where path holds a graph file; the loaded graph
// must satisfy the family member rules.
Family parse_family_spec(const std::string& spec);

}  // namespace gpack
