#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpack/graph.hpp"

namespace gpack {

enum class PartitionOrigin { Equitable, Refined, Regularized };

// Partition of {0..n-1} into nonempty classes. Class sizes differ by at
// most one for equitable partitions; refinement preserves the nesting of
// old classes into new ones.
class VertexPartition {
  public:
    VertexPartition() = default;
    VertexPartition(Vertex n, std::vector<std::vector<Vertex>> classes,
                    PartitionOrigin origin);

    Vertex order() const { return n_; }
    size_t class_count() const { return classes_.size(); }
    const std::vector<Vertex>& class_members(size_t i) const { return classes_[i]; }
    const std::vector<std::vector<Vertex>>& classes() const { return classes_; }
    size_t class_of(Vertex v) const { return class_of_[v]; }
    PartitionOrigin origin() const { return origin_; }

    // JSON array of arrays of vertex ids, classes in index order.
    std::string to_json() const;
    static VertexPartition from_json(const std::string& text, Vertex n,
                                     PartitionOrigin origin);

  private:
    Vertex n_ = 0;
    std::vector<std::vector<Vertex>> classes_;
    std::vector<size_t> class_of_;
    PartitionOrigin origin_ = PartitionOrigin::Equitable;
};

// Random equitable partition into m classes; sizes are floor(n/m) or
// ceil(n/m). Vertices are shuffled with the seed-derived stream.
VertexPartition equitable_partition(Vertex n, size_t m, uint64_t seed);

// Splits every class into `factor` near-equal parts (each part nonempty),
// shuffling within each class with an independent per-class stream.
VertexPartition refine_partition(const VertexPartition& p, size_t factor, uint64_t seed);

}  // namespace gpack
