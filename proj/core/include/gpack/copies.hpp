#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gpack/family.hpp"
#include "gpack/graph.hpp"

namespace gpack {

// Hard ceiling on stored copies; dense hosts can exceed it, in which
// case enumeration stops and the index is flagged capped.
inline constexpr size_t kDefaultCopyCap = 10'000'000;

enum class CopyKind {
    Unlabeled,  // one canonical tuple per vertex-set copy
    Labeled,    // every injective role assignment listed
    Partite,    // labeled, vertex i drawn from class i
};

// Immutable store of pattern copies in a host graph plus a CSR index
// from host edges to the copies using them.
class CopyIndex {
  public:
    CopyIndex() = default;

    static CopyIndex from_parts(std::shared_ptr<const Graph> host,
                                std::vector<Graph> patterns, CopyKind kind,
                                std::vector<uint32_t> pattern_ids,
                                std::vector<Vertex> flat_vertices,
                                std::vector<uint64_t> offsets, bool capped);

    size_t copy_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    CopyKind kind() const { return kind_; }
    bool capped() const { return capped_; }
    const Graph& host() const { return *host_; }
    std::shared_ptr<const Graph> host_ptr() const { return host_; }
    const std::vector<Graph>& patterns() const { return patterns_; }

    uint32_t pattern_id(size_t c) const { return pattern_ids_[c]; }
    const Graph& pattern_of(size_t c) const { return patterns_[pattern_ids_[c]]; }
    size_t copy_order(size_t c) const { return offsets_[c + 1] - offsets_[c]; }
    std::span<const Vertex> copy_vertices(size_t c) const {
        return {vertices_.data() + offsets_[c], copy_order(c)};
    }
    // Host edge indices used by copy c, in pattern-edge order.
    std::vector<size_t> copy_edges(size_t c) const;

    // Copy ids through host edge e (index into host().edges()).
    std::span<const uint32_t> copies_through_edge(size_t edge_idx) const {
        return {per_edge_copies_.data() + per_edge_offsets_[edge_idx],
                per_edge_offsets_[edge_idx + 1] - per_edge_offsets_[edge_idx]};
    }
    std::span<const uint32_t> copies_through_edge(Edge e) const;

  private:
    std::shared_ptr<const Graph> host_;
    std::vector<Graph> patterns_;
    CopyKind kind_ = CopyKind::Unlabeled;
    bool capped_ = false;
    std::vector<uint32_t> pattern_ids_;
    std::vector<Vertex> vertices_;       // flat copy tuples
    std::vector<uint64_t> offsets_;      // copy_count + 1 entries
    std::vector<uint64_t> per_edge_offsets_;
    std::vector<uint32_t> per_edge_copies_;
    void build_edge_index();
};

// One canonical representative per unlabeled copy of each family member.
CopyIndex enumerate_unlabeled_copies(std::shared_ptr<const Graph> host, const Family& F,
                                     size_t cap = kDefaultCopyCap);
CopyIndex enumerate_unlabeled_copies(std::shared_ptr<const Graph> host,
                                     const Graph& pattern, size_t cap = kDefaultCopyCap);

// Every labeled copy (injective, edge-preserving role assignment).
CopyIndex enumerate_labeled_copies(std::shared_ptr<const Graph> host, const Family& F,
                                   size_t cap = kDefaultCopyCap);
CopyIndex enumerate_labeled_copies(std::shared_ptr<const Graph> host,
                                   const std::vector<Graph>& patterns,
                                   size_t cap = kDefaultCopyCap);

// Expands each unlabeled copy into its |Aut(pattern)| labeled versions.
CopyIndex expand_to_labeled(const CopyIndex& unlabeled);

// Tuples (v_1..v_k) with v_i in classes[i-1] and every pattern edge
// present in the host; only pattern-edge pairs are inspected.
CopyIndex enumerate_partite_copies(std::shared_ptr<const Graph> host, const Graph& pattern,
                                   const std::vector<std::vector<Vertex>>& classes,
                                   size_t cap = kDefaultCopyCap);

// Streaming form of the above for counting jobs too large to store.
// fn receives each tuple as a span valid only during the call.
void for_each_partite_copy(const Graph& host, const Graph& pattern,
                           const std::vector<std::vector<Vertex>>& classes,
                           const std::function<void(std::span<const Vertex>)>& fn);

// Text fixture format, one line per copy: "pattern_id: v1 v2 ... vk".
std::string dump_copies(const CopyIndex& index);

}  // namespace gpack
