#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gpack/graph.hpp"
#include "gpack/packing.hpp"
#include "gpack/partition.hpp"

namespace gpack {

enum class RegularityMethod { Sampling, DegreeCodegree };

struct PairVerdict {
    size_t i = 0, j = 0;   // class indices, i < j
    Rat density = 0;       // exact d(Vi, Vj)
    bool regular = true;
    RegularityMethod method = RegularityMethod::Sampling;
    // Witness subsets violating regularity, present only when found:
    // |X| > gamma|Vi|, |Y| > gamma|Vj|, |d(X,Y) - d(Vi,Vj)| >= gamma.
    std::vector<Vertex> witness_x, witness_y;
    bool has_witness() const { return !witness_x.empty(); }
};

// Sampling: tests `samples` random subset pairs at the threshold size
// and reports the first violating pair as witness; a regular verdict
// is one-sided (no violation found, not a proof). DegreeCodegree:
// reports regular only when the degree/codegree deviation certificate
// proves it, and never produces a witness.
PairVerdict check_regular_pair(const Graph& G, const std::vector<Vertex>& A,
                               const std::vector<Vertex>& B, double gamma,
                               RegularityMethod method, uint64_t seed,
                               size_t samples = 200);

struct PartitionVerdict {
    double irregular_fraction = 0;  // judged-irregular pairs / total pairs
    bool certified = false;         // irregular_fraction <= gamma reached
    size_t rounds = 0;
};

// Iterative-refinement heuristic: start equitable with ceil(1/gamma)
// classes, split classes along irregularity witnesses, stop once at
// most a gamma fraction of pairs is judged irregular or the class
// budget is exhausted (then certified = false).
std::pair<VertexPartition, PartitionVerdict> regularity_partition(const Graph& G,
                                                                  double gamma,
                                                                  size_t max_classes,
                                                                  uint64_t seed);

// One verdict per unordered class pair, computed once and shared by
// the discarding and reduced-graph stages so both see the same calls.
class PairAssessment {
  public:
    PairAssessment() = default;
    PairAssessment(size_t classes, double gamma, std::vector<PairVerdict> verdicts);
    const PairVerdict& verdict(size_t i, size_t j) const;
    size_t class_count() const { return classes_; }
    double gamma() const { return gamma_; }
    std::string to_csv() const;  // i, j, density, regular, method

  private:
    size_t classes_ = 0;
    double gamma_ = 0;
    std::vector<PairVerdict> verdicts_;  // packed upper triangle
};

PairAssessment assess_regular_pairs(const Graph& G, const VertexPartition& p,
                                    double gamma, RegularityMethod method,
                                    uint64_t seed, size_t samples = 200);

struct DiscardReport {
    size_t internal = 0;   // edges inside a class
    size_t irregular = 0;  // edges of pairs judged irregular
    size_t sparse = 0;     // edges of regular pairs with density < delta
    size_t discarded = 0;
    size_t kept = 0;
    double bound = 0;  // diagnostic reference value 0.72 * delta * n^2
    bool within_bound = false;
    std::string to_json() const;
};

// G* keeps exactly the cross edges of pairs judged regular with
// density >= delta.
std::pair<Graph, DiscardReport> discard_edges(const Graph& G, const VertexPartition& p,
                                              const PairAssessment& a, double delta);

// m-vertex summary graph: edge (i,j) iff the pair was judged regular
// with density >= delta; densities stored exactly.
struct ReducedGraph {
    Graph base;
    std::vector<Rat> densities;  // per base edge index
    VertexPartition partition;
    double gamma = 0;
    double delta = 0;
    const Rat& density_of(size_t i, size_t j) const;
};

ReducedGraph build_reduced_graph(const VertexPartition& p, const PairAssessment& a,
                                 double delta);

// psi' over labeled copies in R: each R-copy collects the psi* weight
// of the partite copies in its class tuple, divided by n^2/m^2. The
// input must be labeled and supported on good copies of distinct
// classes. Guarantees per-R-edge load <= d(i,j) when the source loads
// were legal on full class pairs; the verdict below rechecks exactly.
FractionalPacking project_packing_to_reduced(const FractionalPacking& psi_star,
                                             const VertexPartition& p,
                                             const ReducedGraph& R);

struct ReducedLoadVerdict {
    bool ok = true;
    size_t worst_edge = 0;  // R edge index
    Rat load = 0;
    Rat bound = 0;  // d(i,j) of that edge
};

ReducedLoadVerdict verify_reduced_load(const FractionalPacking& psi_prime,
                                       const ReducedGraph& R);

struct CountingReport {
    size_t edges_total = 0;  // cross edges on pattern-edge pairs
    size_t edges_ok = 0;
    double fraction_ok = 0;
    double max_relative_deviation = 0;  // |c(e) - expected| / t^(k-2)
    bool survives = false;              // fraction_ok >= 1 - zeta
    std::vector<size_t> edge_indices;   // host edge ids inspected
    std::vector<uint64_t> counts;       // c(e) per inspected edge
    std::vector<double> expected;       // target per inspected edge
    std::string to_json() const;
};

// Counts partite copies through every cross edge of pattern-edge
// pairs (streaming, nothing stored per copy) and scores them against
// t^(k-2) * prod d(s,p) / d(i,j) with slack zeta * t^(k-2). Classes
// must have equal size; pattern-edge pairs must have density >= delta.
CountingReport counting_lemma_check(const Graph& W, const Graph& pattern,
                                    const std::vector<std::vector<Vertex>>& classes,
                                    double zeta, double delta);

}  // namespace gpack
