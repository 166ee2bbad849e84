#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpack/exact.hpp"
#include "gpack/family.hpp"
#include "gpack/graph.hpp"
#include "gpack/lp.hpp"
#include "gpack/regularity.hpp"

namespace gpack {

// Parameter cascade driving the theoretical mode. The regularity
// growth bound M and the minimum instance size N have no usable
// desk-scale values; the derived class counts make that explicit.
struct TheoreticalConstants {
    double epsilon = 0;
    bool bounded = true;   // family has finite max order
    Vertex k_infinity = 0; // meaningful when bounded
    Vertex k0 = 0;         // min(k_infinity, ceil(20/epsilon))
    double delta = 0;      // epsilon / 4
    double beta = 0;       // epsilon / 4
    double mu = 0;         // configuration input
    double zeta = 0;       // mu * delta^(k0^2) / 2
    double gamma = 0;      // configuration input
    double gamma_prime = 0;          // gamma * epsilon / (25 k0^2)
    double refinement_factor = 0;    // 25 k0^2 / epsilon
    size_t min_initial_classes = 0;  // ceil(1 / gamma_prime)
    uint64_t min_feasible_n = 0;     // every refined class nonempty

    double psi_threshold(size_t m) const;  // m^(1 - k0)
    std::string to_json() const;
};

TheoreticalConstants compute_constants(double epsilon, const Family& F,
                                       double mu_config = 0.1,
                                       double gamma_config = 0.25);

enum class PipelineMode { Theoretical, Practical };

struct PipelineConfig {
    PipelineMode mode = PipelineMode::Practical;
    double epsilon = 0.25;  // drives k0 (and everything in theoretical mode)
    double mu = 0.1;
    double gamma = 0.25;
    // Practical overrides; theoretical mode derives these instead.
    size_t m_prime = 6;
    size_t refinement_factor = 2;
    double delta = 0.2;
    double beta = 0.1;
    double zeta = 0.01;
    double bite_fraction = 0.1;
    size_t nibble_rounds = 200;
    LpMode lp_mode = LpMode::Exact;
    size_t copy_cap = kDefaultCopyCap;
    RegularityMethod method = RegularityMethod::Sampling;
    size_t samples = 200;
    bool use_regularity_partition = false;  // else equitable m_prime classes
    size_t max_classes = 64;
    double psi_threshold_override = -1;  // < 0: use m^(1 - k0)
    bool leftover_greedy = true;
    uint64_t seed = 0;  // default master seed; callers may override

    std::string to_json() const;
    static PipelineConfig from_json(const std::string& text);
};

// Color per host-graph edge; a color is a labeled pattern copy in R,
// identified by its id in the projected packing's index.
struct ColorAssignment {
    static constexpr uint32_t kUncolored = UINT32_MAX;
    std::vector<uint32_t> color_of;  // per G* edge index
};

// Keeps weight only on copies with at most k0 vertices, all in
// distinct classes of p.
FractionalPacking restrict_to_good(const FractionalPacking& psi,
                                   const VertexPartition& p, Vertex k0);

// Each G* edge in class pair (i,j) independently draws one color
// among the R-copies through R-edge (i,j), color H with probability
// psi'(H)/d(i,j), uncolored with the residual. The mass bound
// (per-edge probabilities summing to <= 1) is rechecked exactly.
ColorAssignment random_coloring(const Graph& g_star, const ReducedGraph& R,
                                const FractionalPacking& psi_prime, uint64_t seed);

// Spanning subgraph of exactly the edges colored `color`.
Graph build_color_subgraph(const Graph& g_star, const ColorAssignment& assignment,
                           uint32_t color);

struct ConcentrationReport {
    size_t edges = 0;  // |E(X_H)|
    size_t ok = 0;     // edges within the stated deviation
    double fraction_ok = 1.0;
    double max_relative_deviation = 0;  // |c_H(e) - target| / target
};

// Scores c_H(e) for every edge of X_H against t^(k-2) * psi'(H)^(r-1)
// with relative slack mu.
ConcentrationReport concentration_check(const Graph& x_h, const Graph& pattern,
                                        const std::vector<std::vector<Vertex>>& classes,
                                        const Rat& psi_prime_h, double mu, size_t t);

struct ColorDiagnostics {
    uint32_t color = 0;       // copy id in the projected index
    uint32_t pattern_id = 0;
    double psi_prime = 0;
    bool skipped = false;     // psi' at or below the threshold
    size_t edge_count = 0;    // |E(X_H)|
    double edge_target = 0;   // (1 - 2 zeta) * r * (n^2/m^2) * psi'(H)
    bool edge_target_met = false;
    ConcentrationReport concentration;
    size_t hyper_vertices = 0;
    size_t hyper_edges = 0;
    size_t matched = 0;
};

struct PipelineReport {
    PipelineMode mode = PipelineMode::Practical;
    uint64_t seed = 0;
    size_t n = 0, m_prime = 0, m = 0, t = 0;
    std::string w_psi, w_psi_good, w_psi_star, w_psi_prime;  // exact fractions
    bool projection_identity_ok = false;  // w(psi') == w(psi*) m^2/n^2
    bool reduced_load_ok = false;         // per-R-edge load <= d(i,j)
    DiscardReport discard;
    double irregular_fraction = 0;  // regularity partitioner only
    bool partition_certified = true;
    size_t colors_total = 0;
    size_t colors_used = 0;
    std::vector<ColorDiagnostics> colors;
    size_t nibble_size = 0;
    size_t leftover_size = 0;
    size_t total_size = 0;
    bool verified = false;
    std::string to_json() const;
};

struct PipelineResult {
    IntegerPacking packing;
    PipelineReport report;
};

// End-to-end run: LP, label normalization, partition + refinement,
// good-copy restriction, discarding, projection, coloring, per-color
// nibble, leftover greedy pass, verification. Throws StageError with
// the failing stage name; theoretical mode throws InfeasibleError
// when the cascade needs more vertices than G has.
PipelineResult run_pipeline(const Graph& G, const Family& F,
                            const PipelineConfig& config, uint64_t seed);

}  // namespace gpack
