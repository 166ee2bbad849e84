#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpack/pipeline.hpp"

namespace gpack {

// Integrality-gap experiment: for each (n, seed) generate a host
// graph, then run the requested solvers and tabulate normalized gaps.
struct ExperimentSpec {
    std::string model = "gnp";  // gnp only; p below
    double p = 0.5;
    std::vector<Vertex> n_list;
    std::vector<uint64_t> seeds;
    std::string family = "K3";
    LpMode lp_mode = LpMode::Exact;
    bool run_exact = true;
    size_t exact_budget = 1'000'000;
    bool run_pipeline_stage = true;
    PipelineConfig pipeline;
    size_t threads = 0;  // 0: hardware concurrency
    bool timings = false;  // keep runtime_ms at 0 for byte-stable output

    std::string to_json() const;
    static ExperimentSpec from_json(const std::string& text);
};

struct ExperimentRow {
    Vertex n = 0;
    uint64_t seed = 0;
    std::string model;
    std::string family;
    Rat nu_star = 0;
    size_t nu_exact = 0;
    SearchStatus exact_status = SearchStatus::Optimal;
    bool exact_ran = false;
    size_t greedy = 0;
    size_t pipeline = 0;
    bool pipeline_ran = false;
    uint64_t runtime_ms = 0;
};

// Rows ordered by (position of n in n_list, position of seed in
// seeds) regardless of worker scheduling.
std::vector<ExperimentRow> gap_experiment(const ExperimentSpec& spec);

// Fixed column order: n, seed, model, family, nu_star, nu_exact,
// exact_status, greedy, pipeline, gap_star_exact_over_n2,
// gap_star_pipeline_over_n2, runtime_ms.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

}  // namespace gpack
