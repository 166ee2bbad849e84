#include "gpack/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gpack/errors.hpp"

namespace gpack {

using ordered_json = nlohmann::ordered_json;

std::string ExperimentSpec::to_json() const {
    ordered_json j;
    j["model"] = model;
    j["p"] = p;
    j["n_list"] = n_list;
    j["seeds"] = seeds;
    j["family"] = family;
    j["lp_mode"] = lp_mode == LpMode::Exact ? "exact" : "float";
    j["run_exact"] = run_exact;
    j["exact_budget"] = exact_budget;
    j["run_pipeline"] = run_pipeline_stage;
    j["pipeline"] = ordered_json::parse(pipeline.to_json());
    j["threads"] = threads;
    j["timings"] = timings;
    return j.dump(2);
}

ExperimentSpec ExperimentSpec::from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("experiment spec: ") + e.what());
    }
    ExperimentSpec s;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        try {
            if (key == "model")
                s.model = it.value().get<std::string>();
            else if (key == "p")
                s.p = it.value().get<double>();
            else if (key == "n_list")
                s.n_list = it.value().get<std::vector<Vertex>>();
            else if (key == "seeds")
                s.seeds = it.value().get<std::vector<uint64_t>>();
            else if (key == "family")
                s.family = it.value().get<std::string>();
            else if (key == "lp_mode")
                s.lp_mode = it.value().get<std::string>() == "float" ? LpMode::Float
                                                                     : LpMode::Exact;
            else if (key == "run_exact")
                s.run_exact = it.value().get<bool>();
            else if (key == "exact_budget")
                s.exact_budget = it.value().get<size_t>();
            else if (key == "run_pipeline")
                s.run_pipeline_stage = it.value().get<bool>();
            else if (key == "pipeline")
                s.pipeline = PipelineConfig::from_json(it.value().dump());
            else if (key == "threads")
                s.threads = it.value().get<size_t>();
            else if (key == "timings")
                s.timings = it.value().get<bool>();
            else
                throw ParseError("experiment spec: unknown key \"" + key + "\"");
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError("experiment spec key \"" + key + "\": " + e.what());
        }
    }
    if (s.model != "gnp") throw ParseError("experiment spec: model must be \"gnp\"");
    if (s.n_list.empty() || s.seeds.empty())
        throw ParseError("experiment spec: n_list and seeds must be nonempty");
    return s;
}

std::vector<ExperimentRow> gap_experiment(const ExperimentSpec& spec) {
    Family F = parse_family_spec(spec.family);
    size_t slots = spec.n_list.size() * spec.seeds.size();
    std::vector<ExperimentRow> rows(slots);

    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            size_t slot = next.fetch_add(1);
            if (slot >= slots || failed.load()) break;
            Vertex n = spec.n_list[slot / spec.seeds.size()];
            uint64_t seed = spec.seeds[slot % spec.seeds.size()];
            try {
                auto started = std::chrono::steady_clock::now();
                ExperimentRow row;
                row.n = n;
                row.seed = seed;
                row.model = spec.model;
                row.family = F.spec_string();
                Graph G = gnp_random_graph(n, spec.p, seed);

                LpResult lp = solve_fractional_packing(G, F, spec.lp_mode);
                row.nu_star = lp.value;
                if (spec.run_exact) {
                    ExactResult ex = exact_packing(G, F, spec.exact_budget);
                    row.nu_exact = ex.size();
                    row.exact_status = ex.status;
                    row.exact_ran = true;
                }
                row.greedy = greedy_packing(G, F, seed).size();
                if (spec.run_pipeline_stage) {
                    PipelineConfig cfg = spec.pipeline;
                    cfg.lp_mode = spec.lp_mode;
                    row.pipeline = run_pipeline(G, F, cfg, seed).packing.size();
                    row.pipeline_ran = true;
                }
                if (spec.timings)
                    row.runtime_ms = static_cast<uint64_t>(
                        std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - started)
                            .count());
                rows[slot] = std::move(row);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true))
                    first_error = "n=" + std::to_string(n) +
                                  " seed=" + std::to_string(seed) + ": " + e.what();
            }
        }
    };

    size_t workers = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min(workers, slots);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t i = 0; i < workers; ++i) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }
    if (failed.load()) throw Error("experiment failed at " + first_error);
    return rows;
}

namespace {

std::string format_gap(const Rat& nu_star, size_t other, Vertex n) {
    Rat gap = (nu_star - Rat(static_cast<unsigned long>(other))) /
              (Rat(static_cast<unsigned long>(n)) * Rat(static_cast<unsigned long>(n)));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", rat_to_double(gap));
    return buf;
}

}  // namespace

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    out << "n,seed,model,family,nu_star,nu_exact,exact_status,greedy,pipeline,"
           "gap_star_exact_over_n2,gap_star_pipeline_over_n2,runtime_ms\n";
    for (const ExperimentRow& r : rows) {
        out << static_cast<size_t>(r.n) << ',' << r.seed << ',' << r.model << ','
            << r.family << ',' << rat_str(r.nu_star) << ',';
        if (r.exact_ran)
            out << r.nu_exact << ','
                << (r.exact_status == SearchStatus::Optimal ? "optimal" : "lower-bound");
        else
            out << ",skipped";
        out << ',' << r.greedy << ',';
        if (r.pipeline_ran) out << r.pipeline;
        out << ',';
        if (r.exact_ran) out << format_gap(r.nu_star, r.nu_exact, r.n);
        out << ',';
        if (r.pipeline_ran) out << format_gap(r.nu_star, r.pipeline, r.n);
        out << ',' << r.runtime_ms << '\n';
    }
    return out.str();
}

}  // namespace gpack
