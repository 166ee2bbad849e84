// Command line surface: solve, pack, run the pipeline, run experiments,
// verify artifacts. Exit codes: 0 ok, 1 verification failure, 2 usage,
// 3 budget or cap exhausted.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpack/experiment.hpp"
#include "gpack/pipeline.hpp"

using namespace gpack;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "gpack 0.1.0";

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Every emitted result embeds this; identical manifests imply
// byte-identical results, which is why wall_ms stays 0 unless the
// caller opts into timings.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::string config_hash;
    uint64_t seed = 0;
    std::string version = kVersion;
    uint64_t wall_ms = 0;

    std::string comment_block() const {
        std::ostringstream out;
        out << "# " << version << "\n# command: " << command << "\n# inputs:";
        for (const std::string& in : inputs) out << ' ' << in;
        out << "\n# config-hash: " << config_hash << "\n# seed: " << seed
            << "\n# wall-ms: " << wall_ms << '\n';
        return out.str();
    }
    ordered_json json() const {
        ordered_json j;
        j["version"] = version;
        j["command"] = command;
        j["inputs"] = inputs;
        j["config_hash"] = config_hash;
        j["seed"] = seed;
        j["wall_ms"] = wall_ms;
        return j;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    out << content;
}

uint64_t resolve_seed(CLI::Option* opt, uint64_t value) {
    if (opt->count()) return value;
    std::random_device rd;
    uint64_t drawn = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed drawn: " << drawn << '\n';
    return drawn;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    uint64_t ms() const {
        return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                         std::chrono::steady_clock::now() - start)
                                         .count());
    }
};

int run(int argc, char** argv) {
    CLI::App app{"graph packing toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string graph_path, family_spec = "K3", out_path, report_path, json_path,
                config_path, packing_path, spec_path;
    bool use_float = false, timings = false;
    size_t budget = 1'000'000, copy_cap = kDefaultCopyCap;
    uint64_t seed = 0;

    CLI::App* nu_star = app.add_subcommand("nu-star", "fractional packing number");
    nu_star->add_option("graph", graph_path, "host graph file")->required();
    nu_star->add_option("--family", family_spec, "family spec, e.g. K3,C5");
    nu_star->add_flag("--float", use_float, "float simplex with exact repair");
    nu_star->add_option("--json", json_path, "also write the LP result as JSON");
    nu_star->add_option("--copy-cap", copy_cap, "abort above this many copies");
    CLI::Option* star_seed = nu_star->add_option("--seed", seed, "master seed");
    nu_star->add_flag("--timings", timings, "record wall time in the manifest");

    CLI::App* nu_exact = app.add_subcommand("nu-exact", "integer packing number");
    nu_exact->add_option("graph", graph_path, "host graph file")->required();
    nu_exact->add_option("--family", family_spec, "family spec");
    nu_exact->add_option("--budget", budget, "branch-and-bound node budget");
    nu_exact->add_option("--out", out_path, "write the packing to this file");
    nu_exact->add_option("--copy-cap", copy_cap, "abort above this many copies");
    CLI::Option* exact_seed = nu_exact->add_option("--seed", seed, "master seed");
    nu_exact->add_flag("--timings", timings, "record wall time in the manifest");

    CLI::App* pipeline = app.add_subcommand("pipeline", "randomized packing pipeline");
    pipeline->add_option("graph", graph_path, "host graph file")->required();
    pipeline->add_option("--family", family_spec, "family spec");
    pipeline->add_option("--config", config_path, "pipeline config JSON");
    pipeline->add_option("--out", out_path, "write the packing to this file");
    pipeline->add_option("--report", report_path, "write the stage report JSON");
    CLI::Option* pipe_seed = pipeline->add_option("--seed", seed, "master seed");
    pipeline->add_flag("--timings", timings, "record wall time in the manifest");

    CLI::App* verify = app.add_subcommand("verify", "check a packing file");
    verify->add_option("graph", graph_path, "host graph file")->required();
    verify->add_option("packing", packing_path, "packing file")->required();
    verify->add_option("--family", family_spec, "family spec");

    CLI::App* experiment = app.add_subcommand("experiment", "integrality gap experiment");
    experiment->add_option("spec", spec_path, "experiment spec JSON")->required();
    experiment->add_option("--out", out_path, "write the CSV to this file");
    experiment->add_flag("--timings", timings, "per-row wall times in the CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    Timer timer;

    if (nu_star->parsed()) {
        Graph G = Graph::load(graph_path);
        Family F = parse_family_spec(family_spec);
        LpMode mode = use_float ? LpMode::Float : LpMode::Exact;
        LpResult lp = solve_fractional_packing(G, F, mode, copy_cap);

        RunManifest m;
        m.command = "nu-star";
        m.inputs = {graph_path};
        m.config_hash = hex64(fnv1a(F.spec_string() + "|" +
                                    (use_float ? "float" : "exact") + "|" +
                                    std::to_string(copy_cap)));
        m.seed = resolve_seed(star_seed, seed);
        if (timings) m.wall_ms = timer.ms();
        std::ostringstream out;
        out << m.comment_block();
        out << "nu_star = " << rat_str(lp.value) << '\n';
        out << "approx = " << lp.value_double << '\n';
        out << "mode = " << (lp.mode == LpMode::Exact ? "exact" : "float") << '\n';
        out << "iterations = " << lp.iterations << '\n';
        std::cout << out.str();
        if (!json_path.empty()) {
            ordered_json j = ordered_json::parse(lp_result_json(lp));
            j["manifest"] = m.json();
            spill(json_path, j.dump(2) + "\n");
        }
        return 0;
    }

    if (nu_exact->parsed()) {
        Graph G = Graph::load(graph_path);
        Family F = parse_family_spec(family_spec);
        ExactResult ex = exact_packing(G, F, budget, copy_cap);

        RunManifest m;
        m.command = "nu-exact";
        m.inputs = {graph_path};
        m.config_hash = hex64(fnv1a(F.spec_string() + "|" + std::to_string(budget) +
                                    "|" + std::to_string(copy_cap)));
        m.seed = resolve_seed(exact_seed, seed);
        if (timings) m.wall_ms = timer.ms();
        std::ostringstream out;
        out << m.comment_block();
        out << "nu_exact = " << ex.size() << '\n';
        out << "status = "
            << (ex.status == SearchStatus::Optimal ? "optimal" : "lower-bound") << '\n';
        out << "nodes = " << ex.nodes << '\n';
        std::cout << out.str();
        if (!out_path.empty())
            spill(out_path, m.comment_block() + packing_to_text(ex.packing));
        return 0;
    }

    if (pipeline->parsed()) {
        Graph G = Graph::load(graph_path);
        Family F = parse_family_spec(family_spec);
        PipelineConfig cfg;
        std::string cfg_text = "{}";
        if (!config_path.empty()) {
            cfg_text = slurp(config_path);
            cfg = PipelineConfig::from_json(cfg_text);
        }
        uint64_t master;
        if (pipe_seed->count())
            master = seed;
        else if (cfg.seed != 0)
            master = cfg.seed;
        else
            master = resolve_seed(pipe_seed, seed);

        PipelineResult result = run_pipeline(G, F, cfg, master);

        RunManifest m;
        m.command = "pipeline";
        m.inputs = {graph_path};
        if (!config_path.empty()) m.inputs.push_back(config_path);
        m.config_hash = hex64(fnv1a(F.spec_string() + "|" + cfg.to_json()));
        m.seed = master;
        if (timings) m.wall_ms = timer.ms();
        std::ostringstream out;
        out << m.comment_block();
        out << "packing = " << result.report.total_size << '\n';
        out << "nibble = " << result.report.nibble_size << '\n';
        out << "leftover = " << result.report.leftover_size << '\n';
        out << "verified = " << (result.report.verified ? "yes" : "no") << '\n';
        std::cout << out.str();
        if (!out_path.empty())
            spill(out_path, m.comment_block() + packing_to_text(result.packing));
        if (!report_path.empty()) {
            ordered_json j = ordered_json::parse(result.report.to_json());
            j["manifest"] = m.json();
            spill(report_path, j.dump(2) + "\n");
        }
        return 0;
    }

    if (verify->parsed()) {
        Graph G = Graph::load(graph_path);
        Family F = parse_family_spec(family_spec);
        IntegerPacking p = packing_from_text(slurp(packing_path));
        PackingVerdict v = verify_integer_packing(G, F, p);
        if (v.ok) {
            std::cout << "ok: " << p.size() << " copies, pairwise edge-disjoint\n";
            return 0;
        }
        std::cout << "invalid: " << v.message << '\n';
        return 1;
    }

    if (experiment->parsed()) {
        std::string spec_text = slurp(spec_path);
        ExperimentSpec spec = ExperimentSpec::from_json(spec_text);
        if (timings) spec.timings = true;
        std::vector<ExperimentRow> rows = gap_experiment(spec);

        RunManifest m;
        m.command = "experiment";
        m.inputs = {spec_path};
        m.config_hash = hex64(fnv1a(spec.to_json()));
        m.seed = spec.seeds.empty() ? 0 : spec.seeds.front();
        if (spec.timings) m.wall_ms = timer.ms();
        std::string csv = m.comment_block() + experiment_csv(rows);
        std::cout << csv;
        if (!out_path.empty()) spill(out_path, csv);
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return 3;
    } catch (const StageError& e) {
        std::cerr << "stage " << e.stage() << ": " << e.what() << '\n';
        return 1;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse: " << e.what() << '\n';
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
