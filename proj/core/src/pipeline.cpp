#include "gpack/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "gpack/errors.hpp"
#include "gpack/hypergraph.hpp"
#include "gpack/rng.hpp"

namespace gpack {

using ordered_json = nlohmann::ordered_json;

double TheoreticalConstants::psi_threshold(size_t m) const {
    return std::pow(static_cast<double>(m), 1.0 - static_cast<double>(k0));
}

std::string TheoreticalConstants::to_json() const {
    ordered_json j;
    j["epsilon"] = epsilon;
    j["bounded"] = bounded;
    if (bounded) j["k_infinity"] = k_infinity;
    j["k0"] = k0;
    j["delta"] = delta;
    j["beta"] = beta;
    j["mu"] = mu;
    j["zeta"] = zeta;
    j["gamma"] = gamma;
    j["gamma_prime"] = gamma_prime;
    j["refinement_factor"] = refinement_factor;
    j["min_initial_classes"] = min_initial_classes;
    j["min_feasible_n"] = min_feasible_n;
    // The regularity growth bound and the minimum instance size of the
    // guarantee have no closed form; desk inputs cannot satisfy them.
    j["non_constructive"] = {"M(gamma_prime)", "N"};
    return j.dump();
}

TheoreticalConstants compute_constants(double epsilon, const Family& F,
                                       double mu_config, double gamma_config) {
    if (!(epsilon > 0) || !(epsilon < 1))
        throw ArgumentError("epsilon must lie strictly between 0 and 1");
    if (!(mu_config > 0) || !(gamma_config > 0) || !(gamma_config < 1))
        throw ArgumentError("mu must be positive and gamma in (0,1)");
    TheoreticalConstants c;
    c.epsilon = epsilon;
    c.bounded = F.bounded();
    c.k_infinity = F.max_order();
    auto ceil_ratio = static_cast<Vertex>(std::ceil(20.0 / epsilon));
    c.k0 = c.bounded ? std::min(c.k_infinity, ceil_ratio) : ceil_ratio;
    c.delta = epsilon / 4;
    c.beta = epsilon / 4;
    c.mu = mu_config;
    double k0_sq = static_cast<double>(c.k0) * static_cast<double>(c.k0);
    c.zeta = mu_config * std::pow(c.delta, k0_sq) / 2;
    c.gamma = gamma_config;
    c.refinement_factor = 25 * k0_sq / epsilon;
    c.gamma_prime = gamma_config * epsilon / (25 * k0_sq);
    c.min_initial_classes = static_cast<size_t>(std::ceil(1.0 / c.gamma_prime));
    c.min_feasible_n = static_cast<uint64_t>(c.min_initial_classes) *
                       static_cast<uint64_t>(std::ceil(c.refinement_factor));
    return c;
}

namespace {

PipelineMode mode_from_string(const std::string& s) {
    if (s == "theoretical") return PipelineMode::Theoretical;
    if (s == "practical") return PipelineMode::Practical;
    throw ParseError("unknown pipeline mode \"" + s + "\"");
}

std::string mode_to_string(PipelineMode m) {
    return m == PipelineMode::Theoretical ? "theoretical" : "practical";
}

}  // namespace

std::string PipelineConfig::to_json() const {
    ordered_json j;
    j["mode"] = mode_to_string(mode);
    j["epsilon"] = epsilon;
    j["mu"] = mu;
    j["gamma"] = gamma;
    j["m_prime"] = m_prime;
    j["refinement_factor"] = refinement_factor;
    j["delta"] = delta;
    j["beta"] = beta;
    j["zeta"] = zeta;
    j["bite_fraction"] = bite_fraction;
    j["nibble_rounds"] = nibble_rounds;
    j["lp_mode"] = lp_mode == LpMode::Exact ? "exact" : "float";
    j["copy_cap"] = copy_cap;
    j["method"] = method == RegularityMethod::Sampling ? "sampling" : "degree-codegree";
    j["samples"] = samples;
    j["use_regularity_partition"] = use_regularity_partition;
    j["max_classes"] = max_classes;
    j["psi_threshold_override"] = psi_threshold_override;
    j["leftover_greedy"] = leftover_greedy;
    j["seed"] = seed;
    return j.dump();
}

PipelineConfig PipelineConfig::from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("pipeline config: ") + e.what());
    }
    PipelineConfig c;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        try {
            if (key == "mode")
                c.mode = mode_from_string(it.value().get<std::string>());
            else if (key == "epsilon")
                c.epsilon = it.value().get<double>();
            else if (key == "mu")
                c.mu = it.value().get<double>();
            else if (key == "gamma")
                c.gamma = it.value().get<double>();
            else if (key == "m_prime")
                c.m_prime = it.value().get<size_t>();
            else if (key == "refinement_factor")
                c.refinement_factor = it.value().get<size_t>();
            else if (key == "delta")
                c.delta = it.value().get<double>();
            else if (key == "beta")
                c.beta = it.value().get<double>();
            else if (key == "zeta")
                c.zeta = it.value().get<double>();
            else if (key == "bite_fraction")
                c.bite_fraction = it.value().get<double>();
            else if (key == "nibble_rounds")
                c.nibble_rounds = it.value().get<size_t>();
            else if (key == "lp_mode")
                c.lp_mode = it.value().get<std::string>() == "float" ? LpMode::Float
                                                                     : LpMode::Exact;
            else if (key == "copy_cap")
                c.copy_cap = it.value().get<size_t>();
            else if (key == "method")
                c.method = it.value().get<std::string>() == "degree-codegree"
                               ? RegularityMethod::DegreeCodegree
                               : RegularityMethod::Sampling;
            else if (key == "samples")
                c.samples = it.value().get<size_t>();
            else if (key == "use_regularity_partition")
                c.use_regularity_partition = it.value().get<bool>();
            else if (key == "max_classes")
                c.max_classes = it.value().get<size_t>();
            else if (key == "psi_threshold_override")
                c.psi_threshold_override = it.value().get<double>();
            else if (key == "leftover_greedy")
                c.leftover_greedy = it.value().get<bool>();
            else if (key == "seed")
                c.seed = it.value().get<uint64_t>();
            else
                throw ParseError("pipeline config: unknown key \"" + key + "\"");
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError("pipeline config key \"" + key + "\": " + e.what());
        }
    }
    return c;
}

FractionalPacking restrict_to_good(const FractionalPacking& psi,
                                   const VertexPartition& p, Vertex k0) {
    const CopyIndex& idx = psi.index();
    if (idx.kind() != CopyKind::Labeled)
        throw ArgumentError("good-copy restriction expects a labeled packing");
    return restrict_packing(psi, [&](size_t c) {
        auto tuple = idx.copy_vertices(c);
        if (tuple.size() > k0) return false;
        std::vector<size_t> cls;
        cls.reserve(tuple.size());
        for (Vertex v : tuple) cls.push_back(p.class_of(v));
        std::sort(cls.begin(), cls.end());
        return std::adjacent_find(cls.begin(), cls.end()) == cls.end();
    });
}

ColorAssignment random_coloring(const Graph& g_star, const ReducedGraph& R,
                                const FractionalPacking& psi_prime, uint64_t seed) {
    const CopyIndex& idx = psi_prime.index();
    if (idx.host().order() != R.base.order() || idx.host().size() != R.base.size())
        throw ArgumentError("projected packing does not live on the reduced graph");
    const VertexPartition& p = R.partition;
    if (p.order() != g_star.order())
        throw ArgumentError("reduced graph partition does not match the host");

    // Exact mass precondition per reduced edge: sum of probabilities
    // psi'(H)/d(i,j) over copies through (i,j) is at most one.
    std::vector<Rat> load(R.base.size());
    for (size_t e = 0; e < R.base.size(); ++e) {
        load[e] = psi_prime.edge_load(e);
        if (load[e] > R.densities[e]) {
            Edge re = R.base.edges()[e];
            throw StageError("coloring", "probability mass on reduced edge (" +
                                             std::to_string(re.u) + "," +
                                             std::to_string(re.v) + ") is " +
                                             rat_str(load[e]) + " > density " +
                                             rat_str(R.densities[e]));
        }
    }

    Rng rng(mix_seed(seed, Stream::Coloring));
    ColorAssignment out;
    out.color_of.assign(g_star.size(), ColorAssignment::kUncolored);
    for (size_t e = 0; e < g_star.size(); ++e) {
        Edge edge = g_star.edges()[e];
        size_t ci = p.class_of(edge.u), cj = p.class_of(edge.v);
        size_t re = R.base.edge_index(static_cast<Vertex>(ci), static_cast<Vertex>(cj));
        if (re == SIZE_MAX)
            throw StageError("coloring",
                             "edge survives between classes without a reduced edge");
        auto colors = idx.copies_through_edge(re);
        if (colors.empty()) continue;
        // Choose color t iff u * d(i,j) lands inside t's weight slot;
        // u is dyadic so the comparison is exact.
        Rat u = rat_from_double(rng.unit()) * R.densities[re];
        Rat acc = 0;
        for (uint32_t c : colors) {
            acc += psi_prime.weight(c);
            if (u < acc) {
                out.color_of[e] = c;
                break;
            }
        }
    }
    return out;
}

Graph build_color_subgraph(const Graph& g_star, const ColorAssignment& assignment,
                           uint32_t color) {
    if (assignment.color_of.size() != g_star.size())
        throw ArgumentError("color assignment does not match the graph");
    return g_star.filter_edges([&](size_t e) { return assignment.color_of[e] == color; });
}

ConcentrationReport concentration_check(const Graph& x_h, const Graph& pattern,
                                        const std::vector<std::vector<Vertex>>& classes,
                                        const Rat& psi_prime_h, double mu, size_t t) {
    ConcentrationReport report;
    report.edges = 0;
    size_t k = pattern.order(), r = pattern.size();
    double t_pow = std::pow(static_cast<double>(t), static_cast<double>(k) - 2.0);
    double target = t_pow * std::pow(rat_to_double(psi_prime_h),
                                     static_cast<double>(r) - 1.0);

    std::vector<uint64_t> counts(x_h.size(), 0);
    for_each_partite_copy(x_h, pattern, classes, [&](std::span<const Vertex> tuple) {
        for (const Edge& pe : pattern.edges())
            ++counts[x_h.edge_index(tuple[pe.u], tuple[pe.v])];
    });
    report.edges = x_h.size();
    if (report.edges == 0 || target <= 0) {
        report.ok = report.edges;
        report.fraction_ok = 1.0;
        return report;
    }
    for (size_t e = 0; e < x_h.size(); ++e) {
        double dev = std::fabs(static_cast<double>(counts[e]) - target);
        if (dev < mu * target) ++report.ok;
        report.max_relative_deviation =
            std::max(report.max_relative_deviation, dev / target);
    }
    report.fraction_ok =
        static_cast<double>(report.ok) / static_cast<double>(report.edges);
    return report;
}

std::string PipelineReport::to_json() const {
    ordered_json j;
    j["mode"] = mode_to_string(mode);
    j["seed"] = seed;
    j["n"] = n;
    j["m_prime"] = m_prime;
    j["m"] = m;
    j["t"] = t;
    j["w_psi"] = w_psi;
    j["w_psi_good"] = w_psi_good;
    j["w_psi_star"] = w_psi_star;
    j["w_psi_prime"] = w_psi_prime;
    j["projection_identity_ok"] = projection_identity_ok;
    j["reduced_load_ok"] = reduced_load_ok;
    j["discard"] = ordered_json::parse(discard.to_json());
    j["irregular_fraction"] = irregular_fraction;
    j["partition_certified"] = partition_certified;
    j["colors_total"] = colors_total;
    j["colors_used"] = colors_used;
    ordered_json colors_json = ordered_json::array();
    for (const ColorDiagnostics& c : colors) {
        ordered_json cj;
        cj["color"] = c.color;
        cj["pattern"] = c.pattern_id;
        cj["psi_prime"] = c.psi_prime;
        cj["skipped"] = c.skipped;
        cj["edges"] = c.edge_count;
        cj["edge_target"] = c.edge_target;
        cj["edge_target_met"] = c.edge_target_met;
        cj["concentration_fraction_ok"] = c.concentration.fraction_ok;
        cj["concentration_max_rel_dev"] = c.concentration.max_relative_deviation;
        cj["hyper_vertices"] = c.hyper_vertices;
        cj["hyper_edges"] = c.hyper_edges;
        cj["matched"] = c.matched;
        colors_json.push_back(std::move(cj));
    }
    j["colors"] = std::move(colors_json);
    j["nibble_size"] = nibble_size;
    j["leftover_size"] = leftover_size;
    j["total_size"] = total_size;
    j["verified"] = verified;
    return j.dump(2);
}

PipelineResult run_pipeline(const Graph& G, const Family& F,
                            const PipelineConfig& config, uint64_t seed) {
    size_t n = G.order();
    TheoreticalConstants constants =
        compute_constants(config.epsilon, F, config.mu, config.gamma);

    size_t m_prime, factor, samples = config.samples;
    double gamma_eff, delta, beta, zeta, mu = config.mu;
    if (config.mode == PipelineMode::Theoretical) {
        m_prime = constants.min_initial_classes;
        factor = static_cast<size_t>(std::ceil(constants.refinement_factor));
        gamma_eff = constants.gamma_prime;
        delta = constants.delta;
        beta = constants.beta;
        zeta = constants.zeta;
        if (constants.min_feasible_n > n)
            throw InfeasibleError(
                "theoretical parameters need at least " +
                std::to_string(constants.min_feasible_n) + " vertices (" +
                std::to_string(m_prime) + " classes refined " + std::to_string(factor) +
                "-fold); the graph has " + std::to_string(n));
    } else {
        m_prime = config.m_prime;
        factor = config.refinement_factor;
        gamma_eff = config.gamma;
        delta = config.delta;
        beta = config.beta;
        zeta = config.zeta;
    }

    PipelineReport report;
    report.mode = config.mode;
    report.seed = seed;
    report.n = n;

    // Fractional optimum, then spread onto labeled copies.
    LpResult lp = solve_fractional_packing(G, F, config.lp_mode, config.copy_cap);
    report.w_psi = rat_str(lp.value);
    FractionalPacking psi_labeled = labeled_normalize(lp.packing);

    // Partition and random refinement.
    VertexPartition coarse =
        config.use_regularity_partition
            ? [&] {
                  auto [part, verdict] = regularity_partition(
                      G, gamma_eff, config.max_classes, seed);
                  report.irregular_fraction = verdict.irregular_fraction;
                  report.partition_certified = verdict.certified;
                  return part;
              }()
            : equitable_partition(static_cast<Vertex>(n), m_prime, seed);
    m_prime = coarse.class_count();
    report.m_prime = m_prime;
    VertexPartition refined = [&] {
        try {
            return refine_partition(coarse, factor, seed);
        } catch (const ArgumentError& e) {
            throw StageError("refinement", e.what());
        }
    }();
    size_t m = refined.class_count();
    report.m = m;
    report.t = n / m;

    FractionalPacking psi_good = restrict_to_good(psi_labeled, refined, constants.k0);
    report.w_psi_good = rat_str(packing_weight(psi_good));

    // Pair verdicts drive both the discarding and the reduced graph.
    PairAssessment assessment =
        assess_regular_pairs(G, refined, gamma_eff, config.method, seed, samples);
    auto [g_star, discard] = discard_edges(G, refined, assessment, delta);
    report.discard = discard;

    FractionalPacking psi_star = restrict_packing(psi_good, [&](size_t c) {
        auto tuple = psi_good.index().copy_vertices(c);
        for (const Edge& pe : psi_good.index().pattern_of(c).edges())
            if (!g_star.has_edge(tuple[pe.u], tuple[pe.v])) return false;
        return true;
    });
    Rat w_star = packing_weight(psi_star);
    report.w_psi_star = rat_str(w_star);

    ReducedGraph R = build_reduced_graph(refined, assessment, delta);
    FractionalPacking psi_prime = [&] {
        try {
            return project_packing_to_reduced(psi_star, refined, R);
        } catch (const ArgumentError& e) {
            throw StageError("projection", e.what());
        }
    }();
    Rat w_prime = packing_weight(psi_prime);
    report.w_psi_prime = rat_str(w_prime);
    Rat scale = Rat(static_cast<unsigned long>(m)) * Rat(static_cast<unsigned long>(m)) /
                (Rat(static_cast<unsigned long>(n)) * Rat(static_cast<unsigned long>(n)));
    report.projection_identity_ok = (w_prime == w_star * scale);
    report.reduced_load_ok = verify_reduced_load(psi_prime, R).ok;

    ColorAssignment coloring = random_coloring(g_star, R, psi_prime, seed);

    double threshold = config.psi_threshold_override >= 0
                           ? config.psi_threshold_override
                           : constants.psi_threshold(m);
    PipelineResult result;
    std::vector<uint8_t> edge_taken(G.size(), 0);
    const CopyIndex& ridx = psi_prime.index();
    for (uint32_t color = 0; color < ridx.copy_count(); ++color) {
        const Rat& w = psi_prime.weight(color);
        if (w == 0) continue;
        ++report.colors_total;
        ColorDiagnostics diag;
        diag.color = color;
        diag.pattern_id = ridx.pattern_id(color);
        diag.psi_prime = rat_to_double(w);
        const Graph& pattern = ridx.pattern_of(color);
        size_t r = pattern.size();
        if (!(rat_to_double(w) > threshold)) {
            diag.skipped = true;
            report.colors.push_back(std::move(diag));
            continue;
        }
        ++report.colors_used;

        Graph x_h = build_color_subgraph(g_star, coloring, color);
        diag.edge_count = x_h.size();
        double nn_over_mm = (static_cast<double>(n) * static_cast<double>(n)) /
                            (static_cast<double>(m) * static_cast<double>(m));
        diag.edge_target = (1.0 - 2.0 * zeta) * static_cast<double>(r) * nn_over_mm *
                           rat_to_double(w);
        diag.edge_target_met = static_cast<double>(diag.edge_count) > diag.edge_target;

        auto rtuple = ridx.copy_vertices(color);
        std::vector<std::vector<Vertex>> classes;
        classes.reserve(rtuple.size());
        for (Vertex rv : rtuple) classes.push_back(refined.class_members(rv));

        diag.concentration = concentration_check(x_h, pattern, classes, w, mu, report.t);

        if (x_h.size() < r) {
            report.colors.push_back(std::move(diag));
            continue;
        }
        // L_H: vertices are the edges of X_H, hyperedges the partite
        // copies; a matching is an edge-disjoint set of copies.
        UniformHypergraph l_h(static_cast<uint32_t>(x_h.size()),
                              static_cast<uint32_t>(r));
        std::vector<std::vector<Vertex>> tuples;
        std::vector<uint32_t> hyperedge(r);
        for_each_partite_copy(x_h, pattern, classes, [&](std::span<const Vertex> tuple) {
            size_t at = 0;
            for (const Edge& pe : pattern.edges())
                hyperedge[at++] =
                    static_cast<uint32_t>(x_h.edge_index(tuple[pe.u], tuple[pe.v]));
            l_h.add_edge(hyperedge);
            tuples.emplace_back(tuple.begin(), tuple.end());
        });
        diag.hyper_vertices = l_h.order();
        diag.hyper_edges = l_h.edge_count();

        HyperMatching matched = nibble_matching(l_h, beta, config.bite_fraction,
                                                mix_seed(seed, Stream::Nibble, color),
                                                config.nibble_rounds);
        diag.matched = matched.size();
        for (uint32_t he : matched.edge_ids) {
            const std::vector<Vertex>& tuple = tuples[he];
            result.packing.copies.push_back(PackedCopy{diag.pattern_id, tuple});
            for (const Edge& pe : pattern.edges())
                edge_taken[G.edge_index(tuple[pe.u], tuple[pe.v])] = 1;
        }
        report.nibble_size += matched.size();
        report.colors.push_back(std::move(diag));
    }

    if (config.leftover_greedy) {
        Graph leftover = G.filter_edges([&](size_t e) { return !edge_taken[e]; });
        IntegerPacking extra = greedy_packing(leftover, F,
                                              mix_seed(seed, Stream::LeftoverGreedy),
                                              config.copy_cap);
        report.leftover_size = extra.size();
        for (PackedCopy& c : extra.copies) result.packing.copies.push_back(std::move(c));
    }
    report.total_size = result.packing.size();

    PackingVerdict verdict = verify_integer_packing(G, F, result.packing);
    if (!verdict.ok) throw StageError("verify", verdict.message);
    report.verified = true;
    result.report = std::move(report);
    return result;
}

}  // namespace gpack
