#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "gpack/errors.hpp"
#include "gpack/pipeline.hpp"
#include "oracles.hpp"

using namespace gpack;

namespace {

Family k3() { return Family::of({complete_graph(3)}, {"K3"}); }

PipelineConfig desk_config() {
    PipelineConfig cfg;
    cfg.lp_mode = LpMode::Float;
    cfg.m_prime = 2;
    cfg.refinement_factor = 2;
    cfg.gamma = 0.5;
    cfg.delta = 0.2;
    cfg.psi_threshold_override = 0.0;
    return cfg;
}

}  // namespace

TEST_CASE("constant cascade for a bounded family") {
    TheoreticalConstants c = compute_constants(0.1, k3());
    CHECK(c.bounded);
    CHECK(c.k_infinity == 3);
    CHECK(c.k0 == 3);  // min(3, ceil(200))
    CHECK(c.delta == doctest::Approx(0.025));
    CHECK(c.beta == doctest::Approx(0.025));
    CHECK(c.refinement_factor == doctest::Approx(2250.0));
    CHECK(c.gamma_prime == doctest::Approx(0.25 * 0.1 / 225.0));
    CHECK(c.min_initial_classes == 9000);
    CHECK(c.min_feasible_n == 9000ull * 2250ull);

    TheoreticalConstants u = compute_constants(0.1, Family::of_unbounded(
        {complete_graph(3)}, {"K3"}));
    CHECK(u.k0 == 200);  // ceil(20 / 0.1)

    TheoreticalConstants half = compute_constants(0.5, k3());
    CHECK(half.k0 == 3);
    CHECK(half.delta == doctest::Approx(0.125));
    CHECK(half.zeta == doctest::Approx(0.1 * std::pow(0.125, 9.0) / 2));
    CHECK(half.psi_threshold(4) == doctest::Approx(std::pow(4.0, -2.0)));
    CHECK_THROWS_AS(compute_constants(0.0, k3()), ArgumentError);
    CHECK_THROWS_AS(compute_constants(1.0, k3()), ArgumentError);
}

TEST_CASE("theoretical mode refuses desk-sized graphs") {
    PipelineConfig cfg;
    cfg.mode = PipelineMode::Theoretical;
    cfg.epsilon = 0.1;
    CHECK_THROWS_AS(run_pipeline(gnp_random_graph(30, 0.5, 1), k3(), cfg, 1),
                    InfeasibleError);
}

TEST_CASE("config json round trip and strict keys") {
    PipelineConfig cfg = desk_config();
    cfg.seed = 77;
    PipelineConfig back = PipelineConfig::from_json(cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());
    CHECK(back.m_prime == 2);
    CHECK(back.gamma == doctest::Approx(0.5));
    CHECK(back.lp_mode == LpMode::Float);
    CHECK(back.seed == 77);
    CHECK_THROWS_AS(PipelineConfig::from_json("{\"bogus\": 1}"), ParseError);
    CHECK_THROWS_AS(PipelineConfig::from_json("not json"), ParseError);
    CHECK_THROWS_AS(PipelineConfig::from_json("{\"mode\": \"quantum\"}"), ParseError);
    CHECK(PipelineConfig::from_json("{}").m_prime == 6);  // defaults survive
}

TEST_CASE("good copy restriction enforces size and distinct classes") {
    auto host = std::make_shared<Graph>(complete_graph(6));
    VertexPartition p(6, {{0, 1}, {2, 3}, {4, 5}}, PartitionOrigin::Refined);
    Family f = Family::of({complete_graph(3), complete_graph(4)}, {"K3", "K4"});
    CopyIndex labeled = enumerate_labeled_copies(host, f);
    FractionalPacking psi(std::make_shared<CopyIndex>(std::move(labeled)));
    for (size_t c = 0; c < psi.index().copy_count(); ++c)
        psi.set_weight(c, Rat(1) / 100);

    FractionalPacking good = restrict_to_good(psi, p, 3);
    for (size_t c = 0; c < good.index().copy_count(); ++c) {
        if (good.weight(c) == 0) continue;
        auto t = good.index().copy_vertices(c);
        CHECK(t.size() <= 3);  // K4 copies dropped by the size cap
        std::set<size_t> cls;
        for (Vertex v : t) cls.insert(p.class_of(v));
        CHECK(cls.size() == t.size());
    }
    // On K6 with three classes of two: 8 triangles avoid all classes,
    // each contributing 6 labeled copies.
    Rat kept = packing_weight(good);
    CHECK(kept == Rat(48) / 100);
}

TEST_CASE("coloring draws only eligible colors and respects mass exactly") {
    Graph g = gnp_random_graph(24, 0.5, 11);
    PipelineConfig cfg = desk_config();
    // Reproduce the internal stages to inspect the coloring closely.
    LpResult lp = solve_fractional_packing(g, k3(), LpMode::Float);
    FractionalPacking lab = labeled_normalize(lp.packing);
    VertexPartition part = refine_partition(equitable_partition(24, 2, 11), 2, 11);
    TheoreticalConstants c = compute_constants(cfg.epsilon, k3());
    FractionalPacking good = restrict_to_good(lab, part, c.k0);
    PairAssessment a =
        assess_regular_pairs(g, part, 0.5, RegularityMethod::Sampling, 11);
    auto [g_star, discard] = discard_edges(g, part, a, 0.2);
    FractionalPacking star = restrict_packing(good, [&](size_t cp) {
        auto t = good.index().copy_vertices(cp);
        for (const Edge& pe : good.index().pattern_of(cp).edges())
            if (!g_star.has_edge(t[pe.u], t[pe.v])) return false;
        return true;
    });
    ReducedGraph R = build_reduced_graph(part, a, 0.2);
    FractionalPacking prime = project_packing_to_reduced(star, part, R);

    ColorAssignment colors = random_coloring(g_star, R, prime, 11);
    REQUIRE(colors.color_of.size() == g_star.size());
    for (size_t e = 0; e < g_star.size(); ++e) {
        uint32_t col = colors.color_of[e];
        if (col == ColorAssignment::kUncolored) continue;
        Edge edge = g_star.edges()[e];
        size_t i = part.class_of(edge.u), j = part.class_of(edge.v);
        size_t re = R.base.edge_index(static_cast<Vertex>(i), static_cast<Vertex>(j));
        REQUIRE(re != SIZE_MAX);
        auto through = prime.index().copies_through_edge(re);
        CHECK(std::find(through.begin(), through.end(), col) != through.end());
        CHECK(prime.weight(col) > 0);
    }
    ColorAssignment again = random_coloring(g_star, R, prime, 11);
    CHECK(again.color_of == colors.color_of);

    // Overloading one color past the pair density must be rejected.
    FractionalPacking bloated = prime;
    if (bloated.index().copy_count() > 0) {
        bloated.set_weight(0, Rat(2));
        CHECK_THROWS_AS(random_coloring(g_star, R, bloated, 11), StageError);
    }
}

TEST_CASE("concentration check is exact on a complete tripartite fixture") {
    // X_H complete tripartite with t = 7: every edge lies in exactly t
    // copies, and with psi' = 1 the target is t^(k-2) = t.
    Graph x = complete_multipartite({7, 7, 7});
    std::vector<std::vector<Vertex>> classes;
    for (Vertex i = 0; i < 3; ++i) {
        std::vector<Vertex> cls;
        for (Vertex v = 0; v < 7; ++v) cls.push_back(7 * i + v);
        classes.push_back(cls);
    }
    ConcentrationReport r =
        concentration_check(x, complete_graph(3), classes, Rat(1), 0.1, 7);
    CHECK(r.edges == x.size());
    CHECK(r.ok == r.edges);
    CHECK(r.fraction_ok == 1.0);
    CHECK(r.max_relative_deviation == 0.0);
}

TEST_CASE("full run verifies and reports exact invariants") {
    Graph g = gnp_random_graph(24, 0.5, 7);
    PipelineResult res = run_pipeline(g, k3(), desk_config(), 7);
    const PipelineReport& rep = res.report;
    CHECK(rep.verified);
    CHECK(rep.projection_identity_ok);
    CHECK(rep.reduced_load_ok);
    CHECK(rep.n == 24);
    CHECK(rep.m == 4);
    CHECK(rep.t == 6);
    CHECK(rep.total_size == rep.nibble_size + rep.leftover_size);
    CHECK(rep.total_size == res.packing.size());
    CHECK(verify_integer_packing(g, k3(), res.packing).ok);
    CHECK(rep.colors.size() == rep.colors_total);
    // Weights never grow along the restriction chain.
    Rat w = rat_parse(rep.w_psi), wg = rat_parse(rep.w_psi_good),
        ws = rat_parse(rep.w_psi_star);
    CHECK(wg <= w);
    CHECK(ws <= wg);
    std::string j = rep.to_json();
    CHECK(j.find("\"projection_identity_ok\": true") != std::string::npos);
}

TEST_CASE("runs are deterministic per seed and independent across seeds") {
    Graph g = gnp_random_graph(24, 0.5, 3);
    PipelineResult a = run_pipeline(g, k3(), desk_config(), 5);
    PipelineResult b = run_pipeline(g, k3(), desk_config(), 5);
    CHECK(a.report.to_json() == b.report.to_json());
    CHECK(packing_to_text(a.packing) == packing_to_text(b.packing));
    PipelineResult c = run_pipeline(g, k3(), desk_config(), 6);
    CHECK(c.report.verified);
}

TEST_CASE("leftover pass can be disabled") {
    Graph g = gnp_random_graph(24, 0.5, 9);
    PipelineConfig cfg = desk_config();
    cfg.leftover_greedy = false;
    PipelineResult r = run_pipeline(g, k3(), cfg, 9);
    CHECK(r.report.leftover_size == 0);
    CHECK(r.report.total_size == r.report.nibble_size);
    CHECK(r.report.verified);
}

TEST_CASE("psi threshold suppresses thin colors") {
    Graph g = gnp_random_graph(24, 0.5, 13);
    PipelineConfig cfg = desk_config();
    cfg.psi_threshold_override = 1e9;  // everything is thin
    PipelineResult r = run_pipeline(g, k3(), cfg, 13);
    CHECK(r.report.colors_used == 0);
    CHECK(r.report.nibble_size == 0);
    for (const ColorDiagnostics& d : r.report.colors) CHECK(d.skipped);
}

TEST_CASE("multi member family end to end") {
    Graph g = gnp_random_graph(24, 0.55, 21);
    Family f = Family::of({complete_graph(3), cycle_graph(4)}, {"K3", "C4"});
    PipelineConfig cfg = desk_config();
    cfg.m_prime = 3;
    PipelineResult r = run_pipeline(g, f, cfg, 21);  // m = 6, classes of four
    CHECK(r.report.verified);
    CHECK(verify_integer_packing(g, f, r.packing).ok);
}
