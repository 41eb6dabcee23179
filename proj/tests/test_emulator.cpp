#include "oracles/oracles.hpp"
#include "spanlab/spanlab.hpp"
#include "support.hpp"

using namespace spanlab;

namespace {

oracle::RefInput reference_input(const Graph& g, const EmulatorConfig& cfg, Dist r, Dist r_hat) {
    const auto dec = decompose(g, r, cfg.eps);
    const auto sample = detail::sample_vertices(g, r, cfg);
    oracle::RefInput in;
    in.clusters = dec.clusters;
    in.cores = dec.cores;
    in.sampled = sample.in;
    in.r = r;
    in.r_hat = r_hat;
    const double lg = std::ceil(std::log2(static_cast<double>(g.vertex_count())));
    in.small_limit = static_cast<double>(r * r) / (lg * lg);
    in.stop = cfg.greedy_stop_multiplier;
    in.prefix = cfg.prefix_err_multiplier;
    in.k = static_cast<std::size_t>(lg);
    return in;
}

/// The dumbbell of the single-violation hand trace: triangle {0,1,2}, bar
/// 2-3-4-5-6, triangle {6,7,8}, pendant 9 on 8.
Graph dumbbell() {
    Graph g(10);
    for (const auto& [a, b] : std::vector<VertexPair>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {6, 8}, {8, 9}})
        g.add_edge(a, b);
    return g;
}

} // namespace

TEST_CASE("emulator on a tree is the tree") {
    const auto t = gen_graph(GraphKind::Tree, {200, 0, 0, 0}, 4);
    const auto em = run_recursive_emulator(t, 1, {});
    CHECK(em.stats.greedy_edges == 0);
    CHECK(additive_distortion(t, em.graph).max_additive == 0);
}

TEST_CASE("emulator matches the straight-line reference") {
    struct Case {
        const char* name;
        Graph g;
        Dist r;
        Dist r_hat;
        Dist stop;
        double small = -1; // small-cluster threshold override
    };
    std::vector<Case> cases;
    cases.push_back({"C30", gen_graph(GraphKind::Cycle, {30, 0, 0, 0}), 2, 1, 3});
    cases.push_back({"gnm(30,90,1)", gnm(30, 90, 1), 2, 1, 3});
    cases.push_back({"gnm(30,60,2)", gnm(30, 60, 2), 3, 1, 3});
    cases.push_back({"gnm(30,120,5) r=6", gnm(30, 120, 5), 6, 1, 4});
    cases.push_back({"gnm(30,60,3) small clusters", gnm(30, 60, 3), 2, 1, 3, 12});
    cases.push_back({"gnm(30,45,6) small clusters", gnm(30, 45, 6), 3, 2, 5, 30});
    for (auto& c : cases) {
        DYNAMIC_SECTION(c.name) {
            EmulatorConfig cfg;
            cfg.seed = 17;
            cfg.r_override = c.r;
            cfg.r_hat_override = c.r_hat;
            cfg.greedy_stop_multiplier = c.stop;
            auto in = reference_input(c.g, cfg, c.r, c.r_hat);
            if (c.small >= 0) {
                cfg.small_threshold_override = c.small;
                in.small_limit = c.small;
            }
            const auto em = build_emulator(c.g, cfg);
            const auto ref = oracle::ref_emulator(c.g, in);
            CHECK(em.stats.baseline_edges == ref.baseline_edges);
            CHECK(em.stats.small_cluster_edges == ref.small_edges);
            CHECK(em.stats.recursive_edges == ref.large_edges);
            CHECK(em.stats.greedy_edges == ref.greedy_edges);
            CHECK(em.stats.greedy_rounds == ref.rounds);
            CHECK(em.graph.edges() == ref.h.edges());
            CHECK(additive_distortion(c.g, em.graph).max_additive == ref.max_additive);
            CHECK(ref.max_additive <= c.stop * c.r_hat);
        }
    }
}

TEST_CASE("emulator greedy phase") {
    SECTION("nothing to do when h already meets the threshold") {
        const auto g = gnm(40, 100, 3);
        Graph h(40, true);
        for (const auto& e : g.edges()) h.add_edge(e.u, e.v, 1);
        const auto out = emulator_greedy_phase(g, h, 1, 3, 1);
        CHECK(out.edges_added == 0);
        CHECK(out.rounds == 0);
    }
    SECTION("C20 with one edge missing: every round fixes its pair") {
        const auto g = gen_graph(GraphKind::Cycle, {20, 0, 0, 0});
        Graph h(20, true);
        for (const auto& e : g.edges())
            if (!(e.u == 0 && e.v == 19)) h.add_edge(e.u, e.v, 1);
        const Dist r_hat = 1;
        const auto out = emulator_greedy_phase(g, h, r_hat, 3, 1);
        REQUIRE(out.rounds > 0);
        const auto dg = oracle::floyd_warshall(g);
        for (const auto& round : out.trace) {
            CHECK(round.before > 3 * r_hat);
            CHECK(round.after < round.before);
            CHECK(round.after <= 2 * r_hat);
            CHECK(*h.weight(round.x, round.y) == dg[round.x][round.y]);
        }
        CHECK(oracle::max_additive(dg, oracle::floyd_warshall(h)) <= 3 * r_hat);
    }
    SECTION("dumbbell with one violating pair adds exactly (x, y) at d_G") {
        const auto g = dumbbell();
        Graph h(10, true);
        for (const auto& e : g.edges())
            if (!(e.u == 4 && e.v == 5)) h.add_edge(e.u, e.v, 1);
        h.add_edge(3, 6, 3);
        // Only (4, 5) exceeds +3: 4-3-6-5 costs 5 against 1.
        const auto out = emulator_greedy_phase(g, h, 1, 3, 1);
        CHECK(out.edges_added == 1);
        REQUIRE(out.trace.size() == 1);
        CHECK(out.trace[0].s == 4);
        CHECK(out.trace[0].t == 5);
        CHECK(out.trace[0].x == 4);
        CHECK(out.trace[0].y == 5);
        CHECK(*h.weight(4, 5) == 1);
    }
}

TEST_CASE("emulator recursion") {
    SECTION("depth 0 is the graph") {
        const auto g = gnm(50, 120, 2);
        const auto em = run_recursive_emulator(g, 0, {});
        CHECK(em.graph.edges() == Graph::from_edges(50, g.edges(), true).edges());
    }
    SECTION("depth 2 on gnm(1000, 4000, 1): every level meets its threshold") {
        const auto g = gnm(1000, 4000, 1);
        EmulatorConfig cfg;
        cfg.seed = 1;
        const auto em = run_recursive_emulator(g, 2, cfg, {true, 5000});
        REQUIRE(em.levels.size() >= 1);
        CHECK(em.levels.back().depth == 2);
        for (const auto& lv : em.levels) {
            REQUIRE(lv.measured_distortion);
            CHECK(*lv.measured_distortion <= cfg.greedy_stop_multiplier * lv.r_hat);
        }
        CHECK(additive_distortion(g, em.graph).max_additive <= cfg.greedy_stop_multiplier * em.stats.r_hat);
        // level 2 runs with alpha = a_1 = 1/5
        CHECK(em.levels.back().alpha == Catch::Approx(0.2));
    }
    SECTION("same seed, same emulator") {
        const auto g = gnm(300, 1200, 9);
        EmulatorConfig cfg;
        cfg.seed = 5;
        cfg.r_override = 3;
        cfg.r_hat_override = 1;
        CHECK(run_recursive_emulator(g, 1, cfg).graph.edges() == run_recursive_emulator(g, 1, cfg).graph.edges());
    }
}

TEST_CASE("emulator config validation") {
    const auto g = gnm(20, 40, 1);
    EmulatorConfig cfg;
    cfg.eps = 1.5;
    CHECK(thrown_code([&] { (void)build_emulator(g, cfg); }) == ErrorCode::InvalidEps);
    cfg = {};
    cfg.alpha = 0;
    CHECK(thrown_code([&] { (void)build_emulator(g, cfg); }) == ErrorCode::InvalidAlpha);
    cfg = {};
    cfg.greedy_stop_multiplier = 2;
    CHECK(thrown_code([&] { (void)build_emulator(g, cfg); }) == ErrorCode::InvalidConfig);
    CHECK(thrown_code([] { (void)build_emulator(Graph(1), {}); }) == ErrorCode::InvalidParams);
    CHECK(thrown_code([&] { (void)run_recursive_emulator(g, -1, {}); }) == ErrorCode::InvalidParams);
}
