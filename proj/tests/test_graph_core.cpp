#include <sstream>

#include "oracles/oracles.hpp"
#include "spanlab/spanlab.hpp"
#include "support.hpp"

using namespace spanlab;

namespace {

Graph path_graph(std::size_t n) { return gen_graph(GraphKind::Path, {n, 0, 0, 0}); }
Graph cycle(std::size_t n) { return gen_graph(GraphKind::Cycle, {n, 0, 0, 0}); }
Graph complete(std::size_t n) {
    Graph g(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

} // namespace

TEST_CASE("sssp on small graphs") {
    SECTION("path 0-1-2") { CHECK(sssp(path_graph(3), 0).dist == std::vector<Dist>{0, 1, 2}); }
    SECTION("two isolated vertices") { CHECK(sssp(Graph(2), 0).dist == std::vector<Dist>{0, kUnreachable}); }
    SECTION("weighted triangle routes through the cheap side") {
        Graph g(3, true);
        g.add_edge(0, 1, 5);
        g.add_edge(1, 2, 1);
        g.add_edge(0, 2, 3);
        // routes to 1: direct 5, via 2: 3 + 1 = 4
        CHECK(sssp(g, 0).dist == std::vector<Dist>{0, 4, 3});
    }
    SECTION("source out of range") { CHECK(thrown_code([] { (void)sssp(Graph(2), 5); }) == ErrorCode::InvalidParams); }
}

TEST_CASE("apsp") {
    SECTION("K3") {
        const auto m = apsp(complete(3));
        for (Vertex a = 0; a < 3; ++a)
            for (Vertex b = 0; b < 3; ++b) CHECK(m(a, b) == (a == b ? 0 : 1));
    }
    SECTION("edgeless graph") {
        const auto m = apsp(Graph(2));
        CHECK(m(0, 1) == kUnreachable);
        CHECK(m(1, 0) == kUnreachable);
    }
    SECTION("C6 antipodes") { CHECK(apsp(cycle(6))(0, 3) == 3); }
    SECTION("cap") { CHECK(thrown_code([] { (void)apsp(Graph(11), 10); }) == ErrorCode::CapExceeded); }
    SECTION("agrees with Floyd-Warshall on a random weighted graph") {
        auto g0 = gnm(40, 120, 9);
        Graph g(40, true);
        Rng rng(3);
        for (const auto& e : g0.edges()) g.add_edge(e.u, e.v, 1 + static_cast<Weight>(rng.below(7)));
        const auto ours = apsp(g);
        const auto ref = oracle::floyd_warshall(g);
        for (Vertex a = 0; a < 40; ++a)
            for (Vertex b = 0; b < 40; ++b) CHECK(ours(a, b) == (ref[a][b] == oracle::kInf ? kUnreachable : ref[a][b]));
    }
}

TEST_CASE("ball") {
    CHECK(ball(gnm(20, 40, 1), 3, 0) == std::vector<Vertex>{3});
    CHECK(ball(path_graph(4), 1, 1) == std::vector<Vertex>{0, 1, 2});
    CHECK(ball(cycle(6), 0, 2) == std::vector<Vertex>{0, 1, 2, 4, 5});
}

TEST_CASE("induced subgraph") {
    SECTION("all vertices keeps the graph") {
        const auto g = gnm(15, 30, 4);
        std::vector<Vertex> all(15);
        for (Vertex v = 0; v < 15; ++v) all[v] = v;
        const auto sub = induced_subgraph(g, all);
        CHECK(sub.graph.edges() == g.edges());
        CHECK(sub.to_parent == all);
    }
    SECTION("K4 on two vertices") {
        const auto sub = induced_subgraph(complete(4), {0, 1});
        CHECK(sub.graph.vertex_count() == 2);
        CHECK(sub.graph.edge_count() == 1);
    }
    SECTION("C6 on three consecutive vertices is a path") {
        const auto sub = induced_subgraph(cycle(6), {0, 1, 2});
        CHECK(sub.graph.edge_count() == 2);
        CHECK(sub.graph.has_edge(0, 1));
        CHECK(sub.graph.has_edge(1, 2));
        CHECK_FALSE(sub.graph.has_edge(0, 2));
    }
}

TEST_CASE("multiplicative spanner") {
    SECTION("a tree is kept whole") {
        const auto t = gen_graph(GraphKind::Tree, {60, 0, 0, 0}, 5);
        CHECK(multiplicative_spanner(t).edges() == t.edges());
    }
    SECTION("k = 1 keeps K4") { CHECK(multiplicative_spanner(complete(4), 1).edge_count() == 6); }
    SECTION("C9, k = 2: stretch at most 3 by exact APSP") {
        const auto g = cycle(9);
        const auto h = multiplicative_spanner(g, 2);
        const auto dg = oracle::floyd_warshall(g);
        const auto dh = oracle::floyd_warshall(h);
        for (Vertex a = 0; a < 9; ++a)
            for (Vertex b = a + 1; b < 9; ++b) CHECK(dh[a][b] <= 3 * dg[a][b]);
    }
    SECTION("matches the reference greedy") {
        const auto g = gnm(80, 400, 2);
        CHECK(multiplicative_spanner(g, 3).edges() == oracle::ref_multiplicative(g, 3).edges());
    }
    SECTION("rejects k = 0") { CHECK(thrown_code([] { (void)multiplicative_spanner(cycle(4), 0); }) == ErrorCode::InvalidParams); }
}

TEST_CASE("additive distortion") {
    SECTION("h = g") { CHECK(additive_distortion(cycle(7), cycle(7)).max_additive == 0); }
    SECTION("C6 minus an edge") {
        auto h = cycle(6);
        h.remove_edge(0, 1);
        const auto rep = additive_distortion(cycle(6), h);
        // d_H(0, 1) = 5 around the other side
        CHECK(rep.max_additive == 4);
        CHECK(rep.argmax_pair == VertexPair{0, 1});
    }
    SECTION("K3 vs path 0-1-2") { CHECK(additive_distortion(complete(3), path_graph(3)).max_additive == 1); }
    SECTION("restricted to pairs") {
        auto h = cycle(6);
        h.remove_edge(0, 1);
        const std::vector<VertexPair> pairs{{2, 4}, {3, 5}};
        const auto rep = additive_distortion(cycle(6), h, pairs);
        CHECK(rep.max_additive == 0);
        CHECK(rep.pair_count_checked == 2);
    }
    SECTION("failures") {
        auto h = cycle(6);
        h.remove_edge(0, 1);
        h.remove_edge(3, 4);
        CHECK(thrown_code([&] { (void)additive_distortion(cycle(6), h); }) == ErrorCode::LostConnectivity);
        CHECK(thrown_code([] { (void)additive_distortion(cycle(6), cycle(7)); }) == ErrorCode::VertexSetMismatch);
        CHECK(thrown_code([] { (void)additive_distortion(path_graph(4), complete(4), std::nullopt, true); }) ==
              ErrorCode::NotSubgraph);
        Graph w(3, true);
        w.add_edge(0, 2, 1);
        w.add_edge(0, 1, 1);
        CHECK(thrown_code([&] { (void)additive_distortion(path_graph(3), w); }) == ErrorCode::Undershoot);
    }
    SECTION("agrees with the Floyd-Warshall oracle") {
        const auto g = gnm(50, 150, 8);
        const auto h = multiplicative_spanner(g, 2);
        CHECK(additive_distortion(g, h).max_additive == oracle::max_additive(oracle::floyd_warshall(g), oracle::floyd_warshall(h)));
    }
}

TEST_CASE("max edge stretch") {
    const auto g = cycle(9);
    CHECK(max_edge_stretch(g, g) == 1);
    auto h = g;
    h.remove_edge(0, 8);
    CHECK(max_edge_stretch(g, h) == 8);
}

TEST_CASE("generators") {
    SECTION("cycle") {
        const auto g = cycle(6);
        CHECK(g.edge_count() == 6);
        for (Vertex v = 0; v < 6; ++v) CHECK(g.degree(v) == 2);
    }
    SECTION("gnm edge counts and determinism") {
        CHECK(gnm(10, 0, 1).edge_count() == 0);
        CHECK(gnm(50, 100, 7).edge_count() == 100);
        CHECK(gnm(50, 100, 7).edges() == gnm(50, 100, 7).edges());
        CHECK(gnm(50, 100, 7).edges() != gnm(50, 100, 8).edges());
        CHECK(thrown_code([] { (void)gnm(4, 7, 0); }) == ErrorCode::InvalidParams);
    }
    SECTION("grid and tree") {
        const auto grid = gen_graph(GraphKind::Grid, {0, 0, 3, 4});
        CHECK(grid.vertex_count() == 12);
        CHECK(grid.edge_count() == 3 * 3 + 2 * 4);
        const auto t = gen_graph(GraphKind::Tree, {25, 0, 0, 0}, 11);
        CHECK(t.edge_count() == 24);
        CHECK(reachable(sssp(t, 0).dist[24]));
    }
    SECTION("random pairs are distinct unordered pairs") {
        const auto pairs = random_pairs(30, 20, 4);
        CHECK(pairs.size() == 20);
        for (const auto& [a, b] : pairs) CHECK(a != b);
        CHECK(pairs == random_pairs(30, 20, 4));
    }
    SECTION("kind names") {
        CHECK(parse_graph_kind("grid") == GraphKind::Grid);
        CHECK_FALSE(parse_graph_kind("hypercube"));
    }
}

TEST_CASE("edge list io") {
    SECTION("round trip, unweighted and weighted") {
        const auto g = gnm(30, 70, 2);
        std::istringstream is(to_edge_list_string(g));
        CHECK(read_edge_list(is).edges() == g.edges());
        Graph w(4, true);
        w.add_edge(0, 3, 7);
        w.add_edge(1, 2, 2);
        const auto text = to_edge_list_string(w);
        std::istringstream ws(text);
        const auto back = read_edge_list(ws);
        CHECK(back.weighted());
        CHECK(to_edge_list_string(back) == text);
    }
    SECTION("malformed input") {
        for (const std::string bad : {"", "3 1\n0 3\n", "3 1\n1 1\n", "3 2\n0 1\n0 1\n", "3 1 heavy\n0 1\n", "3 2\n0 1\n",
                                      "3 1 weighted\n0 1 0\n", "3 1 weighted\n0 1\n"}) {
            std::istringstream is(bad);
            CHECK(thrown_code([&] { (void)read_edge_list(is); }) == ErrorCode::ParseError);
        }
    }
    SECTION("dot export lists every vertex and edge") {
        std::ostringstream os;
        write_dot(os, path_graph(3), [](Vertex v) { return "v" + std::to_string(v); }, [](Vertex v) -> long long { return v == 1 ? 0 : -1; });
        const auto dot = os.str();
        CHECK(dot.find("subgraph cluster_0") != std::string::npos);
        CHECK(dot.find("0 -- 1") != std::string::npos);
        CHECK(dot.find("1 -- 2") != std::string::npos);
        CHECK(dot.find("[label=\"v2\"]") != std::string::npos);
    }
}

TEST_CASE("shortest path counts") {
    const auto grid = gen_graph(GraphKind::Grid, {0, 0, 3, 3});
    const auto pc = count_shortest_paths(grid, 0);
    // corner to corner of a 3x3 grid: C(4, 2)
    CHECK(pc.count[8] == 6);
    CHECK(pc.count[0] == 1);
}
