#include "oracles/oracles.hpp"
#include "spanlab/spanlab.hpp"
#include "support.hpp"

using namespace spanlab;

namespace {

Graph cycle(std::size_t n) { return gen_graph(GraphKind::Cycle, {n, 0, 0, 0}); }

Graph complete(std::size_t n) {
    Graph g(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

} // namespace

TEST_CASE("consistent shortest path") {
    CHECK(consistent_shortest_path(gen_graph(GraphKind::Path, {4, 0, 0, 0}), 0, 3) == std::vector<Vertex>{0, 1, 2, 3});
    CHECK(consistent_shortest_path(complete(4), 0, 1) == std::vector<Vertex>{0, 1});
    SECTION("C4 tie goes through the lower id") {
        CHECK(consistent_shortest_path(cycle(4), 0, 2) == std::vector<Vertex>{0, 1, 2});
        CHECK(consistent_shortest_path(cycle(4), 2, 0) == std::vector<Vertex>{2, 1, 0});
    }
    SECTION("is a shortest path and reverses with its endpoints") {
        const auto g = gnm(60, 150, 12);
        const auto d = oracle::floyd_warshall(g);
        for (Vertex s = 0; s < 60; s += 7)
            for (Vertex t = 0; t < 60; t += 5) {
                if (s == t || d[s][t] == oracle::kInf) continue;
                const auto p = consistent_shortest_path(g, s, t);
                CHECK(static_cast<long long>(p.size()) - 1 == d[s][t]);
                for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(g.has_edge(p[i], p[i + 1]));
                auto q = consistent_shortest_path(g, t, s);
                std::reverse(q.begin(), q.end());
                CHECK(p == q);
            }
    }
    SECTION("disconnected") {
        CHECK(thrown_code([] { (void)consistent_shortest_path(Graph(3), 0, 2); }) == ErrorCode::Unreachable);
    }
}

TEST_CASE("build_preserver") {
    SECTION("no pairs") {
        const auto p = build_preserver(gnm(20, 40, 1), {});
        CHECK(p.graph.edge_count() == 0);
        CHECK(p.paths.size() == 0);
    }
    SECTION("tree: union of the tree paths") {
        const auto t = gen_graph(GraphKind::Tree, {40, 0, 0, 0}, 3);
        const std::vector<VertexPair> pairs{{0, 39}, {5, 17}, {20, 21}};
        const auto p = build_preserver(t, pairs);
        CHECK(additive_distortion(t, p.graph, pairs, true).max_additive == 0);
        Graph expect(40);
        for (const auto& [a, b] : pairs) {
            const auto path = any_shortest_path(t, a, b);
            for (std::size_t i = 0; i + 1 < path.size(); ++i) expect.add_edge(path[i], path[i + 1]);
        }
        CHECK(p.graph.edges() == expect.edges());
    }
    SECTION("gnm(200, 800, 3) with 14 pairs is exact on every pair") {
        const auto g = gnm(200, 800, 3);
        const auto pairs = random_pairs(200, 14, 3);
        const auto p = build_preserver(g, pairs);
        const auto dg = oracle::floyd_warshall(g);
        const auto dh = oracle::floyd_warshall(p.graph);
        for (const auto& [a, b] : pairs) CHECK(dh[a][b] == dg[a][b]);
        CHECK(check_consistency(p.paths).ok());
        CHECK(p.paths.size() == 14);
    }
    SECTION("disconnected pair") {
        Graph g(4);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        const std::vector<VertexPair> pairs{{0, 3}};
        CHECK(thrown_code([&] { (void)build_preserver(g, pairs); }) == ErrorCode::Unreachable);
    }
}

TEST_CASE("check_consistency") {
    PathSystem one;
    one.add({0, 1, 2, 3});
    CHECK(check_consistency(one).ok());

    PathSystem disjoint;
    disjoint.add({0, 1, 2});
    disjoint.add({3, 4, 5});
    CHECK(check_consistency(disjoint).ok());

    PathSystem shared_segment;
    shared_segment.add({0, 1, 2, 3});
    shared_segment.add({4, 1, 2, 5});
    CHECK(check_consistency(shared_segment).ok());

    SECTION("sharing a and c but not b") {
        // 5-vertex graph: 0 - 1 - 2 and 0 - 3 - 2, plus tail 2 - 4
        PathSystem ps;
        ps.add({0, 1, 2, 4});
        ps.add({0, 3, 2});
        const auto rep = check_consistency(ps);
        CHECK_FALSE(rep.ok());
        REQUIRE_FALSE(rep.violations.empty());
        CHECK(rep.violations[0].first == 0);
        CHECK(rep.violations[0].second == 1);
    }
    SECTION("reversed direction still agrees") {
        PathSystem ps;
        ps.add({0, 1, 2, 3});
        ps.add({3, 2, 1});
        CHECK(check_consistency(ps).ok());
    }
}
