#include <deque>

#include "oracles/oracles.hpp"
#include "spanlab/spanlab.hpp"
#include "support.hpp"

using namespace spanlab;

namespace {

const ComposedInstance& tiny() {
    static const auto inst = build_tiny_instance();
    return inst;
}

std::optional<long long> plain_bfs(const Graph& g, Vertex s, Vertex t) {
    std::vector<long long> d(g.vertex_count(), -1);
    std::deque<Vertex> q{s};
    d[s] = 0;
    while (!q.empty()) {
        const auto u = q.front();
        q.pop_front();
        for (const auto& nb : g.neighbors(u))
            if (d[nb.to] < 0) {
                d[nb.to] = d[u] + 1;
                q.push_back(nb.to);
            }
    }
    return d[t] < 0 ? std::nullopt : std::optional<long long>(d[t]);
}

} // namespace

TEST_CASE("structural audits pass on generated instances") {
    SECTION("base graph") {
        const auto bg = build_base_graph({8, 8, 2, [] {
                                              ConvexVectorSet w;
                                              w.r = 2;
                                              w.vectors = {{1, 0}, {2, 1}};
                                              return w;
                                          }()});
        const auto rep = check_base_graph_properties(bg);
        CHECK(rep.ok());
        CHECK(rep.checks.size() == 6);
    }
    SECTION("inner c = 2") {
        const auto inner = build_inner_graph(search_inner_params(2));
        const auto rep = check_inner_graph_properties(inner);
        CHECK(rep.ok());
        REQUIRE(rep.find("inner_displacement"));
        CHECK(rep.find("inner_displacement")->measured.at("fraction") == 1.0);
        CHECK(rep.find("unique_shortest_paths")->pass);
    }
    SECTION("tiny composed") {
        const auto rep = check_composed_properties(tiny());
        for (const auto& c : rep.checks) {
            INFO(c.name << ": " << c.witness);
            CHECK(c.pass);
        }
        for (const char* name : {"z_value", "pair_count", "partition", "subdivided_paths", "path_lengths", "inner_copy_distinct"})
            CHECK(rep.find(name));
    }
    SECTION("cap") {
        const auto inner = build_inner_graph(search_inner_params(2));
        CHECK(thrown_code([&] { (void)check_base_graph_properties(inner, 1000); }) == ErrorCode::CapExceeded);
    }
}

TEST_CASE("graph distance property") {
    const auto inner = build_inner_graph(search_inner_params(2));
    for (const std::size_t star : {std::size_t{0}, std::size_t{1}, std::size_t{57}}) {
        DYNAMIC_SECTION("star pair " << star) {
            const auto gdp = check_graph_distance_property(inner, star);
            CHECK(gdp.ok());
            CHECK(gdp.failures == 0);
            CHECK_FALSE(gdp.records.empty());
            const auto& sp = inner.pairs[star];
            bool seen = false;
            for (const auto& rec : gdp.records)
                if (rec.s == sp.s && rec.t == sp.t) {
                    seen = true;
                    CHECK(rec.d == 0);
                    CHECK(rec.delta_x == 0);
                    CHECK(rec.delta_y == 0);
                    CHECK(rec.lhs == rec.rhs);
                }
            CHECK(seen);
            CHECK(gdp.i_star == (inner.spec.W.vectors[sp.vector_index].x == 4 ? 2 : 1));
        }
    }
    SECTION("every record agrees with its own exact inequality") {
        const auto gdp = check_graph_distance_property(inner, 0);
        for (const auto& rec : gdp.records) CHECK(rec.pass == (rec.lhs <= static_cast<double>(rec.d) + 1e-12));
    }
}

TEST_CASE("deletion stretch on the tiny instance") {
    const auto ref = oracle::tiny_composed_oracle();
    const auto& inst = tiny();
    REQUIRE(inst.pairs.size() == ref.pairs.size());
    SECTION("nothing deleted") {
        const auto rec = deletion_stretch_experiment(inst, 3, DeletionPolicy::Explicit, {});
        REQUIRE(rec.stretch);
        CHECK(*rec.stretch == 0);
        CHECK(rec.same_outer_route);
    }
    SECTION("first edge of every inner copy") {
        for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
            const auto rec = deletion_stretch_experiment(inst, i, DeletionPolicy::OneEdgePerInnerCopy);
            CHECK(rec.before == ref.pairs[i].before);
            CHECK(rec.inner_copies == ref.pairs[i].inner_copies);
            CHECK(rec.deleted.size() == rec.inner_copies);
            CHECK(rec.after == ref.pairs[i].after_one_per_copy);
            CHECK_FALSE(rec.stretch);
        }
    }
    SECTION("first edge only") {
        for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
            const auto& p = inst.pairs[i];
            const auto rec = deletion_stretch_experiment(inst, i, DeletionPolicy::Explicit, {{p.path[0], p.path[1], 1}});
            CHECK(rec.after == ref.pairs[i].after_first_edge);
            if (rec.stretch) CHECK(*rec.stretch >= 1);
        }
        // frozen from the oracle
        for (const std::size_t i : {4, 6, 8, 10}) CHECK(ref.pairs[i].after_first_edge == std::optional<long long>(141));
        for (const std::size_t i : {5, 7, 9, 11}) CHECK(ref.pairs[i].after_first_edge == std::optional<long long>(185));
        for (const std::size_t i : {0, 1, 2, 3, 12, 13, 14, 15}) CHECK_FALSE(ref.pairs[i].after_first_edge);
        CHECK(*deletion_stretch_experiment(inst, 4, DeletionPolicy::Explicit, {{inst.pairs[4].path[0], inst.pairs[4].path[1], 1}}).stretch == 84);
        CHECK(*deletion_stretch_experiment(inst, 5, DeletionPolicy::Explicit, {{inst.pairs[5].path[0], inst.pairs[5].path[1], 1}}).stretch == 38);
    }
    SECTION("half of the path") {
        const auto rec = deletion_stretch_experiment(inst, 0, DeletionPolicy::HalfOfPath);
        CHECK(rec.deleted.size() == (inst.pairs[0].path.size()) / 2);
    }
    SECTION("explicit edge off the path") {
        const auto& other = inst.pairs[1].path;
        CHECK(thrown_code([&] {
                  (void)deletion_stretch_experiment(inst, 0, DeletionPolicy::Explicit, {{other[0], other[1], 1}});
              }) == ErrorCode::InvalidParams);
    }
    SECTION("policy names") {
        CHECK(parse_deletion_policy("half_of_path") == DeletionPolicy::HalfOfPath);
        CHECK_FALSE(parse_deletion_policy("all"));
    }
}

TEST_CASE("pigeonhole adversary") {
    const auto& inst = tiny();
    SECTION("parity filter") {
        const auto h = parity_filter(inst.graph);
        CHECK(2 * h.edge_count() <= inst.graph.edge_count());
        CHECK(is_subgraph(h, inst.graph));
        const auto rec = pigeonhole_adversary(inst, h);
        CHECK(rec.budget_met);
        CHECK(2 * rec.missing >= rec.length);
        const auto& p = inst.pairs[rec.pair_index];
        CHECK(rec.d_g == *plain_bfs(inst.graph, p.s, p.t));
        CHECK(rec.d_h == plain_bfs(h, p.s, p.t));
        if (rec.distortion) CHECK(*rec.distortion == *rec.d_h - rec.d_g);
    }
    SECTION("candidate missing one canonical path") {
        Graph h = inst.graph;
        const auto& p = inst.pairs[9].path;
        for (std::size_t k = 0; k + 1 < p.size(); ++k) h.remove_edge(p[k], p[k + 1]);
        const auto rec = pigeonhole_adversary(inst, h);
        CHECK(rec.pair_index == 9);
        CHECK(rec.missing == rec.length);
        CHECK_FALSE(rec.budget_met);
        CHECK(rec.d_h == plain_bfs(h, inst.pairs[9].s, inst.pairs[9].t));
    }
    SECTION("candidate that keeps everything") {
        const auto rec = pigeonhole_adversary(inst, inst.graph);
        REQUIRE(rec.distortion);
        CHECK(*rec.distortion == 0);
    }
    SECTION("candidate with a foreign edge") {
        Graph h(inst.graph.vertex_count());
        h.add_edge(0, inst.graph.vertex_count() - 1);
        CHECK(thrown_code([&] { (void)pigeonhole_adversary(inst, h); }) == ErrorCode::NotSubgraph);
        CHECK(thrown_code([&] { (void)pigeonhole_adversary(inst, Graph(5)); }) == ErrorCode::VertexSetMismatch);
    }
}

TEST_CASE("fingerprints") {
    const auto a = build_tiny_instance();
    const auto b = build_tiny_instance();
    CHECK(fingerprint(a) == fingerprint(b));
    CHECK(check_composed_properties(a).fingerprint == fingerprint(a));
    auto c = b;
    c.graph.remove_edge(c.pairs[0].path[0], c.pairs[0].path[1]);
    CHECK(fingerprint(c) != fingerprint(a));
    CHECK(hex64(0).size() == 16);
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}
