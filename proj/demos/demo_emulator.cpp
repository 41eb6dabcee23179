// Builds a depth-1 emulator and a spanner on a random graph and prints sizes
// next to the measured additive distortion.
#include <cstdio>
#include <cstdlib>

#include "spanlab/spanlab.hpp"

int main(int argc, char** argv) {
    using namespace spanlab;
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 600;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    const auto g = gnm(n, 4 * n, seed);

    EmulatorConfig ec;
    ec.seed = seed;
    const auto em = run_recursive_emulator(g, 1, ec);
    const auto de = additive_distortion(g, em.graph);
    std::printf("G        n=%zu m=%zu\n", g.vertex_count(), g.edge_count());
    std::printf("emulator edges=%zu r=%lld r_hat=%lld max_additive=%lld bound=%lld\n", em.graph.edge_count(),
                static_cast<long long>(em.stats.r), static_cast<long long>(em.stats.r_hat),
                static_cast<long long>(de.max_additive), static_cast<long long>(ec.greedy_stop_multiplier * em.stats.r_hat));

    SpannerConfig sc;
    sc.seed = seed;
    const auto sp = run_recursive_spanner(g, 1, sc);
    const auto ds = additive_distortion(g, sp.subgraph, std::nullopt, true);
    std::printf("spanner  edges=%zu r=%lld r_hat=%lld max_additive=%lld bound=%lld\n", sp.subgraph.edge_count(),
                static_cast<long long>(sp.stats.r), static_cast<long long>(sp.stats.r_hat),
                static_cast<long long>(ds.max_additive), static_cast<long long>(sc.greedy_stop_multiplier * sp.stats.r_hat));
    return 0;
}
