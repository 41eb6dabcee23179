// Builds the tiny composed instance, audits it, and shows what deleting one
// edge per inner copy does to the first few critical pairs.
#include <cstdio>

#include "spanlab/spanlab.hpp"

int main() {
    using namespace spanlab;
    const auto inst = build_tiny_instance();
    std::printf("composed: n=%zu m=%zu z=%lld pairs=%zu\n", inst.graph.vertex_count(), inst.graph.edge_count(),
                static_cast<long long>(inst.z), inst.pairs.size());
    const auto rep = check_composed_properties(inst);
    for (const auto& c : rep.checks) std::printf("  %-22s %s\n", c.name.c_str(), c.pass ? "pass" : "FAIL");

    for (std::size_t i = 0; i < std::min<std::size_t>(4, inst.pairs.size()); ++i) {
        const auto rec = deletion_stretch_experiment(inst, i, DeletionPolicy::OneEdgePerInnerCopy);
        if (rec.stretch)
            std::printf("pair %zu: %zu edges deleted, %lld -> %lld\n", i, rec.deleted.size(),
                        static_cast<long long>(rec.before), static_cast<long long>(*rec.after));
        else
            std::printf("pair %zu: %zu edges deleted, %lld -> disconnected\n", i, rec.deleted.size(),
                        static_cast<long long>(rec.before));
    }
    const auto adv = pigeonhole_adversary(inst, parity_filter(inst.graph));
    std::printf("parity filter keeps %zu of %zu edges\n", parity_filter(inst.graph).edge_count(), inst.graph.edge_count());
    std::printf("adversary: pair %zu, %zu/%zu path edges missing\n", adv.pair_index, adv.missing, adv.length);
    return rep.ok() ? 0 : 1;
}
