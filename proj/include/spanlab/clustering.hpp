// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Coverage / low-overlap cluster decomposition by region growing.
//
// Repeatedly take the lowest uncovered vertex v and try radii
// rho_j = r * ceil(n^(j*eps)), j = 0..ceil(1/eps); keep the first rho_j with
// |B(v, 2 rho_j)| <= ceil(n^eps) * |B(v, rho_j) & U|, U the uncovered set.
// Counting only newly covered vertices charges every cluster to its fresh
// core, so sum |clusters| <= ceil(n^eps) * n whenever some level qualifies.
// If none does the top level is taken (rho_J >= r*n, so it covers the whole
// component) and the event is counted in `fallbacks`.
//
// ClusterRule::Literal compares against the full |B(v, rho_j)| instead. That
// rule always succeeds at the top level but does not bound the overlap: on
// dense expanders every small ball qualifies and each cluster is the whole
// graph.

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "spanlab/error.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/numeric.hpp"
#include "spanlab/shortest_paths.hpp"

namespace spanlab {

enum class ClusterRule { Charged, Literal };

struct ClusterDecomposition {
    std::vector<Vertex> centers;
    std::vector<Dist> radii;
    std::vector<int> levels; // j with radii[i] = r * ceil(n^(j eps))
    std::vector<std::vector<Vertex>> cores;    // B(v_i, r_i), sorted
    std::vector<std::vector<Vertex>> clusters; // B(v_i, 2 r_i), sorted
    std::vector<std::size_t> core_of;          // C(v)
    int kappa = 0;                             // largest level used
    std::int64_t growth_bound = 1;             // ceil(n^eps)
    double overlap_constant = 0;               // sum |clusters| / n
    std::size_t fallbacks = 0;                 // centers where no level passed the growth test

    [[nodiscard]] std::size_t size() const noexcept { return centers.size(); }
};

/// Radius ladder rho_0 < rho_1 < ... for the given n, r, eps.
[[nodiscard]] inline std::vector<Dist> cluster_radius_ladder(std::size_t n, Dist r, double eps) {
    const int top = static_cast<int>(std::ceil(1.0 / eps - 1e-12));
    std::vector<Dist> ladder;
    for (int j = 0; j <= top; ++j)
        ladder.push_back(r * ceil_pow(static_cast<long double>(std::max<std::size_t>(n, 1)), j * static_cast<long double>(eps)));
    return ladder;
}

[[nodiscard]] inline ClusterDecomposition decompose(const Graph& g, Dist r, double eps,
                                                    ClusterRule rule = ClusterRule::Charged) {
    require(eps > 0 && eps < 1, ErrorCode::InvalidEps, "eps must lie in (0, 1), got " + std::to_string(eps));
    require(r >= 1, ErrorCode::InvalidParams, "cluster radius r must be >= 1");
    const auto n = g.vertex_count();
    ClusterDecomposition d;
    d.growth_bound = ceil_pow(static_cast<long double>(std::max<std::size_t>(n, 1)), eps);
    d.core_of.assign(n, 0);
    const auto ladder = cluster_radius_ladder(n, r, eps);
    std::vector<char> covered(n, 0);
    std::vector<Dist> dist;
    std::size_t total = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (covered[v]) continue;
        sssp_into(g, v, dist, 2 * ladder.back());
        auto ball_size = [&](Dist radius, bool fresh_only) {
            std::int64_t count = 0;
            for (Vertex u = 0; u < n; ++u)
                if (reachable(dist[u]) && dist[u] <= radius && !(fresh_only && covered[u])) ++count;
            return count;
        };
        const bool fresh_only = rule == ClusterRule::Charged;
        int level = -1;
        for (int j = 0; j < static_cast<int>(ladder.size()); ++j) {
            if (ball_size(2 * ladder[j], false) <= d.growth_bound * ball_size(ladder[j], fresh_only)) {
                level = j;
                break;
            }
        }
        if (level < 0) {
            level = static_cast<int>(ladder.size()) - 1;
            ++d.fallbacks;
        }
        const Dist rho = ladder[level];
        std::vector<Vertex> core, cluster;
        for (Vertex u = 0; u < n; ++u) {
            if (!reachable(dist[u])) continue;
            if (dist[u] <= rho) core.push_back(u);
            if (dist[u] <= 2 * rho) cluster.push_back(u);
        }
        const std::size_t idx = d.centers.size();
        for (const Vertex u : core) {
            if (!covered[u]) {
                covered[u] = 1;
                d.core_of[u] = idx;
            }
        }
        total += cluster.size();
        d.centers.push_back(v);
        d.radii.push_back(rho);
        d.levels.push_back(level);
        d.kappa = std::max(d.kappa, level);
        d.cores.push_back(std::move(core));
        d.clusters.push_back(std::move(cluster));
    }
    d.overlap_constant = n == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(n);
    return d;
}

struct DecompositionCheck {
    bool coverage_ok = true;
    bool balls_exact = true;
    bool radius_ok = true;
    bool levels_ok = true;
    bool overlap_ok = true;
    std::size_t radius_levels = 0;
    double overlap_constant = 0;
    std::vector<std::string> violations;

    [[nodiscard]] bool ok() const noexcept { return coverage_ok && balls_exact && radius_ok && levels_ok && overlap_ok; }
};

/// Recomputes every core and cluster as an exact ball and checks coverage,
/// the radius range, the number of radius levels and the overlap sum.
[[nodiscard]] inline DecompositionCheck verify_decomposition(const Graph& g, const ClusterDecomposition& d, Dist r,
                                                             double eps) {
    DecompositionCheck rep;
    const auto n = g.vertex_count();
    const auto k = d.centers.size();
    auto flag = [&](bool& field, std::string msg) {
        field = false;
        rep.violations.push_back(std::move(msg));
    };
    if (d.radii.size() != k || d.cores.size() != k || d.clusters.size() != k || d.core_of.size() != n) {
        flag(rep.balls_exact, "decomposition arrays have inconsistent lengths");
        return rep;
    }
    const auto ladder = cluster_radius_ladder(n, r, eps);
    const std::int64_t growth = ceil_pow(static_cast<long double>(std::max<std::size_t>(n, 1)), eps);
    std::set<Dist> used;
    std::size_t total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const Dist ri = d.radii[i];
        if (ri < r || ri > ladder.back())
            flag(rep.radius_ok, "cluster " + std::to_string(i) + " radius " + std::to_string(ri) + " outside [" +
                                    std::to_string(r) + ", " + std::to_string(ladder.back()) + "]");
        used.insert(ri);
        if (d.centers[i] >= n) {
            flag(rep.balls_exact, "cluster " + std::to_string(i) + " center out of range");
            continue;
        }
        if (ball(g, d.centers[i], ri) != d.cores[i])
            flag(rep.balls_exact, "core " + std::to_string(i) + " is not B(v_i, r_i)");
        if (ball(g, d.centers[i], 2 * ri) != d.clusters[i])
            flag(rep.balls_exact, "cluster " + std::to_string(i) + " is not B(v_i, 2 r_i)");
        total += d.clusters[i].size();
    }
    for (Vertex v = 0; v < n; ++v) {
        const auto c = d.core_of[v];
        if (c >= k || !std::binary_search(d.cores[c].begin(), d.cores[c].end(), v))
            flag(rep.coverage_ok, "vertex " + std::to_string(v) + " not in the core of its assigned cluster");
    }
    rep.radius_levels = used.size();
    const auto max_levels = static_cast<std::size_t>(std::ceil(1.0 / eps - 1e-12)) + 1;
    if (rep.radius_levels > max_levels)
        flag(rep.levels_ok, std::to_string(rep.radius_levels) + " radius levels exceed " + std::to_string(max_levels));
    rep.overlap_constant = n == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(n);
    if (rep.overlap_constant > static_cast<double>(growth))
        flag(rep.overlap_ok, "overlap constant " + std::to_string(rep.overlap_constant) + " exceeds ceil(n^eps)=" +
                                 std::to_string(growth));
    return rep;
}

} // namespace spanlab
