// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Pieces shared by the emulator and spanner procedures: configuration,
// vertex sampling, the r / r_hat arithmetic and the greedy path-buying loop.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spanlab/clustering.hpp"
#include "spanlab/error.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/numeric.hpp"
#include "spanlab/preserver.hpp"
#include "spanlab/random.hpp"
#include "spanlab/shortest_paths.hpp"

namespace spanlab {

struct PathBuyingConfig {
    double eps = 0.1;
    std::optional<Dist> r_override;
    double alpha = 0.25;
    double sampling_constant = 4;
    double c_hat = 3;
    Dist greedy_stop_multiplier = 16;
    Dist prefix_err_multiplier = 1;
    std::uint64_t seed = 0;
    // Desk-scale knobs: force r_hat, or the small-cluster size threshold.
    std::optional<Dist> r_hat_override;
    std::optional<double> small_threshold_override;
};

/// One call of the emulator or spanner procedure (recursive calls included).
struct LevelRecord {
    int depth = 0;
    std::size_t n = 0;
    std::size_t edges = 0;
    double alpha = 0;
    Dist r = 0;
    Dist r_hat = 0;
    std::optional<Dist> measured_distortion; // filled when level audits are on
};

struct GreedyRound {
    Vertex s = 0, t = 0, x = 0, y = 0;
    Dist before = 0; // d_H(s, t) - d_G(s, t) when picked
    Dist after = 0;  // same after the insertion
};

struct GreedyOutcome {
    std::size_t rounds = 0;
    std::size_t edges_added = 0;
    std::size_t paths_added = 0;
    std::vector<GreedyRound> trace;
};

namespace detail {

inline void validate(const PathBuyingConfig& cfg) {
    require(cfg.eps > 0 && cfg.eps < 1, ErrorCode::InvalidEps, "eps must lie in (0, 1)");
    require(cfg.alpha > 0 && cfg.alpha < 1, ErrorCode::InvalidAlpha, "alpha must lie in (0, 1)");
    require(cfg.sampling_constant > 0, ErrorCode::InvalidConfig, "sampling_constant must be positive");
    require(cfg.c_hat >= 0, ErrorCode::InvalidConfig, "c_hat must be non-negative");
    require(cfg.prefix_err_multiplier >= 1 && cfg.greedy_stop_multiplier >= 1, ErrorCode::InvalidConfig,
            "multipliers must be >= 1");
    // The greedy round leaves the picked pair within 2 * prefix * r_hat; it
    // must drop below the stop threshold or the loop could revisit it.
    require(cfg.greedy_stop_multiplier > 2 * cfg.prefix_err_multiplier, ErrorCode::InvalidConfig,
            "greedy_stop_multiplier must exceed 2 * prefix_err_multiplier");
    require(!cfg.r_override || *cfg.r_override >= 1, ErrorCode::InvalidConfig, "r_override must be >= 1");
    require(!cfg.r_hat_override || *cfg.r_hat_override >= 0, ErrorCode::InvalidConfig, "r_hat_override must be >= 0");
}

/// r_hat = ceil(r * n^(c_hat * eps)).
inline Dist r_hat_for(std::size_t n, Dist r, const PathBuyingConfig& cfg) {
    if (cfg.r_hat_override) return *cfg.r_hat_override;
    return ceil_pow(static_cast<long double>(n), static_cast<long double>(cfg.c_hat) * cfg.eps) * r;
}

struct Sample {
    std::vector<char> in;
    std::size_t count = 0;
    Dist max_gap = 0; // max over reachable v of d(v, V'); kUnreachable if V' misses a component
};

inline Sample sample_vertices(const Graph& g, Dist r, const PathBuyingConfig& cfg) {
    const auto n = g.vertex_count();
    const double p = std::min(1.0, cfg.sampling_constant * std::log(static_cast<double>(n)) / static_cast<double>(r));
    Rng rng(mix64(cfg.seed));
    Sample out;
    out.in.assign(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (rng.bernoulli(p)) {
            out.in[v] = 1;
            ++out.count;
        }
    // Multi-source BFS from V' for the "a sample within r" check.
    std::vector<Dist> dist(n, kUnreachable);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v)
        if (out.in[v]) {
            dist[v] = 0;
            queue.push_back(v);
        }
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (const auto& nb : g.neighbors(queue[h]))
            if (!reachable(dist[nb.to])) {
                dist[nb.to] = dist[queue[h]] + 1;
                queue.push_back(nb.to);
            }
    for (const Dist d : dist) {
        if (!reachable(d)) {
            out.max_gap = kUnreachable;
            break;
        }
        out.max_gap = std::max(out.max_gap, d);
    }
    return out;
}

inline double log2_ceil_sq(std::size_t n) {
    const auto l = static_cast<double>(ceil_log2(std::max<std::size_t>(n, 2)));
    return l * l;
}

} // namespace detail

/// Greedy path buying. While some pair has d_H > d_G + stop * r_hat: take the
/// lexicographically least such pair (s, t), its canonical shortest path pi,
/// the farthest x on pi with pi(s, x) pairwise within +prefix * r_hat in H,
/// symmetrically y from t, and hand (x, y) to `insert`. Passes repeat until
/// one finds no violation.
///
/// `insert(path, ix, iy)` receives pi and the indices of x and y on it and
/// returns the number of new edges. Every round asserts d_H(s, t) <=
/// d_G(s, t) + 2 * prefix * r_hat afterwards.
template <class Insert>
GreedyOutcome greedy_phase(const Graph& g, Graph& h, Dist r_hat, Dist stop_mult, Dist prefix_mult, Insert&& insert) {
    require(h.vertex_count() == g.vertex_count(), ErrorCode::VertexSetMismatch, "H must share G's vertex set");
    require(stop_mult > 2 * prefix_mult && prefix_mult >= 1, ErrorCode::InvalidConfig,
            "greedy_stop_multiplier must exceed 2 * prefix_err_multiplier");
    const auto n = g.vertex_count();
    const Dist stop = stop_mult * r_hat;
    const Dist prefix = prefix_mult * r_hat;
    const std::size_t guard = n * n;
    GreedyOutcome out;
    std::vector<Dist> dg, dh, scratch;
    auto violated = [&](Vertex t) { return reachable(dg[t]) && (!reachable(dh[t]) || dh[t] > dg[t] + stop); };

    // Largest k such that path[lo..k] (or path[k..hi] when backward) is
    // pairwise within +prefix in H. `along` are prefix sums of G-weights.
    auto scan = [&](const std::vector<Vertex>& path, const std::vector<Dist>& along, bool backward) {
        const std::size_t len = path.size();
        std::size_t good = 0; // number of accepted vertices beyond the first
        for (std::size_t step = 1; step < len; ++step) {
            const std::size_t idx = backward ? len - 1 - step : step;
            sssp_into(h, path[idx], scratch);
            bool ok = true;
            for (std::size_t prev = 0; prev < step && ok; ++prev) {
                const std::size_t j = backward ? len - 1 - prev : prev;
                const Dist d_g = along[std::max(idx, j)] - along[std::min(idx, j)];
                ok = reachable(scratch[path[j]]) && scratch[path[j]] <= d_g + prefix;
            }
            if (!ok) break;
            good = step;
        }
        return backward ? len - 1 - good : good;
    };

    bool dirty = true;
    while (dirty) {
        dirty = false;
        for (Vertex s = 0; s < n; ++s) {
            sssp_into(g, s, dg);
            sssp_into(h, s, dh);
            for (Vertex t = s + 1; t < n; ++t) {
                if (!violated(t)) continue;
                require(++out.rounds <= guard, ErrorCode::NonterminationGuard, "greedy phase exceeded n^2 rounds");
                const auto path = consistent_shortest_path(g, s, t);
                std::vector<Dist> along(path.size(), 0);
                for (std::size_t i = 1; i < path.size(); ++i) along[i] = along[i - 1] + *g.weight(path[i - 1], path[i]);
                const auto ix = scan(path, along, false);
                const auto iy = scan(path, along, true);
                require(ix < iy, ErrorCode::SpecViolation,
                        "greedy: x does not precede y on the path for (" + std::to_string(s) + "," + std::to_string(t) + ")");
                const Dist before = reachable(dh[t]) ? dh[t] - dg[t] : kUnreachable;
                const auto added = insert(path, ix, iy);
                out.edges_added += added;
                sssp_into(h, s, dh);
                const Dist after = dh[t] - dg[t];
                require(reachable(dh[t]) && after <= 2 * prefix, ErrorCode::SpecViolation,
                        "greedy round left (" + std::to_string(s) + "," + std::to_string(t) + ") at +" +
                            std::to_string(after) + " > 2*prefix*r_hat");
                out.trace.push_back({s, t, path[ix], path[iy], before, after});
                dirty = true;
            }
        }
    }
    return out;
}

} // namespace spanlab
