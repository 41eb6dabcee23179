// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Plain-text edge lists: a header line "n m [weighted]" followed by m lines
// "u v" or "u v w". Saving always writes edges sorted by (min, max), so
// save -> load -> save is byte-identical.

#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spanlab/error.hpp"
#include "spanlab/graph.hpp"

namespace spanlab {

inline void write_edge_list(std::ostream& os, const Graph& g) {
    const auto edges = g.edges();
    os << g.vertex_count() << ' ' << edges.size();
    if (g.weighted()) os << " weighted";
    os << '\n';
    for (const auto& e : edges) {
        os << e.u << ' ' << e.v;
        if (g.weighted()) os << ' ' << e.w;
        os << '\n';
    }
}

[[nodiscard]] inline Graph read_edge_list(std::istream& is) {
    std::string header;
    // Skip blank lines before the header.
    while (header.find_first_not_of(" \t\r") == std::string::npos) {
        if (!std::getline(is, header)) fail(ErrorCode::ParseError, "missing header line");
    }
    std::istringstream hs(header);
    std::size_t n = 0, m = 0;
    if (!(hs >> n >> m)) fail(ErrorCode::ParseError, "header must be 'n m [weighted]'");
    std::string flag;
    bool weighted = false;
    if (hs >> flag) {
        if (flag != "weighted") fail(ErrorCode::ParseError, "unknown header flag '" + flag + "'");
        weighted = true;
    }
    Graph g(n, weighted);
    for (std::size_t i = 0; i < m; ++i) {
        std::string line;
        do {
            if (!std::getline(is, line))
                fail(ErrorCode::ParseError, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        } while (line.find_first_not_of(" \t\r") == std::string::npos);
        std::istringstream ls(line);
        long long u = -1, v = -1, w = 1;
        if (!(ls >> u >> v)) fail(ErrorCode::ParseError, "bad edge line: '" + line + "'");
        if (weighted && !(ls >> w)) fail(ErrorCode::ParseError, "missing weight: '" + line + "'");
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
            fail(ErrorCode::ParseError, "edge endpoint out of range: '" + line + "'");
        if (u == v) fail(ErrorCode::ParseError, "self-loop: '" + line + "'");
        if (w < 1) fail(ErrorCode::ParseError, "weight must be >= 1: '" + line + "'");
        if (!g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), w))
            fail(ErrorCode::ParseError, "duplicate edge: '" + line + "'");
    }
    return g;
}

inline void save_edge_list(const std::string& path, const Graph& g) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(ErrorCode::ParseError, "cannot open '" + path + "' for writing");
    write_edge_list(os, g);
}

[[nodiscard]] inline Graph load_edge_list(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
    return read_edge_list(is);
}

[[nodiscard]] inline std::string to_edge_list_string(const Graph& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

/// Graphviz export. `label` names a vertex; `group` (optional) returns a
/// cluster index per vertex or -1 for none, rendered as subgraph clusters.
inline void write_dot(std::ostream& os, const Graph& g, const std::function<std::string(Vertex)>& label = {},
                      const std::function<long long(Vertex)>& group = {}) {
    os << "graph G {\n";
    if (group) {
        std::map<long long, std::vector<Vertex>> members;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            const auto c = group(v);
            if (c >= 0) members[c].push_back(v);
        }
        for (const auto& [c, vs] : members) {
            os << "  subgraph cluster_" << c << " {\n";
            for (const Vertex v : vs) os << "    " << v << ";\n";
            os << "  }\n";
        }
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        os << "  " << v;
        if (label) os << " [label=\"" << label(v) << "\"]";
        os << ";\n";
    }
    for (const auto& e : g.edges()) {
        os << "  " << e.u << " -- " << e.v;
        if (g.weighted()) os << " [label=\"" << e.w << "\"]";
        os << ";\n";
    }
    os << "}\n";
}

} // namespace spanlab
