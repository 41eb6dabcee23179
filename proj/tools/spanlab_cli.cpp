// Copyright (c) spanlab contributors.
// SPDX-License-Identifier: Apache-2.0
//
// spanlab: generate graphs, build emulators / spanners / preservers, build
// and audit hard instances, run sweeps.
//
// Exit codes: 0 ok, 1 operation error, 2 usage error, 3 audit failure.
// Log level from SPANLAB_LOG (trace, debug, info, warn, error, off).

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "spanlab/json_io.hpp"
#include "spanlab/recursion.hpp"
#include "spanlab/spanlab.hpp"

namespace {

using namespace spanlab;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitOperation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAudit = 3;

constexpr const char* kToolVersion = "0.3.0";

struct Run {
    std::string command;
    bool timing = true;
    Clock::time_point start = Clock::now();
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::uint64_t seed = 0;
    const CLI::App* sub = nullptr;
};

Json parameters(const CLI::App& sub) {
    Json p = Json::object();
    for (const auto* opt : sub.get_options()) {
        const auto name = opt->get_name(false, true);
        if (name.empty() || name == "--help" || name == "-h") continue;
        const std::string key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
        if (opt->get_expected_min() == 0) {
            p[key] = opt->count() > 0;
        } else if (opt->count() > 0) {
            const auto& res = opt->results();
            p[key] = res.size() == 1 ? Json(res.front()) : Json(res);
        } else if (!opt->get_default_str().empty()) {
            p[key] = opt->get_default_str();
        }
    }
    return p;
}

Json manifest(const Run& run) {
    Json m{{"command", run.command},
           {"parameters", run.sub ? parameters(*run.sub) : Json::object()},
           {"seed", run.seed},
           {"inputs", run.inputs},
           {"outputs", run.outputs},
           {"tool_version", kToolVersion}};
    if (run.timing) m["wall_seconds"] = std::chrono::duration<double>(Clock::now() - run.start).count();
    return m;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        write_text(path, text);
    }
}

void emit_report(Run& run, const std::string& path, Json body) {
    if (!path.empty() && path != "-") run.outputs.push_back(path);
    body["manifest"] = manifest(run);
    emit(path, body.dump(2) + "\n");
}

Graph load_graph(Run& run, const std::string& path) {
    run.inputs.push_back(path);
    spdlog::debug("loading {}", path);
    return load_edge_list(path);
}

void save_graph(Run& run, const std::string& path, const Graph& g) {
    if (path.empty() || path == "-") {
        write_edge_list(std::cout, g);
        return;
    }
    run.outputs.push_back(path);
    save_edge_list(path, g);
}

std::vector<Edge> parse_edges(const std::string& text) {
    // "u-v,u-v,..."
    std::vector<Edge> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        require(dash != std::string::npos, ErrorCode::ParseError, "edge '" + item + "' is not of the form u-v");
        out.push_back({static_cast<Vertex>(std::stoul(item.substr(0, dash))), static_cast<Vertex>(std::stoul(item.substr(dash + 1))), 1});
    }
    return out;
}

// ---- shared option groups ---------------------------------------------------

struct PathBuyingFlags {
    double eps = 0.1;
    double sampling_constant = 4;
    double c_hat = 3;
    Dist stop = 0; // 0: the construction's default
    Dist prefix = 1;
    Dist r = 0;
    Dist r_hat = 0;
    double small_threshold = -1;

    void add(CLI::App* sub) {
        sub->add_option("--eps", eps, "cluster growth exponent eps")->capture_default_str();
        sub->add_option("--sampling-constant", sampling_constant, "sampling probability c ln n / r")->capture_default_str();
        sub->add_option("--c-hat", c_hat, "r_hat = n^(c_hat eps) r")->capture_default_str();
        sub->add_option("--stop", stop, "greedy stop multiplier (0 = default)")->capture_default_str();
        sub->add_option("--prefix", prefix, "greedy prefix error multiplier")->capture_default_str();
        sub->add_option("--r", r, "force the cluster radius r (0 = formula)")->capture_default_str();
        sub->add_option("--r-hat", r_hat, "force r_hat (0 = formula)")->capture_default_str();
        sub->add_option("--small-threshold", small_threshold, "force the small-cluster size threshold (<0 = formula)")
            ->capture_default_str();
    }

    void apply(PathBuyingConfig& cfg, std::uint64_t seed) const {
        cfg.eps = eps;
        cfg.sampling_constant = sampling_constant;
        cfg.c_hat = c_hat;
        if (stop > 0) cfg.greedy_stop_multiplier = stop;
        cfg.prefix_err_multiplier = prefix;
        cfg.seed = seed;
        if (r > 0) cfg.r_override = r;
        if (r_hat > 0) cfg.r_hat_override = r_hat;
        if (small_threshold >= 0) cfg.small_threshold_override = small_threshold;
    }
};

// ---- subcommands ------------------------------------------------------------

using Action = std::function<int(Run&)>;

Action add_gen(CLI::App& app) {
    auto* sub = app.add_subcommand("gen", "generate a graph as an edge list");
    struct Opts {
        std::string kind = "gnm";
        std::size_t n = 0, m = 0, rows = 0, cols = 0;
        std::uint64_t seed = 0;
        std::string out = "-";
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--kind", o->kind, "gnm | cycle | path | grid | tree")->capture_default_str();
    sub->add_option("--n", o->n, "vertices");
    sub->add_option("--m", o->m, "edges (gnm)");
    sub->add_option("--rows", o->rows, "grid rows");
    sub->add_option("--cols", o->cols, "grid columns");
    sub->add_option("--seed", o->seed, "random seed")->capture_default_str();
    sub->add_option("--out,-o", o->out, "output edge list ('-' = stdout)")->capture_default_str();
    return [o, sub](Run& run) {
        run.sub = sub;
        run.seed = o->seed;
        const auto kind = parse_graph_kind(o->kind);
        if (!kind) throw CLI::ValidationError("--kind", "unknown graph kind " + o->kind);
        const auto g = gen_graph(*kind, {o->n, o->m, o->rows, o->cols}, o->seed);
        spdlog::info("generated {} with n={} m={}", o->kind, g.vertex_count(), g.edge_count());
        save_graph(run, o->out, g);
        return kExitOk;
    };
}

Action add_build_emulator(CLI::App& app) {
    auto* sub = app.add_subcommand("build-emulator", "recursive additive emulator");
    struct Opts {
        std::string in, out = "-", report;
        int depth = 1;
        double alpha = -1;
        std::uint64_t seed = 0;
        bool audit = false;
        std::size_t cap = kDefaultAuditCap;
        PathBuyingFlags pb;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--in,-i", o->in, "input edge list")->required();
    sub->add_option("--out,-o", o->out, "emulator edge list (weighted)")->capture_default_str();
    sub->add_option("--report", o->report, "JSON report path");
    sub->add_option("--depth", o->depth, "recursion depth")->capture_default_str();
    sub->add_option("--alpha", o->alpha, "top-level alpha (<0 = schedule value)")->capture_default_str();
    sub->add_option("--seed", o->seed, "random seed")->capture_default_str();
    sub->add_flag("--audit", o->audit, "exact distortion audit of every level");
    sub->add_option("--cap", o->cap, "APSP audit cap")->capture_default_str();
    o->pb.add(sub);
    return [o, sub](Run& run) {
        run.sub = sub;
        run.seed = o->seed;
        const auto g = load_graph(run, o->in);
        EmulatorConfig cfg;
        o->pb.apply(cfg, o->seed);
        const auto em = run_recursive_emulator(g, o->depth, cfg, {o->audit, o->cap});
        save_graph(run, o->out, em.graph);
        Json body{{"kind", "emulator"}, {"n", g.vertex_count()}, {"m", g.edge_count()}, {"edges", em.graph.edge_count()},
                  {"stats", to_json(em.stats)}, {"levels", to_json(em.levels)}};
        int code = kExitOk;
        if (o->audit) {
            const auto rep = additive_distortion(g, em.graph);
            const auto bound = cfg.greedy_stop_multiplier * em.stats.r_hat;
            body["distortion"] = to_json(rep);
            body["bound"] = bound;
            body["pass"] = rep.max_additive <= bound;
            if (rep.max_additive > bound) code = kExitAudit;
        }
        if (!o->report.empty()) emit_report(run, o->report, body);
        return code;
    };
}

Action add_build_spanner(CLI::App& app) {
    auto* sub = app.add_subcommand("build-spanner", "recursive additive spanner");
    struct Opts {
        std::string in, out = "-", report, paths;
        int depth = 1;
        std::uint64_t seed = 0;
        bool audit = false, figure_threshold = false;
        std::size_t cap = kDefaultAuditCap;
        PathBuyingFlags pb;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--in,-i", o->in, "input edge list")->required();
    sub->add_option("--out,-o", o->out, "spanner edge list")->capture_default_str();
    sub->add_option("--report", o->report, "JSON report path");
    sub->add_option("--paths", o->paths, "JSON path system of the top level");
    sub->add_option("--depth", o->depth, "recursion depth")->capture_default_str();
    sub->add_option("--seed", o->seed, "random seed")->capture_default_str();
    sub->add_flag("--audit", o->audit, "exact audits: subgraph, distortion, path consistency");
    sub->add_flag("--figure-threshold", o->figure_threshold, "small clusters by r^(4/3) without the log factor");
    sub->add_option("--cap", o->cap, "APSP audit cap")->capture_default_str();
    o->pb.add(sub);
    return [o, sub](Run& run) {
        run.sub = sub;
        run.seed = o->seed;
        const auto g = load_graph(run, o->in);
        SpannerConfig cfg;
        o->pb.apply(cfg, o->seed);
        cfg.figure_threshold = o->figure_threshold;
        const auto sp = run_recursive_spanner(g, o->depth, cfg, {o->audit, o->cap});
        save_graph(run, o->out, sp.subgraph);
        if (!o->paths.empty()) {
            run.outputs.push_back(o->paths);
            write_text(o->paths, to_json(sp.path_system).dump() + "\n");
        }
        Json body{{"kind", "spanner"}, {"n", g.vertex_count()}, {"m", g.edge_count()}, {"edges", sp.subgraph.edge_count()},
                  {"stats", to_json(sp.stats)}, {"levels", to_json(sp.levels)}, {"paths", sp.path_system.size()}};
        int code = kExitOk;
        if (o->audit) {
            const auto rep = additive_distortion(g, sp.subgraph, std::nullopt, true);
            const auto cons = check_consistency(sp.path_system);
            const auto bound = cfg.greedy_stop_multiplier * sp.stats.r_hat;
            body["distortion"] = to_json(rep);
            body["consistency"] = to_json(cons);
            body["bound"] = bound;
            const bool pass = rep.max_additive <= bound && cons.ok();
            body["pass"] = pass;
            if (!pass) code = kExitAudit;
        }
        if (!o->report.empty()) emit_report(run, o->report, body);
        return code;
    };
}

Action add_build_preserver(CLI::App& app) {
    auto* sub = app.add_subcommand("build-preserver", "pairwise distance preserver from consistent shortest paths");
    struct Opts {
        std::string in, out = "-", report, paths;
        std::size_t pairs = 0;
        std::uint64_t seed = 0;
        bool audit = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--in,-i", o->in, "input edge list")->required();
    sub->add_option("--out,-o", o->out, "preserver edge list")->capture_default_str();
    sub->add_option("--report", o->report, "JSON report path");
    sub->add_option("--paths", o->paths, "JSON path system");
    sub->add_option("--pairs", o->pairs, "number of random demand pairs")->required();
    sub->add_option("--seed", o->seed, "random seed for the demand pairs")->capture_default_str();
    sub->add_flag("--audit", o->audit, "exact check of every pair and path consistency");
    return [o, sub](Run& run) {
        run.sub = sub;
        run.seed = o->seed;
        const auto g = load_graph(run, o->in);
        const auto pairs = random_pairs(g.vertex_count(), o->pairs, o->seed);
        const auto pres = build_preserver(g, pairs);
        save_graph(run, o->out, pres.graph);
        if (!o->paths.empty()) {
            run.outputs.push_back(o->paths);
            write_text(o->paths, to_json(pres.paths).dump() + "\n");
        }
        Json jp = Json::array();
        for (const auto& [a, b] : pairs) jp.push_back({a, b});
        Json body{{"kind", "preserver"}, {"edges", pres.graph.edge_count()}, {"size_bound", pres.size_bound}, {"pairs", jp}};
        int code = kExitOk;
        if (o->audit) {
            const auto rep = additive_distortion(g, pres.graph, pairs, true);
            const auto cons = check_consistency(pres.paths);
            body["distortion"] = to_json(rep);
            body["consistency"] = to_json(cons);
            const bool pass = rep.max_additive == 0 && cons.ok();
            body["pass"] = pass;
            if (!pass) code = kExitAudit;
        }
        if (!o->report.empty()) emit_report(run, o->report, body);
        return code;
    };
}

Action add_build_mult(CLI::App& app) {
    auto* sub = app.add_subcommand("build-mult", "greedy (2k-1) multiplicative spanner");
    struct Opts {
        std::string in, out = "-", report;
        std::size_t k = 0;
        bool audit = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--in,-i", o->in, "input edge list")->required();
    sub->add_option("--out,-o", o->out, "spanner edge list")->capture_default_str();
    sub->add_option("--report", o->report, "JSON report path");
    sub->add_option("--k", o->k, "stretch parameter (0 = ceil(log2 n))")->capture_default_str();
    sub->add_flag("--audit", o->audit, "per-edge stretch check");
    return [o, sub](Run& run) {
        run.sub = sub;
        const auto g = load_graph(run, o->in);
        const auto k = o->k ? o->k : default_stretch_parameter(g.vertex_count());
        const auto h = multiplicative_spanner(g, k);
        save_graph(run, o->out, h);
        Json body{{"kind", "multiplicative"}, {"k", k}, {"edges", h.edge_count()}};
        int code = kExitOk;
        if (o->audit) {
            const auto worst = max_edge_stretch(g, h, static_cast<Dist>(2 * k - 1));
            const bool pass = g.edge_count() == 0 || (reachable(worst) && worst <= static_cast<Dist>(2 * k - 1));
            body["max_edge_stretch"] = reachable(worst) ? Json(worst) : Json("exceeds 2k-1");
            body["pass"] = pass;
            if (!pass) code = kExitAudit;
        }
        if (!o->report.empty()) emit_report(run, o->report, body);
        return code;
    };
}

void save_instance(Run& run, const std::string& stem, const Graph& g, const Json& side) {
    run.outputs.push_back(stem + ".edges");
    run.outputs.push_back(stem + ".json");
    save_bundle(stem, g, side);
}

Action add_lb_gen(CLI::App& app) {
    auto* sub = app.add_subcommand("lb-gen", "build a preset hard instance (edge list + JSON sidecar)");
    struct Opts {
        std::string preset = "tiny";
        std::string out = "instance";
        bool no_prune = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--preset", o->preset, "tiny | inner-c2 | inner-c3")->capture_default_str();
    sub->add_option("--out,-o", o->out, "output stem: <stem>.edges, <stem>.json")->capture_default_str();
    sub->add_flag("--no-prune", o->no_prune, "keep inner edges that lie on no composed path");
    return [o, sub](Run& run) {
        run.sub = sub;
        const auto preset = parse_lb_preset(o->preset);
        if (!preset) throw CLI::ValidationError("--preset", "unknown preset " + o->preset);
        if (*preset == LbPreset::Tiny) {
            const auto inst = build_tiny_instance({!o->no_prune});
            spdlog::info("composed instance: n={} m={} z={} pairs={}", inst.graph.vertex_count(), inst.graph.edge_count(),
                         inst.z, inst.pairs.size());
            save_instance(run, o->out, inst.graph, sidecar(inst));
        } else {
            const auto inner = build_inner_graph(preset_inner_params(*preset));
            save_instance(run, o->out, inner.graph, sidecar(inner));
        }
        return kExitOk;
    };
}

Action add_lb_compose(CLI::App& app) {
    auto* sub = app.add_subcommand("lb-compose", "compose an instance from explicit inner and outer parameters");
    struct Opts {
        std::int64_t c = 2, r_i = 0, x_i = 0, y_i = 0;
        std::int64_t x_o = 0, y_o = 0, r_o = 0;
        double psi1 = 0.5, psi2 = 0.02;
        bool widened = false, no_prune = false;
        std::string outer_vectors;
        std::string out = "instance";
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--c", o->c, "number of inner vectors")->capture_default_str();
    sub->add_option("--r-i", o->r_i, "inner r (0 = smallest admissible)")->capture_default_str();
    sub->add_option("--x-i", o->x_i, "inner x (0 = smallest admissible)")->capture_default_str();
    sub->add_option("--y-i", o->y_i, "inner y (0 = smallest admissible)")->capture_default_str();
    sub->add_option("--x-o", o->x_o, "outer x")->required();
    sub->add_option("--y-o", o->y_o, "outer y (0 = 2 x_O)")->capture_default_str();
    sub->add_option("--r-o", o->r_o, "outer r for the striped set");
    sub->add_option("--psi1", o->psi1, "sector angle of the striped set")->capture_default_str();
    sub->add_option("--psi2", o->psi2, "gap angle between stripes")->capture_default_str();
    sub->add_flag("--widened", o->widened, "annulus [r-1, r] for the outer set");
    sub->add_option("--outer-vectors", o->outer_vectors, "JSON vector set with stripes, replaces --r-o/--psi*");
    sub->add_flag("--no-prune", o->no_prune, "keep inner edges that lie on no composed path");
    sub->add_option("--out,-o", o->out, "output stem")->capture_default_str();
    return [o, sub](Run& run) {
        run.sub = sub;
        auto ip = search_inner_params(o->c);
        if (o->r_i) ip.r = o->r_i;
        if (o->x_i) ip.x = o->x_i;
        if (o->y_i) ip.y = o->y_i;
        const auto inner = build_inner_graph(ip);
        ConvexVectorSet w_o;
        if (!o->outer_vectors.empty()) {
            run.inputs.push_back(o->outer_vectors);
            w_o = convex_set_from_json(load_json(o->outer_vectors));
        } else {
            if (o->r_o == 0) throw CLI::ValidationError("--r-o", "required unless --outer-vectors is given");
            w_o = build_striped_set(o->r_o, static_cast<std::size_t>(o->c), o->psi1, o->psi2, {0.25, o->widened});
        }
        const auto outer = build_outer_graph(o->x_o, o->y_o ? o->y_o : 2 * o->x_o, w_o);
        const auto phi = default_phi(w_o, inner);
        const auto inst = compose(outer, inner, phi, {!o->no_prune});
        save_instance(run, o->out, inst.graph, sidecar(inst));
        return kExitOk;
    };
}

Action add_audit(CLI::App& app) {
    auto* sub = app.add_subcommand("audit", "exact audits; exit 3 when a check fails");
    sub->set_help_flag("--help", "print this help message and exit");
    struct Opts {
        std::string mode = "distortion";
        std::string g, h, instance = "instance", paths, report = "-";
        bool subgraph = false;
        std::size_t cap = kDefaultAuditCap;
        std::size_t star = 0;
        std::int64_t r = 0;
        double tau = 0.25;
        bool widened = false;
        std::size_t sector_samples = 16;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--mode", o->mode, "distortion | base | inner | composed | gdp | convex | consistency")
        ->capture_default_str();
    sub->add_option("--g", o->g, "host graph edge list (distortion)");
    sub->add_option("--h", o->h, "candidate edge list (distortion); defaults to --g");
    sub->add_flag("--subgraph", o->subgraph, "also require H to be a subgraph of G");
    sub->add_option("--cap", o->cap, "APSP audit cap")->capture_default_str();
    sub->add_option("--instance", o->instance, "instance stem (base, inner, composed, gdp)")->capture_default_str();
    sub->add_option("--star", o->star, "star pair index (gdp)")->capture_default_str();
    sub->add_option("--paths", o->paths, "JSON path system (consistency)");
    sub->add_option("--r", o->r, "radius (convex)");
    sub->add_option("--tau", o->tau, "thinning factor (convex)")->capture_default_str();
    sub->add_flag("--widened", o->widened, "annulus [r-1, r] (convex)");
    sub->add_option("--sector-samples", o->sector_samples, "window size for the sector density ratio")->capture_default_str();
    sub->add_option("--report", o->report, "JSON report path ('-' = stdout)")->capture_default_str();
    return [o, sub](Run& run) {
        run.sub = sub;
        auto load_side = [&](const std::string& stem) {
            run.inputs.push_back(stem + ".json");
            return load_json(stem + ".json");
        };
        Json body;
        bool pass = true;
        if (o->mode == "distortion") {
            if (o->g.empty() && o->h.empty()) throw CLI::ValidationError("--g", "distortion mode needs --g or --h");
            const auto g_path = o->g.empty() ? o->h : o->g;
            const auto h_path = o->h.empty() ? o->g : o->h;
            const auto g = load_graph(run, g_path);
            const auto h = h_path == g_path ? g : load_graph(run, h_path);
            require(g.vertex_count() <= o->cap, ErrorCode::CapExceeded,
                    "graph with " + std::to_string(g.vertex_count()) + " vertices exceeds the audit cap");
            const auto rep = additive_distortion(g, h, std::nullopt, o->subgraph);
            body = {{"mode", "distortion"}, {"distortion", to_json(rep)}, {"fingerprint_g", hex64(fingerprint(g))},
                    {"fingerprint_h", hex64(fingerprint(h))}};
        } else if (o->mode == "base" || o->mode == "inner") {
            const auto side = load_side(o->instance);
            const auto bg = base_graph_from(load_graph(run, o->instance + ".edges"), side);
            const auto rep = o->mode == "inner" ? check_inner_graph_properties(bg) : check_base_graph_properties(bg);
            body = to_json(rep);
            pass = rep.ok();
        } else if (o->mode == "composed") {
            const auto side = load_side(o->instance);
            const auto inst = composed_from(load_graph(run, o->instance + ".edges"), side);
            auto rep = check_composed_properties(inst);
            AuditCheck fp{"sidecar_fingerprint", true, {}, {}};
            if (side.contains("fingerprint") && side.at("fingerprint").get<std::string>() != hex64(rep.fingerprint)) {
                fp.pass = false;
                fp.witness = "sidecar records " + side.at("fingerprint").get<std::string>() + ", instance hashes to " +
                             hex64(rep.fingerprint);
            }
            rep.checks.push_back(fp);
            body = to_json(rep);
            pass = rep.ok();
        } else if (o->mode == "gdp") {
            const auto side = load_side(o->instance);
            const auto bg = base_graph_from(load_graph(run, o->instance + ".edges"), side);
            const auto chk = check_graph_distance_property(bg, o->star);
            body = to_json(chk);
            pass = chk.ok();
        } else if (o->mode == "convex") {
            if (o->r <= 0) throw CLI::ValidationError("--r", "convex mode needs --r");
            const auto w = build_convex_set(o->r, {o->tau, o->widened});
            const auto cis = check_cis_properties(w.vectors, o->r, o->sector_samples, o->widened);
            const auto sc = check_strong_convexity(w.vectors);
            body = {{"mode", "convex"}, {"set", to_json(w)}, {"cis", to_json(cis)}, {"strongly_convex", sc.ok}};
            pass = cis.ok() && sc.ok;
        } else if (o->mode == "consistency") {
            if (o->paths.empty()) throw CLI::ValidationError("--paths", "consistency mode needs --paths");
            run.inputs.push_back(o->paths);
            const auto rep = check_consistency(path_system_from_json(load_json(o->paths)));
            body = to_json(rep);
            pass = rep.ok();
        } else {
            throw CLI::ValidationError("--mode", "unknown audit mode " + o->mode);
        }
        body["pass"] = pass;
        emit_report(run, o->report, body);
        return pass ? kExitOk : kExitAudit;
    };
}

Action add_stretch(CLI::App& app) {
    auto* sub = app.add_subcommand("stretch", "deletion stretch and pigeonhole adversary on a composed instance");
    struct Opts {
        std::string instance = "instance", policy = "one_edge_per_inner_copy", edges, candidate, report = "-";
        std::size_t pair = 0;
        bool adversary = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--instance", o->instance, "instance stem")->capture_default_str();
    sub->add_option("--pair", o->pair, "composed pair index")->capture_default_str();
    sub->add_option("--policy", o->policy, "one_edge_per_inner_copy | half_of_path | explicit")->capture_default_str();
    sub->add_option("--edges", o->edges, "explicit deleted edges: u-v,u-v,...");
    sub->add_flag("--adversary", o->adversary, "run the pigeonhole adversary instead");
    sub->add_option("--candidate", o->candidate, "candidate subgraph edge list (default: parity filter)");
    sub->add_option("--report", o->report, "JSON report path ('-' = stdout)")->capture_default_str();
    return [o, sub](Run& run) {
        run.sub = sub;
        run.inputs.push_back(o->instance + ".json");
        const auto inst = composed_from(load_graph(run, o->instance + ".edges"), load_json(o->instance + ".json"));
        Json body;
        if (o->adversary) {
            const auto cand = o->candidate.empty() ? parity_filter(inst.graph) : load_graph(run, o->candidate);
            body = {{"mode", "pigeonhole"}, {"candidate", o->candidate.empty() ? "parity" : o->candidate},
                    {"result", to_json(pigeonhole_adversary(inst, cand))}};
        } else {
            const auto policy = parse_deletion_policy(o->policy);
            if (!policy) throw CLI::ValidationError("--policy", "unknown policy " + o->policy);
            const auto edges = o->edges.empty() ? std::vector<Edge>{} : parse_edges(o->edges);
            body = {{"mode", "deletion"}, {"policy", o->policy},
                    {"result", to_json(deletion_stretch_experiment(inst, o->pair, *policy, edges))}};
        }
        emit_report(run, o->report, body);
        return kExitOk;
    };
}

Action add_schedule(CLI::App& app) {
    auto* sub = app.add_subcommand("schedule", "exponent recurrence as exact fractions");
    struct Opts {
        std::string kind = "emulator";
        int iters = 5;
        bool json = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--kind", o->kind, "emulator | spanner")->capture_default_str();
    sub->add_option("--iters", o->iters, "iterations after a_0")->capture_default_str();
    sub->add_flag("--json", o->json, "JSON instead of a table");
    return [o, sub](Run& run) {
        run.sub = sub;
        const auto kind = parse_schedule_kind(o->kind);
        if (!kind) throw CLI::ValidationError("--kind", "unknown schedule kind " + o->kind);
        if (o->iters < 0) throw CLI::ValidationError("--iters", "must be >= 0");
        const auto s = exponent_schedule(*kind, o->iters);
        if (o->json) {
            emit_report(run, "-", to_json(s));
            return kExitOk;
        }
        std::ostringstream os;
        os << "i\tfraction\tdecimal\n";
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            char dec[32];
            std::snprintf(dec, sizeof dec, "%.12f", to_double(s.values[i]));
            os << i << '\t' << to_fraction(s.values[i]) << '\t' << dec << '\n';
        }
        char fp[32];
        std::snprintf(fp, sizeof fp, "%.12f", s.fixed_point);
        os << "limit\t-\t" << fp << '\n';
        emit("-", os.str());
        return kExitOk;
    };
}

// ---- sweep ------------------------------------------------------------------

struct SweepEntry {
    std::string kind = "emulator";
    std::size_t n = 0;
    std::size_t m = 0;
    int depth = 1;
    std::uint64_t seed = 0;
};

std::vector<SweepEntry> sweep_entries(const Json& cfg) {
    std::vector<SweepEntry> out;
    if (cfg.contains("runs")) {
        for (const auto& r : cfg.at("runs")) {
            SweepEntry e;
            e.kind = r.value("kind", e.kind);
            e.n = r.at("n").get<std::size_t>();
            e.m = r.value("m", e.n * 4);
            e.depth = r.value("depth", 1);
            e.seed = r.value("seed", std::uint64_t{0});
            out.push_back(e);
        }
        return out;
    }
    const auto ns = cfg.value("n", std::vector<std::size_t>{});
    const auto seeds = cfg.value("seeds", std::vector<std::uint64_t>{0});
    const auto depths = cfg.value("depths", std::vector<int>{1});
    const auto kinds = cfg.value("kinds", std::vector<std::string>{"emulator"});
    const double m_factor = cfg.value("m_factor", 4.0);
    for (const auto& kind : kinds)
        for (const auto n : ns)
            for (const auto depth : depths)
                for (const auto seed : seeds)
                    out.push_back({kind, n, static_cast<std::size_t>(m_factor * static_cast<double>(n)), depth, seed});
    return out;
}

constexpr const char* kSweepHeader =
    "n,m,kind,depth,seed,r,r_hat,baseline_edges,small_cluster_edges,recursive_edges,greedy_edges,total_edges,"
    "max_distortion,bound,runtime_s,status";

std::string sweep_row(const SweepEntry& e, std::size_t cap, bool timing) {
    const auto t0 = Clock::now();
    std::ostringstream row;
    row << e.n << ',' << e.m << ',' << e.kind << ',' << e.depth << ',' << e.seed << ',';
    try {
        const auto g = gnm(e.n, e.m, e.seed);
        Dist r = 0, r_hat = 0, stop = 0;
        std::size_t base = 0, small = 0, rec = 0, greedy = 0, total = 0;
        std::optional<Dist> dist;
        if (e.kind == "emulator") {
            EmulatorConfig cfg;
            cfg.seed = e.seed;
            const auto em = run_recursive_emulator(g, e.depth, cfg);
            r = em.stats.r, r_hat = em.stats.r_hat, stop = cfg.greedy_stop_multiplier;
            base = em.stats.baseline_edges, small = em.stats.small_cluster_edges, rec = em.stats.recursive_edges;
            greedy = em.stats.greedy_edges, total = em.graph.edge_count();
            if (e.n <= cap) dist = additive_distortion(g, em.graph).max_additive;
        } else if (e.kind == "spanner") {
            SpannerConfig cfg;
            cfg.seed = e.seed;
            const auto sp = run_recursive_spanner(g, e.depth, cfg);
            r = sp.stats.r, r_hat = sp.stats.r_hat, stop = cfg.greedy_stop_multiplier;
            base = sp.stats.baseline_edges, small = sp.stats.small_cluster_edges, rec = sp.stats.recursive_edges;
            greedy = sp.stats.greedy_edges, total = sp.subgraph.edge_count();
            if (e.n <= cap) dist = additive_distortion(g, sp.subgraph).max_additive;
        } else {
            fail(ErrorCode::InvalidParams, "unknown sweep kind " + e.kind);
        }
        row << r << ',' << r_hat << ',' << base << ',' << small << ',' << rec << ',' << greedy << ',' << total << ',';
        if (dist) row << *dist;
        row << ',' << stop * r_hat << ',';
        if (timing) row << std::chrono::duration<double>(Clock::now() - t0).count();
        row << ",ok";
    } catch (const Error& err) {
        row << ",,,,,,,,,,error:" << to_string(err.code());
    }
    return row.str();
}

Action add_sweep(CLI::App& app) {
    auto* sub = app.add_subcommand("sweep", "batch of gnm runs from a JSON config, one CSV row per run");
    struct Opts {
        std::string config, out = "-";
        std::size_t jobs = 1;
        std::size_t cap = kDefaultAuditCap;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--config,-c", o->config, "JSON config: {n, seeds, depths, kinds, m_factor} or {runs: [...]}")
        ->required();
    sub->add_option("--out,-o", o->out, "CSV path ('-' = stdout)")->capture_default_str();
    sub->add_option("--jobs,-j", o->jobs, "concurrent runs")->capture_default_str();
    sub->add_option("--cap", o->cap, "APSP audit cap; larger runs leave the distortion column empty")->capture_default_str();
    return [o, sub](Run& run) {
        run.sub = sub;
        run.inputs.push_back(o->config);
        const auto entries = sweep_entries(load_json(o->config));
        std::vector<std::string> rows(entries.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i; (i = next++) < entries.size();) {
                spdlog::info("sweep {} / {}: {} n={} seed={}", i + 1, entries.size(), entries[i].kind, entries[i].n, entries[i].seed);
                rows[i] = sweep_row(entries[i], o->cap, run.timing);
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t j = 1; j < std::max<std::size_t>(1, o->jobs); ++j) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
        std::string csv = std::string(kSweepHeader) + "\n";
        for (const auto& r : rows) csv += r + "\n";
        if (o->out != "-") run.outputs.push_back(o->out);
        emit(o->out, csv);
        return kExitOk;
    };
}

Action add_export_dot(CLI::App& app) {
    auto* sub = app.add_subcommand("export-dot", "Graphviz export; composed instances get inner copies as clusters");
    struct Opts {
        std::string in, instance, out = "-";
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--in,-i", o->in, "edge list");
    sub->add_option("--instance", o->instance, "composed or base instance stem (labels and clusters)");
    sub->add_option("--out,-o", o->out, "DOT path ('-' = stdout)")->capture_default_str();
    return [o, sub](Run& run) {
        run.sub = sub;
        if (o->in.empty() == o->instance.empty()) throw CLI::ValidationError("--in", "give exactly one of --in, --instance");
        std::ostringstream os;
        if (!o->in.empty()) {
            const auto g = load_graph(run, o->in);
            write_dot(os, g);
        } else {
            run.inputs.push_back(o->instance + ".json");
            const auto side = load_json(o->instance + ".json");
            const auto g = load_graph(run, o->instance + ".edges");
            if (side.value("kind", "") == "composed") {
                const auto inst = composed_from(g, side);
                write_dot(
                    os, g,
                    [&](Vertex v) {
                        const auto org = inst.origin(v);
                        if (org.kind == VertexOrigin::Kind::Inner) {
                            const auto c = inst.inner.coord(org.inner);
                            return "I" + std::to_string(org.outer) + ":(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
                        }
                        return "E" + std::to_string(org.outer_edge) + "." + std::to_string(org.position);
                    },
                    [&](Vertex v) -> long long {
                        const auto org = inst.origin(v);
                        return org.kind == VertexOrigin::Kind::Inner ? static_cast<long long>(org.outer) : -1;
                    });
            } else {
                const auto bg = base_graph_from(g, side);
                write_dot(os, g, [&](Vertex v) {
                    const auto c = bg.coord(v);
                    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
                });
            }
        }
        const std::string text = os.str();
        if (o->out != "-") run.outputs.push_back(o->out);
        emit(o->out, text);
        return kExitOk;
    };
}

void configure_logging() {
    auto logger = spdlog::stderr_color_mt("spanlab");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("SPANLAB_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

} // namespace

int main(int argc, char** argv) {
    configure_logging();
    CLI::App app{"spanlab: additive spanners, emulators and hard instances"};
    app.require_subcommand(1);
    app.fallthrough();
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "omit wall-clock fields so outputs are byte-identical across runs");
    app.set_version_flag("--version", kToolVersion);

    std::vector<std::pair<CLI::App*, Action>> commands;
    auto reg = [&](Action a) {
        commands.emplace_back(app.get_subcommands([](const CLI::App*) { return true; }).back(), std::move(a));
    };
    reg(add_gen(app));
    reg(add_build_emulator(app));
    reg(add_build_spanner(app));
    reg(add_build_preserver(app));
    reg(add_build_mult(app));
    reg(add_lb_gen(app));
    reg(add_lb_compose(app));
    reg(add_audit(app));
    reg(add_stretch(app));
    reg(add_schedule(app));
    reg(add_sweep(app));
    reg(add_export_dot(app));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    for (auto& [sub, action] : commands) {
        if (!sub->parsed()) continue;
        Run run;
        run.command = sub->get_name();
        run.timing = !no_timing;
        try {
            return action(run);
        } catch (const CLI::ParseError& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitOperation;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitOperation;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitOperation;
        }
    }
    return kExitUsage;
}
