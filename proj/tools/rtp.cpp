// rtp: command-line front end for the restless temporal path library.
//
//   rtp solve      decide / reconstruct a short delta-restless s-z path
//   rtp distances  temporal distance table towards a target
//   rtp validate   check a candidate path
//   rtp gen        random instance in TEL
//   rtp bench      CSV sweep over random instances
//
// Exit status: solve 0 yes / 1 no, validate 0 valid / 1 invalid, 2 on any
// usage, parse or runtime error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json_output.hpp"
#include "rtp/areas.hpp"
#include "rtp/bench.hpp"
#include "rtp/distances.hpp"
#include "rtp/random.hpp"
#include "rtp/solver.hpp"
#include "rtp/tel.hpp"

namespace {

using namespace rtp;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

TemporalGraph load_graph(const std::string& path) {
    if (path.empty() || path == "-") {
        return read_tel(std::cin);
    }
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    return read_tel(in);
}

VertexId resolve_vertex(const TemporalGraph& g, const std::string& name, const char* what) {
    if (auto v = g.resolve(name)) {
        return *v;
    }
    throw UsageError(std::string(what) + " '" + name + "' is neither a vertex id below " +
                     std::to_string(g.vertex_count()) + " nor an alias");
}

// RTP_THREADS caps the worker count; unset means one thread.
unsigned thread_count() {
    const char* env = std::getenv("RTP_THREADS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (*end != '\0' || value == 0) {
        throw UsageError(std::string("RTP_THREADS must be a positive integer, got '") + env + "'");
    }
    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<unsigned long>(value, hw));
}

struct SolveArgs {
    std::string input;
    std::string source;
    std::string target;
    long long delta = 1;
    long long k = 0;
    double error_prob = 0.01;
    std::string seed = "0";
    std::string backend = "auto";
    std::size_t auto_threshold = 4;
    bool time_window = false;
    std::string format = "json";
};

int run_solve(const SolveArgs& a) {
    if (a.k < 1) {
        throw UsageError("--k must be at least 1");
    }
    if (a.delta < 1) {
        throw UsageError("--delta must be at least 1");
    }
    if (!(a.error_prob > 0.0 && a.error_prob < 1.0)) {
        throw UsageError("--error-prob must lie in (0, 1)");
    }
    const TemporalGraph g = load_graph(a.input);
    const VertexId s = resolve_vertex(g, a.source, "source");
    const VertexId z = resolve_vertex(g, a.target, "target");
    if (s == z) {
        throw UsageError("source and target must differ");
    }
    FinderConfig cfg;
    cfg.backend = parse_backend(a.backend);
    cfg.seed = parse_seed(a.seed);
    cfg.auto_threshold = a.auto_threshold;
    cfg.error_prob = a.error_prob;
    cfg.validate();
    SolveOptions opts;
    opts.time_window = a.time_window;
    opts.threads = thread_count();
    const Length k = static_cast<Length>(std::min<long long>(a.k, kInfinity - 1));
    const auto delta = static_cast<TimeStamp>(std::min<long long>(a.delta, g.lifetime() + 1LL));
    const SolveResult r = solve(g, s, z, delta, k, a.error_prob, cfg, opts);

    if (a.format == "text") {
        std::cout << (r.decision ? "yes" : "no") << "\n";
        if (r.witness) {
            for (const auto& e : r.witness->steps) {
                std::cout << g.label(e.u) << " " << g.label(e.v) << " " << e.t << "\n";
            }
        }
    } else {
        std::cout << cli::solve_json(g, r).dump(2) << "\n";
    }
    return r.decision ? kExitYes : kExitNo;
}

// "v@t" with v an id or alias.
VertexAppearance parse_appearance(const TemporalGraph& g, const std::string& text) {
    const auto at = text.find('@');
    if (at == std::string::npos) {
        throw UsageError("appearance '" + text + "' must look like <vertex>@<time>");
    }
    const VertexId v = resolve_vertex(g, text.substr(0, at), "vertex");
    const std::string ts = text.substr(at + 1);
    if (ts.empty() || ts.find_first_not_of("0123456789") != std::string::npos || ts.size() > 9) {
        throw UsageError("bad time stamp in appearance '" + text + "'");
    }
    return {v, static_cast<TimeStamp>(std::stoul(ts))};
}

struct DistanceArgs {
    std::string input;
    std::string target;
    std::string format = "json";
    std::string area;
    long long delta = 1;
};

int run_distances(const DistanceArgs& a) {
    const TemporalGraph g = load_graph(a.input);
    const VertexId z = resolve_vertex(g, a.target, "target");
    const DistanceTable dt = compute_distances(g, z);

    if (!a.area.empty()) {
        // "source:<b@t'>" or "<a@t>:<b@t'>"
        const auto colon = a.area.find(':');
        if (colon == std::string::npos) {
            throw UsageError("--dump-area expects '<a>@<t>:<b>@<t'>' or 'source:<b>@<t'>'");
        }
        const std::string lo = a.area.substr(0, colon);
        std::optional<VertexAppearance> lower;
        if (lo != "source") {
            lower = parse_appearance(g, lo);
        }
        const VertexAppearance upper = parse_appearance(g, a.area.substr(colon + 1));
        if (a.delta < 1) {
            throw UsageError("--delta must be at least 1");
        }
        const auto delta = static_cast<TimeStamp>(std::min<long long>(a.delta, g.lifetime() + 1LL));
        const AreaSpec spec = make_area_spec(dt, lower, upper, delta);
        const AreaGraph area = area_graph(g, dt, spec);
        TemporalGraph dump(g.vertex_count(), g.lifetime(), area.parent_time_edges(g));
        for (const auto& [id, label] : g.aliases()) {
            dump.set_alias(id, label);
        }
        std::cout << serialize_tel(dump);
        return kExitYes;
    }

    if (a.format == "text") {
        const AppearanceIndex& index = dt.index();
        for (AppearanceId id = 0; id < index.size(); ++id) {
            const Length d = dt.at(id);
            std::cout << g.label(index[id].v) << " " << index[id].t << " "
                      << (is_finite(d) ? std::to_string(d) : std::string("inf")) << "\n";
        }
    } else {
        std::cout << cli::distances_json(dt).dump(2) << "\n";
    }
    return kExitYes;
}

struct ValidateArgs {
    std::string input;
    std::string path;
    std::string source;
    std::string target;
    long long delta = 1;
    std::string format = "json";
};

// One "u v t" time-edge per line, ids or aliases, '%' comments.
std::vector<TimeEdge> read_steps(const TemporalGraph& g, const std::string& file) {
    std::ifstream in(file);
    if (!in) {
        throw UsageError("cannot open '" + file + "'");
    }
    std::vector<TimeEdge> steps;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string u, v, t, extra;
        if (!(fields >> u) || u.front() == '%') {
            continue;
        }
        if (!(fields >> v >> t) || (fields >> extra)) {
            throw ParseError(line_no, "path line must be '<u> <v> <t>'");
        }
        if (t.find_first_not_of("0123456789") != std::string::npos || t.size() > 9) {
            throw ParseError(line_no, "bad time stamp '" + t + "'");
        }
        steps.push_back({resolve_vertex(g, u, "vertex"), resolve_vertex(g, v, "vertex"),
                         static_cast<TimeStamp>(std::stoul(t))});
    }
    return steps;
}

int run_validate(const ValidateArgs& a) {
    if (a.delta < 1) {
        throw UsageError("--delta must be at least 1");
    }
    const TemporalGraph g = load_graph(a.input);
    const std::vector<TimeEdge> steps = read_steps(g, a.path);
    const VertexId s = resolve_vertex(g, a.source, "source");
    const VertexId z = resolve_vertex(g, a.target, "target");
    const auto delta = static_cast<TimeStamp>(std::min<long long>(a.delta, g.lifetime() + 1LL));
    RestlessPath oriented;
    const auto err = check_restless_path(g, steps, s, z, delta, &oriented);
    if (a.format == "text") {
        std::cout << (err ? std::string("invalid: ") + err->what() : std::string("valid")) << "\n";
    } else {
        std::cout << cli::validation_json(g, err, oriented).dump(2) << "\n";
    }
    return err ? kExitNo : kExitYes;
}

struct GenArgs {
    std::size_t vertices = 8;
    long long lifetime = 6;
    double edges_per_layer = 3.0;
    std::string seed = "0";
};

int run_gen(const GenArgs& a) {
    if (a.lifetime < 1 || a.lifetime > 1'000'000) {
        throw UsageError("--lifetime must lie in [1, 1000000]");
    }
    GeneratorParams p;
    p.vertices = a.vertices;
    p.lifetime = static_cast<TimeStamp>(a.lifetime);
    p.edges_per_layer = a.edges_per_layer;
    p.seed = parse_seed(a.seed);
    std::cout << serialize_tel(random_temporal_graph(p));
    return kExitYes;
}

struct BenchArgs {
    std::vector<std::size_t> vertices{12};
    std::vector<TimeStamp> lifetimes{8};
    double edges_per_layer = 3.0;
    std::vector<TimeStamp> deltas{2};
    std::vector<Length> ells{1, 2, 3};
    std::size_t reps = 3;
    std::vector<std::string> backends{"brute", "sieve"};
    std::string mode = "solve";
    double error_prob = 0.01;
    std::string seed = "0";
    std::size_t auto_threshold = 4;
};

int run_bench(const BenchArgs& a) {
    BenchParams p;
    p.mode = parse_bench_mode(a.mode);
    p.vertices = a.vertices;
    p.lifetimes = a.lifetimes;
    p.edges_per_layer = a.edges_per_layer;
    p.deltas = a.deltas;
    p.ells = a.ells;
    p.reps = a.reps;
    p.backends.clear();
    for (const auto& b : a.backends) {
        p.backends.push_back(parse_backend(b));
    }
    p.error_prob = a.error_prob;
    p.seed = parse_seed(a.seed);
    p.auto_threshold = a.auto_threshold;
    for (std::size_t n : p.vertices) {
        if (n < 2) {
            throw UsageError("--vertices entries must be at least 2");
        }
    }
    for (TimeStamp t : p.lifetimes) {
        if (t < 1) {
            throw UsageError("--lifetime entries must be at least 1");
        }
    }
    for (TimeStamp d : p.deltas) {
        if (d < 1) {
            throw UsageError("--delta entries must be at least 1");
        }
    }
    if (!(p.error_prob > 0.0 && p.error_prob < 1.0)) {
        throw UsageError("--error-prob must lie in (0, 1)");
    }
    std::cout << bench_csv_header() << "\n";
    rtp::run_bench(p, [](const BenchRow& row) { write_bench_row(std::cout, row); }, thread_count());
    return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Short delta-restless temporal paths"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Decide whether a delta-restless s-z path of length <= k exists");
    solve->add_option("input", solve_args.input, "TEL file ('-' or omitted: stdin)");
    solve->add_option("-s,--source", solve_args.source, "Source vertex (id or alias)")->required();
    solve->add_option("-z,--target", solve_args.target, "Target vertex (id or alias)")->required();
    solve->add_option("--delta", solve_args.delta, "Maximum waiting time")->required();
    solve->add_option("--k", solve_args.k, "Maximum path length")->required();
    solve->add_option("--error-prob", solve_args.error_prob, "One-sided error budget p")->capture_default_str();
    solve->add_option("--seed", solve_args.seed, "Seed, decimal or 0x-hex")->capture_default_str();
    solve->add_option("--backend", solve_args.backend, "brute, sieve or auto")->capture_default_str();
    solve->add_option("--auto-threshold", solve_args.auto_threshold, "auto: brute below this length")
        ->capture_default_str();
    solve->add_flag("--time-window", solve_args.time_window, "Solve per departure time on a narrowed window");
    solve->add_option("--format", solve_args.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    DistanceArgs dist_args;
    auto* distances = app.add_subcommand("distances", "Temporal distance d(v,t) to a target");
    distances->add_option("input", dist_args.input, "TEL file ('-' or omitted: stdin)");
    distances->add_option("-z,--target", dist_args.target, "Target vertex (id or alias)")->required();
    distances->add_option("--format", dist_args.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    distances->add_option("--dump-area", dist_args.area,
                          "Debug: print the area '<a>@<t>:<b>@<t'>' or 'source:<b>@<t'>' as TEL");
    distances->add_option("--delta", dist_args.delta, "Waiting time used by --dump-area")->capture_default_str();

    ValidateArgs val_args;
    auto* validate = app.add_subcommand("validate", "Check a candidate delta-restless path");
    validate->add_option("input", val_args.input, "TEL file ('-' or omitted: stdin)");
    validate->add_option("--path", val_args.path, "File with one '<u> <v> <t>' step per line")->required();
    validate->add_option("-s,--source", val_args.source, "Source vertex")->required();
    validate->add_option("-z,--target", val_args.target, "Target vertex")->required();
    validate->add_option("--delta", val_args.delta, "Maximum waiting time")->required();
    validate->add_option("--format", val_args.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Random temporal graph in canonical TEL");
    gen->add_option("--vertices", gen_args.vertices, "Number of vertices (>= 2)")->capture_default_str();
    gen->add_option("--lifetime", gen_args.lifetime, "Lifetime tau")->capture_default_str();
    gen->add_option("--edges-per-layer", gen_args.edges_per_layer, "Mean time-edges per layer")
        ->capture_default_str();
    gen->add_option("--seed", gen_args.seed, "Seed, decimal or 0x-hex")->capture_default_str();

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "CSV sweep over random instances");
    bench->add_option("--vertices", bench_args.vertices, "Vertex counts")->capture_default_str();
    bench->add_option("--lifetime", bench_args.lifetimes, "Lifetimes")->capture_default_str();
    bench->add_option("--edges-per-layer", bench_args.edges_per_layer, "Mean time-edges per layer")
        ->capture_default_str();
    bench->add_option("--delta", bench_args.deltas, "Waiting times")->capture_default_str();
    bench->add_option("--ell", bench_args.ells, "Slack values; k = d(s,1) + ell")->capture_default_str();
    bench->add_option("--reps", bench_args.reps, "Instances per (vertices, lifetime)")->capture_default_str();
    bench->add_option("--backend", bench_args.backends, "Backends to compare")->capture_default_str();
    bench->add_option("--mode", bench_args.mode, "solve or probe")
        ->check(CLI::IsMember({"solve", "probe"}))
        ->capture_default_str();
    bench->add_option("--error-prob", bench_args.error_prob, "Error budget per solve")->capture_default_str();
    bench->add_option("--seed", bench_args.seed, "Seed, decimal or 0x-hex")->capture_default_str();
    bench->add_option("--auto-threshold", bench_args.auto_threshold, "auto: brute below this length")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (distances->parsed()) return run_distances(dist_args);
        if (validate->parsed()) return run_validate(val_args);
        if (gen->parsed()) return run_gen(gen_args);
        if (bench->parsed()) return run_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
