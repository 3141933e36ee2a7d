#ifndef RTP_BENCH_HPP
#define RTP_BENCH_HPP

// Parameter sweeps over random instances, one CSV row per measurement.
//
// solve mode runs the full solver. probe mode isolates the path finder: for
// each ell it issues the sieve decisions the table fill makes for one area on
// a miss (every length 1..2 ell + 1), on the whole instance graph, which is
// the largest area the table can ever build.

#include <chrono>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtp/distances.hpp"
#include "rtp/path_finder.hpp"
#include "rtp/random.hpp"
#include "rtp/solver.hpp"

namespace rtp {

enum class BenchMode { kSolve, kProbe };

inline const char* to_string(BenchMode m) { return m == BenchMode::kSolve ? "solve" : "probe"; }

inline BenchMode parse_bench_mode(const std::string& name) {
    if (name == "solve") return BenchMode::kSolve;
    if (name == "probe") return BenchMode::kProbe;
    throw std::invalid_argument("unknown bench mode '" + name + "' (expected solve or probe)");
}

struct BenchParams {
    BenchMode mode = BenchMode::kSolve;
    std::vector<std::size_t> vertices{12};
    std::vector<TimeStamp> lifetimes{8};
    double edges_per_layer = 3.0;
    std::vector<TimeStamp> deltas{2};
    // Slack above the temporal distance: k = d(s,1) + ell.
    std::vector<Length> ells{1, 2, 3};
    std::size_t reps = 3;
    std::vector<Backend> backends{Backend::kBrute, Backend::kSieve};
    double error_prob = 0.01;
    std::uint64_t seed = 0;
    std::size_t auto_threshold = 4;
};

struct BenchRow {
    BenchMode mode = BenchMode::kSolve;
    std::size_t vertices = 0;
    TimeStamp lifetime = 0;
    double edges_per_layer = 0.0;
    TimeStamp delta = 0;
    std::size_t rep = 0;
    std::size_t graph_size = 0;
    VertexId source = 0;
    VertexId target = 0;
    Length temporal_distance = 0;
    Length ell = 0;
    Length k = 0;
    Backend backend = Backend::kBrute;
    bool decision = false;
    SolveStats stats;

    // Sieve work per sieve call; 0 when no call went to the sieve.
    double work_per_call() const {
        return stats.sieve_calls == 0 ? 0.0
                                      : static_cast<double>(stats.sieve_work) / static_cast<double>(stats.sieve_calls);
    }
};

inline const char* bench_csv_header() {
    return "mode,vertices,lifetime,edges_per_layer,delta,rep,graph_size,source,target,temporal_distance,ell,k,"
           "backend,decision,finder_calls,sieve_calls,areas_built,sieve_decisions,sieve_work,work_per_call,"
           "brute_nodes,wall_ms";
}

inline void write_bench_row(std::ostream& out, const BenchRow& r) {
    out << to_string(r.mode) << ',' << r.vertices << ',' << r.lifetime << ',' << r.edges_per_layer << ',' << r.delta
        << ',' << r.rep << ',' << r.graph_size << ',' << r.source << ',' << r.target << ',' << r.temporal_distance << ',' << r.ell << ','
        << r.k << ',' << to_string(r.backend) << ',' << (r.decision ? "yes" : "no") << ',' << r.stats.finder_calls
        << ',' << r.stats.sieve_calls << ',' << r.stats.areas_built << ',' << r.stats.sieve_decisions << ','
        << r.stats.sieve_work << ',' << r.work_per_call() << ',' << r.stats.brute_nodes << ',' << r.stats.wall_ms
        << '\n';
}

// Picks the pair with the largest (or, with closest, smallest) finite
// temporal distance that still leaves room for the largest ell; ties go to
// the first pair in a seeded order.
inline bool pick_endpoints(const TemporalGraph& g, Length max_ell, SplitMix64 rng, VertexId& s, VertexId& z,
                           Length& d, bool closest = false) {
    const std::size_t n = g.vertex_count();
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) {
        order[v] = v;
    }
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    bool found = false;
    for (VertexId zz : order) {
        const DistanceTable dt = compute_distances(g, zz);
        for (VertexId ss : order) {
            if (ss == zz) {
                continue;
            }
            const Length dd = dt.from_start(ss);
            if (!is_finite(dd) || dd + max_ell > n - 1) {
                continue;
            }
            if (!found || (closest ? dd < d : dd > d)) {
                s = ss;
                z = zz;
                d = dd;
                found = true;
            }
        }
    }
    return found;
}

namespace detail {

inline BenchRow probe_row(const BenchParams& p, const TemporalGraph& g, VertexId s, VertexId z, Length d,
                          TimeStamp delta, Length ell, std::size_t n, TimeStamp tau, std::size_t rep,
                          std::uint64_t seed) {
    BenchRow row;
    row.mode = BenchMode::kProbe;
    row.vertices = n;
    row.lifetime = tau;
    row.edges_per_layer = p.edges_per_layer;
    row.delta = delta;
    row.rep = rep;
    row.graph_size = g.size();
    row.source = s;
    row.target = z;
    row.temporal_distance = d;
    row.ell = ell;
    row.k = d + ell;
    row.backend = Backend::kSieve;
    FinderConfig cfg;
    cfg.backend = Backend::kSieve;
    cfg.error_prob = per_call_error_budget(p.error_prob, d + ell, ell);
    FinderStats fs;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t len = 1; len <= 2 * std::size_t{ell} + 1; ++len) {
        cfg.seed = SplitMix64(seed).split(len)();
        if (sieve_detects_restless_path(g, s, z, delta, len, cfg, &fs) && len <= d + ell) {
            row.decision = true;
        }
    }
    row.stats.absorb(fs);
    row.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

}  // namespace detail

// Runs the sweep, handing each finished row to `emit`. Instances without a
// usable source-target pair are skipped.
template <typename Emit>
void run_bench(const BenchParams& p, Emit&& emit, unsigned threads = 1) {
    if (p.reps == 0 || p.ells.empty() || p.backends.empty()) {
        throw std::invalid_argument("bench needs at least one rep, ell and backend");
    }
    Length max_ell = 0;
    for (Length ell : p.ells) {
        max_ell = std::max(max_ell, ell);
    }
    const SplitMix64 root(p.seed);
    for (std::size_t n : p.vertices) {
        for (TimeStamp tau : p.lifetimes) {
            for (std::size_t rep = 0; rep < p.reps; ++rep) {
                const SplitMix64 inst = root.split({n, tau, rep});
                GeneratorParams gp;
                gp.vertices = n;
                gp.lifetime = tau;
                gp.edges_per_layer = p.edges_per_layer;
                gp.seed = inst.split(1)();
                const TemporalGraph g = random_temporal_graph(gp);
                VertexId s = 0;
                VertexId z = 0;
                Length d = 0;
                // A probe stands in for one hop of the table, which may be a
                // single time-edge, so it wants endpoints with short walks.
                if (!pick_endpoints(g, max_ell, inst.split(2), s, z, d, p.mode == BenchMode::kProbe)) {
                    continue;
                }
                for (TimeStamp delta : p.deltas) {
                    for (Length ell : p.ells) {
                        if (p.mode == BenchMode::kProbe) {
                            emit(detail::probe_row(p, g, s, z, d, delta, ell, n, tau, rep,
                                                   inst.split({4, delta, ell})()));
                            continue;
                        }
                        for (Backend backend : p.backends) {
                            FinderConfig cfg;
                            cfg.backend = backend;
                            cfg.seed = inst.split({3, delta, ell})();
                            cfg.auto_threshold = p.auto_threshold;
                            SolveOptions opts;
                            opts.threads = threads;
                            const SolveResult res = solve(g, s, z, delta, d + ell, p.error_prob, cfg, opts);
                            BenchRow row;
                            row.mode = p.mode;
                            row.vertices = n;
                            row.lifetime = tau;
                            row.edges_per_layer = p.edges_per_layer;
                            row.delta = delta;
                            row.rep = rep;
                            row.graph_size = g.size();
                            row.source = s;
                            row.target = z;
                            row.temporal_distance = d;
                            row.ell = ell;
                            row.k = d + ell;
                            row.backend = backend;
                            row.decision = res.decision;
                            row.stats = res.stats;
                            emit(row);
                        }
                    }
                }
            }
        }
    }
}

}  // namespace rtp

#endif  // RTP_BENCH_HPP
