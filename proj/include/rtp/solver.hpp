#ifndef RTP_SOLVER_HPP
#define RTP_SOLVER_HPP

// Short restless temporal path, parameterized above the temporal distance.
//
// With l = k - d(s,1), the table T is indexed by non-isolated appearances
// (u,t'). Near the source (d(s,1) - d(u,t') <= l) an entry is the shortest
// s-u path of length <= 2l inside the source area G^{u,t'}; further away it is
// the best T[v,t] + l' over predecessors with t <= t' and
// d(v,t) > d(u,t') >= d(v,t) - l - 1, where l' <= 2l + 1 is a shortest v-u path
// inside the hop area G_{v,t}^{u,t'}. The instance is a yes-instance iff some
// T[z,t] <= k. Only the exact-length path finder may err, and only towards no.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rtp/areas.hpp"
#include "rtp/distances.hpp"
#include "rtp/path_finder.hpp"
#include "rtp/random.hpp"
#include "rtp/restless_path.hpp"
#include "rtp/temporal_graph.hpp"

namespace rtp {

struct DpEntry {
    Length value = kInfinity;
    // Appearance the last hop departs from; kNoAppearance for near-zone entries.
    AppearanceId pred = kNoAppearance;
    // Time-edges of the last hop (or the whole s-u path in the near zone), in
    // travel order and parent ids.
    std::vector<TimeEdge> hop;
};

struct DpTable {
    VertexId source = 0;
    VertexId target = 0;
    TimeStamp delta = 1;
    Length k = 0;
    Length temporal_distance = kInfinity;
    Length ell = 0;
    AreaRule rule = AreaRule::kClosedBoundary;
    std::vector<DpEntry> entries;

    Length value(AppearanceId id) const { return entries[id].value; }

    bool near_zone(Length d) const {
        return !is_finite(d) || static_cast<std::int64_t>(temporal_distance) - static_cast<std::int64_t>(d) <=
                                    static_cast<std::int64_t>(ell);
    }
};

struct SolveStats {
    std::size_t areas_built = 0;
    std::size_t finder_calls = 0;
    std::size_t sieve_calls = 0;
    std::size_t table_entries = 0;
    std::size_t sieve_decisions = 0;
    std::size_t sieve_work = 0;
    std::size_t brute_nodes = 0;
    double wall_ms = 0.0;

    SolveStats& operator+=(const SolveStats& o) {
        areas_built += o.areas_built;
        finder_calls += o.finder_calls;
        sieve_calls += o.sieve_calls;
        table_entries += o.table_entries;
        sieve_decisions += o.sieve_decisions;
        sieve_work += o.sieve_work;
        brute_nodes += o.brute_nodes;
        wall_ms += o.wall_ms;
        return *this;
    }

    void absorb(const FinderStats& f) {
        finder_calls += f.calls;
        sieve_calls += f.sieve_calls;
        sieve_decisions += f.decisions;
        sieve_work += f.sieve_work;
        brute_nodes += f.brute_nodes;
    }
};

struct EffectiveParams {
    Length k_requested = 0;
    // After clamping to |V| - 1.
    Length k = 0;
    Length temporal_distance = kInfinity;
    Length ell = 0;
    double p = 0.0;
    // Error budget handed to each path finder call.
    double p_call = 0.0;
};

struct SolveResult {
    bool decision = false;
    std::optional<RestlessPath> witness;
    SolveStats stats;
    EffectiveParams params;
};

struct SolveOptions {
    // Try every departure time of s on the time-edges within the horizon
    // [t, t + (k-1) delta + 1], splitting the error budget over the lifetime.
    bool time_window = false;
    unsigned threads = 1;
    AreaRule area_rule = AreaRule::kClosedBoundary;
};

// p' = p / (2 ceil(k / max(1,l)) (2l + 1)): one share per length probe along
// each link of the critical chain of separators.
inline double per_call_error_budget(double p, Length k, Length ell) {
    const Length denom_ell = std::max<Length>(1, ell);
    const Length links = (k + denom_ell - 1) / denom_ell;
    return p / (2.0 * static_cast<double>(links) * static_cast<double>(2 * ell + 1));
}

namespace detail {

inline FinderConfig call_config(const FinderConfig& cfg, AppearanceId pred, AppearanceId target, std::size_t len) {
    FinderConfig out = cfg;
    out.seed = SplitMix64(cfg.seed).split({std::uint64_t{pred} + 1, target, len})();
    return out;
}

// Shortest path of length in [1, max_len] inside the area, lifted to parent ids.
inline std::optional<std::vector<TimeEdge>> shortest_in_area(const AreaGraph& area, VertexId from, VertexId to,
                                                             TimeStamp delta, std::size_t max_len,
                                                             const FinderConfig& cfg, AppearanceId pred,
                                                             AppearanceId target, FinderStats& stats) {
    const auto lf = area.local_id(from);
    const auto lt = area.local_id(to);
    if (!lf || !lt) {
        return std::nullopt;
    }
    for (std::size_t len = 1; len <= max_len; ++len) {
        if (len >= area.graph().vertex_count()) {
            break;
        }
        auto path = find_exact_restless_path(area.graph(), *lf, *lt, delta, len, call_config(cfg, pred, target, len),
                                             &stats);
        if (path) {
            return area.lift(path->steps);
        }
    }
    return std::nullopt;
}

struct EntryWork {
    std::size_t areas = 0;
    FinderStats finder;
};

inline DpEntry compute_entry(const TemporalGraph& g, const DistanceTable& dt, const DpTable& table,
                             AppearanceId id, const FinderConfig& cfg, EntryWork& work) {
    const AppearanceIndex& index = dt.index();
    const VertexAppearance app = index[id];
    const Length d_u = dt.at(id);
    const Length ell = table.ell;
    DpEntry entry;

    if (table.near_zone(d_u)) {
        if (app.v == table.source) {
            entry.value = 0;
            return entry;
        }
        const std::size_t max_len = std::min<std::size_t>(2 * ell, table.k);
        if (max_len == 0) {
            return entry;
        }
        const AreaGraph area = area_graph(g, dt, AreaSpec{std::nullopt, app, table.delta, table.rule});
        ++work.areas;
        if (auto hop = shortest_in_area(area, table.source, app.v, table.delta, max_len, cfg, kNoAppearance, id,
                                        work.finder)) {
            entry.value = static_cast<Length>(hop->size());
            entry.hop = std::move(*hop);
        }
        return entry;
    }

    // Predecessors: appearances with t <= t' (a prefix of the id order) and
    // d(u,t') < d(v,t) <= d(u,t') + l + 1.
    for (AppearanceId pid = 0; pid < index.size() && index[pid].t <= app.t; ++pid) {
        const Length d_v = dt.at(pid);
        if (!is_finite(d_v) || d_v <= d_u || d_v > d_u + ell + 1) {
            continue;
        }
        const Length base = table.value(pid);
        if (!is_finite(base) || index[pid].v == app.v) {
            continue;
        }
        const Length cap = std::min<Length>(entry.value, table.k + 1);
        if (base + 1 >= cap) {
            continue;
        }
        const std::size_t max_len = std::min<std::size_t>(2 * ell + 1, cap - 1 - base);
        const AreaGraph area = area_graph(g, dt, AreaSpec{index[pid], app, table.delta, table.rule});
        ++work.areas;
        if (auto hop = shortest_in_area(area, index[pid].v, app.v, table.delta, max_len, cfg, pid, id, work.finder)) {
            entry.value = base + static_cast<Length>(hop->size());
            entry.pred = pid;
            entry.hop = std::move(*hop);
        }
    }
    return entry;
}

}  // namespace detail

// Fills T for every non-isolated appearance. Entries whose value would exceed
// k are left infinite. cfg.error_prob is used as the per-call budget.
inline DpTable fill_table(const TemporalGraph& g, const DistanceTable& dt, VertexId s, VertexId z, TimeStamp delta,
                          Length k, const FinderConfig& cfg, SolveStats* stats = nullptr, unsigned threads = 1,
                          AreaRule rule = AreaRule::kClosedBoundary) {
    DpTable table;
    table.rule = rule;
    table.source = s;
    table.target = z;
    table.delta = delta;
    table.k = k;
    table.temporal_distance = dt.from_start(s);
    if (!is_finite(table.temporal_distance) || table.temporal_distance > k) {
        throw std::invalid_argument("fill_table needs d(s,1) <= k");
    }
    table.ell = k - table.temporal_distance;
    const AppearanceIndex& index = dt.index();
    table.entries.resize(index.size());

    // Far-zone entries only read entries with strictly larger d, so filling
    // level by level in decreasing d makes every dependency available.
    std::vector<AppearanceId> order(index.size());
    for (AppearanceId i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](AppearanceId a, AppearanceId b) {
        return dt.at(a) > dt.at(b);  // ties keep (t, v) order
    });

    threads = std::max(1U, threads);
    std::vector<detail::EntryWork> work(threads);
    std::size_t level_begin = 0;
    while (level_begin < order.size()) {
        std::size_t level_end = level_begin;
        while (level_end < order.size() && dt.at(order[level_end]) == dt.at(order[level_begin])) {
            ++level_end;
        }
        const std::size_t count = level_end - level_begin;
        auto run = [&](unsigned worker) {
            for (std::size_t i = level_begin + worker; i < level_end; i += threads) {
                table.entries[order[i]] = detail::compute_entry(g, dt, table, order[i], cfg, work[worker]);
            }
        };
        if (threads == 1 || count < 2) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 1; w < threads; ++w) {
                pool.emplace_back(run, w);
            }
            run(0);
            for (auto& th : pool) {
                th.join();
            }
        }
        level_begin = level_end;
    }

    if (stats != nullptr) {
        stats->table_entries += table.entries.size();
        for (const auto& w : work) {
            stats->areas_built += w.areas;
            stats->absorb(w.finder);
        }
    }
    return table;
}

// Concatenates the stored hops along predecessor links. A zero entry yields
// the empty path.
inline RestlessPath reconstruct(const DpTable& table, AppearanceId end) {
    if (end >= table.entries.size() || !is_finite(table.value(end))) {
        throw std::invalid_argument("reconstruct needs a finite table entry");
    }
    std::vector<const std::vector<TimeEdge>*> hops;
    std::size_t guard = 0;
    for (AppearanceId at = end; at != kNoAppearance; at = table.entries[at].pred) {
        if (++guard > table.entries.size()) {
            throw std::logic_error("predecessor chain has a cycle");
        }
        hops.push_back(&table.entries[at].hop);
    }
    RestlessPath path;
    path.delta = table.delta;
    for (auto it = hops.rbegin(); it != hops.rend(); ++it) {
        path.steps.insert(path.steps.end(), (*it)->begin(), (*it)->end());
    }
    if (path.steps.size() != table.value(end)) {
        throw std::logic_error("predecessor chain length disagrees with the table");
    }
    return path;
}

namespace detail {

inline SolveResult solve_once(const TemporalGraph& g, VertexId s, VertexId z, TimeStamp delta, Length k, double p,
                              const FinderConfig& cfg, const SolveOptions& opts) {
    SolveResult result;
    result.params.k_requested = k;
    result.params.p = p;
    const Length k_eff = std::min<Length>(k, static_cast<Length>(g.vertex_count() - 1));
    result.params.k = k_eff;

    const DistanceTable dt = compute_distances(g, z);
    const Length ds1 = dt.from_start(s);
    result.params.temporal_distance = ds1;
    if (!is_finite(ds1) || ds1 > k_eff) {
        return result;
    }
    const Length ell = k_eff - ds1;
    result.params.ell = ell;
    result.params.p_call = per_call_error_budget(p, k_eff, ell);

    FinderConfig call_cfg = cfg;
    call_cfg.error_prob = result.params.p_call;
    const DpTable table = fill_table(g, dt, s, z, delta, k_eff, call_cfg, &result.stats, opts.threads, opts.area_rule);

    AppearanceId best = kNoAppearance;
    for (AppearanceId id : dt.index().of_vertex(z)) {
        if (table.value(id) <= k_eff && (best == kNoAppearance || table.value(id) < table.value(best))) {
            best = id;
        }
    }
    if (best == kNoAppearance) {
        return result;
    }
    RestlessPath path = reconstruct(table, best);
    if (auto err = check_restless_path(g, path.steps, s, z, delta, &path)) {
        throw std::logic_error(std::string("reconstructed witness is invalid: ") + err->what());
    }
    result.decision = true;
    result.witness = std::move(path);
    return result;
}

}  // namespace detail

// Decides whether a delta-restless temporal s-z path of length <= k exists.
// A yes answer always carries a validated witness; a no answer is wrong with
// probability at most p (zero with the brute backend).
inline SolveResult solve(const TemporalGraph& g, VertexId s, VertexId z, TimeStamp delta, Length k, double p,
                         const FinderConfig& cfg, const SolveOptions& opts = {}) {
    if (s >= g.vertex_count() || z >= g.vertex_count()) {
        throw std::invalid_argument("source or target is not a vertex of the graph");
    }
    if (s == z) {
        throw std::invalid_argument("source and target must differ");
    }
    if (delta < 1) {
        throw std::invalid_argument("delta must be at least 1");
    }
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("error probability must lie in (0, 1)");
    }
    FinderConfig checked = cfg;
    checked.error_prob = 0.5;
    checked.validate();

    const auto start = std::chrono::steady_clock::now();
    SolveResult result;
    if (!opts.time_window) {
        result = detail::solve_once(g, s, z, delta, k, p, cfg, opts);
    } else {
        // Global short-circuit, then one sub-run per departure time of s.
        const DistanceTable dt = compute_distances(g, z);
        const Length k_eff = std::min<Length>(k, static_cast<Length>(g.vertex_count() - 1));
        result.params.k_requested = k;
        result.params.k = k_eff;
        result.params.p = p;
        result.params.temporal_distance = dt.from_start(s);
        if (is_finite(result.params.temporal_distance) && result.params.temporal_distance <= k_eff) {
            result.params.ell = k_eff - result.params.temporal_distance;
            const double p_sub = p / static_cast<double>(g.lifetime());
            const std::uint64_t horizon = std::uint64_t{k_eff - 1} * delta + 1;
            std::vector<TimeStamp> departures;
            for (AppearanceId id : dt.index().of_vertex(s)) {
                departures.push_back(dt.index()[id].t);
            }
            for (TimeStamp t0 : departures) {
                const std::uint64_t last = t0 + horizon;
                const TemporalGraph window = filter_time_edges(g, [&](const TimeEdge& e) {
                    return e.t >= t0 && e.t <= last;
                });
                FinderConfig sub_cfg = cfg;
                sub_cfg.seed = SplitMix64(cfg.seed).split(t0)();
                SolveResult sub = detail::solve_once(window, s, z, delta, k, p_sub, sub_cfg, opts);
                result.stats += sub.stats;
                if (sub.params.p_call > 0.0 &&
                    (result.params.p_call == 0.0 || sub.params.p_call < result.params.p_call)) {
                    result.params.p_call = sub.params.p_call;
                }
                if (sub.decision) {
                    RestlessPath path = *sub.witness;
                    if (!is_restless_path(g, path.steps, s, z, delta)) {
                        throw std::logic_error("time-window witness is invalid in the full graph");
                    }
                    result.decision = true;
                    result.witness = std::move(path);
                    break;
                }
            }
        }
    }
    result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace rtp

#endif  // RTP_SOLVER_HPP
