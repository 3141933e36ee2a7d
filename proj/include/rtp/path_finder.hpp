#ifndef RTP_PATH_FINDER_HPP
#define RTP_PATH_FINDER_HPP

// Exact-length delta-restless temporal path search.
//
// Two backends share one contract: given (g, s, z, delta, len), return a
// delta-restless temporal s-z path with exactly len time-edges, or nothing.
//
//  * brute: exhaustive DFS, zero error.
//  * sieve: algebraic detection over GF(2^64). For a subset X of the
//    len-1 labels, a dynamic program over (step, directed time-edge) sums the
//    weights of all restless s-z walks whose internal vertices carry labels
//    from X. XOR-ing over all X keeps exactly the walks with bijectively
//    labelled internal positions; among those, walks repeating a vertex pair
//    up under a label swap and cancel in characteristic 2. The total is a
//    nonzero polynomial iff a path exists, so a random evaluation misses with
//    probability <= (2 len - 1) / 2^64. A path is extracted by deleting
//    time-edges while the answer stays yes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtp/gf2_64.hpp"
#include "rtp/random.hpp"
#include "rtp/restless_path.hpp"
#include "rtp/temporal_graph.hpp"

namespace rtp {

enum class Backend { kBrute, kSieve, kAuto };

inline const char* to_string(Backend b) {
    switch (b) {
        case Backend::kBrute: return "brute";
        case Backend::kSieve: return "sieve";
        case Backend::kAuto: return "auto";
    }
    return "unknown";
}

inline Backend parse_backend(const std::string& name) {
    if (name == "brute") return Backend::kBrute;
    if (name == "sieve") return Backend::kSieve;
    if (name == "auto") return Backend::kAuto;
    throw std::invalid_argument("unknown backend '" + name + "' (expected brute, sieve or auto)");
}

struct FinderConfig {
    Backend backend = Backend::kAuto;
    // One-sided miss probability allowed per call of the sieve backend.
    double error_prob = 0.01;
    std::uint64_t seed = 0;
    // auto: lengths below this use brute force.
    std::size_t auto_threshold = 4;
    // Minimum number of independent sieve evaluations per decision.
    std::size_t trials = 1;

    void validate() const {
        if (!(error_prob > 0.0 && error_prob < 1.0)) {
            throw std::invalid_argument("error probability must lie in (0, 1)");
        }
        if (auto_threshold < 1) {
            throw std::invalid_argument("auto threshold must be at least 1");
        }
        if (trials < 1) {
            throw std::invalid_argument("trials must be at least 1");
        }
    }
};

// auto picks brute force on graphs with at most this many time-edges.
inline constexpr std::size_t kTinyGraphEdges = 12;

struct FinderStats {
    std::size_t calls = 0;
    std::size_t brute_calls = 0;
    std::size_t sieve_calls = 0;
    // Sieve evaluations, including the ones spent on path extraction.
    std::size_t decisions = 0;
    // Sieve dynamic-program cell updates.
    std::size_t sieve_work = 0;
    std::size_t brute_nodes = 0;

    FinderStats& operator+=(const FinderStats& o) {
        calls += o.calls;
        brute_calls += o.brute_calls;
        sieve_calls += o.sieve_calls;
        decisions += o.decisions;
        sieve_work += o.sieve_work;
        brute_nodes += o.brute_nodes;
        return *this;
    }
};

namespace detail {

inline bool valid_query(const TemporalGraph& g, VertexId s, VertexId z, std::size_t len) {
    return s != z && s < g.vertex_count() && z < g.vertex_count() && len >= 1 && len < g.vertex_count();
}

// Same search over an edge mask; `enabled` may be empty (all enabled).
inline std::optional<RestlessPath> brute_search(const TemporalGraph& g, VertexId s, VertexId z, TimeStamp delta,
                                                std::size_t len, const std::vector<char>& enabled,
                                                std::size_t* nodes) {
    std::vector<char> visited(g.vertex_count(), 0);
    std::vector<TimeEdge> steps;
    steps.reserve(len);
    visited[s] = 1;

    auto dfs = [&](auto&& self, VertexId at) -> bool {
        if (nodes != nullptr) {
            ++*nodes;
        }
        if (steps.size() == len) {
            return at == z;
        }
        const bool first = steps.empty();
        const TimeStamp last = first ? 0 : steps.back().t;
        for (std::size_t i : g.incident(at)) {
            const TimeEdge& e = g.time_edge(i);
            if (!first) {
                if (e.t < last) {
                    continue;
                }
                if (e.t - last > delta) {
                    break;
                }
            }
            if (!enabled.empty() && !enabled[i]) {
                continue;
            }
            const VertexId w = e.other(at);
            if (visited[w] || (w == z && steps.size() + 1 != len)) {
                continue;
            }
            visited[w] = 1;
            steps.push_back({at, w, e.t});
            if (self(self, w)) {
                return true;
            }
            steps.pop_back();
            visited[w] = 0;
        }
        return false;
    };
    if (!dfs(dfs, s)) {
        return std::nullopt;
    }
    return RestlessPath{std::move(steps), delta};
}

// Directed time-edge states and, for each state, the block of states that may
// precede it: same vertex, stamp within [t - delta, t].
class SieveLayout {
public:
    SieveLayout(const TemporalGraph& g, VertexId s, VertexId z, TimeStamp delta, std::size_t len)
        : g_(g), s_(s), z_(z), len_(len) {
        const std::size_t m = g.time_edge_count();
        const std::size_t n = g.vertex_count();
        head_.resize(2 * m);
        tail_.resize(2 * m);
        time_.resize(2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            const TimeEdge& e = g.time_edge(i);
            tail_[2 * i] = e.u;
            head_[2 * i] = e.v;
            tail_[2 * i + 1] = e.v;
            head_[2 * i + 1] = e.u;
            time_[2 * i] = time_[2 * i + 1] = e.t;
        }
        // States grouped by head, chronological within a group (edge order is).
        in_offsets_.assign(n + 1, 0);
        for (std::size_t st = 0; st < 2 * m; ++st) {
            ++in_offsets_[head_[st] + 1];
        }
        for (std::size_t v = 1; v <= n; ++v) {
            in_offsets_[v] += in_offsets_[v - 1];
        }
        in_list_.resize(2 * m);
        std::vector<std::size_t> fill(in_offsets_.begin(), in_offsets_.end() - 1);
        for (std::size_t st = 0; st < 2 * m; ++st) {
            in_list_[fill[head_[st]]++] = static_cast<std::uint32_t>(st);
        }
        range_lo_.resize(2 * m);
        range_hi_.resize(2 * m);
        for (std::size_t st = 0; st < 2 * m; ++st) {
            const VertexId v = tail_[st];
            const TimeStamp t = time_[st];
            const TimeStamp from = t > delta ? t - delta : 0;
            auto begin = in_list_.begin() + static_cast<std::ptrdiff_t>(in_offsets_[v]);
            auto end = in_list_.begin() + static_cast<std::ptrdiff_t>(in_offsets_[v + 1]);
            auto lo = std::lower_bound(begin, end, from, [&](std::uint32_t x, TimeStamp tt) { return time_[x] < tt; });
            auto hi = std::upper_bound(lo, end, t, [&](TimeStamp tt, std::uint32_t x) { return tt < time_[x]; });
            range_lo_[st] = static_cast<std::uint32_t>(lo - in_list_.begin());
            range_hi_[st] = static_cast<std::uint32_t>(hi - in_list_.begin());
        }
    }

    std::size_t states() const { return head_.size(); }

    // Whether arriving at v after `step` steps is allowed (1-based step).
    bool head_ok(std::size_t step, VertexId v) const {
        return step == len_ ? v == z_ : (v != s_ && v != z_);
    }

    // Time-edges lying on some restless s-z walk of exactly len steps whose
    // internal vertices avoid s and z, restricted to `enabled`.
    std::vector<char> useful_edges(const std::vector<char>& enabled) const {
        const std::size_t S = states();
        std::vector<std::vector<char>> fwd(len_ + 1, std::vector<char>(S, 0));
        for (std::size_t st = 0; st < S; ++st) {
            fwd[1][st] = enabled[st / 2] && tail_[st] == s_ && head_ok(1, head_[st]);
        }
        std::vector<std::uint32_t> prefix(S + 1);
        for (std::size_t j = 2; j <= len_; ++j) {
            prefix[0] = 0;
            for (std::size_t k = 0; k < S; ++k) {
                prefix[k + 1] = prefix[k] + (fwd[j - 1][in_list_[k]] ? 1 : 0);
            }
            for (std::size_t st = 0; st < S; ++st) {
                fwd[j][st] = enabled[st / 2] && head_ok(j, head_[st]) &&
                             prefix[range_hi_[st]] != prefix[range_lo_[st]];
            }
        }
        std::vector<std::vector<char>> bwd(len_ + 1, std::vector<char>(S, 0));
        for (std::size_t st = 0; st < S; ++st) {
            bwd[len_][st] = fwd[len_][st];
        }
        std::vector<int> diff(S + 1);
        for (std::size_t j = len_; j >= 2; --j) {
            std::fill(diff.begin(), diff.end(), 0);
            for (std::size_t st = 0; st < S; ++st) {
                if (bwd[j][st]) {
                    ++diff[range_lo_[st]];
                    --diff[range_hi_[st]];
                }
            }
            int running = 0;
            for (std::size_t k = 0; k < S; ++k) {
                running += diff[k];
                const std::uint32_t st = in_list_[k];
                bwd[j - 1][st] = running > 0 && fwd[j - 1][st];
            }
        }
        std::vector<char> out(g_.time_edge_count(), 0);
        for (std::size_t j = 1; j <= len_; ++j) {
            for (std::size_t st = 0; st < S; ++st) {
                if (bwd[j][st]) {
                    out[st / 2] = 1;
                }
            }
        }
        return out;
    }

    // One randomized evaluation of the sieved walk polynomial.
    bool evaluate(const std::vector<char>& enabled, SplitMix64 rng, std::size_t* work) const {
        const std::size_t S = states();
        const std::size_t n = g_.vertex_count();
        const std::size_t labels = len_ - 1;
        std::vector<std::uint64_t> edge_weight(g_.time_edge_count());
        for (auto& w : edge_weight) {
            w = rng();
        }
        std::vector<std::uint64_t> label_weight(n * labels);
        for (auto& w : label_weight) {
            w = rng();
        }

        std::vector<std::uint64_t> vertex_weight(n, 0);
        std::vector<std::uint64_t> cur(S), next(S), prefix(S + 1);
        std::uint64_t total = 0;
        const std::uint64_t subsets = std::uint64_t{1} << labels;
        for (std::uint64_t idx = 0; idx < subsets; ++idx) {
            // Gray-code walk over subsets: one label toggles per step.
            if (idx > 0) {
                const std::uint64_t flipped = (idx ^ (idx >> 1)) ^ ((idx - 1) ^ ((idx - 1) >> 1));
                const auto label = static_cast<std::size_t>(__builtin_ctzll(flipped));
                for (std::size_t v = 0; v < n; ++v) {
                    vertex_weight[v] ^= label_weight[v * labels + label];
                }
            } else if (labels > 0) {
                continue;  // empty label set: every internal vertex has weight 0
            }
            auto weight_at = [&](std::size_t step, VertexId v) -> std::uint64_t {
                if (!head_ok(step, v)) {
                    return 0;
                }
                return step == len_ ? 1 : vertex_weight[v];
            };
            for (std::size_t st = 0; st < S; ++st) {
                cur[st] = (enabled[st / 2] && tail_[st] == s_) ? gf::mul(edge_weight[st / 2], weight_at(1, head_[st])) : 0;
            }
            for (std::size_t step = 2; step <= len_; ++step) {
                prefix[0] = 0;
                for (std::size_t k = 0; k < S; ++k) {
                    prefix[k + 1] = prefix[k] ^ cur[in_list_[k]];
                }
                for (std::size_t st = 0; st < S; ++st) {
                    const std::uint64_t incoming = prefix[range_hi_[st]] ^ prefix[range_lo_[st]];
                    const std::uint64_t w = weight_at(step, head_[st]);
                    next[st] = (incoming != 0 && w != 0 && enabled[st / 2])
                                   ? gf::mul(gf::mul(incoming, edge_weight[st / 2]), w)
                                   : 0;
                }
                std::swap(cur, next);
            }
            for (std::size_t st = 0; st < S; ++st) {
                if (head_[st] == z_) {
                    total ^= cur[st];
                }
            }
            if (work != nullptr) {
                *work += len_ * S;
            }
        }
        return total != 0;
    }

private:
    const TemporalGraph& g_;
    VertexId s_;
    VertexId z_;
    std::size_t len_;
    std::vector<VertexId> head_;
    std::vector<VertexId> tail_;
    std::vector<TimeStamp> time_;
    std::vector<std::size_t> in_offsets_;
    std::vector<std::uint32_t> in_list_;
    std::vector<std::uint32_t> range_lo_;
    std::vector<std::uint32_t> range_hi_;
};

// Trials so that the per-decision miss probability is at most error_prob.
inline std::size_t sieve_trials(const FinderConfig& cfg, std::size_t len) {
    const double per_trial = static_cast<double>(2 * len - 1) * std::ldexp(1.0, -64);
    const double needed = std::ceil(std::log(cfg.error_prob) / std::log(per_trial));
    return std::max<std::size_t>(cfg.trials, static_cast<std::size_t>(std::max(1.0, needed)));
}

}  // namespace detail

inline std::optional<RestlessPath> find_exact_restless_path_brute(const TemporalGraph& g, VertexId s, VertexId z,
                                                                  TimeStamp delta, std::size_t len,
                                                                  FinderStats* stats = nullptr) {
    if (stats != nullptr) {
        ++stats->calls;
        ++stats->brute_calls;
    }
    if (!detail::valid_query(g, s, z, len)) {
        return std::nullopt;
    }
    return detail::brute_search(g, s, z, delta, len, {}, stats ? &stats->brute_nodes : nullptr);
}

namespace detail {

// Decision half of the sieve backend: prefilter to useful time-edges, then
// up to sieve_trials evaluations.
class SieveDecider {
public:
    SieveDecider(const TemporalGraph& g, VertexId s, VertexId z, TimeStamp delta, std::size_t len,
                 const FinderConfig& cfg, FinderStats* stats)
        : layout_(g, s, z, delta, len), trials_(sieve_trials(cfg, len)), base_(cfg.seed), stats_(stats) {}

    const SieveLayout& layout() const { return layout_; }

    // Restricts `enabled` to useful time-edges and decides on the result.
    bool decide(std::vector<char>& enabled) {
        enabled = layout_.useful_edges(enabled);
        if (std::find(enabled.begin(), enabled.end(), 1) == enabled.end()) {
            return false;
        }
        for (std::size_t i = 0; i < trials_; ++i) {
            if (stats_ != nullptr) {
                ++stats_->decisions;
            }
            if (layout_.evaluate(enabled, base_.split(evaluations_++), stats_ ? &stats_->sieve_work : nullptr)) {
                return true;
            }
        }
        return false;
    }

private:
    SieveLayout layout_;
    std::size_t trials_;
    SplitMix64 base_;
    FinderStats* stats_;
    std::uint64_t evaluations_ = 0;
};

}  // namespace detail

// Whether the sieve detects a delta-restless s-z path of exactly len
// time-edges, without extracting it. Never true on a no-instance.
inline bool sieve_detects_restless_path(const TemporalGraph& g, VertexId s, VertexId z, TimeStamp delta,
                                        std::size_t len, const FinderConfig& cfg, FinderStats* stats = nullptr) {
    cfg.validate();
    if (stats != nullptr) {
        ++stats->calls;
        ++stats->sieve_calls;
    }
    if (!detail::valid_query(g, s, z, len) || len > 62) {
        return false;
    }
    detail::SieveDecider decider(g, s, z, delta, len, cfg, stats);
    std::vector<char> enabled(g.time_edge_count(), 1);
    return decider.decide(enabled);
}

inline std::optional<RestlessPath> find_exact_restless_path_sieve(const TemporalGraph& g, VertexId s, VertexId z,
                                                                  TimeStamp delta, std::size_t len,
                                                                  const FinderConfig& cfg,
                                                                  FinderStats* stats = nullptr) {
    cfg.validate();
    if (stats != nullptr) {
        ++stats->calls;
        ++stats->sieve_calls;
    }
    if (!detail::valid_query(g, s, z, len) || len > 62) {
        return std::nullopt;
    }
    detail::SieveDecider decider(g, s, z, delta, len, cfg, stats);
    std::vector<char> enabled(g.time_edge_count(), 1);
    if (!decider.decide(enabled)) {
        return std::nullopt;
    }
    // Self-reduction: drop every time-edge whose removal keeps the answer yes.
    // Only yes answers are acted upon, so the kept set always contains a path.
    for (std::size_t i = 0; i < enabled.size(); ++i) {
        if (!enabled[i]) {
            continue;
        }
        if (static_cast<std::size_t>(std::count(enabled.begin(), enabled.end(), 1)) <= len) {
            break;
        }
        std::vector<char> trial = enabled;
        trial[i] = 0;
        if (decider.decide(trial)) {
            enabled = std::move(trial);
        }
    }
    return detail::brute_search(g, s, z, delta, len, enabled, stats ? &stats->brute_nodes : nullptr);
}

// Dispatches per cfg.backend. Every returned path is re-validated.
inline std::optional<RestlessPath> find_exact_restless_path(const TemporalGraph& g, VertexId s, VertexId z,
                                                            TimeStamp delta, std::size_t len,
                                                            const FinderConfig& cfg, FinderStats* stats = nullptr) {
    cfg.validate();
    Backend backend = cfg.backend;
    if (backend == Backend::kAuto) {
        backend = (len < cfg.auto_threshold || g.time_edge_count() <= kTinyGraphEdges) ? Backend::kBrute
                                                                                       : Backend::kSieve;
    }
    auto path = backend == Backend::kBrute ? find_exact_restless_path_brute(g, s, z, delta, len, stats)
                                           : find_exact_restless_path_sieve(g, s, z, delta, len, cfg, stats);
    if (path) {
        if (path->length() != len || !is_restless_path(g, path->steps, s, z, delta)) {
            throw std::logic_error("path finder returned an invalid path");
        }
    }
    return path;
}

}  // namespace rtp

#endif  // RTP_PATH_FINDER_HPP
