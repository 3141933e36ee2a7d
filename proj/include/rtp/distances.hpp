#ifndef RTP_DISTANCES_HPP
#define RTP_DISTANCES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "rtp/temporal_graph.hpp"

namespace rtp {

using Length = std::uint32_t;

// Strictly greater than any path length a graph of < 2^30 vertices can have,
// and far enough from the type's maximum that adding probe lengths never wraps.
inline constexpr Length kInfinity = Length{1} << 30;

inline bool is_finite(Length d) { return d < kInfinity; }

using AppearanceId = std::uint32_t;
inline constexpr AppearanceId kNoAppearance = static_cast<AppearanceId>(-1);

// Dense numbering of the non-isolated vertex appearances of a graph, sorted by
// (t, v), plus per-vertex chronological lists.
class AppearanceIndex {
public:
    AppearanceIndex() = default;

    explicit AppearanceIndex(const TemporalGraph& g) : by_vertex_(g.vertex_count()) {
        const auto edges = g.time_edges();
        edge_endpoints_.resize(edges.size());
        // Edges are sorted by t, so appearances come out sorted by (t, v)
        // once each layer's vertices are sorted.
        std::vector<AppearanceId> last_seen(g.vertex_count(), kNoAppearance);
        std::size_t i = 0;
        while (i < edges.size()) {
            const TimeStamp t = edges[i].t;
            std::size_t j = i;
            std::vector<VertexId> layer_vertices;
            for (; j < edges.size() && edges[j].t == t; ++j) {
                layer_vertices.push_back(edges[j].u);
                layer_vertices.push_back(edges[j].v);
            }
            std::sort(layer_vertices.begin(), layer_vertices.end());
            layer_vertices.erase(std::unique(layer_vertices.begin(), layer_vertices.end()),
                                 layer_vertices.end());
            for (VertexId v : layer_vertices) {
                const auto id = static_cast<AppearanceId>(apps_.size());
                apps_.push_back({v, t});
                by_vertex_[v].push_back(id);
                last_seen[v] = id;
            }
            for (std::size_t k = i; k < j; ++k) {
                edge_endpoints_[k] = {last_seen[edges[k].u], last_seen[edges[k].v]};
            }
            i = j;
        }
    }

    std::size_t size() const { return apps_.size(); }
    const VertexAppearance& operator[](AppearanceId id) const { return apps_[id]; }
    std::span<const VertexAppearance> appearances() const { return apps_; }

    // Chronological appearance ids of v.
    std::span<const AppearanceId> of_vertex(VertexId v) const { return by_vertex_[v]; }

    std::optional<AppearanceId> find(VertexId v, TimeStamp t) const {
        const auto id = first_at_or_after(v, t);
        if (id == kNoAppearance || apps_[id].t != t) {
            return std::nullopt;
        }
        return id;
    }

    // Earliest appearance of v at time >= t, or kNoAppearance.
    AppearanceId first_at_or_after(VertexId v, TimeStamp t) const {
        const auto& list = by_vertex_[v];
        auto it = std::lower_bound(list.begin(), list.end(), t,
                                   [&](AppearanceId id, TimeStamp tt) { return apps_[id].t < tt; });
        return it == list.end() ? kNoAppearance : *it;
    }

    // Appearance ids of (u, t) and (v, t) for time-edge i of the graph.
    std::pair<AppearanceId, AppearanceId> endpoints(std::size_t edge_index) const {
        return edge_endpoints_[edge_index];
    }

private:
    std::vector<VertexAppearance> apps_;
    std::vector<std::vector<AppearanceId>> by_vertex_;
    std::vector<std::pair<AppearanceId, AppearanceId>> edge_endpoints_;
};

// { (v,t) : some e in E_t contains v }, sorted by (t, v).
inline std::vector<VertexAppearance> non_isolated_appearances(const TemporalGraph& g) {
    const AppearanceIndex index(g);
    return {index.appearances().begin(), index.appearances().end()};
}

// Digraph with 0/1 arc weights whose shortest root -> v_t distance is d(v,t).
// Node 0 is the root; node id + 1 is appearance id.
struct TransformedDigraph {
    struct Arc {
        std::uint32_t head;
        std::uint8_t weight;
    };

    std::size_t node_count = 0;
    // CSR adjacency.
    std::vector<std::size_t> offsets;
    std::vector<Arc> arcs;

    static constexpr std::uint32_t kRoot = 0;
    static std::uint32_t node_of(AppearanceId id) { return id + 1; }

    std::size_t arc_count() const { return arcs.size(); }
    std::span<const Arc> out(std::uint32_t node) const {
        return std::span<const Arc>(arcs).subspan(offsets[node], offsets[node + 1] - offsets[node]);
    }
};

inline TransformedDigraph build_transformed_digraph(const TemporalGraph& g, const AppearanceIndex& index,
                                                    VertexId z) {
    struct RawArc {
        std::uint32_t tail;
        TransformedDigraph::Arc arc;
    };
    std::vector<RawArc> raw;
    raw.reserve(2 * g.time_edge_count() + index.size() + 1);

    // Co-occurrence along a time-edge: weight 1 both ways.
    for (std::size_t i = 0; i < g.time_edge_count(); ++i) {
        const auto [a, b] = index.endpoints(i);
        raw.push_back({TransformedDigraph::node_of(a), {TransformedDigraph::node_of(b), 1}});
        raw.push_back({TransformedDigraph::node_of(b), {TransformedDigraph::node_of(a), 1}});
    }
    // Time travel from an appearance to the previous appearance of the same vertex.
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto apps = index.of_vertex(v);
        for (std::size_t i = 1; i < apps.size(); ++i) {
            raw.push_back({TransformedDigraph::node_of(apps[i]), {TransformedDigraph::node_of(apps[i - 1]), 0}});
        }
    }
    // Root into z's latest appearance.
    if (z < g.vertex_count() && !index.of_vertex(z).empty()) {
        raw.push_back({TransformedDigraph::kRoot, {TransformedDigraph::node_of(index.of_vertex(z).back()), 0}});
    }

    TransformedDigraph d;
    d.node_count = index.size() + 1;
    d.offsets.assign(d.node_count + 1, 0);
    for (const auto& r : raw) {
        ++d.offsets[r.tail + 1];
    }
    for (std::size_t i = 1; i < d.offsets.size(); ++i) {
        d.offsets[i] += d.offsets[i - 1];
    }
    d.arcs.resize(raw.size());
    std::vector<std::size_t> fill(d.offsets.begin(), d.offsets.end() - 1);
    for (const auto& r : raw) {
        d.arcs[fill[r.tail]++] = r.arc;
    }
    return d;
}

inline TransformedDigraph build_transformed_digraph(const TemporalGraph& g, VertexId z) {
    return build_transformed_digraph(g, AppearanceIndex(g), z);
}

// d(v,t) for every non-isolated appearance, for a fixed target z.
class DistanceTable {
public:
    DistanceTable() = default;
    DistanceTable(AppearanceIndex index, VertexId target, std::vector<Length> values)
        : index_(std::move(index)), target_(target), values_(std::move(values)) {}

    VertexId target() const { return target_; }
    const AppearanceIndex& index() const { return index_; }
    std::span<const Length> values() const { return values_; }

    Length at(AppearanceId id) const { return values_[id]; }

    // d(v,t) for any (v,t), isolated or not: the best departure at time >= t
    // is at v's first non-isolated appearance at or after t.
    Length at(VertexId v, TimeStamp t) const {
        if (v == target_) {
            return 0;
        }
        const auto id = index_.first_at_or_after(v, t);
        return id == kNoAppearance ? kInfinity : values_[id];
    }

    // d(v,1).
    Length from_start(VertexId v) const { return at(v, 1); }

private:
    AppearanceIndex index_;
    VertexId target_ = 0;
    std::vector<Length> values_;
};

struct DistanceWork {
    std::size_t pushes = 0;
    std::size_t relaxations = 0;
    std::size_t total() const { return pushes + relaxations; }
};

// 0/1-BFS from the root of the transformed digraph.
inline DistanceTable compute_distances(const TemporalGraph& g, VertexId z, DistanceWork* work = nullptr) {
    AppearanceIndex index(g);
    const TransformedDigraph d = build_transformed_digraph(g, index, z);

    std::vector<Length> dist(d.node_count, kInfinity);
    std::vector<bool> done(d.node_count, false);
    std::deque<std::uint32_t> queue;
    dist[TransformedDigraph::kRoot] = 0;
    queue.push_back(TransformedDigraph::kRoot);
    DistanceWork local;
    ++local.pushes;
    while (!queue.empty()) {
        const std::uint32_t node = queue.front();
        queue.pop_front();
        if (done[node]) {
            continue;
        }
        done[node] = true;
        for (const auto& arc : d.out(node)) {
            ++local.relaxations;
            const Length cand = dist[node] + arc.weight;
            if (cand < dist[arc.head]) {
                dist[arc.head] = cand;
                if (arc.weight == 0) {
                    queue.push_front(arc.head);
                } else {
                    queue.push_back(arc.head);
                }
                ++local.pushes;
            }
        }
    }
    if (work != nullptr) {
        *work = local;
    }
    std::vector<Length> values(dist.begin() + 1, dist.end());
    return DistanceTable(std::move(index), z, std::move(values));
}

// Minimum length of a delta-restless temporal s-z walk, kInfinity if none.
// Breadth-first over directed time-edges: a state is "just traversed time-edge
// e towards its head"; its successors leave the head within [t, t + delta].
inline Length restless_walk_distance(const TemporalGraph& g, VertexId s, VertexId z, TimeStamp delta) {
    if (s == z) {
        return 0;
    }
    const std::size_t m = g.time_edge_count();
    auto head = [&](std::size_t state) {
        const TimeEdge& e = g.time_edge(state / 2);
        return state % 2 == 0 ? e.v : e.u;
    };
    std::vector<Length> dist(2 * m, kInfinity);
    std::queue<std::size_t> queue;
    for (std::size_t i : g.incident(s)) {
        const std::size_t state = 2 * i + (g.time_edge(i).u == s ? 0 : 1);
        dist[state] = 1;
        queue.push(state);
    }
    while (!queue.empty()) {
        const std::size_t state = queue.front();
        queue.pop();
        const VertexId at = head(state);
        if (at == z) {
            return dist[state];
        }
        const TimeStamp t = g.time_edge(state / 2).t;
        for (std::size_t i : g.incident(at)) {
            const TimeEdge& e = g.time_edge(i);
            if (e.t < t) {
                continue;
            }
            if (e.t - t > delta) {
                break;
            }
            const std::size_t next = 2 * i + (e.u == at ? 0 : 1);
            if (dist[next] == kInfinity) {
                dist[next] = dist[state] + 1;
                queue.push(next);
            }
        }
    }
    return kInfinity;
}

// Hop distance in the underlying static graph.
inline Length static_distance(const TemporalGraph& g, VertexId s, VertexId z) {
    std::vector<Length> dist(g.vertex_count(), kInfinity);
    std::queue<VertexId> queue;
    dist[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop();
        for (std::size_t i : g.incident(v)) {
            const VertexId w = g.time_edge(i).other(v);
            if (dist[w] == kInfinity) {
                dist[w] = dist[v] + 1;
                queue.push(w);
            }
        }
    }
    return dist[z];
}

}  // namespace rtp

#endif  // RTP_DISTANCES_HPP
