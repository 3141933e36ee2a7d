#ifndef RTP_TEMPORAL_GRAPH_HPP
#define RTP_TEMPORAL_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace rtp {

using VertexId = std::uint32_t;
using TimeStamp = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

// An edge {u,v} present at time step t. Inside a graph the pair is stored with
// u < v; inside a path it is oriented in travel direction.
struct TimeEdge {
    VertexId u = 0;
    VertexId v = 0;
    TimeStamp t = 0;

    TimeEdge normalized() const { return u <= v ? *this : TimeEdge{v, u, t}; }
    TimeEdge reversed() const { return TimeEdge{v, u, t}; }
    bool contains(VertexId w) const { return u == w || v == w; }
    VertexId other(VertexId w) const { return w == u ? v : u; }

    // Chronological order, then by vertex pair.
    friend auto operator<=>(const TimeEdge& a, const TimeEdge& b) {
        return std::tie(a.t, a.u, a.v) <=> std::tie(b.t, b.u, b.v);
    }
    friend bool operator==(const TimeEdge&, const TimeEdge&) = default;
};

struct VertexAppearance {
    VertexId v = 0;
    TimeStamp t = 0;

    friend auto operator<=>(const VertexAppearance& a, const VertexAppearance& b) {
        return std::tie(a.t, a.v) <=> std::tie(b.t, b.v);
    }
    friend bool operator==(const VertexAppearance&, const VertexAppearance&) = default;
};

struct AppearanceHash {
    std::size_t operator()(const VertexAppearance& a) const noexcept {
        return std::hash<std::uint64_t>{}((std::uint64_t{a.v} << 32) | a.t);
    }
};

struct TimeEdgeHash {
    std::size_t operator()(const TimeEdge& e) const noexcept {
        const TimeEdge n = e.normalized();
        std::uint64_t h = (std::uint64_t{n.u} << 32) ^ n.v;
        h ^= std::uint64_t{n.t} * 0x9e3779b97f4a7c15ULL;
        return std::hash<std::uint64_t>{}(h);
    }
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// G = (V, (E_i)_{i=1}^tau) with dense vertex ids [0, vertex_count) and time
// stamps [1, lifetime]. Immutable once built.
class TemporalGraph {
public:
    TemporalGraph() = default;

    // Throws GraphError on self-loops, out-of-range ids or stamps, and
    // duplicate time-edges.
    TemporalGraph(std::size_t vertex_count, TimeStamp lifetime, std::vector<TimeEdge> edges)
        : vertex_count_(vertex_count), lifetime_(lifetime), edges_(std::move(edges)) {
        if (lifetime_ < 1) {
            throw GraphError("lifetime must be at least 1");
        }
        for (auto& e : edges_) {
            if (e.u == e.v) {
                throw GraphError("self-loop at vertex " + std::to_string(e.u));
            }
            if (e.u >= vertex_count_ || e.v >= vertex_count_) {
                throw GraphError("vertex id out of range in edge {" + std::to_string(e.u) + "," +
                                 std::to_string(e.v) + "}");
            }
            if (e.t < 1 || e.t > lifetime_) {
                throw GraphError("time stamp " + std::to_string(e.t) + " outside [1, " +
                                 std::to_string(lifetime_) + "]");
            }
            e = e.normalized();
        }
        std::sort(edges_.begin(), edges_.end());
        auto dup = std::adjacent_find(edges_.begin(), edges_.end());
        if (dup != edges_.end()) {
            throw GraphError("duplicate time-edge {" + std::to_string(dup->u) + "," +
                             std::to_string(dup->v) + "} at time " + std::to_string(dup->t));
        }
        build_indices();
    }

    std::size_t vertex_count() const { return vertex_count_; }
    TimeStamp lifetime() const { return lifetime_; }
    std::size_t time_edge_count() const { return edges_.size(); }

    // Sorted by (t, u, v).
    std::span<const TimeEdge> time_edges() const { return edges_; }
    const TimeEdge& time_edge(std::size_t i) const { return edges_[i]; }

    // Index range [first, last) of the time-edges with stamps in [from, to].
    std::pair<std::size_t, std::size_t> edge_range(TimeStamp from, TimeStamp to) const {
        from = std::max<TimeStamp>(from, 1);
        to = std::min(to, lifetime_);
        if (edges_.empty() || from > to) {
            return {0, 0};
        }
        return {layer_offsets_[from], layer_offsets_[to + 1]};
    }

    std::span<const TimeEdge> layer(TimeStamp t) const {
        auto [first, last] = edge_range(t, t);
        return std::span<const TimeEdge>(edges_).subspan(first, last - first);
    }

    // Indices of time-edges incident to v, in chronological order.
    std::span<const std::size_t> incident(VertexId v) const { return incidence_[v]; }

    // |G| = |V| + sum_i max(1, |E_i|).
    std::size_t size() const {
        std::size_t total = vertex_count_;
        for (TimeStamp t = 1; t <= lifetime_; ++t) {
            total += std::max<std::size_t>(1, layer_offsets_[t + 1] - layer_offsets_[t]);
        }
        return total;
    }

    std::optional<std::size_t> find(const TimeEdge& e) const {
        const TimeEdge key = e.normalized();
        auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
        if (it == edges_.end() || *it != key) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - edges_.begin());
    }
    bool contains(const TimeEdge& e) const { return find(e).has_value(); }

    // Vertices that are an endpoint of at least one time-edge.
    std::vector<VertexId> active_vertices() const {
        std::vector<VertexId> out;
        for (VertexId v = 0; v < vertex_count_; ++v) {
            if (!incidence_[v].empty()) {
                out.push_back(v);
            }
        }
        return out;
    }

    // Optional human-readable vertex names.
    void set_alias(VertexId v, std::string label) {
        if (v >= vertex_count_) {
            throw GraphError("alias for out-of-range vertex " + std::to_string(v));
        }
        aliases_[v] = std::move(label);
    }
    const std::map<VertexId, std::string>& aliases() const { return aliases_; }

    std::string label(VertexId v) const {
        auto it = aliases_.find(v);
        return it == aliases_.end() ? std::to_string(v) : it->second;
    }

    // Accepts an alias or a decimal id.
    std::optional<VertexId> resolve(const std::string& name) const {
        for (const auto& [id, label] : aliases_) {
            if (label == name) {
                return id;
            }
        }
        if (name.empty() || name.find_first_not_of("0123456789") != std::string::npos ||
            name.size() > 9) {
            return std::nullopt;
        }
        const auto id = static_cast<VertexId>(std::stoul(name));
        if (id >= vertex_count_) {
            return std::nullopt;
        }
        return id;
    }

private:
    void build_indices() {
        layer_offsets_.assign(static_cast<std::size_t>(lifetime_) + 2, 0);
        for (const auto& e : edges_) {
            ++layer_offsets_[e.t + 1];
        }
        for (std::size_t t = 1; t < layer_offsets_.size(); ++t) {
            layer_offsets_[t] += layer_offsets_[t - 1];
        }
        incidence_.assign(vertex_count_, {});
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            incidence_[edges_[i].u].push_back(i);
            incidence_[edges_[i].v].push_back(i);
        }
    }

    std::size_t vertex_count_ = 0;
    TimeStamp lifetime_ = 1;
    std::vector<TimeEdge> edges_;
    // layer_offsets_[t] = index of the first time-edge with stamp >= t.
    std::vector<std::size_t> layer_offsets_ = std::vector<std::size_t>(3, 0);
    std::vector<std::vector<std::size_t>> incidence_;
    std::map<VertexId, std::string> aliases_;
};

// Keeps the time-edges accepted by `keep(edge)`. Vertex ids and lifetime are
// unchanged; aliases carry over.
template <class Predicate>
TemporalGraph filter_time_edges(const TemporalGraph& g, Predicate&& keep) {
    std::vector<TimeEdge> kept;
    for (const auto& e : g.time_edges()) {
        if (keep(e)) {
            kept.push_back(e);
        }
    }
    TemporalGraph out(g.vertex_count(), g.lifetime(), std::move(kept));
    for (const auto& [id, label] : g.aliases()) {
        out.set_alias(id, label);
    }
    return out;
}

// Time-edges whose two endpoint appearances are both in `keep`, plus the time-edges
// listed in `extra` (which must belong to g).
inline TemporalGraph induced_subgraph(const TemporalGraph& g,
                                      std::span<const VertexAppearance> keep,
                                      std::span<const TimeEdge> extra = {}) {
    const std::unordered_set<VertexAppearance, AppearanceHash> kept(keep.begin(), keep.end());
    std::unordered_set<TimeEdge, TimeEdgeHash> forced;
    for (const auto& e : extra) {
        if (!g.contains(e)) {
            throw GraphError("extra time-edge is not part of the graph");
        }
        forced.insert(e.normalized());
    }
    return filter_time_edges(g, [&](const TimeEdge& e) {
        return forced.contains(e) || (kept.contains({e.u, e.t}) && kept.contains({e.v, e.t}));
    });
}

}  // namespace rtp

#endif  // RTP_TEMPORAL_GRAPH_HPP
