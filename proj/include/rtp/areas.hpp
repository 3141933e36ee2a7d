#ifndef RTP_AREAS_HPP
#define RTP_AREAS_HPP

// Area subgraphs between two vertex appearances in the (distance, time) plane.
//
// For appearances (a,t) and (b,t') with t <= t' and d(b,t') < d(a,t):
//   A_{a,t}^{b,t'} = { (w,t*) : d(b,t') < d(w,t*) < d(a,t), t <= t* <= t' }
//   A^{b,t'}       = { (w,t*) : inf > d(w,t*) > d(b,t'), t* <= t' }
// The hop area keeps interior time-edges (both endpoints in A), departure
// time-edges ({a,v},t) with (v,t) in A, and arrival time-edges ({v,b},t*) with
// t* >= t' - delta and (v,t*) in A or equal to (a,t). The source area keeps
// interior and arrival time-edges only.
//
// Under AreaRule::kClosedBoundary (the default) the interior and departure
// clauses also admit an endpoint from the boundary set
//   B = { (w,t*) : w not in {a,b}, d(w,t*) = d(b,t'), same time window }
// as long as the other endpoint lies in A (or is (a,t)). A path traversing
// ({v,w},t*) only guarantees d(v,t*) > d(b,t') at its departure side; the
// arrival side w may sit exactly at d(b,t') and leave again later from a
// farther appearance. Without B such paths are lost; with it, two chained
// areas still share only their common corner because the upper bound
// d(w,t*) < d(a,t) stays strict.

#include <algorithm>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rtp/distances.hpp"
#include "rtp/restless_path.hpp"
#include "rtp/temporal_graph.hpp"

namespace rtp {

enum class AreaRule {
    kStrict,
    kClosedBoundary,
};

struct AreaSpec {
    // Right-bottom corner (a,t); absent for the area that contains the source.
    std::optional<VertexAppearance> lower;
    // Left-top corner (b,t').
    VertexAppearance upper;
    TimeStamp delta = 1;
    AreaRule rule = AreaRule::kClosedBoundary;
};

// Throws std::invalid_argument unless t <= t', a != b and d(b,t') < d(a,t).
inline AreaSpec make_area_spec(const DistanceTable& dt, std::optional<VertexAppearance> lower,
                               VertexAppearance upper, TimeStamp delta,
                               AreaRule rule = AreaRule::kClosedBoundary) {
    if (lower) {
        if (lower->v == upper.v) {
            throw std::invalid_argument("area corners must be different vertices");
        }
        if (lower->t > upper.t) {
            throw std::invalid_argument("area lower corner is later than its upper corner");
        }
        if (!(dt.at(upper.v, upper.t) < dt.at(lower->v, lower->t))) {
            throw std::invalid_argument("area upper corner must be strictly closer to the target");
        }
    }
    return AreaSpec{lower, upper, delta, rule};
}

namespace detail {

enum class Zone { kOutside, kBoundary, kInside };

// Classifies non-isolated appearances against A and B.
class ASetMembership {
public:
    ASetMembership(const DistanceTable& dt, const AreaSpec& spec) : dt_(dt), spec_(spec) {
        upper_d_ = dt.at(spec.upper.v, spec.upper.t);
        if (spec.lower) {
            lower_d_ = dt.at(spec.lower->v, spec.lower->t);
        }
    }

    Zone operator()(AppearanceId id) const {
        const VertexAppearance& app = dt_.index()[id];
        const Length d = dt_.at(id);
        if (app.t > spec_.upper.t || d < upper_d_ || !is_finite(d)) {
            return Zone::kOutside;
        }
        if (spec_.lower && (app.t < spec_.lower->t || !(d < lower_d_))) {
            return Zone::kOutside;
        }
        if (d > upper_d_) {
            return Zone::kInside;
        }
        const bool corner = app.v == spec_.upper.v || (spec_.lower && app.v == spec_.lower->v);
        return spec_.rule == AreaRule::kClosedBoundary && !corner ? Zone::kBoundary : Zone::kOutside;
    }

private:
    const DistanceTable& dt_;
    const AreaSpec& spec_;
    Length upper_d_ = 0;
    Length lower_d_ = kInfinity;
};

}  // namespace detail

// The A-set restricted to non-isolated appearances (isolated ones carry no
// time-edges), sorted by (t, v).
inline std::vector<VertexAppearance> a_set(const DistanceTable& dt, const AreaSpec& spec) {
    const detail::ASetMembership in_area(dt, spec);
    std::vector<VertexAppearance> out;
    for (AppearanceId id = 0; id < dt.index().size(); ++id) {
        if (in_area(id) == detail::Zone::kInside) {
            out.push_back(dt.index()[id]);
        }
    }
    return out;
}

// The boundary set B (empty under AreaRule::kStrict), sorted by (t, v).
inline std::vector<VertexAppearance> boundary_set(const DistanceTable& dt, const AreaSpec& spec) {
    const detail::ASetMembership in_area(dt, spec);
    std::vector<VertexAppearance> out;
    for (AppearanceId id = 0; id < dt.index().size(); ++id) {
        if (in_area(id) == detail::Zone::kBoundary) {
            out.push_back(dt.index()[id]);
        }
    }
    return out;
}

// An area as a filter over the parent's time-edge array, with its vertices
// relabelled densely (in increasing parent id) for the path finders.
class AreaGraph {
public:
    AreaGraph() = default;
    AreaGraph(const TemporalGraph& parent, std::vector<std::size_t> parent_edges)
        : parent_edges_(std::move(parent_edges)) {
        for (std::size_t i : parent_edges_) {
            to_parent_.push_back(parent.time_edge(i).u);
            to_parent_.push_back(parent.time_edge(i).v);
        }
        std::sort(to_parent_.begin(), to_parent_.end());
        to_parent_.erase(std::unique(to_parent_.begin(), to_parent_.end()), to_parent_.end());
        std::vector<TimeEdge> local;
        local.reserve(parent_edges_.size());
        for (std::size_t i : parent_edges_) {
            const TimeEdge& e = parent.time_edge(i);
            local.push_back({*local_id(e.u), *local_id(e.v), e.t});
        }
        graph_ = TemporalGraph(to_parent_.size(), parent.lifetime(), std::move(local));
    }

    const TemporalGraph& graph() const { return graph_; }
    std::span<const std::size_t> parent_edges() const { return parent_edges_; }
    // V(area) in parent ids, sorted.
    std::span<const VertexId> vertices() const { return to_parent_; }
    bool empty() const { return parent_edges_.empty(); }

    VertexId parent_id(VertexId local) const { return to_parent_[local]; }
    std::optional<VertexId> local_id(VertexId parent) const {
        auto it = std::lower_bound(to_parent_.begin(), to_parent_.end(), parent);
        if (it == to_parent_.end() || *it != parent) {
            return std::nullopt;
        }
        return static_cast<VertexId>(it - to_parent_.begin());
    }

    // Time-edges of the area in parent ids.
    std::vector<TimeEdge> parent_time_edges(const TemporalGraph& parent) const {
        std::vector<TimeEdge> out;
        out.reserve(parent_edges_.size());
        for (std::size_t i : parent_edges_) {
            out.push_back(parent.time_edge(i));
        }
        return out;
    }

    std::vector<TimeEdge> lift(std::span<const TimeEdge> local_steps) const {
        std::vector<TimeEdge> out;
        out.reserve(local_steps.size());
        for (const auto& e : local_steps) {
            out.push_back({parent_id(e.u), parent_id(e.v), e.t});
        }
        return out;
    }

private:
    std::vector<std::size_t> parent_edges_;
    std::vector<VertexId> to_parent_;
    TemporalGraph graph_;
};

inline AreaGraph area_graph(const TemporalGraph& g, const DistanceTable& dt, const AreaSpec& spec) {
    const detail::ASetMembership in_area(dt, spec);
    const AppearanceIndex& index = dt.index();
    const VertexId b = spec.upper.v;
    const TimeStamp t_upper = spec.upper.t;
    const TimeStamp arrival_from = t_upper > spec.delta ? t_upper - spec.delta : 1;
    const TimeStamp from = spec.lower ? spec.lower->t : 1;

    std::vector<std::size_t> kept;
    const auto [first, last] = g.edge_range(from, t_upper);
    for (std::size_t i = first; i < last; ++i) {
        const TimeEdge& e = g.time_edge(i);
        const auto [au, av] = index.endpoints(i);
        const detail::Zone u_zone = in_area(au);
        const detail::Zone v_zone = in_area(av);
        const bool u_in = u_zone == detail::Zone::kInside;
        const bool v_in = v_zone == detail::Zone::kInside;
        const bool u_near = u_in || u_zone == detail::Zone::kBoundary;
        const bool v_near = v_in || v_zone == detail::Zone::kBoundary;
        bool keep = (u_in && v_near) || (v_in && u_near);
        if (!keep && spec.lower) {
            const VertexAppearance lo = *spec.lower;
            if (e.t == lo.t) {
                keep = (e.u == lo.v && v_near) || (e.v == lo.v && u_near);
            }
        }
        if (!keep && e.t >= arrival_from && e.contains(b)) {
            const VertexId w = e.other(b);
            const bool w_in = e.u == b ? v_in : u_in;
            const bool w_is_lower = spec.lower && w == spec.lower->v && e.t == spec.lower->t;
            keep = w_in || w_is_lower;
        }
        if (keep) {
            kept.push_back(i);
        }
    }
    return AreaGraph(g, std::move(kept));
}

// V(first) ∩ V(second), both sorted.
inline std::vector<VertexId> shared_vertices(const AreaGraph& first, const AreaGraph& second) {
    std::vector<VertexId> out;
    std::set_intersection(first.vertices().begin(), first.vertices().end(), second.vertices().begin(),
                          second.vertices().end(), std::back_inserter(out));
    return out;
}

}  // namespace rtp

#endif  // RTP_AREAS_HPP
