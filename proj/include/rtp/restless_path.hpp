#ifndef RTP_RESTLESS_PATH_HPP
#define RTP_RESTLESS_PATH_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "rtp/temporal_graph.hpp"

namespace rtp {

// A validated delta-restless temporal path. Steps are oriented in travel
// direction: steps[i].u is v_i and steps[i].v is v_{i+1}.
struct RestlessPath {
    std::vector<TimeEdge> steps;
    TimeStamp delta = 1;

    std::size_t length() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
    VertexId source() const { return steps.front().u; }
    VertexId target() const { return steps.back().v; }
    TimeStamp departure() const { return steps.front().t; }
    TimeStamp arrival() const { return steps.back().t; }

    // v_0, ..., v_m.
    std::vector<VertexId> vertices() const {
        std::vector<VertexId> out;
        if (steps.empty()) {
            return out;
        }
        out.reserve(steps.size() + 1);
        out.push_back(steps.front().u);
        for (const auto& e : steps) {
            out.push_back(e.v);
        }
        return out;
    }

    friend bool operator==(const RestlessPath&, const RestlessPath&) = default;
};

enum class PathViolation {
    kEmpty,
    kEdgeMissing,
    kNotConnected,
    kNotChronological,
    kWaitExceeded,
    kVertexRepeated,
    kWrongEndpoints,
};

inline const char* to_string(PathViolation v) {
    switch (v) {
        case PathViolation::kEmpty: return "empty";
        case PathViolation::kEdgeMissing: return "edge_missing";
        case PathViolation::kNotConnected: return "not_connected";
        case PathViolation::kNotChronological: return "not_chronological";
        case PathViolation::kWaitExceeded: return "wait_exceeded";
        case PathViolation::kVertexRepeated: return "vertex_repeated";
        case PathViolation::kWrongEndpoints: return "wrong_endpoints";
    }
    return "unknown";
}

class InvalidPath : public std::runtime_error {
public:
    InvalidPath(PathViolation reason, std::size_t step, const std::string& what)
        : std::runtime_error(what), reason_(reason), step_(step) {}

    PathViolation reason() const { return reason_; }
    // 0-based index of the offending step.
    std::size_t step() const { return step_; }

private:
    PathViolation reason_;
    std::size_t step_;
};

// Walks the steps from s and reports the first violated condition, or
// std::nullopt if the steps form a delta-restless temporal s-z path in g.
// Step orientation in the input is ignored; it is derived from s.
inline std::optional<InvalidPath> check_restless_path(const TemporalGraph& g,
                                                      std::span<const TimeEdge> steps,
                                                      VertexId s, VertexId z, TimeStamp delta,
                                                      RestlessPath* oriented = nullptr) {
    if (steps.empty()) {
        return InvalidPath(PathViolation::kEmpty, 0, "path has no time-edges");
    }
    std::vector<TimeEdge> out;
    out.reserve(steps.size());
    std::unordered_set<VertexId> seen{s};
    VertexId at = s;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const TimeEdge& e = steps[i];
        const std::string where = "step " + std::to_string(i) + " ({" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + "}," + std::to_string(e.t) + ")";
        if (!g.contains(e)) {
            return InvalidPath(PathViolation::kEdgeMissing, i, where + " is not a time-edge of the graph");
        }
        if (!e.contains(at)) {
            if (i == 0) {
                return InvalidPath(PathViolation::kWrongEndpoints, i, where + " does not start at the source");
            }
            return InvalidPath(PathViolation::kNotConnected, i,
                               where + " does not continue from vertex " + std::to_string(at));
        }
        if (i > 0) {
            const TimeStamp prev = out.back().t;
            if (e.t < prev) {
                return InvalidPath(PathViolation::kNotChronological, i,
                                   where + " departs before the previous time-edge at " + std::to_string(prev));
            }
            if (e.t - prev > delta) {
                return InvalidPath(PathViolation::kWaitExceeded, i,
                                   where + " waits " + std::to_string(e.t - prev) + " > delta " +
                                       std::to_string(delta));
            }
        }
        const VertexId next = e.other(at);
        if (!seen.insert(next).second) {
            return InvalidPath(PathViolation::kVertexRepeated, i,
                               where + " revisits vertex " + std::to_string(next));
        }
        out.push_back(TimeEdge{at, next, e.t});
        at = next;
    }
    if (at != z) {
        return InvalidPath(PathViolation::kWrongEndpoints, steps.size() - 1,
                           "path ends at vertex " + std::to_string(at) + ", expected " + std::to_string(z));
    }
    if (oriented != nullptr) {
        *oriented = RestlessPath{std::move(out), delta};
    }
    return std::nullopt;
}

// Throws InvalidPath on the first violated condition.
inline RestlessPath validate_restless_path(const TemporalGraph& g, std::span<const TimeEdge> steps,
                                           VertexId s, VertexId z, TimeStamp delta) {
    RestlessPath path;
    if (auto err = check_restless_path(g, steps, s, z, delta, &path)) {
        throw *err;
    }
    return path;
}

inline bool is_restless_path(const TemporalGraph& g, std::span<const TimeEdge> steps, VertexId s,
                             VertexId z, TimeStamp delta) {
    return !check_restless_path(g, steps, s, z, delta).has_value();
}

}  // namespace rtp

#endif  // RTP_RESTLESS_PATH_HPP
