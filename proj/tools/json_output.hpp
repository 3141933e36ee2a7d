#ifndef RTP_TOOLS_JSON_OUTPUT_HPP
#define RTP_TOOLS_JSON_OUTPUT_HPP

#include <json.hpp>

#include "rtp/distances.hpp"
#include "rtp/restless_path.hpp"
#include "rtp/solver.hpp"
#include "rtp/temporal_graph.hpp"

namespace rtp::cli {

using nlohmann::ordered_json;

inline ordered_json length_json(Length d) { return is_finite(d) ? ordered_json(d) : ordered_json(nullptr); }

// Steps in travel order; labels are added only for aliased vertices.
inline ordered_json steps_json(const TemporalGraph& g, const std::vector<TimeEdge>& steps) {
    ordered_json out = ordered_json::array();
    for (const auto& e : steps) {
        ordered_json step{{"u", e.u}, {"v", e.v}, {"t", e.t}};
        if (!g.aliases().empty()) {
            step["u_label"] = g.label(e.u);
            step["v_label"] = g.label(e.v);
        }
        out.push_back(std::move(step));
    }
    return out;
}

inline ordered_json stats_json(const SolveStats& s, const EffectiveParams& p) {
    return ordered_json{
        {"areas_built", s.areas_built},
        {"finder_calls", s.finder_calls},
        {"sieve_calls", s.sieve_calls},
        {"table_entries", s.table_entries},
        {"sieve_decisions", s.sieve_decisions},
        {"sieve_work", s.sieve_work},
        {"brute_nodes", s.brute_nodes},
        {"wall_ms", s.wall_ms},
        {"k_requested", p.k_requested},
        {"p", p.p},
        {"p_call", p.p_call},
    };
}

inline ordered_json solve_json(const TemporalGraph& g, const SolveResult& r) {
    ordered_json out;
    out["decision"] = r.decision ? "yes" : "no";
    out["witness"] = r.witness ? steps_json(g, r.witness->steps) : ordered_json(nullptr);
    out["k"] = r.params.k;
    out["temporal_distance"] = length_json(r.params.temporal_distance);
    out["ell"] = r.params.ell;
    out["stats"] = stats_json(r.stats, r.params);
    return out;
}

inline ordered_json distances_json(const DistanceTable& dt) {
    ordered_json entries = ordered_json::array();
    const AppearanceIndex& index = dt.index();
    for (AppearanceId id = 0; id < index.size(); ++id) {
        entries.push_back({{"v", index[id].v}, {"t", index[id].t}, {"d", length_json(dt.at(id))}});
    }
    return ordered_json{{"target", dt.target()}, {"entries", std::move(entries)}};
}

inline ordered_json validation_json(const TemporalGraph& g, const std::optional<InvalidPath>& err,
                                    const RestlessPath& oriented) {
    ordered_json out;
    out["valid"] = !err.has_value();
    if (err) {
        out["violation"] = {{"kind", to_string(err->reason())}, {"step", err->step()}, {"message", err->what()}};
    } else {
        out["length"] = oriented.length();
        out["path"] = steps_json(g, oriented.steps);
    }
    return out;
}

}  // namespace rtp::cli

#endif  // RTP_TOOLS_JSON_OUTPUT_HPP
