#ifndef RTP_TEL_HPP
#define RTP_TEL_HPP

// TEL: a line-oriented temporal edge list.
//
//   <vertex_count> <lifetime>
//   # name <id> <label>        (optional aliases)
//   <u> <v> <t>                (one time-edge per line)
//
// Lines starting with '%' are comments. Blank lines are ignored.

#include <charconv>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtp/temporal_graph.hpp"

namespace rtp {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

template <class Int>
Int parse_uint(std::string_view token, std::size_t line, const char* what) {
    Int value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(line, std::string("expected non-negative integer for ") + what + ", got '" +
                                   std::string(token) + "'");
    }
    return value;
}

}  // namespace detail

inline TemporalGraph parse_tel(std::string_view text) {
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t vertex_count = 0;
    TimeStamp lifetime = 0;
    std::vector<TimeEdge> edges;
    std::vector<std::size_t> edge_lines;
    std::vector<std::pair<VertexId, std::string>> aliases;

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto tokens = detail::split_ws(line);
        if (tokens.empty() || tokens.front().front() == '%') {
            continue;
        }
        if (tokens.front() == "#") {
            if (tokens.size() != 4 || tokens[1] != "name") {
                throw ParseError(line_no, "malformed alias line, expected '# name <id> <label>'");
            }
            if (!have_header) {
                throw ParseError(line_no, "alias before header");
            }
            const auto id = detail::parse_uint<VertexId>(tokens[2], line_no, "alias id");
            if (id >= vertex_count) {
                throw ParseError(line_no, "alias for vertex id " + std::to_string(id) + " out of range");
            }
            aliases.emplace_back(id, std::string(tokens[3]));
            continue;
        }
        if (!have_header) {
            if (tokens.size() != 2) {
                throw ParseError(line_no, "header must be '<vertex_count> <lifetime>'");
            }
            vertex_count = detail::parse_uint<std::size_t>(tokens[0], line_no, "vertex count");
            lifetime = detail::parse_uint<TimeStamp>(tokens[1], line_no, "lifetime");
            if (lifetime < 1) {
                throw ParseError(line_no, "lifetime must be at least 1");
            }
            have_header = true;
            continue;
        }
        if (tokens.size() != 3) {
            throw ParseError(line_no, "edge line must be '<u> <v> <t>'");
        }
        const TimeEdge e{detail::parse_uint<VertexId>(tokens[0], line_no, "vertex"),
                         detail::parse_uint<VertexId>(tokens[1], line_no, "vertex"),
                         detail::parse_uint<TimeStamp>(tokens[2], line_no, "time stamp")};
        if (e.u == e.v) {
            throw ParseError(line_no, "self-loop at vertex " + std::to_string(e.u));
        }
        if (e.u >= vertex_count || e.v >= vertex_count) {
            throw ParseError(line_no, "vertex id out of range [0, " + std::to_string(vertex_count) + ")");
        }
        if (e.t < 1 || e.t > lifetime) {
            throw ParseError(line_no, "time stamp " + std::to_string(e.t) + " outside [1, " +
                                          std::to_string(lifetime) + "]");
        }
        edges.push_back(e);
        edge_lines.push_back(line_no);
    }
    if (!have_header) {
        throw ParseError(line_no, "missing header '<vertex_count> <lifetime>'");
    }

    // Report duplicates against the line that repeats an earlier time-edge.
    {
        std::unordered_set<TimeEdge, TimeEdgeHash> seen;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!seen.insert(edges[i].normalized()).second) {
                throw ParseError(edge_lines[i], "duplicate time-edge {" + std::to_string(edges[i].u) +
                                                    "," + std::to_string(edges[i].v) + "} at time " +
                                                    std::to_string(edges[i].t));
            }
        }
    }

    TemporalGraph g(vertex_count, lifetime, std::move(edges));
    for (auto& [id, label] : aliases) {
        g.set_alias(id, std::move(label));
    }
    return g;
}

inline TemporalGraph read_tel(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_tel(buffer.str());
}

// Canonical form: header, aliases by id, time-edges by (t, min(u,v), max(u,v)).
inline std::string serialize_tel(const TemporalGraph& g) {
    std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.lifetime()) + "\n";
    for (const auto& [id, label] : g.aliases()) {
        out += "# name " + std::to_string(id) + " " + label + "\n";
    }
    for (const auto& e : g.time_edges()) {
        out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + std::to_string(e.t) + "\n";
    }
    return out;
}

}  // namespace rtp

#endif  // RTP_TEL_HPP
