#ifndef RTP_RANDOM_HPP
#define RTP_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rtp/temporal_graph.hpp"

namespace rtp {

// SplitMix64. Child streams are derived from the state and a key, so every
// consumer of randomness can be reproduced independently of call order.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    SplitMix64 split(std::uint64_t key) const { return SplitMix64(mix(state_ ^ mix(key + 0x632be59bd9b4e019ULL))); }

    SplitMix64 split(std::initializer_list<std::uint64_t> keys) const {
        SplitMix64 out = *this;
        for (auto k : keys) {
            out = out.split(k);
        }
        return out;
    }

    // Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x;
        do {
            x = (*this)();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Parses a 64-bit unsigned seed in decimal or 0x-prefixed hex.
inline std::uint64_t parse_seed(const std::string& text) {
    if (text.empty() || text.front() == '-' || text.front() == '+') {
        throw std::invalid_argument("seed must be an unsigned 64-bit integer");
    }
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
        const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
        value = std::stoull(hex ? text.substr(2) : text, &used, hex ? 16 : 10);
        if (hex) {
            used += 2;
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("seed must be an unsigned 64-bit integer, got '" + text + "'");
    }
    if (used != text.size()) {
        throw std::invalid_argument("seed must be an unsigned 64-bit integer, got '" + text + "'");
    }
    return value;
}

struct GeneratorParams {
    std::size_t vertices = 8;
    TimeStamp lifetime = 6;
    // Mean number of time-edges per layer; each layer gets floor or ceil of it.
    double edges_per_layer = 3.0;
    std::uint64_t seed = 0;
};

// Uniformly random distinct pairs per layer. Throws std::invalid_argument for
// infeasible parameters.
inline TemporalGraph random_temporal_graph(const GeneratorParams& p) {
    if (p.vertices < 2) {
        throw std::invalid_argument("need at least 2 vertices");
    }
    if (p.lifetime < 1) {
        throw std::invalid_argument("lifetime must be at least 1");
    }
    const double pairs = static_cast<double>(p.vertices) * static_cast<double>(p.vertices - 1) / 2.0;
    if (!(p.edges_per_layer >= 0.0) || p.edges_per_layer > pairs) {
        throw std::invalid_argument("edges per layer must lie in [0, " + std::to_string(static_cast<long long>(pairs)) +
                                    "]");
    }
    SplitMix64 rng = SplitMix64(p.seed).split(0x67656eULL);
    const auto base = static_cast<std::size_t>(p.edges_per_layer);
    const double frac = p.edges_per_layer - static_cast<double>(base);
    std::vector<TimeEdge> edges;
    for (TimeStamp t = 1; t <= p.lifetime; ++t) {
        std::size_t count = base + (rng.unit() < frac ? 1 : 0);
        count = std::min(count, static_cast<std::size_t>(pairs));
        std::vector<std::pair<VertexId, VertexId>> chosen;
        while (chosen.size() < count) {
            auto u = static_cast<VertexId>(rng.below(p.vertices));
            auto v = static_cast<VertexId>(rng.below(p.vertices - 1));
            if (v >= u) {
                ++v;
            }
            if (u > v) {
                std::swap(u, v);
            }
            bool fresh = true;
            for (const auto& [a, b] : chosen) {
                if (a == u && b == v) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) {
                chosen.emplace_back(u, v);
                edges.push_back({u, v, t});
            }
        }
    }
    return TemporalGraph(p.vertices, p.lifetime, std::move(edges));
}

}  // namespace rtp

#endif  // RTP_RANDOM_HPP
