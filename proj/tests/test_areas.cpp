#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "rtp/areas.hpp"
#include "rtp/tel.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

namespace {

using rtp::AreaRule;
using rtp::TemporalGraph;
using rtp::TimeEdge;
using rtp::VertexAppearance;

TemporalGraph fig1() {
    std::ifstream in(std::string(RTP_TEST_DATA) + "/fig1.tel");
    return rtp::read_tel(in);
}

std::vector<TimeEdge> sorted(std::vector<TimeEdge> v) {
    std::sort(v.begin(), v.end(), [](const TimeEdge& x, const TimeEdge& y) {
        return std::tie(x.t, x.u, x.v) < std::tie(y.t, y.u, y.v);
    });
    return v;
}

TEST(Areas, AdjacentDistancesLeaveNoRoom) {
    const TemporalGraph g = fig1();
    const auto z = *g.resolve("z");
    const auto dt = rtp::compute_distances(g, z);
    const auto e = *g.resolve("e");
    const auto s = *g.resolve("s");
    // d(s,1) = 2 and d(e,6) = 1: nothing lies strictly between.
    ASSERT_EQ(dt.at(s, 1), dt.at(e, 6) + 1);
    const auto spec = rtp::make_area_spec(dt, VertexAppearance{s, 1}, {e, 6}, 2, AreaRule::kStrict);
    EXPECT_TRUE(rtp::a_set(dt, spec).empty());
    EXPECT_TRUE(rtp::boundary_set(dt, spec).empty());
}

TEST(Areas, SourceAreaOfSample) {
    const TemporalGraph g = fig1();
    const auto z = *g.resolve("z");
    const auto dt = rtp::compute_distances(g, z);
    const auto e = *g.resolve("e");
    // Everything finite and farther than d(e,6) = 1 up to time 6, minus z.
    const auto spec = rtp::make_area_spec(dt, std::nullopt, {e, 6}, 2);
    for (const auto& app : rtp::a_set(dt, spec)) {
        EXPECT_GT(dt.at(app.v, app.t), 1U);
        EXPECT_NE(app.v, z);
    }
    const auto area = rtp::area_graph(g, dt, spec);
    EXPECT_FALSE(area.empty());
    // The area keeps the final arrival time-edge of the unique 2-restless path.
    const auto edges = area.parent_time_edges(g);
    EXPECT_NE(std::find(edges.begin(), edges.end(), TimeEdge{*g.resolve("b"), e, 4}), edges.end());
}

TEST(Areas, SpecRejectsBadCorners) {
    const TemporalGraph g = fig1();
    const auto dt = rtp::compute_distances(g, *g.resolve("z"));
    const auto s = *g.resolve("s");
    const auto e = *g.resolve("e");
    EXPECT_THROW(rtp::make_area_spec(dt, VertexAppearance{e, 2}, {e, 6}, 2), std::invalid_argument);
    // lower corner later than upper corner
    EXPECT_THROW(rtp::make_area_spec(dt, VertexAppearance{s, 5}, {e, 4}, 2), std::invalid_argument);
    // d(s,1) = 2 is not closer than d(e,1) = 1
    EXPECT_THROW(rtp::make_area_spec(dt, VertexAppearance{e, 1}, {s, 1}, 2), std::invalid_argument);
    EXPECT_NO_THROW(rtp::make_area_spec(dt, VertexAppearance{s, 1}, {e, 6}, 2));
}

// Calls visit(lower, upper) for every valid corner pair of a table.
template <typename Visit>
void for_each_area(const rtp::DistanceTable& dt, Visit visit) {
    const auto& apps = dt.index().appearances();
    for (const auto& up : apps) {
        if (!rtp::is_finite(dt.at(up.v, up.t))) {
            continue;
        }
        visit(std::optional<VertexAppearance>{}, up);
        for (const auto& lo : apps) {
            if (lo.v != up.v && lo.t <= up.t && dt.at(up.v, up.t) < dt.at(lo.v, lo.t)) {
                visit(std::optional<VertexAppearance>{lo}, up);
            }
        }
    }
}

TEST(Areas, MatchOracleUnderBothRules) {
    std::size_t areas = 0;
    std::size_t boundary_only = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto inst = rtp::testing::random_instance(seed);
        const auto dt = rtp::compute_distances(inst.g, inst.z);
        const auto grid = rtp::oracle::distance_grid(inst.g, inst.z);
        for_each_area(dt, [&](std::optional<VertexAppearance> lo, VertexAppearance up) {
            for (const AreaRule rule : {AreaRule::kStrict, AreaRule::kClosedBoundary}) {
                const auto spec = rtp::make_area_spec(dt, lo, up, inst.delta, rule);
                const auto got = sorted(rtp::area_graph(inst.g, dt, spec).parent_time_edges(inst.g));
                const auto want =
                    sorted(rtp::oracle::area_edges(inst.g, grid, lo, up, inst.delta, rule == AreaRule::kClosedBoundary));
                ASSERT_EQ(got, want) << "seed " << seed;
                if (rule == AreaRule::kStrict) {
                    ASSERT_TRUE(rtp::boundary_set(dt, spec).empty());
                } else {
                    const auto strict = rtp::make_area_spec(dt, lo, up, inst.delta, AreaRule::kStrict);
                    ASSERT_EQ(rtp::a_set(dt, spec), rtp::a_set(dt, strict));
                    const auto narrow = rtp::area_graph(inst.g, dt, strict).parent_time_edges(inst.g);
                    boundary_only += got.size() - narrow.size();
                }
                ++areas;
            }
        });
    }
    EXPECT_GT(areas, 1000U);
    // The wider rule must actually change something on random input.
    EXPECT_GT(boundary_only, 0U);
}

TEST(Areas, AreasAreSubgraphsWithinTheirWindow) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto inst = rtp::testing::random_instance(seed);
        const auto dt = rtp::compute_distances(inst.g, inst.z);
        for_each_area(dt, [&](std::optional<VertexAppearance> lo, VertexAppearance up) {
            const auto spec = rtp::make_area_spec(dt, lo, up, inst.delta);
            const auto area = rtp::area_graph(inst.g, dt, spec);
            for (const auto& e : area.parent_time_edges(inst.g)) {
                ASSERT_TRUE(inst.g.contains(e));
                ASSERT_LE(e.t, up.t);
                if (lo) {
                    ASSERT_GE(e.t, lo->t);
                }
                if (e.contains(up.v)) {
                    ASSERT_GE(e.t + inst.delta, up.t) << "arrival outside [t' - delta, t']";
                }
            }
            for (const auto& e : area.graph().time_edges()) {
                ASSERT_TRUE(inst.g.contains({area.parent_id(e.u), area.parent_id(e.v), e.t}));
            }
        });
    }
}

// A source area and the next hop area, or two chained hop areas, share only
// their common corner vertex.
TEST(Areas, ChainedAreasShareOnlyTheirCorner) {
    std::size_t pairs = 0;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const auto inst = rtp::testing::random_instance(seed);
        const auto dt = rtp::compute_distances(inst.g, inst.z);
        const auto& apps = dt.index().appearances();
        for (const auto& mid : apps) {
            if (!rtp::is_finite(dt.at(mid.v, mid.t))) {
                continue;
            }
            const auto first = rtp::area_graph(inst.g, dt, rtp::make_area_spec(dt, std::nullopt, mid, inst.delta));
            for (const auto& up : apps) {
                if (up.v == mid.v || up.t < mid.t || !(dt.at(up.v, up.t) < dt.at(mid.v, mid.t))) {
                    continue;
                }
                const auto second =
                    rtp::area_graph(inst.g, dt, rtp::make_area_spec(dt, VertexAppearance{mid}, up, inst.delta));
                for (const auto v : rtp::shared_vertices(first, second)) {
                    ASSERT_EQ(v, mid.v) << "seed " << seed;
                }
                ++pairs;
                for (const auto& top : apps) {
                    if (top.v == up.v || top.t < up.t || !(dt.at(top.v, top.t) < dt.at(up.v, up.t))) {
                        continue;
                    }
                    const auto third =
                        rtp::area_graph(inst.g, dt, rtp::make_area_spec(dt, VertexAppearance{up}, top, inst.delta));
                    for (const auto v : rtp::shared_vertices(second, third)) {
                        ASSERT_EQ(v, up.v) << "seed " << seed;
                    }
                }
            }
        }
    }
    EXPECT_GT(pairs, 500U);
}

}  // namespace
