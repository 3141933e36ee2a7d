#include <gtest/gtest.h>

#include <fstream>

#include "rtp/solver.hpp"
#include "rtp/tel.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"
#include "support/separator_trace.hpp"

namespace {

using rtp::Backend;
using rtp::FinderConfig;
using rtp::Length;
using rtp::TemporalGraph;
using rtp::TimeEdge;

TemporalGraph load(const std::string& name) {
    std::ifstream in(std::string(RTP_TEST_DATA) + "/" + name);
    return rtp::read_tel(in);
}

FinderConfig config(Backend backend, std::uint64_t seed = 0) {
    FinderConfig cfg;
    cfg.backend = backend;
    cfg.seed = seed;
    return cfg;
}

const std::vector<TimeEdge> kSamplePath{{0, 1, 2}, {1, 3, 4}, {3, 2, 4}, {2, 5, 4}, {5, 6, 6}};

TEST(Solver, SampleWitness) {
    const TemporalGraph g = load("fig1.tel");
    for (const Backend b : {Backend::kBrute, Backend::kSieve, Backend::kAuto}) {
        const auto yes = rtp::solve(g, 0, 6, 2, 5, 0.01, config(b));
        ASSERT_TRUE(yes.decision) << rtp::to_string(b);
        EXPECT_EQ(yes.witness->steps, kSamplePath);
        EXPECT_EQ(yes.params.temporal_distance, 2U);
        EXPECT_EQ(yes.params.ell, 3U);
        const auto no = rtp::solve(g, 0, 6, 2, 4, 0.01, config(b));
        EXPECT_FALSE(no.decision);
        EXPECT_FALSE(no.witness);
    }
}

TEST(Solver, ZeroSlackAboveTheTemporalDistance) {
    // With delta = 5, s-e at 1 then e-z at 6 is restless and k = d(s,1) = 2.
    const TemporalGraph g = load("fig1.tel");
    const auto r = rtp::solve(g, 0, 6, 5, 2, 0.01, config(Backend::kBrute));
    ASSERT_TRUE(r.decision);
    EXPECT_EQ(r.params.ell, 0U);
    EXPECT_EQ(r.witness->steps, (std::vector<TimeEdge>{{0, 5, 1}, {5, 6, 6}}));
}

TEST(Solver, NoTemporalPathShortCircuits) {
    const TemporalGraph g = load("fig1.tel");
    const auto r = rtp::solve(g, 0, 4, 2, 6, 0.01, config(Backend::kBrute));
    EXPECT_FALSE(r.decision);
    EXPECT_EQ(r.stats.table_entries, 0U);
    EXPECT_FALSE(rtp::is_finite(r.params.temporal_distance));
    // d(s,1) = 2 > k = 1
    const auto below = rtp::solve(g, 0, 6, 2, 1, 0.01, config(Backend::kBrute));
    EXPECT_FALSE(below.decision);
    EXPECT_EQ(below.stats.table_entries, 0U);
}

TEST(Solver, RejectsBadArguments) {
    const TemporalGraph g = load("fig1.tel");
    const auto cfg = config(Backend::kBrute);
    EXPECT_THROW(rtp::solve(g, 0, 0, 2, 3, 0.01, cfg), std::invalid_argument);
    EXPECT_THROW(rtp::solve(g, 0, 7, 2, 3, 0.01, cfg), std::invalid_argument);
    EXPECT_THROW(rtp::solve(g, 0, 6, 0, 3, 0.01, cfg), std::invalid_argument);
    EXPECT_THROW(rtp::solve(g, 0, 6, 2, 0, 0.01, cfg), std::invalid_argument);
    EXPECT_THROW(rtp::solve(g, 0, 6, 2, 3, 1.0, cfg), std::invalid_argument);
}

TEST(Solver, ClampsKToVertexCount) {
    const TemporalGraph g = load("fig1.tel");
    const auto r = rtp::solve(g, 0, 6, 2, 1000, 0.01, config(Backend::kBrute));
    EXPECT_TRUE(r.decision);
    EXPECT_EQ(r.params.k_requested, 1000U);
    EXPECT_EQ(r.params.k, 6U);
}

TEST(Solver, ErrorBudgetFormula) {
    // p / (2 * ceil(6/2) * 5)
    EXPECT_DOUBLE_EQ(rtp::per_call_error_budget(0.3, 6, 2), 0.01);
    // l = 0 counts as 1 in the ceiling: p / (2 * 4 * 1)
    EXPECT_DOUBLE_EQ(rtp::per_call_error_budget(0.8, 4, 0), 0.1);
}

// Shortest length over all k: the brute-backend answer for every k equals the
// oracle's, and yes answers carry a shortest witness.
TEST(Solver, MatchesOracleOnRandomInstances) {
    std::size_t yes = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto inst = rtp::testing::random_instance(seed);
        const int best = rtp::oracle::shortest_restless_path_length(inst.g, inst.s, inst.z, inst.delta);
        for (Length k = 1; k <= 6; ++k) {
            const auto r = rtp::solve(inst.g, inst.s, inst.z, inst.delta, k, 0.01, config(Backend::kBrute));
            const bool want = best != rtp::oracle::kNone && static_cast<Length>(best) <= k;
            ASSERT_EQ(r.decision, want) << "seed " << seed << " k " << k;
            if (r.decision) {
                ASSERT_EQ(r.witness->length(), static_cast<std::size_t>(best)) << "seed " << seed;
                ASSERT_TRUE(rtp::oracle::is_restless_path(inst.g, r.witness->steps, inst.s, inst.z, inst.delta));
                ++yes;
            }
        }
    }
    EXPECT_GT(yes, 500U);
}

TEST(Solver, BoundaryCaseNeedsTheClosedRule) {
    const TemporalGraph g = load("boundary_case.tel");
    const auto s = *g.resolve("1");
    const auto z = *g.resolve("7");
    const int best = rtp::oracle::shortest_restless_path_length(g, s, z, 2);
    ASSERT_EQ(best, 4);
    rtp::SolveOptions strict;
    strict.area_rule = rtp::AreaRule::kStrict;
    EXPECT_FALSE(rtp::solve(g, s, z, 2, 4, 0.01, config(Backend::kBrute), strict).decision);
    const auto r = rtp::solve(g, s, z, 2, 4, 0.01, config(Backend::kBrute));
    ASSERT_TRUE(r.decision);
    EXPECT_EQ(r.witness->length(), 4U);
}

// Structural invariants of every filled table.
TEST(Solver, TableLinksRespectTheirWindows) {
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const auto inst = rtp::testing::random_instance(seed);
        const auto dt = rtp::compute_distances(inst.g, inst.z);
        const Length ds1 = dt.from_start(inst.s);
        const Length k = std::min<Length>(6, static_cast<Length>(inst.g.vertex_count() - 1));
        if (!rtp::is_finite(ds1) || ds1 > k) {
            continue;
        }
        const auto table = rtp::fill_table(inst.g, dt, inst.s, inst.z, inst.delta, k, config(Backend::kBrute));
        const auto& index = dt.index();
        for (rtp::AppearanceId id = 0; id < index.size(); ++id) {
            const auto& entry = table.entries[id];
            if (!rtp::is_finite(entry.value)) {
                continue;
            }
            const auto up = index[id];
            ASSERT_LE(entry.value, k);
            if (entry.value == 0) {
                ASSERT_EQ(up.v, inst.s) << "seed " << seed;
            }
            if (entry.pred != rtp::kNoAppearance) {
                const auto lo = index[entry.pred];
                ASSERT_FALSE(table.near_zone(dt.at(id))) << "seed " << seed;
                ASSERT_LE(lo.t, up.t);
                ASSERT_LT(dt.at(id), dt.at(entry.pred));
                ASSERT_LE(dt.at(entry.pred), dt.at(id) + table.ell + 1);
                ASSERT_LE(entry.hop.size(), 2 * table.ell + 1);
                for (const auto& e : entry.hop) {
                    ASSERT_GE(e.t, lo.t);
                    ASSERT_LE(e.t, up.t);
                }
                ASSERT_EQ(entry.value, table.value(entry.pred) + entry.hop.size());
            } else if (entry.value > 0) {
                ASSERT_LE(entry.hop.size(), 2 * table.ell);
            }
            // Concatenating the links gives a restless s-u path: the areas
            // along the chain never reuse a vertex.
            const auto path = rtp::reconstruct(table, id);
            ASSERT_EQ(path.length(), entry.value);
            if (entry.value > 0) {
                ASSERT_TRUE(rtp::oracle::is_restless_path(inst.g, path.steps, inst.s, up.v, inst.delta))
                    << "seed " << seed << " entry " << up.v << "@" << up.t;
                ASSERT_LE(path.steps.back().t, up.t);
            } else {
                ASSERT_TRUE(path.steps.empty());
            }
        }
    }
}

TEST(Solver, ReconstructRejectsInfiniteEntries) {
    const TemporalGraph g = load("fig1.tel");
    const auto dt = rtp::compute_distances(g, 6);
    const auto table = rtp::fill_table(g, dt, 0, 6, 2, 4, config(Backend::kBrute));
    const auto z6 = *dt.index().find(6, 6);
    EXPECT_FALSE(rtp::is_finite(table.value(z6)));
    EXPECT_THROW(rtp::reconstruct(table, z6), std::invalid_argument);
}

// Sieve answers are one-sided: over many seeds, a yes-instance is found often
// enough and a no-instance is never reported as yes.
TEST(Solver, SieveErrorIsOneSided) {
    const TemporalGraph g = load("fig1.tel");
    std::size_t misses = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto yes = rtp::solve(g, 0, 6, 2, 5, 0.2, config(Backend::kSieve, seed));
        misses += yes.decision ? 0 : 1;
        if (yes.decision) {
            ASSERT_EQ(yes.witness->steps, kSamplePath);
        }
        ASSERT_FALSE(rtp::solve(g, 0, 6, 2, 4, 0.2, config(Backend::kSieve, seed)).decision);
    }
    EXPECT_LE(misses, 52U);
}

TEST(Solver, ThreadCountDoesNotChangeTheAnswer) {
    rtp::SolveOptions one;
    rtp::SolveOptions four;
    four.threads = 4;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        rtp::testing::InstanceShape shape;
        shape.max_vertices = 11;
        shape.max_lifetime = 8;
        const auto inst = rtp::testing::random_instance(seed, shape);
        const auto a = rtp::solve(inst.g, inst.s, inst.z, inst.delta, 6, 0.01, config(Backend::kSieve, seed), one);
        const auto b = rtp::solve(inst.g, inst.s, inst.z, inst.delta, 6, 0.01, config(Backend::kSieve, seed), four);
        ASSERT_EQ(a.decision, b.decision) << "seed " << seed;
        if (a.decision) {
            ASSERT_EQ(a.witness->steps, b.witness->steps) << "seed " << seed;
        }
        ASSERT_EQ(a.stats.finder_calls, b.stats.finder_calls);
    }
}

TEST(Solver, TimeWindowModeAgrees) {
    rtp::SolveOptions window;
    window.time_window = true;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const auto inst = rtp::testing::random_instance(seed);
        const auto a = rtp::solve(inst.g, inst.s, inst.z, inst.delta, 5, 0.01, config(Backend::kBrute));
        const auto b = rtp::solve(inst.g, inst.s, inst.z, inst.delta, 5, 0.01, config(Backend::kBrute), window);
        ASSERT_EQ(a.decision, b.decision) << "seed " << seed;
        if (b.decision) {
            ASSERT_TRUE(rtp::oracle::is_restless_path(inst.g, b.witness->steps, inst.s, inst.z, inst.delta));
        }
    }
}

TEST(Separators, SamplePathIsAllSeparators) {
    const TemporalGraph g = load("fig1.tel");
    const auto dt = rtp::compute_distances(g, 6);
    rtp::RestlessPath p;
    p.steps = kSamplePath;
    p.delta = 2;
    const auto trace = rtp::testing::separator_trace(p, dt);
    EXPECT_EQ(trace.keys, (std::vector<Length>{5, 4, 3, 2, 1, 0}));
    EXPECT_EQ(trace.positions().size(), 6U);
    EXPECT_TRUE(rtp::testing::separators_dense(trace, 1, 1));
}

TEST(Separators, NonMonotoneKeysBreakSeparation) {
    rtp::testing::SeparatorTrace t;
    t.keys = {3, 1, 2, 0};
    t.separator = {true, false, false, true};
    EXPECT_FALSE(rtp::testing::separators_dense(t, 2, 5));
    EXPECT_TRUE(rtp::testing::separators_dense(t, 3, 3));
    EXPECT_FALSE(rtp::testing::separators_dense(t, 3, 2));
}

// Shortest solutions have a separator in every window of 2l + 1 vertices and
// consecutive separators at most l + 1 apart in distance.
TEST(Separators, ShortestSolutionsAreDenselySeparated) {
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto inst = rtp::testing::random_instance(seed);
        const auto r = rtp::solve(inst.g, inst.s, inst.z, inst.delta, 6, 0.01, config(Backend::kBrute));
        if (!r.decision) {
            continue;
        }
        const Length len = r.witness->length();
        const auto dt = rtp::compute_distances(inst.g, inst.z);
        const Length ell = len - dt.from_start(inst.s);
        const auto trace = rtp::testing::separator_trace(*r.witness, dt);
        ASSERT_TRUE(rtp::testing::separators_dense(trace, 2 * ell + 1, ell + 1)) << "seed " << seed;
        ++checked;
    }
    EXPECT_GT(checked, 100U);
}

}  // namespace
