#include <gtest/gtest.h>

#include <map>
#include <set>

#include "leafpower/alt_cycles.hpp"
#include "leafpower/io.hpp"
#include "leafpower/leafroot.hpp"
#include "test_support.hpp"

using namespace leafpower;
using namespace leafpower::testing;

namespace {

using Seq = std::vector<std::string>;

// Orbit key: smallest sequence among all rotations of both directions.
// Validity does not matter here, it only names the orbit.
Seq orbit_key(const Seq& s) {
    Seq best = s;
    const std::size_t n = s.size();
    for (int dir = 0; dir < 2; ++dir) {
        Seq base = s;
        if (dir) std::reverse(base.begin(), base.end());
        for (std::size_t r = 0; r < n; ++r) {
            Seq rot(n);
            for (std::size_t i = 0; i < n; ++i) rot[i] = base[(i + r) % n];
            best = std::min(best, rot);
        }
    }
    return best;
}

// Every alternating sequence with half length <= max_c, by trying all
// sequences of distinct vertices.
std::set<Seq> brute_force_orbits(const Graph& g, int max_c) {
    std::set<Seq> out;
    const auto labels = g.labels();
    Seq cur;
    std::vector<bool> used(labels.size());
    std::function<void()> grow = [&] {
        const std::size_t len = cur.size();
        if (len >= 4 && len % 2 == 0) {
            bool ok = true;
            const std::size_t c = len / 2;
            for (std::size_t i = 0; i < c && ok; ++i) {
                ok = g.adjacent(cur[2 * i], cur[2 * i + 1]) && !g.adjacent(cur[2 * i + 1], cur[(2 * i + 2) % len]);
            }
            if (ok) out.insert(orbit_key(cur));
        }
        if (len == static_cast<std::size_t>(2 * max_c)) return;
        for (std::size_t v = 0; v < labels.size(); ++v) {
            if (used[v]) continue;
            used[v] = true;
            cur.push_back(labels[v]);
            grow();
            cur.pop_back();
            used[v] = false;
        }
    };
    grow();
    return out;
}

std::set<Seq> library_orbits(const Graph& g, int max_c) {
    std::set<Seq> out;
    for (const auto& cyc : enumerate_alternating_cycles(g, max_c)) {
        EXPECT_TRUE(out.insert(orbit_key(cyc.sequence)).second) << "duplicate " << cyc.to_string();
    }
    return out;
}

ConstraintPair cycle_constraints(const AlternatingCycle& cyc) {
    ConstraintPair c;
    for (int i = 0; i < cyc.half_length(); ++i) {
        c.must_close.emplace_back(cyc.x(i), cyc.y(i));
        c.must_separate.emplace_back(cyc.y(i), cyc.x(i + 1));
    }
    return c;
}

AlternatingCycle random_cycle(Rng& rng, std::vector<std::string> labels, int c) {
    std::shuffle(labels.begin(), labels.end(), rng);
    labels.resize(static_cast<std::size_t>(2 * c));
    return AlternatingCycle{labels};
}

// The pendant weight of a leaf.
std::int64_t pendant(const WeightedTree& wt, const std::string& label) {
    const auto node = wt.tree.leaf(label);
    return wt.weights[static_cast<std::size_t>(wt.tree.incident(node).front())];
}

} // namespace

TEST(AltCycles, Examples) {
    Graph two_k2;
    two_k2.add_edge("a", "b");
    two_k2.add_edge("c", "d");
    const auto cycles = enumerate_alternating_cycles(two_k2, 2);
    ASSERT_EQ(cycles.size(), 2u);
    for (const auto& cyc : cycles) {
        EXPECT_EQ(Quartet::make(cyc.x(0), cyc.y(0), cyc.x(1), cyc.y(1)), Quartet::make("a", "b", "c", "d"));
    }

    Graph c4;
    c4.add_edge("a", "b");
    c4.add_edge("b", "c");
    c4.add_edge("c", "d");
    c4.add_edge("d", "a");
    const auto c4_cycles = enumerate_alternating_cycles(c4, 2);
    ASSERT_EQ(c4_cycles.size(), 2u);
    EXPECT_EQ(c4_cycles[0].to_string(), "(a,b,d,c)");
    EXPECT_EQ(c4_cycles[1].to_string(), "(a,d,b,c)");

    EXPECT_TRUE(enumerate_alternating_cycles(gen_complete(3), 3).empty());
    EXPECT_THROW(enumerate_alternating_cycles(c4, 1), std::invalid_argument);
}

TEST(AltCycles, CanonicalForm) {
    const auto a = canonical_cycle({"c", "d", "a", "b"});
    EXPECT_EQ(a.sequence, (Seq{"a", "b", "c", "d"}));
    // reflection: read backwards, a must still be followed by its edge partner
    const auto b = canonical_cycle({"b", "a", "d", "c"});
    EXPECT_EQ(b.sequence, (Seq{"a", "b", "c", "d"}));
    Graph g;
    g.add_edge("a", "b");
    g.add_edge("c", "d");
    EXPECT_NO_THROW(validate_alternating_cycle(g, {"a", "b", "c", "d"}));
    EXPECT_THROW(validate_alternating_cycle(g, {"a", "c", "b", "d"}), std::invalid_argument);
    EXPECT_THROW(validate_alternating_cycle(g, {"a", "b", "a", "b"}), std::invalid_argument);
}

TEST(AltCycles, MatchesBruteForceEnumeration) {
    Rng rng(606);
    std::size_t total = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 4);
        const Graph g = random_graph(rng, n, 0.3 + 0.4 * (trial % 4) / 4.0);
        const int max_c = n >= 6 ? 3 : 2;
        const auto expected = brute_force_orbits(g, max_c);
        ASSERT_EQ(library_orbits(g, max_c), expected) << "trial " << trial;
        total += expected.size();
        for (const auto& cyc : enumerate_alternating_cycles(g, max_c)) {
            validate_alternating_cycle(g, cyc.sequence);
            EXPECT_EQ(canonical_cycle(cyc.sequence), cyc);
            EXPECT_EQ(cyc.sequence[0], *std::min_element(cyc.sequence.begin(), cyc.sequence.end()));
        }
    }
    EXPECT_GT(total, 500u);
}

TEST(AltCycles, RelabellingIsABijection) {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 5 + static_cast<int>(rng() % 3);
        const Graph g = random_graph(rng, n, 0.5);
        auto image = letters(n);
        for (auto& l : image) l = "v" + l;
        std::shuffle(image.begin(), image.end(), rng);
        std::map<std::string, std::string> rename;
        for (int i = 0; i < n; ++i) rename[g.label(i)] = image[static_cast<std::size_t>(i)];
        Graph h(image);
        for (const auto& [u, v] : g.edges()) h.add_edge(rename[g.label(u)], rename[g.label(v)]);

        std::set<Seq> mapped;
        for (const auto& cyc : enumerate_alternating_cycles(g, 3)) {
            Seq s;
            for (const auto& l : cyc.sequence) s.push_back(rename[l]);
            mapped.insert(canonical_cycle(s).sequence);
        }
        std::set<Seq> direct;
        for (const auto& cyc : enumerate_alternating_cycles(h, 3)) direct.insert(cyc.sequence);
        EXPECT_EQ(mapped, direct) << trial;
    }
}

TEST(SignedPaths, Examples) {
    const AlternatingCycle cyc{{"a", "b", "c", "d"}};
    const auto same = signed_path_counts(caterpillar("a", "b", "c", "d"), cyc);
    EXPECT_EQ(same.positive[0], 0);
    EXPECT_EQ(same.negative[0], 2);
    const auto crossed = signed_path_counts(caterpillar("a", "c", "b", "d"), cyc);
    EXPECT_EQ(crossed.positive[0], 2);
    EXPECT_EQ(crossed.negative[0], 2);

    PhyloTree t = star({"a", "b", "c", "d", "e"});
    const auto counts = signed_path_counts(t, cyc);
    const auto e_edge = t.incident(t.leaf("e")).front();
    EXPECT_EQ(counts.positive[static_cast<std::size_t>(e_edge)], 0);
    EXPECT_EQ(counts.negative[static_cast<std::size_t>(e_edge)], 0);
    EXPECT_THROW(signed_path_counts(caterpillar("a", "b", "c", "z"), cyc), std::invalid_argument);
}

TEST(SignedPaths, CountsMatchPathEdges) {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto t = random_tree(rng, letters(8), 0.3);
        const auto cyc = random_cycle(rng, letters(8), 2 + static_cast<int>(rng() % 3));
        const auto counts = signed_path_counts(t, cyc);
        std::vector<int> pos(t.edge_count()), neg(t.edge_count());
        for (int i = 0; i < cyc.half_length(); ++i) {
            for (auto e : path_edges(t, cyc.x(i), cyc.y(i))) ++pos[static_cast<std::size_t>(e)];
            for (auto e : path_edges(t, cyc.y(i), cyc.x(i + 1))) ++neg[static_cast<std::size_t>(e)];
        }
        EXPECT_EQ(counts.positive, pos);
        EXPECT_EQ(counts.negative, neg);
    }
}

TEST(CycleSatisfiability, Examples) {
    const AlternatingCycle cyc{{"a", "b", "c", "d"}};
    EXPECT_TRUE(can_satisfy_cycle(caterpillar("a", "b", "c", "d"), cyc));
    EXPECT_FALSE(can_satisfy_cycle(caterpillar("a", "c", "b", "d"), cyc));
    EXPECT_FALSE(can_satisfy_cycle(star(letters(4)), cyc));
}

TEST(CycleSatisfiability, AgreesWithLp) {
    Rng rng(4004);
    int yes = 0, no = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int c = 2 + static_cast<int>(rng() % 3);
        const int n = std::max(2 * c, 4 + static_cast<int>(rng() % 5));
        const auto t = random_tree(rng, letters(n), 0.25);
        const auto cyc = random_cycle(rng, letters(n), c);
        const bool predicate = can_satisfy_cycle(t, cyc);
        ASSERT_EQ(predicate, can_satisfy(t, cycle_constraints(cyc)).feasible) << "trial " << trial;
        (predicate ? yes : no)++;
    }
    EXPECT_GT(yes, 40);
    EXPECT_GT(no, 40);
}

TEST(CycleSatisfiability, FourCyclesMatchQuartetsOnSixLeaves) {
    const auto labels = letters(6);
    int checked = 0;
    for (const auto& t : enumerate_binary_topologies(labels)) {
        for_each_subset(6, [&](std::uint32_t mask) {
            if (__builtin_popcount(mask) != 4) return;
            Seq four;
            for (int i : members(mask, 6)) four.push_back(labels[static_cast<std::size_t>(i)]);
            std::sort(four.begin(), four.end());
            do {
                const AlternatingCycle cyc{four};
                EXPECT_EQ(can_satisfy_cycle(t, cyc), displays(t, Quartet::make(four[0], four[1], four[2], four[3])));
                ++checked;
            } while (std::next_permutation(four.begin(), four.end()));
        });
    }
    EXPECT_EQ(checked, 105 * 15 * 24);
}

TEST(GreedyWeighting, HandExample) {
    const auto t = caterpillar("a", "b", "c", "d");
    const auto w = construct_cycle_weighting(t, AlternatingCycle{{"a", "b", "c", "d"}});
    EXPECT_EQ(w.witness_edge, 0);
    EXPECT_EQ(w.raw.threshold, 2048);
    EXPECT_EQ(pendant(w.raw, "a"), 1018);
    EXPECT_EQ(pendant(w.raw, "b"), 1024);
    EXPECT_EQ(pendant(w.raw, "c"), 1021);
    EXPECT_EQ(pendant(w.raw, "d"), 1027);
    EXPECT_EQ(w.raw.weights[0], 4);
    EXPECT_EQ(tree_distance(w.raw, "a", "b"), 2042);
    EXPECT_EQ(tree_distance(w.raw, "b", "c"), 2049);
    EXPECT_EQ(tree_distance(w.raw, "c", "d"), 2048);
    EXPECT_EQ(tree_distance(w.raw, "d", "a"), 2049);
    EXPECT_THROW(construct_cycle_weighting(caterpillar("a", "c", "b", "d"), AlternatingCycle{{"a", "b", "c", "d"}}),
                 std::invalid_argument);
}

TEST(GreedyWeighting, RandomSatisfiableInstances) {
    Rng rng(8080);
    int built = 0;
    while (built < 100) {
        const int c = 2 + static_cast<int>(rng() % 3);
        const int n = std::max(2 * c, 4 + static_cast<int>(rng() % 5));
        const auto t = random_tree(rng, letters(n), 0.25);
        const auto cyc = random_cycle(rng, letters(n), c);
        if (!can_satisfy_cycle(t, cyc)) continue;
        ++built;
        const auto w = construct_cycle_weighting(t, cyc);
        std::int64_t k = 2;
        for (int i = 0; i < 10; ++i) k *= c;
        const std::int64_t e = static_cast<std::int64_t>(c) * c;
        EXPECT_EQ(w.raw.threshold, k);
        EXPECT_TRUE(weighting_satisfies_cycle(w.raw, w.cycle));
        EXPECT_TRUE(weighting_satisfies_cycle(w.normalized, cyc));
        EXPECT_EQ(canonical_cycle(w.cycle.sequence), canonical_cycle(cyc.sequence));
        EXPECT_LE(pendant(w.raw, w.cycle.x(0)), k / 2);
        for (const auto& l : cyc.sequence) EXPECT_GE(pendant(w.raw, l), k / 2 - c * e);
        for (auto x : w.normalized.weights) EXPECT_GE(x, 1);
    }
}

TEST(NecessaryCondition, SunTrees) {
    const Graph s3 = gen_sun(3);
    const auto first = check_necessary_condition(s3, parse_topology("((a1,x1),(a2,x2),(a3,x3));"), 3);
    ASSERT_TRUE(first);
    EXPECT_EQ(first->to_string(), "(a1,x2,a3,x1,a2,x3)");
    const auto second = check_necessary_condition(s3, parse_topology("((a1,x2),(a2,x3),(a3,x1));"), 3);
    ASSERT_TRUE(second);
    EXPECT_EQ(second->to_string(), "(a1,x1,a2,x2,a3,x3)");
    // cycles of half length 2 alone do not rule either tree out
    EXPECT_FALSE(check_necessary_condition(s3, parse_topology("((a1,x1),(a2,x2),(a3,x3));"), 2));
}

TEST(NecessaryCondition, SmallGraphs) {
    Graph p3;
    p3.add_edge("a", "b");
    p3.add_edge("b", "c");
    EXPECT_FALSE(check_necessary_condition(p3, star({"a", "b", "c"}), 2));

    Graph c4;
    c4.add_edge("a", "b");
    c4.add_edge("b", "c");
    c4.add_edge("c", "d");
    c4.add_edge("d", "a");
    for (const auto& t : enumerate_binary_topologies(letters(4))) EXPECT_TRUE(check_necessary_condition(c4, t, 2));
    EXPECT_TRUE(check_necessary_condition(c4, star(letters(4)), 2));
    EXPECT_THROW(check_necessary_condition(c4, star(letters(3)), 2), std::invalid_argument);
}

TEST(NecessaryCondition, LeafRootsSatisfyEveryCycle) {
    Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const auto t = random_tree(rng, letters(6 + static_cast<int>(rng() % 2)), 0.2);
        const auto wt = random_weighting(rng, t, 5, 0.0);
        EXPECT_FALSE(check_necessary_condition(leaf_graph(wt), t, 3)) << trial;
    }
}

TEST(HasAlternatingCycle, Examples) {
    for (int n = 1; n <= 6; ++n) EXPECT_FALSE(has_alternating_cycle(gen_complete(n)));
    EXPECT_TRUE(has_alternating_cycle(gen_path(4, "v")));
    EXPECT_FALSE(has_alternating_cycle(gen_path(3, "v")));
}

TEST(HasAlternatingCycle, MatchesBruteForce) {
    Rng rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const Graph g = random_graph(rng, n, 0.4 + 0.4 * (trial % 3) / 3.0);
        EXPECT_EQ(has_alternating_cycle(g), !brute_force_orbits(g, n / 2).empty()) << trial;
    }
}
