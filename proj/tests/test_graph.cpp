#include <gtest/gtest.h>

#include "leafpower/chordality.hpp"
#include "leafpower/graph.hpp"
#include "leafpower/grq.hpp"
#include "test_support.hpp"

using namespace leafpower;
using namespace leafpower::testing;

TEST(Graph, InsertionOrderAndQueries) {
    Graph g;
    g.add_edge("b", "a");
    g.add_vertex("c");
    EXPECT_EQ(g.labels(), (std::vector<std::string>{"b", "a", "c"}));
    EXPECT_TRUE(g.adjacent("a", "b"));
    EXPECT_FALSE(g.adjacent("a", "c"));
    EXPECT_FALSE(g.add_edge("a", "b"));
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_THROW(g.add_edge("a", "a"), std::invalid_argument);
    EXPECT_THROW(g.index_of("zz"), std::invalid_argument);
}

TEST(Graph, InducedSubgraph) {
    const Graph k4 = gen_complete(4);
    const Graph k3 = induced_subgraph(k4, {"v0", "v2", "v3"});
    EXPECT_EQ(k3.size(), 3u);
    EXPECT_EQ(k3.edge_count(), 3u);

    const Graph c4 = gen_cycle(4);
    const Graph p3 = induced_subgraph(c4, {"v2", "v0", "v1"});
    EXPECT_EQ(p3.labels(), (std::vector<std::string>{"v0", "v1", "v2"}));
    EXPECT_EQ(p3.edge_count(), 2u);

    const Graph corners = induced_subgraph(gen_grq(3, 3).graph, {"a1", "b1", "a3", "b3"});
    EXPECT_EQ(corners.edge_count(), 2u);
    EXPECT_TRUE(corners.adjacent("a1", "b1"));
    EXPECT_TRUE(corners.adjacent("a3", "b3"));

    EXPECT_THROW(induced_subgraph(k4, {"nope"}), std::invalid_argument);
}

TEST(Graph, InducedSubgraphIdempotent) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = random_graph(rng, 8, 0.5);
        std::vector<std::string> keep;
        for (const auto& l : g.labels())
            if (rng() % 2) keep.push_back(l);
        const Graph once = induced_subgraph(g, keep);
        EXPECT_EQ(induced_subgraph(once, keep), once);
    }
}

TEST(Graph, SunSizes) {
    const Graph s3 = gen_sun(3);
    EXPECT_EQ(s3.size(), 6u);
    EXPECT_EQ(s3.edge_count(), 9u);
    for (int i = 1; i <= 3; ++i) EXPECT_EQ(s3.degree(s3.index_of("a" + std::to_string(i))), 2);
    const Graph s4 = gen_sun(4);
    EXPECT_EQ(s4.size(), 8u);
    EXPECT_EQ(s4.edge_count(), 14u);
    EXPECT_THROW(gen_sun(2), std::invalid_argument);
}

TEST(Chordality, Examples) {
    EXPECT_FALSE(is_chordal(gen_cycle(4)));
    const auto k3 = is_chordal(gen_complete(3));
    ASSERT_TRUE(k3);
    EXPECT_TRUE(verify_elimination(gen_complete(3), *k3));
    const Graph g33 = gen_grq(3, 3).graph;
    const auto peo = is_chordal(g33);
    ASSERT_TRUE(peo);
    EXPECT_TRUE(verify_elimination(g33, *peo));
}

TEST(Chordality, VerifyRejectsBadOrderings) {
    const Graph c4 = gen_cycle(4);
    EliminationCertificate cert{c4.labels(), EliminationKind::Perfect};
    EXPECT_FALSE(verify_elimination(c4, cert));
    cert.ordering.pop_back();
    EXPECT_THROW(verify_elimination(c4, cert), std::invalid_argument);
    cert.ordering = {"v0", "v0", "v1", "v2"};
    EXPECT_THROW(verify_elimination(c4, cert), std::invalid_argument);
}

TEST(Chordality, AgreesWithInducedCycleSearch) {
    Rng rng(2024);
    int chordal = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 7);
        const Graph g = trial % 2 ? random_graph(rng, n, 0.3 + 0.5 * (trial % 7) / 7.0) : random_chordal_graph(rng, n);
        const auto cert = is_chordal(g);
        ASSERT_EQ(cert.has_value(), !has_induced_long_cycle(g)) << "trial " << trial;
        if (cert) {
            ++chordal;
            EXPECT_TRUE(verify_elimination(g, *cert));
        }
    }
    EXPECT_GT(chordal, 200);
}

TEST(StrongChordality, Examples) {
    EXPECT_FALSE(is_strongly_chordal(gen_sun(3)));
    Graph k2;
    k2.add_edge("a", "b");
    EXPECT_TRUE(is_strongly_chordal(k2));

    const Graph g33 = gen_grq(3, 3).graph;
    const auto cert = is_strongly_chordal(g33);
    ASSERT_TRUE(cert);
    EXPECT_TRUE(verify_elimination(g33, *cert));
    const EliminationCertificate listed{{"x1", "x2", "y1", "y2", "a1", "b1", "a3", "b3", "a2", "b2"},
                                       EliminationKind::Simple};
    EXPECT_TRUE(verify_elimination(g33, listed));
}

TEST(StrongChordality, OrderingFor34) {
    const Graph g34 = gen_grq(3, 4).graph;
    const EliminationCertificate order{
        {"x1", "x2", "y1", "y2", "y3", "a1", "b1", "a3", "b4", "a2", "b2", "b3"}, EliminationKind::Simple};
    EXPECT_TRUE(verify_elimination(g34, order));
    EXPECT_EQ(grq_simple_ordering(3, 4), order.ordering);
}

TEST(StrongChordality, SunsRejectedAndBrokenByDeletingAPendant) {
    for (int k = 3; k <= 8; ++k) {
        const Graph sun = gen_sun(k);
        EXPECT_TRUE(is_chordal(sun)) << k;
        EXPECT_FALSE(is_strongly_chordal(sun)) << k;
        if (2 * k <= 12) EXPECT_TRUE(has_induced_sun(sun)) << k;
        // Dropping one a_i leaves no sun at all.
        const Graph broken = sun.without({"a1"});
        EXPECT_TRUE(is_strongly_chordal(broken)) << k;
        if (2 * k - 1 <= 12) EXPECT_FALSE(has_induced_sun(broken)) << k;
    }
}

TEST(StrongChordality, AgreesWithDefinitionLevelSunSearch) {
    Rng rng(77);
    int strong = 0, chordal_not_strong = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 5 + static_cast<int>(rng() % 6);
        const Graph g = random_chordal_graph(rng, n);
        const auto cert = is_strongly_chordal(g);
        ASSERT_EQ(cert.has_value(), !has_induced_sun(g)) << "trial " << trial;
        if (cert) {
            ++strong;
            EXPECT_TRUE(verify_elimination(g, *cert));
            EXPECT_TRUE(is_chordal(g));
        } else {
            ++chordal_not_strong;
        }
    }
    // planted suns so the negative branch is exercised
    for (int k = 3; k <= 5; ++k) {
        Graph g = gen_sun(k);
        g.add_edge("x1", "extra");
        EXPECT_FALSE(is_strongly_chordal(g));
        EXPECT_TRUE(has_induced_sun(g));
    }
    EXPECT_GT(strong, 50);
}

TEST(StrongChordality, ImpliesChordal) {
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const Graph g = random_graph(rng, 3 + static_cast<int>(rng() % 6), 0.6);
        if (is_strongly_chordal(g)) EXPECT_TRUE(is_chordal(g));
    }
}

TEST(Gem, Examples) {
    const Graph path = gen_path(4, "p");
    Graph gem = path;
    for (const auto& p : path.labels()) gem.add_edge("u", p);
    const auto found = find_gem(gem);
    ASSERT_TRUE(found);
    EXPECT_EQ((*found)[0], "u");

    EXPECT_FALSE(find_gem(gen_complete(4)));
    EXPECT_FALSE(find_gem(gen_cycle(4)));

    const Graph g33 = gen_grq(3, 3).graph;
    const auto witness = find_gem(g33);
    ASSERT_TRUE(witness);
    // universal vertex adjacent to the whole induced P4
    const auto& w = *witness;
    for (int i = 1; i <= 4; ++i) EXPECT_TRUE(g33.adjacent(w[0], w[static_cast<std::size_t>(i)]));
    EXPECT_TRUE(g33.adjacent(w[1], w[2]));
    EXPECT_TRUE(g33.adjacent(w[2], w[3]));
    EXPECT_TRUE(g33.adjacent(w[3], w[4]));
    EXPECT_FALSE(g33.adjacent(w[1], w[3]));
    EXPECT_FALSE(g33.adjacent(w[1], w[4]));
    EXPECT_FALSE(g33.adjacent(w[2], w[4]));
}

TEST(Gem, SmallGraphsHaveNone) {
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) EXPECT_FALSE(find_gem(random_graph(rng, 4, 0.6)));
}
