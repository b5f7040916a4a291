#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "leafpower/alt_cycles.hpp"
#include "leafpower/chordality.hpp"
#include "leafpower/cli.hpp"
#include "leafpower/grq.hpp"
#include "leafpower/io.hpp"
#include "leafpower/leafroot.hpp"
#include "leafpower/quartets.hpp"
#include "leafpower/rcc.hpp"
#include "test_support.hpp"

using namespace leafpower;
using namespace leafpower::testing;
using Json = nlohmann::ordered_json;

namespace {

class Scratch {
public:
    Scratch() {
        dir_ = std::filesystem::temp_directory_path() /
               ("leafpower-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir_);
    }
    ~Scratch() { std::filesystem::remove_all(dir_); }
    std::string write(const std::string& name, const std::string& text) const {
        const auto path = dir_ / name;
        std::ofstream(path) << text;
        return path.string();
    }

private:
    std::filesystem::path dir_;
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "leafpower");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Io, GraphRoundTrip) {
    const Graph two_k2 = parse_graph("a b\nc d\n");
    EXPECT_EQ(two_k2.size(), 4u);
    EXPECT_EQ(two_k2.edge_count(), 2u);
    EXPECT_TRUE(two_k2.adjacent("a", "b"));
    EXPECT_FALSE(two_k2.adjacent("b", "c"));

    const Graph with_comments = parse_graph("# header\nnode z\n\na b # trailing\n");
    EXPECT_EQ(with_comments.labels(), (std::vector<std::string>{"z", "a", "b"}));

    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = random_graph(rng, 1 + static_cast<int>(rng() % 9), 0.4);
        const auto text = write_graph(g);
        EXPECT_EQ(parse_graph(text), g);
        EXPECT_EQ(write_graph(parse_graph(text)), text);
    }
    for (const auto& g : {gen_grq(3, 4).graph, gen_sun(4)}) EXPECT_EQ(parse_graph(write_graph(g)), g);
}

TEST(Io, GraphErrors) {
    try {
        parse_graph("a b\nb a\n");
        FAIL() << "duplicate edge accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    EXPECT_THROW(parse_graph("a a\n"), ParseError);
    EXPECT_THROW(parse_graph("a b c\n"), ParseError);
    EXPECT_THROW(parse_graph("node\n"), ParseError);
}

TEST(Io, TreeExample) {
    const auto wt = parse_tree("((a:2,b:1):0,c:2);\nthreshold: 3\n");
    Graph p3;
    p3.add_edge("a", "b");
    p3.add_edge("b", "c");
    EXPECT_TRUE(verify_leafroot(wt, p3));
    const auto positive = normalize_zero_edges(wt);
    EXPECT_TRUE(verify_leafroot(positive, p3));
    for (auto w : positive.weights) EXPECT_GE(w, 1);
}

TEST(Io, TreeRoundTrip) {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto t = random_tree(rng, letters(3 + static_cast<int>(rng() % 6)), 0.3);
        const auto wt = random_weighting(rng, t, 9, 0.2);
        const auto text = write_tree(wt);
        const auto back = parse_tree(text);
        EXPECT_EQ(write_tree(back), text);
        EXPECT_TRUE(same_labelled_graph(leaf_graph(back), leaf_graph(wt)));
        EXPECT_EQ(nontrivial_splits(back.tree), nontrivial_splits(t));
        EXPECT_EQ(displayed_quartets(parse_topology(write_topology(t))), displayed_quartets(t));
    }
}

TEST(Io, TreeErrors) {
    EXPECT_THROW(parse_tree("(a:1,b:1,c:1);\n"), ParseError);               // no threshold
    EXPECT_THROW(parse_tree("(a:1,b,c:1);\nthreshold: 2\n"), ParseError);   // missing weight
    EXPECT_THROW(parse_tree("(a:1,b:x,c:1);\nthreshold: 2\n"), ParseError); // malformed weight
    EXPECT_THROW(parse_tree("(a:1,b:-1,c:1);\nthreshold: 2\n"), ParseError);
    EXPECT_THROW(parse_tree("(a:1,a:1,c:1);\nthreshold: 2\n"), ParseError); // repeated leaf
    EXPECT_THROW(parse_tree("(a:1,b:1,c:1)\nthreshold: 2\n"), ParseError);  // no ';'
    try {
        parse_tree("# comment\n(a:1,b:?,c:1);\nthreshold: 2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_GT(e.column(), 0);
    }
}

TEST(Io, Quartets) {
    EXPECT_EQ(parse_quartets("a b | c d\n"), QuartetSet{Quartet::make("a", "b", "c", "d")});
    const auto family = shutters_family(3, 4);
    EXPECT_EQ(parse_quartets(write_quartets(family)), family);
    EXPECT_THROW(parse_quartets("a b c d\n"), ParseError);
    EXPECT_THROW(parse_quartets("a a | c d\n"), ParseError);
}

TEST(Io, RccRoundTrip) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = planted_rcc_instance(4, 2, seed);
        const auto back = parse_rcc(write_rcc(inst));
        EXPECT_EQ(back.graph, inst.graph);
        EXPECT_EQ(back.s, inst.s);
        EXPECT_EQ(back.t, inst.t);
        EXPECT_EQ(back.part_u, inst.part_u);
    }
    EXPECT_THROW(parse_rcc("a b\n"), ParseError);
    EXPECT_THROW(parse_rcc("terminals s t\ns a\n"), ParseError);
}

TEST(Cli, StrongChordality) {
    Scratch dir;
    const Graph g = gen_grq(3, 3).graph;
    const auto r = cli({"check-strongly-chordal", dir.write("grq33.graph", write_graph(g))});
    EXPECT_EQ(r.code, 0);
    const auto j = r.json();
    EXPECT_EQ(j["kind"], "elimination-ordering");
    EXPECT_EQ(j["verified"], true);
    const EliminationCertificate cert{j["payload"]["ordering"].get<std::vector<std::string>>(), EliminationKind::Simple};
    EXPECT_TRUE(verify_elimination(g, cert));

    EXPECT_EQ(cli({"check-strongly-chordal", dir.write("sun.graph", write_graph(gen_sun(3)))}).code, 1);
    EXPECT_EQ(cli({"check-chordal", dir.write("c4.graph", write_graph(gen_cycle(4)))}).code, 1);
    EXPECT_EQ(cli({"check-chordal", dir.write("sun.graph", write_graph(gen_sun(3)))}).code, 0);
}

TEST(Cli, LeafPowerExact) {
    Scratch dir;
    const auto sun = cli({"leafpower-exact", dir.write("sun3.graph", write_graph(gen_sun(3)))});
    EXPECT_EQ(sun.code, 1);
    const auto j = sun.json();
    EXPECT_EQ(j["kind"], "failing-cycle");
    EXPECT_EQ(j["verified"], true);
    const auto& candidates = j["payload"]["candidates"];
    ASSERT_EQ(candidates.size(), 2u);
    for (const auto& c : candidates) {
        ASSERT_FALSE(c["failing_cycle"].is_null());
        const AlternatingCycle cyc{c["failing_cycle"].get<std::vector<std::string>>()};
        EXPECT_EQ(cyc.half_length(), 3);
        validate_alternating_cycle(gen_sun(3), cyc.sequence);
        EXPECT_FALSE(can_satisfy_cycle(parse_topology(c["tree"].get<std::string>()), cyc));
    }

    Graph p3;
    p3.add_edge("a", "b");
    p3.add_edge("b", "c");
    const auto ok = cli({"leafpower-exact", dir.write("p3.graph", write_graph(p3))});
    EXPECT_EQ(ok.code, 0);
    const auto root = parse_tree(ok.json()["payload"]["newick"].get<std::string>());
    EXPECT_TRUE(same_labelled_graph(leaf_graph(root), p3));

    EXPECT_EQ(cli({"leafpower-exact", "--cap", "5", dir.write("p7.graph", write_graph(gen_path(7, "v")))}).code, 2);
}

TEST(Cli, VerifyLeafroot) {
    Scratch dir;
    const auto tree = dir.write("star.tree", "(a:2,b:1,c:2);\nthreshold: 3\n");
    const auto wide = dir.write("wide.tree", "(a:2,b:1,c:2);\nthreshold: 4\n");
    const auto graph = dir.write("p3.graph", "a b\nb c\n");
    EXPECT_EQ(cli({"verify-leafroot", tree, graph}).code, 0);
    EXPECT_EQ(cli({"verify-leafroot", wide, graph}).code, 1);
}

TEST(Cli, Quartets) {
    Scratch dir;
    const auto shutters = cli({"quartet-compat", dir.write("s33.quartets", write_quartets(shutters_family(3, 3)))});
    EXPECT_EQ(shutters.code, 1);
    EXPECT_EQ(shutters.json()["payload"]["status"], "incompatible");
    const auto single = cli({"quartet-compat", dir.write("one.quartets", "a b | c d\n")});
    EXPECT_EQ(single.code, 0);
    EXPECT_TRUE(displays(parse_topology(single.json()["payload"]["tree"].get<std::string>()),
                         Quartet::make("a", "b", "c", "d")));

    const auto rq = cli({"required-quartets", "--closure", dir.write("g.graph", write_graph(gen_grq(3, 3).graph))});
    EXPECT_EQ(rq.code, 0);
    const auto payload = rq.json()["payload"];
    QuartetSet listed;
    for (const auto& line : payload["quartets"]) listed.merge(parse_quartets(line.get<std::string>()));
    const auto family = shutters_family(3, 3);
    EXPECT_TRUE(std::includes(listed.begin(), listed.end(), family.begin(), family.end()));
}

TEST(Cli, AltCycles) {
    Scratch dir;
    const auto r = cli({"alt-cycles", "--max-c", "2", dir.write("c4.graph", write_graph(gen_cycle(4)))});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["payload"]["count"], 2);
    EXPECT_EQ(cli({"alt-cycles", dir.write("k4.graph", write_graph(gen_complete(4)))}).code, 1);
}

TEST(Cli, Generators) {
    const auto grq = cli({"gen-grq", "3", "4"});
    EXPECT_EQ(grq.code, 0);
    EXPECT_EQ(parse_graph(grq.out), gen_grq(3, 4).graph);
    const auto variant = cli({"gen-grq", "4", "3", "--variant", "2"});
    EXPECT_EQ(parse_graph(variant.out), gen_grq_variant(4, 3, 2));
    EXPECT_EQ(parse_graph(cli({"gen-sun", "5"}).out), gen_sun(5));
    EXPECT_EQ(cli({"gen-grq", "2", "3"}).code, 2);
    EXPECT_EQ(cli({"gen-grq", "3", "3", "--variant", "2"}).code, 2);
}

TEST(Cli, Minimality) {
    const auto r = cli({"grq-minimality", "3", "4"});
    EXPECT_EQ(r.code, 0);
    const auto j = r.json();
    EXPECT_EQ(j["kind"], "minimality-report");
    EXPECT_EQ(j["payload"]["deletions"].size(), 12u);
    for (const auto& d : j["payload"]["deletions"]) EXPECT_EQ(d["root_verified"], true);
}

TEST(Cli, Reduction) {
    Scratch dir;
    const auto yes = dir.write("yes.rcc", write_rcc(planted_rcc_instance(4, 1, 5)));
    const auto no = dir.write("no.rcc", write_rcc(blocked_rcc_instance(3, 5)));

    const auto reduced = cli({"reduce-rcc", yes});
    EXPECT_EQ(reduced.code, 0);
    const Graph h = parse_graph(reduced.out);
    EXPECT_TRUE(same_labelled_graph(h, build_h(planted_rcc_instance(4, 1, 5)).h));

    const auto found = cli({"find-grq", dir.write("h.graph", reduced.out)});
    EXPECT_EQ(found.code, 0);
    EXPECT_EQ(found.json()["kind"], "grq-embedding");
    EXPECT_EQ(found.json()["verified"], true);
    EXPECT_EQ(cli({"find-grq", dir.write("k5.graph", write_graph(gen_complete(5)))}).code, 1);

    const auto cross_yes = cli({"cross-check-rcc", yes});
    EXPECT_EQ(cross_yes.code, 0);
    EXPECT_EQ(cross_yes.json()["payload"]["agree"], true);
    const auto cross_no = cli({"cross-check-rcc", no});
    EXPECT_EQ(cross_no.code, 0);
    EXPECT_TRUE(cross_no.json()["payload"]["chordless_cycle"].is_null());
}

TEST(Cli, UsageAndInputErrors) {
    Scratch dir;
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"no-such-command"}).code, 2);
    EXPECT_EQ(cli({"check-chordal"}).code, 2);
    EXPECT_EQ(cli({"check-chordal", "/nonexistent/file.graph"}).code, 2);
    const auto bad = cli({"check-chordal", dir.write("bad.graph", "a b\na a\n")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;
    EXPECT_TRUE(bad.out.empty());
    EXPECT_EQ(cli({"--jobs", "-3", "gen-sun", "3"}).code, 2);
    EXPECT_EQ(cli({"--jobs", "2", "gen-sun", "3"}).code, 0);
}
