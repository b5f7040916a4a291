#include "leafpower/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>

#include "leafpower/alt_cycles.hpp"
#include "leafpower/chordality.hpp"
#include "leafpower/errors.hpp"
#include "leafpower/grq.hpp"
#include "leafpower/io.hpp"
#include "leafpower/leafroot.hpp"
#include "leafpower/quartets.hpp"
#include "leafpower/rcc.hpp"
#include "leafpower/topology.hpp"

namespace leafpower {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;

// Candidate topologies listed when the exhaustive search finds no leaf root.
constexpr int kMaxListedCandidates = 16;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <typename Parser>
auto parse_file(const std::string& path, Parser parser) {
    const auto text = read_file(path);
    try {
        return parser(text);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Json certificate(const std::string& kind, bool verified, Json payload) {
    Json j;
    j["kind"] = kind;
    j["verified"] = verified;
    j["payload"] = std::move(payload);
    return j;
}

Json quartet_list(const QuartetSet& q) {
    Json list = Json::array();
    for (const auto& x : q) list.push_back(x.a + " " + x.b + " | " + x.c + " " + x.d);
    return list;
}

Json cycle_json(const AlternatingCycle& c) { return Json(c.sequence); }

struct Options {
    int jobs = 0;
    std::string file;
    std::string file2;
    int max_c = 3;
    bool closure = false;
    int cap = -1;
    int r = 0, q = 0, k = 0;
    int variant = 0;
};

int check_chordal(const Options& o, std::ostream& out, bool strong) {
    const Graph g = parse_file(o.file, parse_graph);
    const auto cert = strong ? is_strongly_chordal(g) : is_chordal(g);
    Json payload;
    payload["property"] = strong ? "strongly-chordal" : "chordal";
    payload["holds"] = cert.has_value();
    bool verified = false;
    if (cert) {
        payload["ordering"] = cert->ordering;
        verified = verify_elimination(g, *cert);
    } else if (strong) {
        const auto chordal = is_chordal(g);
        payload["chordal"] = chordal.has_value();
    }
    out << certificate("elimination-ordering", verified, payload).dump(2) << '\n';
    return cert && verified ? kHolds : kFails;
}

int alt_cycles(const Options& o, std::ostream& out) {
    const Graph g = parse_file(o.file, parse_graph);
    Json cycles = Json::array();
    bool verified = true;
    for (const auto& c : enumerate_alternating_cycles(g, o.max_c)) {
        try {
            validate_alternating_cycle(g, c.sequence);
        } catch (const std::invalid_argument&) {
            verified = false;
        }
        cycles.push_back(cycle_json(c));
    }
    Json payload;
    payload["max_half_length"] = o.max_c;
    payload["count"] = cycles.size();
    payload["cycles"] = cycles;
    const bool any = !cycles.empty();
    out << certificate("alternating-cycles", verified, payload).dump(2) << '\n';
    return any ? kHolds : kFails;
}

int required(const Options& o, std::ostream& out) {
    const Graph g = parse_file(o.file, parse_graph);
    auto rq = required_quartets(g);
    if (o.closure) rq = path_lemma_closure(g, rq);
    Json payload;
    payload["closure"] = o.closure;
    payload["count"] = rq.size();
    payload["quartets"] = quartet_list(rq);
    payload["conflicting"] = has_conflicting_splits(rq);
    out << certificate("required-quartets", true, payload).dump(2) << '\n';
    return kHolds;
}

int quartet_compat(const Options& o, std::ostream& out) {
    const QuartetSet qs = parse_file(o.file, parse_quartets);
    const int cap = o.cap > 0 ? o.cap : kDefaultTopologyCap;
    const auto tree = is_compatible(qs, cap, o.jobs);
    Json payload;
    if (tree) {
        bool verified = true;
        for (const auto& x : qs) verified = verified && displays(*tree, x);
        payload["status"] = "compatible";
        payload["tree"] = write_topology(*tree);
        out << certificate("quartet-compatibility", verified, payload).dump(2) << '\n';
        return verified ? kHolds : kFails;
    }
    const bool trivial = has_conflicting_splits(qs);
    payload["status"] = "incompatible";
    payload["reason"] = trivial ? "two quartets resolve the same four labels differently" : "exhaustive search";
    payload["quartets"] = quartet_list(qs);
    // The unpruned serial search is the independent check for small sets.
    bool verified = trivial;
    if (!trivial && quartet_labels(qs).size() <= static_cast<std::size_t>(kDefaultTopologyCap))
        verified = !is_compatible_serial(qs, kDefaultTopologyCap).has_value();
    payload["checked_by_reference"] = verified;
    out << certificate("quartet-incompatibility", verified, payload).dump(2) << '\n';
    return kFails;
}

int leafpower_exact(const Options& o, std::ostream& out) {
    const Graph g = parse_file(o.file, parse_graph);
    ExactOptions options;
    if (o.cap > 0) options.cap = o.cap;
    options.jobs = o.jobs;
    const auto root = is_leaf_power_exact(g, options);
    if (root) {
        Json payload;
        payload["tree"] = write_topology(root->tree);
        payload["newick"] = write_tree(*root);
        payload["threshold"] = root->threshold;
        out << certificate("leaf-root", verify_leafroot(*root, g), payload).dump(2) << '\n';
        return kHolds;
    }
    // No topology works. List the trees that at least display RQ'(G) with the
    // alternating cycle each one fails.
    const auto rq = required_quartets(g);
    Json candidates = Json::array();
    bool verified = true;
    bool truncated = false;
    const auto constraints = graph_constraints(g);
    const int max_c = std::max(2, static_cast<int>(g.size() / 2));
    if (!has_conflicting_splits(rq) && g.size() >= 4) {
        for_each_binary_topology(
            g.labels(),
            [&](const PhyloTree& t) {
                for (const auto& x : rq)
                    if (!displays(t, x)) return true;
                if (static_cast<int>(candidates.size()) == kMaxListedCandidates) {
                    truncated = true;
                    return false;
                }
                Json entry;
                entry["tree"] = write_topology(t);
                const auto failing = check_necessary_condition(g, t, max_c);
                entry["failing_cycle"] = failing ? cycle_json(*failing) : Json(nullptr);
                const bool lp_infeasible = !can_satisfy(t, constraints).feasible;
                if (failing) {
                    ConstraintPair cycle_pair;
                    for (int i = 0; i < failing->half_length(); ++i) {
                        cycle_pair.must_close.emplace_back(failing->x(i), failing->y(i));
                        cycle_pair.must_separate.emplace_back(failing->y(i), failing->x(i + 1));
                    }
                    verified = verified && !can_satisfy(t, cycle_pair).feasible;
                }
                verified = verified && lp_infeasible;
                candidates.push_back(entry);
                return true;
            },
            options.cap);
    }
    Json payload;
    payload["status"] = "not a leaf power";
    payload["required_quartets"] = quartet_list(rq);
    payload["candidates"] = candidates;
    payload["candidates_truncated"] = truncated;
    out << certificate("failing-cycle", verified, payload).dump(2) << '\n';
    return kFails;
}

int verify_root(const Options& o, std::ostream& out) {
    const WeightedTree wt = parse_file(o.file, parse_tree);
    const Graph g = parse_file(o.file2, parse_graph);
    const bool ok = verify_leafroot(wt, g);
    Json payload;
    payload["holds"] = ok;
    payload["threshold"] = wt.threshold;
    if (!ok) {
        Json wrong = Json::array();
        for (const auto& [u, v] : graph_constraints(g).must_close)
            if (tree_distance(wt, u, v) > wt.threshold) wrong.push_back({u, v, "edge too far"});
        for (const auto& [u, v] : graph_constraints(g).must_separate)
            if (tree_distance(wt, u, v) <= wt.threshold) wrong.push_back({u, v, "non-edge too close"});
        payload["violations"] = wrong;
    }
    out << certificate("leaf-root", ok, payload).dump(2) << '\n';
    return ok ? kHolds : kFails;
}

int minimality(const Options& o, std::ostream& out) {
    const auto report = verify_minimality(o.r, o.q, std::max(o.cap, 0), o.jobs);
    Json rows = Json::array();
    for (const auto& d : report.deletions) {
        Json row;
        row["vertex"] = d.vertex;
        row["method"] = d.method;
        row["root_verified"] = d.root_verified;
        row["oracle_run"] = d.oracle_run;
        if (d.oracle_run) row["oracle_agrees"] = d.oracle_agrees;
        if (!d.error.empty()) row["error"] = d.error;
        rows.push_back(row);
    }
    Json payload;
    payload["r"] = o.r;
    payload["q"] = o.q;
    payload["deletions"] = rows;
    const bool ok = report.all_certified();
    out << certificate("minimality-report", ok, payload).dump(2) << '\n';
    return ok ? kHolds : kFails;
}

Json embedding_json(const GrqEmbedding& e) {
    Json j;
    j["r"] = e.r;
    j["q"] = e.q;
    Json map = Json::object();
    const Graph pattern = gen_grq(e.r, e.q).graph;
    for (const auto& label : pattern.labels()) map[label] = e.vertex_of.at(label);
    j["vertex_of"] = map;
    return j;
}

int reduce(const Options& o, std::ostream& out) {
    const RccInstance inst = parse_file(o.file, parse_rcc);
    const auto red = build_h(inst);
    out << "# terminals " << inst.s << " -> s1 s2, " << inst.t << " -> t1 t2\n";
    out << "# c1 " << red.c1 << "  c2 " << red.c2 << "  d1 " << red.d1 << "  d2 " << red.d2 << '\n';
    out << write_graph(red.h);
    return kHolds;
}

int find_grq(const Options& o, std::ostream& out) {
    const Graph h = parse_file(o.file, parse_graph);
    const auto emb = find_induced_grq(h);
    Json payload;
    payload["found"] = emb.has_value();
    if (emb) payload["embedding"] = embedding_json(*emb);
    out << certificate("grq-embedding", emb && verify_grq_embedding(h, *emb), payload).dump(2) << '\n';
    return emb ? kHolds : kFails;
}

int cross_check(const Options& o, std::ostream& out) {
    const RccInstance inst = parse_file(o.file, parse_rcc);
    const auto report = cross_check_reduction(inst, o.cap > 0 ? o.cap : kDefaultRccCap);
    Json payload;
    payload["chordless_cycle"] = report.cycle ? Json(*report.cycle) : Json(nullptr);
    payload["embedding"] = report.embedding ? embedding_json(*report.embedding) : Json(nullptr);
    payload["agree"] = report.agree;
    payload["forward_ok"] = report.forward_ok;
    payload["backward_ok"] = report.backward_ok;
    const bool ok = report.agree && report.forward_ok && report.backward_ok;
    out << certificate("reduction-report", ok, payload).dump(2) << '\n';
    return ok ? kHolds : kFails;
}

std::vector<char*> as_argv(std::vector<std::string>& storage) {
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    return argv;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Leaf power tools: chordality, alternating cycles, quartets, exact leaf roots"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--jobs", o.jobs, "Worker threads for parallel searches (0 = OpenMP default)")->check(CLI::NonNegativeNumber);

    auto file_cmd = [&](const std::string& name, const std::string& help) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("file", o.file, "Input file")->required();
        return cmd;
    };
    auto* chordal = file_cmd("check-chordal", "Perfect elimination ordering or failure");
    auto* strong = file_cmd("check-strongly-chordal", "Simple elimination ordering or failure");
    auto* alt = file_cmd("alt-cycles", "List alternating cycles");
    alt->add_option("--max-c", o.max_c, "Largest half length c")->check(CLI::Range(2, 64));
    auto* rq = file_cmd("required-quartets", "Quartets forced by induced P4, 2K2 and C4");
    rq->add_flag("--closure", o.closure, "Close under the path rule");
    auto* compat = file_cmd("quartet-compat", "Exact quartet compatibility");
    compat->add_option("--cap", o.cap, "Largest label count searched")->check(CLI::PositiveNumber);
    auto* exact = file_cmd("leafpower-exact", "Exhaustive leaf power decision");
    exact->add_option("--cap", o.cap, "Largest vertex count searched")->check(CLI::PositiveNumber);
    auto* verify = app.add_subcommand("verify-leafroot", "Check a weighted tree against a graph");
    verify->add_option("tree", o.file, "Tree file")->required();
    verify->add_option("graph", o.file2, "Graph file")->required();
    auto* grq = app.add_subcommand("gen-grq", "Print G_{r,q}");
    grq->add_option("r", o.r)->required()->check(CLI::Range(3, 1000));
    grq->add_option("q", o.q)->required()->check(CLI::Range(3, 1000));
    grq->add_option("--variant", o.variant, "Drop a_i b_q for 2 <= i <= J");
    auto* sun = app.add_subcommand("gen-sun", "Print the k-sun");
    sun->add_option("k", o.k)->required()->check(CLI::Range(3, 1000));
    auto* minimal = app.add_subcommand("grq-minimality", "Leaf roots for every vertex deletion of G_{r,q}");
    minimal->add_option("r", o.r)->required()->check(CLI::Range(3, 1000));
    minimal->add_option("q", o.q)->required()->check(CLI::Range(3, 1000));
    minimal->add_option("--cap", o.cap, "Also run the exhaustive search up to this many vertices");
    auto* reduce_cmd = file_cmd("reduce-rcc", "Build the chordal graph H from an RCC instance");
    auto* find_cmd = file_cmd("find-grq", "Search for an induced G_{r,q}");
    auto* cross = file_cmd("cross-check-rcc", "Solve an RCC instance directly and through H");
    cross->add_option("--cap", o.cap, "Largest |V(G)| accepted")->check(CLI::PositiveNumber);

    std::vector<std::string> storage = args;
    if (storage.empty()) storage.push_back("leafpower");
    auto argv = as_argv(storage);
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kHolds : kUsage;
    }

    try {
        if (chordal->parsed()) return check_chordal(o, out, false);
        if (strong->parsed()) return check_chordal(o, out, true);
        if (alt->parsed()) return alt_cycles(o, out);
        if (rq->parsed()) return required(o, out);
        if (compat->parsed()) return quartet_compat(o, out);
        if (exact->parsed()) return leafpower_exact(o, out);
        if (verify->parsed()) return verify_root(o, out);
        if (grq->parsed()) {
            out << write_graph(o.variant ? gen_grq_variant(o.r, o.q, o.variant) : gen_grq(o.r, o.q).graph);
            return kHolds;
        }
        if (sun->parsed()) {
            out << write_graph(gen_sun(o.k));
            return kHolds;
        }
        if (minimal->parsed()) return minimality(o, out);
        if (reduce_cmd->parsed()) return reduce(o, out);
        if (find_cmd->parsed()) return find_grq(o, out);
        if (cross->parsed()) return cross_check(o, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace leafpower
