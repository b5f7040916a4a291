#include "leafpower/grq.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <stdexcept>

#include "leafpower/errors.hpp"
#include "leafpower/leafroot.hpp"

namespace leafpower {

namespace {

std::string a(int i) { return "a" + std::to_string(i); }
std::string b(int i) { return "b" + std::to_string(i); }
std::string x(int i) { return "x" + std::to_string(i); }
std::string y(int i) { return "y" + std::to_string(i); }

void check_rq(int r, int q) {
    if (r < 3 || q < 3) throw std::invalid_argument("G_{r,q} needs r, q >= 3");
}

// Builds a WeightedTree from named nodes; leaves are created by label.
class TreeSketch {
public:
    PhyloTree::Node leaf(const std::string& label) {
        auto it = nodes_.find(label);
        if (it != nodes_.end()) return it->second;
        return nodes_[label] = wt_.tree.add_leaf(label);
    }
    PhyloTree::Node inner(const std::string& name) {
        auto it = nodes_.find("#" + name);
        if (it != nodes_.end()) return it->second;
        return nodes_["#" + name] = wt_.tree.add_node();
    }
    void edge(PhyloTree::Node u, PhyloTree::Node v, std::int64_t w) {
        wt_.tree.add_edge(u, v);
        wt_.weights.push_back(w);
    }
    WeightedTree& result() { return wt_; }

private:
    std::map<std::string, PhyloTree::Node> nodes_;
    WeightedTree wt_;
};

std::string swap_sides(const std::string& label) {
    static const std::map<char, char> swap{{'a', 'b'}, {'b', 'a'}, {'x', 'y'}, {'y', 'x'}};
    std::string out = label;
    out[0] = swap.at(label.at(0));
    return out;
}

WeightedTree relabel(const WeightedTree& wt) {
    WeightedTree out;
    out.threshold = wt.threshold;
    out.weights = wt.weights;
    const auto& t = wt.tree;
    for (PhyloTree::Node n = 0; n < static_cast<PhyloTree::Node>(t.node_count()); ++n)
        t.is_labelled(n) ? out.tree.add_leaf(swap_sides(t.label(n))) : out.tree.add_node();
    for (const auto& [u, v] : t.edges()) out.tree.add_edge(u, v);
    return out;
}

void verify_or_throw(const WeightedTree& wt, const Graph& g, const std::string& what) {
    if (!verify_leafroot(wt, g)) throw VerificationError(what + ": leaf root fails verification");
    if (!verify_leafroot(normalize_zero_edges(wt), g)) throw VerificationError(what + ": normalised root fails verification");
}

} // namespace

GrqInstance gen_grq(int r, int q) {
    check_rq(r, q);
    GrqInstance out{r, q, {}};
    auto& g = out.graph;
    std::vector<std::string> core;
    for (int i = 1; i <= r; ++i) core.push_back(a(i));
    for (int j = 1; j <= q; ++j) core.push_back(b(j));
    for (const auto& v : core) g.add_vertex(v);
    for (std::size_t i = 0; i < core.size(); ++i)
        for (std::size_t j = i + 1; j < core.size(); ++j) g.add_edge(core[i], core[j]);
    g.remove_edge(a(1), a(r));
    g.remove_edge(a(1), b(q));
    g.remove_edge(b(1), b(q));
    g.remove_edge(b(1), a(r));
    for (int i = 1; i < r; ++i) {
        g.add_edge(x(i), a(i));
        g.add_edge(x(i), a(i + 1));
    }
    for (int j = 1; j < q; ++j) {
        g.add_edge(y(j), b(j));
        g.add_edge(y(j), b(j + 1));
    }
    return out;
}

Graph gen_grq_variant(int r, int q, int j) {
    check_rq(r, q);
    if (r < 4 || j < 2 || j > r - 2) throw std::invalid_argument("variant needs r >= 4 and 2 <= j <= r - 2");
    Graph g = gen_grq(r, q).graph;
    for (int i = 2; i <= j; ++i) g.remove_edge(a(i), b(q));
    return g;
}

std::vector<std::string> grq_simple_ordering(int r, int q) {
    check_rq(r, q);
    std::vector<std::string> out;
    for (int i = 1; i < r; ++i) out.push_back(x(i));
    for (int j = 1; j < q; ++j) out.push_back(y(j));
    out.insert(out.end(), {a(1), b(1), a(r), b(q)});
    for (int i = 2; i < r; ++i) out.push_back(a(i));
    for (int j = 2; j < q; ++j) out.push_back(b(j));
    return out;
}

LeafRootRecipe grq_recipe(int r, int q, int i) {
    check_rq(r, q);
    if (i < 1 || i > r - 1) throw std::invalid_argument("recipe index must lie in [1, r-1]");
    LeafRootRecipe rec{r, q, i};
    const std::int64_t left = 2 * i - 1, right = 2 * r - 2 * i - 1, bside = 2 * q - 3;
    rec.p = 2 * left * right * bside;
    rec.p1 = rec.p / left;
    rec.p2 = rec.p / bside;
    rec.p3 = rec.p / right;
    rec.threshold = 2 * rec.p;
    if (rec.p1 * left != rec.p || rec.p2 * bside != rec.p || rec.p3 * right != rec.p)
        throw std::logic_error("recipe divisions are not exact");
    if (rec.p1 <= 2 || rec.p2 <= 2 || rec.p3 <= 2) throw std::logic_error("recipe spine weights must exceed 2");
    return rec;
}

GrqLeafRoot grq_minus_x_layout(int r, int q, int i) {
    const auto rec = grq_recipe(r, q, i);
    const auto p = rec.p;
    TreeSketch s;
    const auto u = s.inner("u");
    const auto v = s.inner("v");
    const auto w = s.inner("w");

    // a1 - u: 2i-1 edges of p1; x_j at odd positions, a_{j+1} at even ones.
    {
        std::vector<PhyloTree::Node> spine{s.leaf(a(1))};
        for (int k = 1; k <= 2 * i - 2; ++k) spine.push_back(s.inner("n" + std::to_string(k)));
        spine.push_back(u);
        for (std::size_t k = 0; k + 1 < spine.size(); ++k) s.edge(spine[k], spine[k + 1], rec.p1);
        for (int j = 1; j < i; ++j) {
            s.edge(s.leaf(x(j)), spine[static_cast<std::size_t>(2 * j - 1)], 2 * p - 2 * rec.p1);
            s.edge(s.leaf(a(j + 1)), spine[static_cast<std::size_t>(2 * j)], 0);
        }
    }
    // ar - v: 2r-2i-1 edges of p3, mirrored.
    {
        std::vector<PhyloTree::Node> spine{s.leaf(a(r))};
        for (int k = 1; k <= 2 * r - 2 * i - 2; ++k) spine.push_back(s.inner("o" + std::to_string(k)));
        spine.push_back(v);
        for (std::size_t k = 0; k + 1 < spine.size(); ++k) s.edge(spine[k], spine[k + 1], rec.p3);
        for (int j = r - 1; j > i; --j) {
            const auto pos = static_cast<std::size_t>(2 * (r - j) - 1);
            s.edge(s.leaf(x(j)), spine[pos], 2 * p - 2 * rec.p3);
            s.edge(s.leaf(a(j)), spine[pos + 1], 0);
        }
    }
    // b1 - u: 2q-3 edges, all p2 except the last two (2p2, then 0 at u).
    {
        std::vector<PhyloTree::Node> spine{s.leaf(b(1))};
        for (int k = 1; k <= 2 * q - 4; ++k) spine.push_back(s.inner("m" + std::to_string(k)));
        spine.push_back(u);
        const std::size_t last = spine.size() - 2;
        for (std::size_t k = 0; k + 1 < spine.size(); ++k)
            s.edge(spine[k], spine[k + 1], k == last ? 0 : (k + 1 == last ? 2 * rec.p2 : rec.p2));
        for (int j = 1; j <= q - 2; ++j) {
            const std::int64_t pendant = j <= q - 3 ? 2 * p - 2 * rec.p2 : 2 * p - 2 * rec.p2 - 1;
            s.edge(s.leaf(y(j)), spine[static_cast<std::size_t>(2 * j - 1)], pendant);
            // b_{q-1} sits one unit out so it stays beyond x_{i-1}
            s.edge(s.leaf(b(j + 1)), spine[static_cast<std::size_t>(2 * j)], j + 1 == q - 1 ? 1 : 0);
        }
    }
    s.edge(u, v, 1);
    s.edge(v, w, p);
    s.edge(w, s.leaf(b(q)), 0);
    s.edge(w, s.leaf(y(q - 1)), p - 2);

    GrqLeafRoot out{rec, std::move(s.result()), u, v};
    out.root.threshold = rec.threshold;
    out.root.validate();
    return out;
}

WeightedTree construct_grq_minus_leafroot(int r, int q, int i) {
    auto layout = grq_minus_x_layout(r, q, i);
    verify_or_throw(layout.root, gen_grq(r, q).graph.without({x(i)}), "G_{r,q} - " + x(i));
    return std::move(layout.root);
}

WeightedTree construct_grq_minus_y_leafroot(int r, int q, int i) {
    check_rq(r, q);
    if (i < 1 || i > q - 1) throw std::invalid_argument("y index must lie in [1, q-1]");
    auto root = relabel(grq_minus_x_layout(q, r, i).root);
    verify_or_throw(root, gen_grq(r, q).graph.without({y(i)}), "G_{r,q} - " + y(i));
    return root;
}

WeightedTree grq_minus_vertex_leafroot(int r, int q, const std::string& vertex) {
    const Graph g = gen_grq(r, q).graph;
    g.index_of(vertex);
    const Graph h = g.without({vertex});
    auto index_of_label = [](const std::string& label) { return std::stoi(label.substr(1)); };

    WeightedTree root;
    if (vertex[0] == 'x') {
        root = construct_grq_minus_leafroot(r, q, index_of_label(vertex));
    } else if (vertex[0] == 'y') {
        root = construct_grq_minus_y_leafroot(r, q, index_of_label(vertex));
    } else {
        const auto reduction = reduce_degree_one(h);
        if (reduction.log.empty()) throw std::logic_error("no pendant left after deleting " + vertex);
        const auto& pendant = reduction.log.front().removed;
        WeightedTree base;
        if (pendant[0] == 'x')
            base = construct_grq_minus_leafroot(r, q, index_of_label(pendant));
        else if (pendant[0] == 'y')
            base = construct_grq_minus_y_leafroot(r, q, index_of_label(pendant));
        else
            throw std::logic_error("unexpected pendant " + pendant);
        root = restrict_root(base, reduction.reduced.labels());
        if (!verify_leafroot(root, reduction.reduced)) throw VerificationError("restricted root fails for " + vertex);
        for (auto it = reduction.log.rbegin(); it != reduction.log.rend(); ++it)
            root = extend_root_over_pendant(root, it->neighbor, it->removed);
    }
    root = normalize_zero_edges(root);
    if (!verify_leafroot(root, h)) throw VerificationError("leaf root of G_{r,q} - " + vertex + " fails verification");
    return root;
}

bool MinimalityReport::all_certified() const {
    return !deletions.empty() && std::all_of(deletions.begin(), deletions.end(), [](const DeletionCheck& d) {
               return d.error.empty() && d.root_verified && (!d.oracle_run || d.oracle_agrees);
           });
}

MinimalityReport verify_minimality(int r, int q, int cap, int jobs) {
    const Graph g = gen_grq(r, q).graph;
    MinimalityReport report{r, q, {}};
    report.deletions.resize(g.size());
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto n = static_cast<int>(g.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int idx = 0; idx < n; ++idx) {
        auto& check = report.deletions[static_cast<std::size_t>(idx)];
        check.vertex = g.label(idx);
        const char kind = check.vertex[0];
        check.method = (kind == 'x' || kind == 'y') ? "construction" : "reduction";
        try {
            const Graph h = g.without({check.vertex});
            const auto root = grq_minus_vertex_leafroot(r, q, check.vertex);
            check.root_verified = verify_leafroot(root, h);
            if (static_cast<int>(h.size()) <= cap) {
                ExactOptions options;
                options.cap = cap;
                options.parallel = false;
                // exhaustive on h itself, independent of the peeling used above
                options.reduce_pendants = false;
                check.oracle_run = true;
                check.oracle_agrees = is_leaf_power_exact(h, options).has_value();
            }
        } catch (const std::exception& e) {
            check.error = e.what();
        }
    }
    return report;
}

} // namespace leafpower
