#include "leafpower/leafroot.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "leafpower/errors.hpp"
#include "leafpower/quartets.hpp"
#include "leafpower/topology_search.hpp"

namespace leafpower {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("edge weight overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("edge weight overflow");
    return r;
}

std::int64_t to_int64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("rational witness does not fit in int64");
    return z.get_si();
}

// Weighted distances from one node to every node.
std::vector<std::int64_t> distances_from(const WeightedTree& wt, PhyloTree::Node s) {
    const auto& t = wt.tree;
    std::vector<std::int64_t> dist(t.node_count(), -1);
    dist[static_cast<std::size_t>(s)] = 0;
    std::deque<PhyloTree::Node> queue{s};
    while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        for (auto e : t.incident(x)) {
            const auto y = t.other_end(e, x);
            if (dist[static_cast<std::size_t>(y)] < 0) {
                dist[static_cast<std::size_t>(y)] =
                    checked_add(dist[static_cast<std::size_t>(x)], wt.weights[static_cast<std::size_t>(e)]);
                queue.push_back(y);
            }
        }
    }
    return dist;
}

void check_labels(const PhyloTree& t, const std::vector<LabelPair>& pairs) {
    for (const auto& [x, y] : pairs) {
        t.leaf(x);
        t.leaf(y);
        if (x == y) throw std::invalid_argument("constraint pair repeats label '" + x + "'");
    }
}

LabelPair ordered(const LabelPair& p) { return p.first < p.second ? p : LabelPair{p.second, p.first}; }

} // namespace

ConstraintPair graph_constraints(const Graph& g) {
    ConstraintPair c;
    const auto n = static_cast<Graph::Vertex>(g.size());
    for (Graph::Vertex u = 0; u < n; ++u)
        for (Graph::Vertex v = u + 1; v < n; ++v)
            (g.adjacent(u, v) ? c.must_close : c.must_separate).emplace_back(g.label(u), g.label(v));
    return c;
}

FeasibilityResult can_satisfy(const PhyloTree& t, const ConstraintPair& c) {
    check_labels(t, c.must_close);
    check_labels(t, c.must_separate);
    {
        std::set<LabelPair> close;
        for (const auto& p : c.must_close) close.insert(ordered(p));
        for (const auto& p : c.must_separate)
            if (close.count(ordered(p)))
                throw std::invalid_argument("pair " + p.first + "," + p.second + " is in both A and B");
    }
    const int m = static_cast<int>(t.edge_count());
    const int slack = m;  // threshold k = 1 + slack
    FeasibilityProblem lp(m + 1);
    auto path_terms = [&](const LabelPair& p) {
        std::vector<std::pair<int, Rational>> terms;
        for (auto e : t.path(t.leaf(p.first), t.leaf(p.second))) terms.emplace_back(e, 1);
        terms.emplace_back(slack, -1);
        return terms;
    };
    for (const auto& p : c.must_close) lp.add(path_terms(p), Sense::LessEqual, 1);
    for (const auto& p : c.must_separate) lp.add(path_terms(p), Sense::GreaterEqual, 2);

    FeasibilityResult result;
    auto x = find_feasible_point(lp);
    if (!x) return result;
    result.feasible = true;
    RationalWitness w;
    w.weights.assign(x->begin(), x->begin() + m);
    w.threshold = 1 + (*x)[static_cast<std::size_t>(slack)];
    if (!witness_satisfies(t, c, w)) throw std::logic_error("LP witness fails the constraint pair");
    result.witness = std::move(w);
    return result;
}

bool witness_satisfies(const PhyloTree& t, const ConstraintPair& c, const RationalWitness& w) {
    if (w.weights.size() != t.edge_count() || w.threshold < 1) return false;
    for (const auto& x : w.weights)
        if (sgn(x) < 0) return false;
    auto dist = [&](const LabelPair& p) {
        Rational d = 0;
        for (auto e : t.path(t.leaf(p.first), t.leaf(p.second))) d += w.weights[static_cast<std::size_t>(e)];
        return d;
    };
    for (const auto& p : c.must_close)
        if (dist(p) > w.threshold) return false;
    for (const auto& p : c.must_separate)
        if (dist(p) < w.threshold + 1) return false;
    return true;
}

WeightedTree integer_witness(const PhyloTree& t, const RationalWitness& w) {
    mpz_class scale = w.threshold.get_den();
    for (const auto& x : w.weights) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
    WeightedTree out;
    out.tree = t;
    for (const auto& x : w.weights) {
        const mpz_class v = x.get_num() * (scale / x.get_den());
        out.weights.push_back(to_int64(v));
    }
    out.threshold = to_int64(mpz_class(w.threshold.get_num() * (scale / w.threshold.get_den())));
    return out;
}

bool verify_leafroot(const WeightedTree& wt, const Graph& g) {
    wt.validate();
    const auto leaves = wt.tree.leaf_labels();
    if (leaves.size() != g.size()) throw std::invalid_argument("leaf set differs from vertex set");
    for (const auto& l : leaves)
        if (!g.contains(l)) throw std::invalid_argument("leaf '" + l + "' is not a vertex");
    const auto n = static_cast<Graph::Vertex>(g.size());
    for (Graph::Vertex u = 0; u < n; ++u) {
        const auto dist = distances_from(wt, wt.tree.leaf(g.label(u)));
        for (Graph::Vertex v = u + 1; v < n; ++v) {
            const bool close = dist[static_cast<std::size_t>(wt.tree.leaf(g.label(v)))] <= wt.threshold;
            if (close != g.adjacent(u, v)) return false;
        }
    }
    return true;
}

int tree_edge_diameter(const PhyloTree& t) {
    if (t.node_count() <= 1) return 0;
    auto farthest = [&](PhyloTree::Node s) {
        std::vector<int> dist(t.node_count(), -1);
        dist[static_cast<std::size_t>(s)] = 0;
        std::deque<PhyloTree::Node> queue{s};
        PhyloTree::Node last = s;
        while (!queue.empty()) {
            last = queue.front();
            queue.pop_front();
            for (auto e : t.incident(last)) {
                const auto y = t.other_end(e, last);
                if (dist[static_cast<std::size_t>(y)] < 0) {
                    dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(last)] + 1;
                    queue.push_back(y);
                }
            }
        }
        return std::pair{last, dist[static_cast<std::size_t>(last)]};
    };
    return farthest(farthest(0).first).second;
}

WeightedTree normalize_zero_edges(const WeightedTree& wt) {
    wt.validate();
    const std::int64_t d = tree_edge_diameter(wt.tree);
    WeightedTree out;
    out.tree = wt.tree;
    out.weights.reserve(wt.weights.size());
    for (auto f : wt.weights) out.weights.push_back(f > 0 ? checked_mul(d + 1, f) : 1);
    out.threshold = checked_add(checked_mul(d + 1, wt.threshold), d);
    return out;
}

DegreeOneReduction reduce_degree_one(const Graph& g) {
    DegreeOneReduction out{g, {}};
    for (;;) {
        auto& h = out.reduced;
        std::optional<Graph::Vertex> pick;
        for (Graph::Vertex v = 0; v < static_cast<Graph::Vertex>(h.size()) && !pick; ++v) {
            if (h.degree(v) != 1) continue;
            if (h.degree(h.neighbors(v).front()) >= 2) pick = v;
        }
        if (!pick) break;
        const std::string removed = h.label(*pick);
        const std::string neighbor = h.label(h.neighbors(*pick).front());
        out.log.push_back({removed, neighbor});
        out.reduced = h.without({removed});
    }
    return out;
}

WeightedTree extend_root_over_pendant(const WeightedTree& wt_in, std::string_view w, std::string v) {
    wt_in.validate();
    if (wt_in.tree.has_leaf(v)) throw std::invalid_argument("'" + v + "' is already a leaf");
    const bool has_zero = std::find(wt_in.weights.begin(), wt_in.weights.end(), 0) != wt_in.weights.end();
    const WeightedTree wt = has_zero ? normalize_zero_edges(wt_in) : wt_in;
    const auto& t = wt.tree;
    const auto wn = t.leaf(w);

    WeightedTree out;
    out.threshold = wt.threshold;
    if (t.node_count() == 1) {
        out.tree.add_leaf(std::string(w));
        out.tree.add_leaf(std::move(v));
        out.tree.add_edge(0, 1);
        out.weights = {wt.threshold};
        return out;
    }

    const auto wz = t.incident(wn).front();
    for (PhyloTree::Node x = 0; x < static_cast<PhyloTree::Node>(t.node_count()); ++x)
        t.is_labelled(x) ? out.tree.add_leaf(t.label(x)) : out.tree.add_node();
    const auto mid = out.tree.add_node();
    const auto vn = out.tree.add_leaf(std::move(v));
    for (PhyloTree::EdgeId e = 0; e < static_cast<PhyloTree::EdgeId>(t.edge_count()); ++e) {
        if (e == wz) {
            out.tree.add_edge(mid, t.other_end(e, wn));
        } else {
            auto [a, b] = t.edge(e);
            out.tree.add_edge(a, b);
        }
        out.weights.push_back(wt.weights[static_cast<std::size_t>(e)]);
    }
    out.tree.add_edge(wn, mid);
    out.weights.push_back(0);
    out.tree.add_edge(vn, mid);
    out.weights.push_back(wt.threshold);
    return normalize_zero_edges(out);
}

WeightedTree restrict_root(const WeightedTree& wt, const std::vector<std::string>& keep) {
    wt.validate();
    if (keep.empty()) throw std::invalid_argument("cannot restrict a root to no leaves");
    const auto& t = wt.tree;
    std::set<std::string> keep_set(keep.begin(), keep.end());
    for (const auto& l : keep_set) t.leaf(l);

    std::vector<bool> alive(t.node_count(), true);
    std::vector<int> deg(t.node_count());
    for (PhyloTree::Node x = 0; x < static_cast<PhyloTree::Node>(t.node_count()); ++x) deg[static_cast<std::size_t>(x)] = t.degree(x);
    std::deque<PhyloTree::Node> queue;
    for (PhyloTree::Node x = 0; x < static_cast<PhyloTree::Node>(t.node_count()); ++x)
        if (t.is_labelled(x) && !keep_set.count(t.label(x))) queue.push_back(x);
    while (!queue.empty()) {
        const auto x = queue.front();
        queue.pop_front();
        if (!alive[static_cast<std::size_t>(x)]) continue;
        alive[static_cast<std::size_t>(x)] = false;
        for (auto e : t.incident(x)) {
            const auto y = t.other_end(e, x);
            if (!alive[static_cast<std::size_t>(y)]) continue;
            if (--deg[static_cast<std::size_t>(y)] <= 1 && !t.is_labelled(y)) queue.push_back(y);
        }
    }

    WeightedTree out;
    out.threshold = wt.threshold;
    std::vector<PhyloTree::Node> map(t.node_count(), -1);
    for (PhyloTree::Node x = 0; x < static_cast<PhyloTree::Node>(t.node_count()); ++x)
        if (alive[static_cast<std::size_t>(x)])
            map[static_cast<std::size_t>(x)] = t.is_labelled(x) ? out.tree.add_leaf(t.label(x)) : out.tree.add_node();
    for (PhyloTree::EdgeId e = 0; e < static_cast<PhyloTree::EdgeId>(t.edge_count()); ++e) {
        auto [a, b] = t.edge(e);
        if (alive[static_cast<std::size_t>(a)] && alive[static_cast<std::size_t>(b)]) {
            out.tree.add_edge(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]);
            out.weights.push_back(wt.weights[static_cast<std::size_t>(e)]);
        }
    }
    out.validate();
    return out;
}

std::optional<WeightedTree> is_leaf_power_exact(const Graph& g, const ExactOptions& options) {
    if (g.size() == 0) throw std::invalid_argument("empty graph");
    if (static_cast<int>(g.size()) > options.cap) throw CapExceeded(g.size(), options.cap);

    DegreeOneReduction reduction{g, {}};
    if (options.reduce_pendants) reduction = reduce_degree_one(g);
    const Graph& h = reduction.reduced;
    const auto constraints = graph_constraints(h);

    TopologySearch search;
    if (options.prune_with_required_quartets) {
        search = TopologySearch::from_quartets(required_quartets(h), h.labels());
    } else {
        search.labels = h.labels();
        std::sort(search.labels.begin(), search.labels.end());
    }
    search.accept = [&](const PhyloTree& t) { return can_satisfy(t, constraints).feasible; };

    const auto hit = options.parallel ? search_topologies_parallel(search, options.jobs) : search_topologies_serial(search);
    if (!hit) return std::nullopt;

    const auto solved = can_satisfy(hit->tree, constraints);
    WeightedTree root = normalize_zero_edges(integer_witness(hit->tree, *solved.witness));
    if (!verify_leafroot(root, h)) throw VerificationError("LP leaf root failed verification");
    for (auto it = reduction.log.rbegin(); it != reduction.log.rend(); ++it) {
        root = extend_root_over_pendant(root, it->neighbor, it->removed);
    }
    if (!verify_leafroot(root, g)) throw VerificationError("re-extended leaf root failed verification");
    return root;
}

} // namespace leafpower
