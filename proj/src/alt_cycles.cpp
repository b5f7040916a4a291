#include "leafpower/alt_cycles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "leafpower/leafroot.hpp"

namespace leafpower {

namespace {

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cycle weighting overflows int64");
    return r;
}

std::vector<Graph::Vertex> sorted_vertices(const Graph& g) {
    std::vector<Graph::Vertex> order(g.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Graph::Vertex>(i);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return g.label(a) < g.label(b); });
    return order;
}

} // namespace

const std::string& AlternatingCycle::x(int i) const {
    const int c = half_length();
    return sequence.at(static_cast<std::size_t>(2 * (((i % c) + c) % c)));
}

const std::string& AlternatingCycle::y(int i) const {
    const int c = half_length();
    return sequence.at(static_cast<std::size_t>(2 * (((i % c) + c) % c) + 1));
}

std::string AlternatingCycle::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < sequence.size(); ++i) out += (i ? "," : "") + sequence[i];
    return out + ")";
}

void validate_alternating_cycle(const Graph& g, const std::vector<std::string>& seq) {
    if (seq.size() < 4 || seq.size() % 2 != 0)
        throw std::invalid_argument("alternating cycle needs an even number (>= 4) of vertices");
    std::set<std::string> distinct(seq.begin(), seq.end());
    if (distinct.size() != seq.size()) throw std::invalid_argument("alternating cycle repeats a vertex");
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const auto& a = seq[i];
        const auto& b = seq[(i + 1) % seq.size()];
        const bool want_edge = i % 2 == 0;
        if (g.adjacent(a, b) != want_edge)
            throw std::invalid_argument("pair " + a + "," + b + (want_edge ? " must be an edge" : " must be a non-edge"));
    }
}

AlternatingCycle canonical_cycle(const std::vector<std::string>& seq) {
    if (seq.size() < 4 || seq.size() % 2 != 0) throw std::invalid_argument("not an alternating sequence");
    const auto n = seq.size();
    const auto start = static_cast<std::size_t>(std::min_element(seq.begin(), seq.end()) - seq.begin());
    AlternatingCycle out;
    out.sequence.reserve(n);
    if (start % 2 == 0) {
        for (std::size_t i = 0; i < n; ++i) out.sequence.push_back(seq[(start + i) % n]);
    } else {
        // a y position: read backwards so it becomes x_0 with its edge partner next
        for (std::size_t i = 0; i < n; ++i) out.sequence.push_back(seq[(start + n - i) % n]);
    }
    return out;
}

void for_each_alternating_cycle(const Graph& g, int max_half_length,
                                const std::function<bool(const AlternatingCycle&)>& visit) {
    if (max_half_length < 2) throw std::invalid_argument("max_half_length must be at least 2");
    const auto order = sorted_vertices(g);
    std::vector<int> rank(g.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    std::vector<bool> used(g.size(), false);
    std::vector<Graph::Vertex> path;
    bool stopped = false;

    // path ends with an x; extend by y (edge), then close or add the next x.
    std::function<void(Graph::Vertex)> extend = [&](Graph::Vertex x0) {
        const auto xi = path.back();
        const int pairs_after = static_cast<int>(path.size() / 2) + 1;
        for (auto yi : order) {
            if (stopped) return;
            if (rank[static_cast<std::size_t>(yi)] <= rank[static_cast<std::size_t>(x0)] || used[static_cast<std::size_t>(yi)] ||
                !g.adjacent(xi, yi))
                continue;
            used[static_cast<std::size_t>(yi)] = true;
            path.push_back(yi);
            if (pairs_after >= 2 && !g.adjacent(yi, x0)) {
                AlternatingCycle cyc;
                for (auto v : path) cyc.sequence.push_back(g.label(v));
                if (!visit(cyc)) stopped = true;
            }
            if (!stopped && pairs_after < max_half_length) {
                for (auto xn : order) {
                    if (stopped) break;
                    if (rank[static_cast<std::size_t>(xn)] <= rank[static_cast<std::size_t>(x0)] ||
                        used[static_cast<std::size_t>(xn)] || g.adjacent(yi, xn))
                        continue;
                    used[static_cast<std::size_t>(xn)] = true;
                    path.push_back(xn);
                    extend(x0);
                    path.pop_back();
                    used[static_cast<std::size_t>(xn)] = false;
                }
            }
            path.pop_back();
            used[static_cast<std::size_t>(yi)] = false;
        }
    };

    for (auto x0 : order) {
        if (stopped) return;
        used[static_cast<std::size_t>(x0)] = true;
        path.assign(1, x0);
        extend(x0);
        used[static_cast<std::size_t>(x0)] = false;
    }
}

std::vector<AlternatingCycle> enumerate_alternating_cycles(const Graph& g, int max_half_length) {
    std::vector<AlternatingCycle> out;
    for_each_alternating_cycle(g, max_half_length, [&](const AlternatingCycle& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

SignedPathCounts signed_path_counts(const PhyloTree& t, const AlternatingCycle& cyc) {
    SignedPathCounts out;
    out.positive.assign(t.edge_count(), 0);
    out.negative.assign(t.edge_count(), 0);
    for (int i = 0; i < cyc.half_length(); ++i) {
        for (auto e : t.path(t.leaf(cyc.x(i)), t.leaf(cyc.y(i)))) ++out.positive[static_cast<std::size_t>(e)];
        for (auto e : t.path(t.leaf(cyc.y(i)), t.leaf(cyc.x(i + 1)))) ++out.negative[static_cast<std::size_t>(e)];
    }
    return out;
}

bool can_satisfy_cycle(const PhyloTree& t, const AlternatingCycle& cyc) {
    const auto counts = signed_path_counts(t, cyc);
    for (std::size_t e = 0; e < counts.positive.size(); ++e)
        if (counts.negative[e] > counts.positive[e]) return true;
    return false;
}

bool weighting_satisfies_cycle(const WeightedTree& wt, const AlternatingCycle& cyc) {
    for (int i = 0; i < cyc.half_length(); ++i) {
        if (tree_distance(wt, cyc.x(i), cyc.y(i)) > wt.threshold) return false;
        if (tree_distance(wt, cyc.y(i), cyc.x(i + 1)) <= wt.threshold) return false;
    }
    return true;
}

CycleWeighting construct_cycle_weighting(const PhyloTree& t, const AlternatingCycle& input) {
    const auto counts = signed_path_counts(t, input);
    PhyloTree::EdgeId witness = -1;
    int best = 0;
    for (std::size_t e = 0; e < counts.positive.size(); ++e) {
        const int margin = counts.negative[e] - counts.positive[e];
        if (margin > best) {
            best = margin;
            witness = static_cast<PhyloTree::EdgeId>(e);
        }
    }
    if (witness < 0) throw std::invalid_argument("tree cannot satisfy cycle " + input.to_string());

    // Side of each leaf relative to the witness edge.
    const auto [u, v] = t.edge(witness);
    auto on_u_side = [&](const std::string& label) {
        const auto nodes = t.path_nodes(t.leaf(label), v);
        return std::find(nodes.begin(), nodes.end(), u) != nodes.end();
    };
    auto separated = [&](const std::string& a, const std::string& b) { return on_u_side(a) != on_u_side(b); };

    // Rotate so that y_0 is negative: separated from x_1 but not from x_0.
    const int c = input.half_length();
    int shift = -1;
    for (int i = 0; i < c && shift < 0; ++i)
        if (separated(input.y(i), input.x(i + 1)) && !separated(input.y(i), input.x(i))) shift = i;
    if (shift < 0) throw std::logic_error("witness edge without a negative vertex");
    CycleWeighting out;
    out.witness_edge = witness;
    for (int i = 0; i < c; ++i) {
        out.cycle.sequence.push_back(input.x(i + shift));
        out.cycle.sequence.push_back(input.y(i + shift));
    }
    const auto& cyc = out.cycle;

    std::int64_t ck = 1;
    for (int i = 0; i < 10; ++i) ck = mul(ck, c);
    const std::int64_t k = mul(2, ck);
    const std::int64_t e = static_cast<std::int64_t>(c) * c;

    std::vector<std::int64_t> fx(static_cast<std::size_t>(c)), fy(static_cast<std::size_t>(c));
    fy[0] = k / 2;
    for (int i = 1; i <= c; ++i) {
        const auto xi = static_cast<std::size_t>(i % c);
        const auto prev = static_cast<std::size_t>(i - 1);
        fx[xi] = k + 1 - fy[prev] - (separated(cyc.x(i), cyc.y(i - 1)) ? e : 0);
        if (i == c) break;  // x_0 reached
        fy[xi] = k - fx[xi] - (separated(cyc.y(i), cyc.x(i)) ? e : 0);
    }

    out.raw.tree = t;
    out.raw.threshold = k;
    out.raw.weights.assign(t.edge_count(), 0);
    out.raw.weights[static_cast<std::size_t>(witness)] = e;
    auto set_pendant = [&](const std::string& label, std::int64_t w) {
        const auto node = t.leaf(label);
        if (t.degree(node) != 1) throw std::invalid_argument("cycle vertex '" + label + "' is not on a pendant edge");
        out.raw.weights[static_cast<std::size_t>(t.incident(node).front())] = w;
    };
    for (int i = 0; i < c; ++i) {
        set_pendant(cyc.x(i), fx[static_cast<std::size_t>(i)]);
        set_pendant(cyc.y(i), fy[static_cast<std::size_t>(i)]);
    }
    for (auto w : out.raw.weights)
        if (w < 0) throw std::logic_error("greedy weighting went negative");
    if (!weighting_satisfies_cycle(out.raw, cyc)) throw std::logic_error("greedy weighting fails its cycle");
    out.normalized = normalize_zero_edges(out.raw);
    if (!weighting_satisfies_cycle(out.normalized, cyc)) throw std::logic_error("normalised weighting fails its cycle");
    return out;
}

std::optional<AlternatingCycle> check_necessary_condition(const Graph& g, const PhyloTree& t, int max_half_length) {
    const auto leaves = t.leaf_labels();
    auto vertices = g.labels();
    std::sort(vertices.begin(), vertices.end());
    if (leaves != vertices) throw std::invalid_argument("tree leaves differ from graph vertices");
    std::optional<AlternatingCycle> failing;
    for_each_alternating_cycle(g, max_half_length, [&](const AlternatingCycle& cyc) {
        if (can_satisfy_cycle(t, cyc)) return true;
        failing = cyc;
        return false;
    });
    return failing;
}

bool has_alternating_cycle(const Graph& g) {
    const int max_half = static_cast<int>(g.size() / 2);
    if (max_half < 2) return false;
    bool found = false;
    for_each_alternating_cycle(g, max_half, [&](const AlternatingCycle&) {
        found = true;
        return false;
    });
    return found;
}

} // namespace leafpower
