#include "leafpower/phylo_tree.hpp"

#include <algorithm>
#include <tuple>
#include <deque>
#include <stdexcept>

namespace leafpower {

PhyloTree::Node PhyloTree::add_node() {
    incident_.emplace_back();
    labels_.emplace_back();
    return static_cast<Node>(incident_.size() - 1);
}

PhyloTree::Node PhyloTree::add_leaf(std::string label) {
    const Node v = add_node();
    set_label(v, std::move(label));
    return v;
}

PhyloTree::EdgeId PhyloTree::add_edge(Node u, Node v) {
    if (u == v) throw std::invalid_argument("tree edge cannot be a loop");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= node_count() || static_cast<std::size_t>(v) >= node_count())
        throw std::invalid_argument("tree edge endpoint out of range");
    edges_.emplace_back(u, v);
    const auto e = static_cast<EdgeId>(edges_.size() - 1);
    incident_[static_cast<std::size_t>(u)].push_back(e);
    incident_[static_cast<std::size_t>(v)].push_back(e);
    return e;
}

void PhyloTree::set_label(Node v, std::string label) {
    if (label.empty()) throw std::invalid_argument("empty leaf label");
    auto& slot = labels_.at(static_cast<std::size_t>(v));
    if (slot == label) return;
    if (leaf_index_.count(label)) throw std::invalid_argument("duplicate leaf label '" + label + "'");
    if (!slot.empty()) leaf_index_.erase(slot);
    slot = std::move(label);
    leaf_index_.emplace(slot, v);
}

PhyloTree::Node PhyloTree::other_end(EdgeId e, Node v) const {
    auto [a, b] = edge(e);
    if (a == v) return b;
    if (b == v) return a;
    throw std::invalid_argument("node is not an endpoint of edge");
}

std::optional<PhyloTree::Node> PhyloTree::find_leaf(std::string_view label) const {
    if (auto it = leaf_index_.find(std::string(label)); it != leaf_index_.end()) return it->second;
    return std::nullopt;
}

PhyloTree::Node PhyloTree::leaf(std::string_view label) const {
    if (auto v = find_leaf(label)) return *v;
    throw std::invalid_argument("unknown leaf label '" + std::string(label) + "'");
}

std::vector<std::string> PhyloTree::leaf_labels() const {
    std::vector<std::string> out;
    out.reserve(leaf_index_.size());
    for (const auto& [l, v] : leaf_index_) out.push_back(l);
    std::sort(out.begin(), out.end());
    return out;
}

void PhyloTree::validate() const {
    if (node_count() == 0) throw std::invalid_argument("tree has no nodes");
    if (edge_count() + 1 != node_count()) throw std::invalid_argument("tree must have exactly n-1 edges");
    std::vector<bool> seen(node_count(), false);
    std::deque<Node> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const Node v = queue.front();
        queue.pop_front();
        for (EdgeId e : incident(v)) {
            const Node w = other_end(e, v);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    if (reached != node_count()) throw std::invalid_argument("tree is not connected");
    for (Node v = 0; v < static_cast<Node>(node_count()); ++v) {
        if (degree(v) <= 1 && !is_labelled(v)) throw std::invalid_argument("unlabelled leaf node");
        if (degree(v) > 1 && is_labelled(v)) throw std::invalid_argument("label '" + label(v) + "' is on an internal node");
    }
}

std::vector<PhyloTree::EdgeId> PhyloTree::path(Node u, Node v) const {
    // BFS from v so that parent pointers walk u -> v.
    std::vector<EdgeId> parent_edge(node_count(), -1);
    std::vector<bool> seen(node_count(), false);
    std::deque<Node> queue{v};
    seen[static_cast<std::size_t>(v)] = true;
    while (!queue.empty() && !seen[static_cast<std::size_t>(u)]) {
        const Node x = queue.front();
        queue.pop_front();
        for (EdgeId e : incident(x)) {
            const Node y = other_end(e, x);
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = true;
                parent_edge[static_cast<std::size_t>(y)] = e;
                queue.push_back(y);
            }
        }
    }
    if (!seen[static_cast<std::size_t>(u)]) throw std::invalid_argument("nodes are not connected");
    std::vector<EdgeId> out;
    for (Node x = u; x != v;) {
        const EdgeId e = parent_edge[static_cast<std::size_t>(x)];
        out.push_back(e);
        x = other_end(e, x);
    }
    return out;
}

std::vector<PhyloTree::Node> PhyloTree::path_nodes(Node u, Node v) const {
    std::vector<Node> out{u};
    Node x = u;
    for (EdgeId e : path(u, v)) {
        x = other_end(e, x);
        out.push_back(x);
    }
    return out;
}

bool operator==(const PhyloTree& a, const PhyloTree& b) {
    return a.edges_ == b.edges_ && a.labels_ == b.labels_;
}

void WeightedTree::validate() const {
    tree.validate();
    if (weights.size() != tree.edge_count()) throw std::invalid_argument("weight count does not match edge count");
    for (auto w : weights)
        if (w < 0) throw std::invalid_argument("negative edge weight");
    if (threshold < 1) throw std::invalid_argument("threshold must be >= 1");
}

Quartet Quartet::make(std::string w, std::string x, std::string y, std::string z) {
    if (w > x) std::swap(w, x);
    if (y > z) std::swap(y, z);
    if (std::tie(w, x) > std::tie(y, z)) {
        std::swap(w, y);
        std::swap(x, z);
    }
    if (w == x || w == y || w == z || x == y || x == z || y == z)
        throw std::invalid_argument("quartet labels must be distinct");
    return Quartet{std::move(w), std::move(x), std::move(y), std::move(z)};
}

std::vector<std::string> Quartet::support() const {
    std::vector<std::string> s{a, b, c, d};
    std::sort(s.begin(), s.end());
    return s;
}

std::vector<PhyloTree::EdgeId> path_edges(const PhyloTree& t, std::string_view x, std::string_view y) {
    auto p = t.path(t.leaf(x), t.leaf(y));
    std::sort(p.begin(), p.end());
    return p;
}

std::int64_t tree_distance(const WeightedTree& wt, std::string_view x, std::string_view y) {
    std::int64_t d = 0;
    for (auto e : wt.tree.path(wt.tree.leaf(x), wt.tree.leaf(y))) d += wt.weights.at(static_cast<std::size_t>(e));
    return d;
}

bool displays(const PhyloTree& t, const Quartet& q) {
    const auto left = t.path_nodes(t.leaf(q.a), t.leaf(q.b));
    const auto right = t.path_nodes(t.leaf(q.c), t.leaf(q.d));
    for (auto v : left)
        if (std::find(right.begin(), right.end(), v) != right.end()) return false;
    return true;
}

QuartetSet displayed_quartets(const PhyloTree& t) {
    QuartetSet out;
    const auto labels = t.leaf_labels();
    const auto n = labels.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    const auto& a = labels[i];
                    const auto& b = labels[j];
                    const auto& c = labels[k];
                    const auto& d = labels[l];
                    for (auto q : {Quartet::make(a, b, c, d), Quartet::make(a, c, b, d), Quartet::make(a, d, b, c)})
                        if (displays(t, q)) out.insert(q);
                }
    return out;
}

PhyloTree contract_edge(const PhyloTree& t, PhyloTree::EdgeId e) {
    auto [u, v] = t.edge(e);
    if (t.degree(u) <= 1 || t.degree(v) <= 1 || t.is_labelled(u) || t.is_labelled(v))
        throw std::invalid_argument("cannot contract a leaf edge");
    PhyloTree out;
    std::vector<PhyloTree::Node> map(t.node_count(), -1);
    for (PhyloTree::Node x = 0; x < static_cast<PhyloTree::Node>(t.node_count()); ++x) {
        if (x == v) continue;
        map[static_cast<std::size_t>(x)] = t.is_labelled(x) ? out.add_leaf(t.label(x)) : out.add_node();
    }
    map[static_cast<std::size_t>(v)] = map[static_cast<std::size_t>(u)];
    for (PhyloTree::EdgeId f = 0; f < static_cast<PhyloTree::EdgeId>(t.edge_count()); ++f) {
        if (f == e) continue;
        auto [a, b] = t.edge(f);
        out.add_edge(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]);
    }
    return out;
}

std::set<std::vector<int>> nontrivial_splits(const PhyloTree& t) {
    const auto labels = t.leaf_labels();
    std::unordered_map<std::string, int> pos;
    for (std::size_t i = 0; i < labels.size(); ++i) pos[labels[i]] = static_cast<int>(i);
    std::set<std::vector<int>> out;
    for (PhyloTree::EdgeId e = 0; e < static_cast<PhyloTree::EdgeId>(t.edge_count()); ++e) {
        // Leaves reachable from one endpoint without crossing e.
        auto [a, b] = t.edge(e);
        std::vector<bool> seen(t.node_count(), false);
        seen[static_cast<std::size_t>(a)] = seen[static_cast<std::size_t>(b)] = true;
        std::deque<PhyloTree::Node> queue{a};
        std::vector<int> side;
        while (!queue.empty()) {
            const auto x = queue.front();
            queue.pop_front();
            if (t.is_labelled(x)) side.push_back(pos[t.label(x)]);
            for (auto f : t.incident(x)) {
                const auto y = t.other_end(f, x);
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = true;
                    queue.push_back(y);
                }
            }
        }
        std::sort(side.begin(), side.end());
        if (!side.empty() && side.front() == 0) {
            std::vector<int> other;
            for (int i = 0; i < static_cast<int>(labels.size()); ++i)
                if (!std::binary_search(side.begin(), side.end(), i)) other.push_back(i);
            side = std::move(other);
        }
        if (side.size() >= 2 && side.size() + 2 <= labels.size()) out.insert(side);
    }
    return out;
}

bool is_refinement(const PhyloTree& fine, const PhyloTree& coarse) {
    if (fine.leaf_labels() != coarse.leaf_labels()) return false;
    const auto f = nontrivial_splits(fine);
    for (const auto& s : nontrivial_splits(coarse))
        if (!f.count(s)) return false;
    return true;
}

} // namespace leafpower
