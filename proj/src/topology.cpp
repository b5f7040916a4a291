#include "leafpower/topology.hpp"

#include <algorithm>
#include <stdexcept>

#include "leafpower/errors.hpp"

namespace leafpower {

std::uint64_t binary_topology_count(int n) {
    if (n < 1) throw std::invalid_argument("topology count needs n >= 1");
    std::uint64_t count = 1;
    for (int m = 3; m < n; ++m) count *= static_cast<std::uint64_t>(2 * m - 3);
    return count;
}

TopologyBuilder::TopologyBuilder(int leaves) : leaves_(leaves) {
    if (leaves < 1) throw std::invalid_argument("topology needs at least one leaf");
    if (leaves == 1) {
        inserted_ = 1;
        node_count_ = 1;
    } else if (leaves == 2) {
        inserted_ = 2;
        node_count_ = 2;
        edges_.emplace_back(0, 1);
    } else {
        inserted_ = 3;
        node_count_ = leaves + 1;
        edges_ = {{leaves, 0}, {leaves, 1}, {leaves, 2}};
    }
}

void TopologyBuilder::insert(int edge) {
    if (complete()) throw std::logic_error("all leaves already inserted");
    if (edge < 0 || edge >= edge_choices()) throw std::out_of_range("insertion edge out of range");
    const int leaf = inserted_;
    const int mid = node_count_++;
    auto& e = edges_[static_cast<std::size_t>(edge)];
    const int far = e.second;
    e.second = mid;
    edges_.emplace_back(mid, far);
    edges_.emplace_back(mid, leaf);
    history_.push_back(edge);
    ++inserted_;
}

void TopologyBuilder::undo() {
    if (history_.empty()) throw std::logic_error("nothing to undo");
    const int edge = history_.back();
    history_.pop_back();
    edges_.pop_back();
    const int far = edges_.back().second;
    edges_.pop_back();
    edges_[static_cast<std::size_t>(edge)].second = far;
    --node_count_;
    --inserted_;
}

void TopologyBuilder::leaf_distances(std::vector<int>& out) const {
    const auto nodes = static_cast<std::size_t>(node_count_);
    std::vector<std::vector<int>> adj(nodes);
    for (auto [a, b] : edges_) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    out.assign(static_cast<std::size_t>(leaves_ * leaves_), 0);
    std::vector<int> dist(nodes);
    std::vector<int> queue;
    queue.reserve(nodes);
    for (int s = 0; s < inserted_; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(s)] = 0;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int x = queue[head];
            for (int y : adj[static_cast<std::size_t>(x)])
                if (dist[static_cast<std::size_t>(y)] < 0) {
                    dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
                    queue.push_back(y);
                }
        }
        for (int t = 0; t < inserted_; ++t)
            out[static_cast<std::size_t>(s * leaves_ + t)] = dist[static_cast<std::size_t>(t)];
    }
}

bool TopologyBuilder::displays(int a, int b, int c, int d, const std::vector<int>& dist) const {
    // Four-point condition with unit lengths: the a-b and c-d paths are
    // disjoint iff d(a,b) + d(c,d) is strictly the smallest pairing.
    auto at = [&](int x, int y) { return dist[static_cast<std::size_t>(x * leaves_ + y)]; };
    const int ab = at(a, b) + at(c, d);
    return ab < at(a, c) + at(b, d) && ab < at(a, d) + at(b, c);
}

PhyloTree TopologyBuilder::to_tree(const std::vector<std::string>& labels) const {
    if (static_cast<int>(labels.size()) != leaves_) throw std::invalid_argument("label count mismatch");
    if (!complete()) throw std::logic_error("topology is incomplete");
    PhyloTree t;
    for (int i = 0; i < leaves_; ++i) t.add_leaf(labels[static_cast<std::size_t>(i)]);
    for (int i = leaves_; i < node_count_; ++i) t.add_node();
    for (auto [a, b] : edges_) t.add_edge(a, b);
    return t;
}

std::vector<int> topology_digits(int leaves, std::uint64_t index) {
    if (index >= binary_topology_count(leaves)) throw std::out_of_range("topology index out of range");
    std::vector<int> digits;
    for (int m = leaves - 1; m >= 3; --m) {
        const auto radix = static_cast<std::uint64_t>(2 * m - 3);
        digits.push_back(static_cast<int>(index % radix));
        index /= radix;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

PhyloTree binary_topology_at(std::vector<std::string> labels, std::uint64_t index) {
    std::sort(labels.begin(), labels.end());
    TopologyBuilder builder(static_cast<int>(labels.size()));
    for (int d : topology_digits(static_cast<int>(labels.size()), index)) builder.insert(d);
    return builder.to_tree(labels);
}

namespace {

bool visit_all(TopologyBuilder& b, const std::vector<std::string>& labels,
               const std::function<bool(const PhyloTree&)>& visit) {
    if (b.complete()) return visit(b.to_tree(labels));
    const int choices = b.edge_choices();
    for (int e = 0; e < choices; ++e) {
        b.insert(e);
        const bool keep_going = visit_all(b, labels, visit);
        b.undo();
        if (!keep_going) return false;
    }
    return true;
}

} // namespace

void for_each_binary_topology(std::vector<std::string> labels, const std::function<bool(const PhyloTree&)>& visit,
                              int cap) {
    if (labels.empty()) throw std::invalid_argument("no labels to enumerate over");
    if (static_cast<int>(labels.size()) > cap) throw CapExceeded(labels.size(), cap);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw std::invalid_argument("duplicate labels");
    TopologyBuilder builder(static_cast<int>(labels.size()));
    visit_all(builder, labels, visit);
}

std::vector<PhyloTree> enumerate_binary_topologies(std::vector<std::string> labels, int cap) {
    std::vector<PhyloTree> out;
    for_each_binary_topology(
        std::move(labels),
        [&](const PhyloTree& t) {
            out.push_back(t);
            return true;
        },
        cap);
    return out;
}

} // namespace leafpower
