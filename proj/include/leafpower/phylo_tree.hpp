#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace leafpower {

/// Unrooted tree whose leaves carry distinct labels.
///
/// Nodes and edges are dense integer ids in creation order. Internal nodes
/// are unlabelled; degree-2 internal nodes are allowed (they arise from
/// subdividing an edge). Only leaves (degree <= 1) may carry labels, and
/// validate() requires every leaf to carry one.
class PhyloTree {
public:
    using Node = int;
    using EdgeId = int;

    Node add_node();
    Node add_leaf(std::string label);
    EdgeId add_edge(Node u, Node v);
    void set_label(Node v, std::string label);

    std::size_t node_count() const { return incident_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::pair<Node, Node> edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::vector<std::pair<Node, Node>>& edges() const { return edges_; }
    const std::vector<EdgeId>& incident(Node v) const { return incident_.at(static_cast<std::size_t>(v)); }
    Node other_end(EdgeId e, Node v) const;
    int degree(Node v) const { return static_cast<int>(incident(v).size()); }

    bool is_labelled(Node v) const { return !labels_.at(static_cast<std::size_t>(v)).empty(); }
    const std::string& label(Node v) const { return labels_.at(static_cast<std::size_t>(v)); }
    std::optional<Node> find_leaf(std::string_view label) const;
    /// Throws std::invalid_argument for a label that is not on a leaf.
    Node leaf(std::string_view label) const;
    bool has_leaf(std::string_view label) const { return find_leaf(label).has_value(); }
    /// Leaf labels, sorted.
    std::vector<std::string> leaf_labels() const;
    std::size_t leaf_count() const { return leaf_index_.size(); }

    /// Throws std::invalid_argument unless this is a tree whose labels sit
    /// exactly on its leaves.
    void validate() const;

    /// Edges on the unique u-v path, in walking order from u.
    std::vector<EdgeId> path(Node u, Node v) const;
    /// Nodes on the unique u-v path, endpoints included.
    std::vector<Node> path_nodes(Node u, Node v) const;

    friend bool operator==(const PhyloTree& a, const PhyloTree& b);

private:
    std::vector<std::pair<Node, Node>> edges_;
    std::vector<std::vector<EdgeId>> incident_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Node> leaf_index_;
};

/// A tree with a nonnegative integer weight per edge (indexed by EdgeId) and
/// a distance threshold. Zero weights are permitted; normalize_zero_edges in
/// leafroot.hpp turns them into a strictly positive weighting.
struct WeightedTree {
    PhyloTree tree;
    std::vector<std::int64_t> weights;
    std::int64_t threshold = 1;

    void validate() const;
};

/// Quartet ab|cd in canonical form: a < b, c < d, (a, b) < (c, d).
struct Quartet {
    std::string a, b, c, d;

    static Quartet make(std::string w, std::string x, std::string y, std::string z);
    std::vector<std::string> labels() const { return {a, b, c, d}; }
    /// The 4-set this quartet resolves, sorted.
    std::vector<std::string> support() const;
    std::string to_string() const { return a + b + "|" + c + d; }

    auto operator<=>(const Quartet&) const = default;
};

using QuartetSet = std::set<Quartet>;

/// Edge ids on the path between two leaves, sorted by id. Unknown labels throw.
std::vector<PhyloTree::EdgeId> path_edges(const PhyloTree& t, std::string_view x, std::string_view y);

/// Sum of weights on the x-y path.
std::int64_t tree_distance(const WeightedTree& wt, std::string_view x, std::string_view y);

/// True when the a-b and c-d paths of t share no node.
bool displays(const PhyloTree& t, const Quartet& q);

/// Q(T): every quartet t displays. Star-resolved 4-sets contribute nothing.
QuartetSet displayed_quartets(const PhyloTree& t);

/// Contract an edge joining two internal nodes. Leaf edges throw.
PhyloTree contract_edge(const PhyloTree& t, PhyloTree::EdgeId e);

/// Nontrivial leaf bipartitions of t. Each split is the set of sorted-label
/// positions on the side *not* containing the smallest label.
std::set<std::vector<int>> nontrivial_splits(const PhyloTree& t);

/// True iff `coarse` can be obtained from `fine` by edge contractions, i.e.
/// same leaf set and splits(coarse) is a subset of splits(fine). Degree-2
/// nodes are treated as suppressed.
bool is_refinement(const PhyloTree& fine, const PhyloTree& coarse);

} // namespace leafpower
