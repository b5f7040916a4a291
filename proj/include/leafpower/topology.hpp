#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "leafpower/phylo_tree.hpp"

namespace leafpower {

inline constexpr int kDefaultTopologyCap = 9;

/// Number of unrooted binary trees on n labelled leaves: (2n-5)!! for n >= 3,
/// and 1 for n in {1, 2}.
std::uint64_t binary_topology_count(int n);

/// Incremental stepwise-insertion builder for binary topologies.
///
/// Leaves are 0..n-1. Leaves 0, 1, 2 start as a star around internal node n
/// (fewer leaves start as a single node or a single edge); leaf m >= 3 is
/// inserted by subdividing one of the 2m-3 current edges. The choice sequence
/// read as a mixed-radix number is the topology's canonical index.
class TopologyBuilder {
public:
    explicit TopologyBuilder(int leaves);

    int leaves() const { return leaves_; }
    /// Leaves currently in the tree.
    int inserted() const { return inserted_; }
    bool complete() const { return inserted_ == leaves_; }
    int edge_choices() const { return static_cast<int>(edges_.size()); }

    void insert(int edge);
    void undo();

    /// Unit-length leaf-to-leaf distances for the inserted leaves, row-major
    /// with stride leaves().
    void leaf_distances(std::vector<int>& out) const;

    /// True when the inserted tree displays ab|cd (all four inserted).
    bool displays(int a, int b, int c, int d, const std::vector<int>& dist) const;

    PhyloTree to_tree(const std::vector<std::string>& labels) const;

private:
    int leaves_;
    int inserted_;
    int node_count_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> history_;
};

/// Decode a canonical index into the digits consumed by TopologyBuilder.
std::vector<int> topology_digits(int leaves, std::uint64_t index);

/// The topology at a canonical index; labels are sorted first.
PhyloTree binary_topology_at(std::vector<std::string> labels, std::uint64_t index);

/// Streams every unrooted binary tree on `labels` exactly once in canonical
/// order (labels inserted in sorted order). `visit` returns false to stop.
/// Throws CapExceeded when labels.size() > cap.
void for_each_binary_topology(std::vector<std::string> labels, const std::function<bool(const PhyloTree&)>& visit,
                              int cap = kDefaultTopologyCap);

/// Materialised enumeration; same order as for_each_binary_topology.
std::vector<PhyloTree> enumerate_binary_topologies(std::vector<std::string> labels, int cap = kDefaultTopologyCap);

} // namespace leafpower
