#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/phylo_tree.hpp"
#include "leafpower/rational_lp.hpp"
#include "leafpower/topology.hpp"

namespace leafpower {

using LabelPair = std::pair<std::string, std::string>;

/// (A, B): pairs that must end up within the threshold, and pairs that must
/// end up strictly beyond it.
struct ConstraintPair {
    std::vector<LabelPair> must_close;
    std::vector<LabelPair> must_separate;
};

/// All edges of g as A, all non-edges as B.
ConstraintPair graph_constraints(const Graph& g);

struct RationalWitness {
    std::vector<Rational> weights;  // by EdgeId
    Rational threshold;
};

struct FeasibilityResult {
    bool feasible = false;
    std::optional<RationalWitness> witness;
};

/// Decides whether some weighting w >= 0 and threshold k >= 1 put every A
/// pair at distance <= k and every B pair at distance >= k + 1. Integer
/// witnesses exist whenever rational ones do (scale by the common
/// denominator), so this is the same as the strict "> k" requirement.
/// Throws std::invalid_argument for labels that are not leaves of t or when A
/// and B overlap.
FeasibilityResult can_satisfy(const PhyloTree& t, const ConstraintPair& c);

/// Exact check of a rational witness against (A, B).
bool witness_satisfies(const PhyloTree& t, const ConstraintPair& c, const RationalWitness& w);

/// Scales a rational witness to integers. The result can contain zero
/// weights; B pairs land at >= threshold + 1.
WeightedTree integer_witness(const PhyloTree& t, const RationalWitness& w);

/// True iff xy is an edge of g exactly when d(x, y) <= threshold. Throws
/// std::invalid_argument unless L(wt) = V(g).
bool verify_leafroot(const WeightedTree& wt, const Graph& g);

/// Replaces zero weights: with d the longest path (in edges) of the tree,
/// f'(e) = (d+1) f(e) for f(e) > 0, f'(e) = 1 for f(e) = 0, and threshold
/// (d+1) k + d. Throws std::overflow_error if a value leaves int64.
WeightedTree normalize_zero_edges(const WeightedTree& wt);

/// Largest number of edges on any path in t.
int tree_edge_diameter(const PhyloTree& t);

struct PendantRemoval {
    std::string removed;
    std::string neighbor;
};

struct DegreeOneReduction {
    Graph reduced;
    std::vector<PendantRemoval> log;  // in removal order
};

/// Repeatedly deletes the first degree-1 vertex whose neighbour has degree
/// >= 2. Leaf-power status is unchanged by each step; an isolated K2 is left
/// alone.
DegreeOneReduction reduce_degree_one(const Graph& g);

/// Attaches new leaf v next to leaf w: the edge wz is split into wz' (weight
/// 0) and z'z (old weight), v hangs off z' at weight k, then zero edges are
/// normalised. Zero weights in the input are normalised first.
WeightedTree extend_root_over_pendant(const WeightedTree& wt, std::string_view w, std::string v);

/// Drops every leaf not in `keep`, prunes internal nodes left as leaves, and
/// keeps weights on the surviving edges.
WeightedTree restrict_root(const WeightedTree& wt, const std::vector<std::string>& keep);

struct ExactOptions {
    int cap = kDefaultTopologyCap;
    /// Skip topologies that miss a required quartet; such trees cannot satisfy
    /// the alternating 4-cycle behind it.
    bool prune_with_required_quartets = true;
    bool parallel = true;
    int jobs = 0;
    bool reduce_pendants = true;
};

/// Exhaustive leaf-power decision: tries every binary topology (refinements
/// preserve leaf roots, so binary ones suffice) with an exact LP each.
/// Returns a verified leaf root with positive weights, or nullopt.
std::optional<WeightedTree> is_leaf_power_exact(const Graph& g, const ExactOptions& options = {});

} // namespace leafpower
