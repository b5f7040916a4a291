#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/phylo_tree.hpp"
#include "leafpower/topology.hpp"

namespace leafpower {

/// Quartets forced by 4-vertex induced subgraphs: ab|cd for every induced
/// P4 a-b-c-d and every induced 2K2 {ab, cd}, and both ab|cd and ad|bc for an
/// induced C4 a-b-c-d (so a graph with a C4 gets a trivially incompatible set).
QuartetSet required_quartets(const Graph& g);

/// Closes q under: if ab|c_i c_{i+1} for 0 <= i < l, then ab|c_0 c_l.
/// Equivalently, for each pair ab, every two labels connected in the graph
/// {cd : ab|cd in q} get ab|cd. Iterated to a fixpoint. Labels outside V(g)
/// throw std::invalid_argument.
QuartetSet path_lemma_closure(const Graph& g, const QuartetSet& q);

/// True when two quartets resolve the same 4-set differently.
bool has_conflicting_splits(const QuartetSet& q);

/// Every label mentioned by q, sorted.
std::vector<std::string> quartet_labels(const QuartetSet& q);

/// A binary tree displaying every quartet of q, or nullopt. Throws
/// CapExceeded when q mentions more than `cap` labels. jobs <= 0 uses the
/// OpenMP default.
std::optional<PhyloTree> is_compatible(const QuartetSet& q, int cap = kDefaultTopologyCap, int jobs = 0);

/// Same answer without pruning: tests every topology in full, one thread.
std::optional<PhyloTree> is_compatible_serial(const QuartetSet& q, int cap = kDefaultTopologyCap);

/// {a_i a_{i+1} | b_j b_{j+1}} together with a_1 b_1 | a_r b_q, on labels
/// a1..ar, b1..bq. Throws std::invalid_argument for r or q below 3.
QuartetSet shutters_family(int r, int q);

inline constexpr int kDefaultQuartetCertificateCap = 16;

/// The closure of RQ'(g) when it is incompatible (so g is not a leaf power),
/// otherwise nullopt, which is inconclusive. Throws CapExceeded when the
/// closure needs a search over more than `cap` labels.
std::optional<QuartetSet> nonleafpower_by_quartets(const Graph& g, int cap = kDefaultQuartetCertificateCap,
                                                   int jobs = 0);

} // namespace leafpower
