#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/phylo_tree.hpp"

namespace leafpower {

/// x_0 y_0 x_1 y_1 ... x_{c-1} y_{c-1} with every x_i y_i an edge and every
/// y_i x_{i+1} (indices mod c) a non-edge.
///
/// Canonical form: reading the cycle backwards is again alternating, so every
/// vertex can serve as x_0 in exactly one orientation. The canonical sequence
/// is the one that starts at the smallest label, which is also the
/// lexicographically smallest sequence of the orbit.
struct AlternatingCycle {
    std::vector<std::string> sequence;

    int half_length() const { return static_cast<int>(sequence.size() / 2); }
    const std::string& x(int i) const;
    const std::string& y(int i) const;
    std::string to_string() const;

    bool operator==(const AlternatingCycle&) const = default;
};

/// Throws std::invalid_argument unless `sequence` is an alternating cycle of g
/// with distinct vertices and c >= 2.
void validate_alternating_cycle(const Graph& g, const std::vector<std::string>& sequence);

/// Canonical representative of the rotation/reflection orbit of a valid
/// alternating sequence.
AlternatingCycle canonical_cycle(const std::vector<std::string>& sequence);

/// Depth-first enumeration of canonical cycles with c <= max_half_length.
/// x_0 runs over labels in sorted order, then each step extends by an
/// (edge, non-edge) pair in sorted label order. `visit` returns false to stop.
/// Throws std::invalid_argument if max_half_length < 2.
void for_each_alternating_cycle(const Graph& g, int max_half_length,
                                const std::function<bool(const AlternatingCycle&)>& visit);

std::vector<AlternatingCycle> enumerate_alternating_cycles(const Graph& g, int max_half_length);

/// Per tree edge: how many x_i-y_i paths (positive) and y_i-x_{i+1} paths
/// (negative) use it. Indexed by EdgeId.
struct SignedPathCounts {
    std::vector<int> positive;
    std::vector<int> negative;
};

SignedPathCounts signed_path_counts(const PhyloTree& t, const AlternatingCycle& cyc);

/// Some weighting of t satisfies the cycle iff some edge lies on strictly
/// more negative than positive paths.
bool can_satisfy_cycle(const PhyloTree& t, const AlternatingCycle& cyc);

struct CycleWeighting {
    /// Rotation of the input cycle with y_0 negative for the witness edge.
    AlternatingCycle cycle;
    PhyloTree::EdgeId witness_edge = -1;
    /// The greedy weights on the original tree: pendant edges of cycle
    /// vertices carry f(z), the witness edge carries c^2, everything else 0.
    /// Threshold 2c^10.
    WeightedTree raw;
    /// raw with zero edges normalised away.
    WeightedTree normalized;
};

/// Builds a weighting satisfying cyc by the greedy walk around the cycle.
/// Throws std::invalid_argument if t cannot satisfy cyc and
/// std::overflow_error when 2c^10 does not fit in int64.
CycleWeighting construct_cycle_weighting(const PhyloTree& t, const AlternatingCycle& cyc);

/// True when every x_i y_i is within the threshold and every y_i x_{i+1}
/// beyond it.
bool weighting_satisfies_cycle(const WeightedTree& wt, const AlternatingCycle& cyc);

/// First enumerated cycle (c <= max_half_length) that t cannot satisfy.
/// Throws std::invalid_argument unless L(t) = V(g).
std::optional<AlternatingCycle> check_necessary_condition(const Graph& g, const PhyloTree& t, int max_half_length);

/// Whether g has any alternating cycle (c up to n/2).
bool has_alternating_cycle(const Graph& g);

} // namespace leafpower
