#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "leafpower/phylo_tree.hpp"

namespace leafpower {

/// ab|cd over positions in TopologySearch::labels.
struct IndexedQuartet {
    int a, b, c, d;
};

/// "Find the first binary topology on `labels` that displays every quartet in
/// `required` and passes `accept`."
///
/// First means lowest canonical index (see TopologyBuilder). `accept` may be
/// empty (accept everything) and must be safe to call concurrently.
struct TopologySearch {
    std::vector<std::string> labels;  // sorted, distinct
    std::vector<IndexedQuartet> required;
    std::function<bool(const PhyloTree&)> accept;

    /// Builds from label-level quartets; labels are the union of `extra` and
    /// the quartets' labels.
    static TopologySearch from_quartets(const QuartetSet& quartets, std::vector<std::string> extra = {});
};

struct TopologyHit {
    std::uint64_t index = 0;
    PhyloTree tree;
};

/// Reference implementation: visits all (2n-5)!! topologies in order and
/// checks each one in full. No pruning, one thread.
std::optional<TopologyHit> search_topologies_serial(const TopologySearch& search);

/// Branch and bound: a partial tree is abandoned as soon as a required quartet
/// whose labels are all inserted is not displayed (later insertions cannot
/// repair it). The search space is cut into subtrees at a fixed insertion
/// depth and those are explored with OpenMP; the result is the same
/// lowest-index hit the serial reference returns. jobs <= 0 uses the OpenMP
/// default.
std::optional<TopologyHit> search_topologies_parallel(const TopologySearch& search, int jobs = 0);

/// Statistics from the last parallel search on this thread; used by the
/// benchmark and by tests that check pruning is effective.
struct SearchStats {
    std::uint64_t partial_trees = 0;
    std::uint64_t accept_calls = 0;
};
SearchStats last_search_stats();

} // namespace leafpower
