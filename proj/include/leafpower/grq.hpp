#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/phylo_tree.hpp"

namespace leafpower {

/// The r,q family: a clique on a1..ar, b1..bq minus a1ar, a1bq, b1bq, b1ar,
/// with x_i adjacent to a_i, a_{i+1} and y_j adjacent to b_j, b_{j+1}.
/// Vertices are inserted as a's, b's, x's, y's.
struct GrqInstance {
    int r = 0;
    int q = 0;
    Graph graph;
};

/// Throws std::invalid_argument for r or q below 3.
GrqInstance gen_grq(int r, int q);

/// gen_grq(r, q) without the edges a_i b_q for 2 <= i <= j. Requires r >= 4
/// and 2 <= j <= r - 2.
Graph gen_grq_variant(int r, int q, int j);

/// x's, y's, a1, b1, ar, bq, a2..a_{r-1}, b2..b_{q-1}: a simple elimination
/// ordering of gen_grq(r, q).
std::vector<std::string> grq_simple_ordering(int r, int q);

/// Weights for the leaf root of G_{r,q} - x_i.
struct LeafRootRecipe {
    int r = 0, q = 0, i = 0;
    std::int64_t p = 0, p1 = 0, p2 = 0, p3 = 0;
    std::int64_t threshold = 0;  // 2p
};

/// Throws std::invalid_argument outside r, q >= 3, 1 <= i <= r - 1.
LeafRootRecipe grq_recipe(int r, int q, int i);

/// The root before verification, with the three spine hubs exposed.
struct GrqLeafRoot {
    LeafRootRecipe recipe;
    WeightedTree root;  // threshold 2p, contains zero edges
    PhyloTree::Node u = -1;
    PhyloTree::Node v = -1;
};

/// Caterpillar-like root for G_{r,q} - x_i. The a1-u spine carries x_j and
/// a_{j+1} for j < i, the ar-v spine carries x_j and a_j for j > i, the b1-u
/// spine carries y_j and b_{j+1} for j <= q - 2, and u-v-w holds bq and
/// y_{q-1}. Not verified; see construct_grq_minus_leafroot.
GrqLeafRoot grq_minus_x_layout(int r, int q, int i);

/// Verified leaf root (threshold 2p, zero edges allowed) of G_{r,q} - x_i.
/// Throws VerificationError if the root or its normalisation fails
/// verify_leafroot.
WeightedTree construct_grq_minus_leafroot(int r, int q, int i);

/// Same for G_{r,q} - y_i, by building the (q, r, i) root and swapping
/// a <-> b and x <-> y.
WeightedTree construct_grq_minus_y_leafroot(int r, int q, int i);

/// Leaf root of G_{r,q} - v for any vertex v, normalised to positive weights.
/// For v in A or B, the pendants left behind are peeled by
/// reduce_degree_one, the root for the first peeled pendant is restricted to
/// the remaining vertices, and the pendants are re-attached.
WeightedTree grq_minus_vertex_leafroot(int r, int q, const std::string& v);

struct DeletionCheck {
    std::string vertex;
    std::string method;        // "construction" or "reduction"
    bool root_verified = false;
    bool oracle_run = false;   // exhaustive search was within the cap
    bool oracle_agrees = false;
    std::string error;         // empty on success
};

struct MinimalityReport {
    int r = 0, q = 0;
    std::vector<DeletionCheck> deletions;  // in vertex insertion order
    bool all_certified() const;
};

/// Certifies that G_{r,q} - v is a leaf power for every v. Graphs with at
/// most `cap` vertices are also decided by is_leaf_power_exact. Deletions are
/// checked in parallel; jobs <= 0 uses the OpenMP default.
MinimalityReport verify_minimality(int r, int q, int cap = 0, int jobs = 0);

} // namespace leafpower
