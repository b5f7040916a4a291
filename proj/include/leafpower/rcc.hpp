#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "leafpower/graph.hpp"

namespace leafpower {

/// Restricted chordless cycle instance: bipartite G = (U, V), s and t in U,
/// both of degree 2, no common neighbour. Question: is there a chordless
/// cycle through s and t?
struct RccInstance {
    Graph graph;
    std::string s;
    std::string t;
    /// The U side. Left empty, it is derived by 2-colouring with s and t in U.
    std::set<std::string> part_u;
};

/// Checks every condition and fills part_u when empty. Throws
/// std::invalid_argument naming the first violated condition.
RccInstance validate_rcc(RccInstance inst);

enum class HRole { S1, T1, S2, T2, FromU, FromV };

struct HVertex {
    HRole role;
    std::string origin;  // vertex of G (s or t for the four corners)
};

/// The chordal graph built from an instance. Corners are labelled s1, t1, s2,
/// t2; the copy of a vertex z of G is labelled z'.
struct ReductionOutput {
    Graph h;
    std::map<std::string, HVertex> part_map;
    std::string c1, c2;  // N(s) in G, in vertex order
    std::string d1, d2;  // N(t)
};

/// Corners pairwise adjacent except s_i t_j; X_U and the corners form that
/// near-clique; u'v' for each edge uv of G; s1c1', s2c2', t1d1', t2d2'.
ReductionOutput build_h(const RccInstance& inst);

/// A chordless cycle through s and t, as s, c1, ..., c2 (so the walk returns
/// to s), found by extending induced paths from one neighbour of s. nullopt if
/// none exists.
std::optional<std::vector<std::string>> find_chordless_st_cycle(const RccInstance& inst);

/// True when `cycle` is a chordless cycle of g (consecutive vertices adjacent,
/// wrapping around, no other adjacencies, length >= 4, no repeats).
bool is_chordless_cycle(const Graph& g, const std::vector<std::string>& cycle);

/// Labels of G_{r,q} (a1.., b1.., x1.., y1..) mapped to vertices of a host
/// graph.
struct GrqEmbedding {
    int r = 0;
    int q = 0;
    std::map<std::string, std::string> vertex_of;
};

/// True when the mapping is injective and the induced subgraph, relabelled,
/// is exactly gen_grq(r, q).
bool verify_grq_embedding(const Graph& host, const GrqEmbedding& emb);

/// Backtracking search for an induced G_{r,q} (any r, q >= 3). Corners
/// a1, b1, ar, bq are chosen first (a1b1 and arbq edges, the four cross pairs
/// non-edges), then the a-chain a1 x1 a2 ... ar and the b-chain are grown
/// with adjacency checked against every placed vertex. The result is
/// verified before it is returned. Exponential in the worst case.
std::optional<GrqEmbedding> find_induced_grq(const Graph& h);

/// Chordless s-t cycle of G -> induced G_{r,q} in H with r + q = l + 2 for a
/// cycle of length 2l. Throws std::invalid_argument if `cycle` is not a
/// chordless cycle through s and t.
GrqEmbedding embed_cycle(const RccInstance& inst, const ReductionOutput& red, const std::vector<std::string>& cycle);

/// Induced G_{r,q} in H -> chordless s-t cycle of G of length 2(r + q - 2).
/// Throws std::invalid_argument when the corners do not sit on s1, s2, t1, t2
/// or the recovered cycle is not chordless.
std::vector<std::string> cycle_from_embedding(const RccInstance& inst, const ReductionOutput& red,
                                              const GrqEmbedding& emb);

inline constexpr int kDefaultRccCap = 14;

struct ReductionReport {
    std::optional<std::vector<std::string>> cycle;  // in G
    std::optional<GrqEmbedding> embedding;          // in H
    bool agree = false;
    /// Forward construction from `cycle` verified (vacuously true without one).
    bool forward_ok = false;
    /// Cycle recovered from `embedding` is chordless through s, t (vacuous
    /// without an embedding).
    bool backward_ok = false;
};

/// Runs both exact solvers and both constructions. Throws CapExceeded when
/// |V(G)| > cap.
ReductionReport cross_check_reduction(const RccInstance& inst, int cap = kDefaultRccCap);

// Instance generators, deterministic in the seed.

/// A chordless cycle of length 2l through s and t, plus `noise` extra
/// vertices wired randomly to non-terminal vertices. Always a yes-instance.
RccInstance planted_rcc_instance(int half_length, int noise, std::uint64_t seed);

/// Both neighbours of s also see a single U vertex w, and everything else,
/// t included, hangs behind w. Every cycle through s and t then has the
/// chord w-c2. Always a no-instance; `size` is the number of extra vertices.
RccInstance blocked_rcc_instance(int size, std::uint64_t seed);

/// Random bipartite instance with |U| = u (s, t included) and |V| = v, edge
/// probability p away from s and t. Its answer is whatever the exact solver
/// says.
RccInstance random_rcc_instance(int u, int v, double p, std::uint64_t seed);

} // namespace leafpower
