#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "leafpower/graph.hpp"

namespace leafpower {

enum class EliminationKind { Perfect, Simple };

/// An elimination ordering plus the property each prefix vertex must have in
/// the graph induced by itself and the vertices after it.
struct EliminationCertificate {
    std::vector<std::string> ordering;
    EliminationKind kind = EliminationKind::Perfect;
};

/// Perfect elimination ordering via maximum-cardinality search, or nullopt.
/// Ties in MCS go to the earliest-inserted vertex.
std::optional<EliminationCertificate> is_chordal(const Graph& g);

/// Simple elimination ordering obtained by repeatedly deleting the first
/// simple vertex of the residual graph, or nullopt when none exists.
std::optional<EliminationCertificate> is_strongly_chordal(const Graph& g);

/// Definition-level check of a certificate. Throws std::invalid_argument if
/// the ordering is not a permutation of V(g).
bool verify_elimination(const Graph& g, const EliminationCertificate& cert);

/// Induced gem as (universal vertex, p1, p2, p3, p4) with p1-p2-p3-p4 an
/// induced P4.
std::optional<std::array<std::string, 5>> find_gem(const Graph& g);

/// Residual-graph predicates, exposed for tests and for the sun oracle.
bool is_simplicial_in(const Graph& g, Graph::Vertex v, const std::vector<bool>& alive);
bool is_simple_in(const Graph& g, Graph::Vertex v, const std::vector<bool>& alive);

} // namespace leafpower
