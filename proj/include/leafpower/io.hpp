#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "leafpower/graph.hpp"
#include "leafpower/phylo_tree.hpp"
#include "leafpower/rcc.hpp"

namespace leafpower {

/// Malformed input. what() reads "line L[, column C]: message".
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// '#' starts a comment; "u v" is an edge, "node u" a vertex. Duplicate
/// edges and self-loops are errors.
Graph parse_graph(std::string_view text);
/// Every vertex as a "node" line (keeping vertex order), then every edge.
std::string write_graph(const Graph& g);

/// Newick with ":w" on every edge (nonnegative integers) plus a
/// "threshold: k" line, in either order. Read as an unrooted tree; only
/// leaves may carry names.
WeightedTree parse_tree(std::string_view text);
std::string write_tree(const WeightedTree& wt);

/// Newick without the threshold line; weights are optional and ignored.
PhyloTree parse_topology(std::string_view text);
std::string write_topology(const PhyloTree& t);

/// One "a b | c d" per line.
QuartetSet parse_quartets(std::string_view text);
std::string write_quartets(const QuartetSet& q);

/// Graph format plus "terminals S T" and an optional "part-u ..." line.
RccInstance parse_rcc(std::string_view text);
std::string write_rcc(const RccInstance& inst);

} // namespace leafpower
