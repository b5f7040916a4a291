#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace leafpower {

/// Simple undirected graph over string-labelled vertices.
///
/// Vertices are numbered in insertion order; every iteration the class
/// exposes follows that order, so algorithms built on top of it are
/// deterministic across runs. Non-edges are as cheap to query as edges.
class Graph {
public:
    using Vertex = int;

    Graph() = default;
    explicit Graph(const std::vector<std::string>& labels);

    /// Returns the index of `label`, creating the vertex if needed.
    Vertex add_vertex(std::string_view label);

    /// Adds uv, creating missing endpoints. Returns false if the edge already
    /// existed. Throws std::invalid_argument on a self-loop.
    bool add_edge(std::string_view u, std::string_view v);
    bool add_edge(Vertex u, Vertex v);
    bool remove_edge(std::string_view u, std::string_view v);

    std::size_t size() const { return labels_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::string& label(Vertex v) const { return labels_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<Vertex> find(std::string_view label) const;
    /// Throws std::invalid_argument for an unknown label.
    Vertex index_of(std::string_view label) const;
    bool contains(std::string_view label) const { return find(label).has_value(); }

    bool adjacent(Vertex u, Vertex v) const { return adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }
    bool adjacent(std::string_view u, std::string_view v) const { return adjacent(index_of(u), index_of(v)); }

    std::vector<Vertex> neighbors(Vertex v) const;
    int degree(Vertex v) const;

    /// Edges as (i, j) with i < j, ordered lexicographically by index.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /// Graph minus the given vertices; surviving vertices keep their order.
    Graph without(const std::vector<std::string>& removed) const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Vertex> index_;
    std::vector<std::vector<bool>> adj_;
    std::size_t edge_count_ = 0;
};

/// G[X]. Vertex order follows `g`, not `keep`. Unknown labels throw.
Graph induced_subgraph(const Graph& g, const std::vector<std::string>& keep);

/// True iff a and b have the same vertex set and the same edges, ignoring
/// vertex order.
bool same_labelled_graph(const Graph& a, const Graph& b);

// Families.

/// k-sun: clique x1..xk plus a_i adjacent to x_i and x_{i+1} (cyclically).
Graph gen_sun(int k);
/// Chordless cycle on prefix0..prefix{n-1}.
Graph gen_cycle(int n, std::string_view prefix = "v");
/// Path prefix0 - ... - prefix{n-1}.
Graph gen_path(int n, std::string_view prefix = "v");
Graph gen_complete(int n, std::string_view prefix = "v");

} // namespace leafpower
