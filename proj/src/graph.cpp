#include "leafpower/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace leafpower {

Graph::Graph(const std::vector<std::string>& labels) {
    for (const auto& l : labels) add_vertex(l);
}

Graph::Vertex Graph::add_vertex(std::string_view label) {
    if (auto it = index_.find(std::string(label)); it != index_.end()) return it->second;
    if (label.empty()) throw std::invalid_argument("empty vertex label");
    const auto v = static_cast<Vertex>(labels_.size());
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), v);
    for (auto& row : adj_) row.push_back(false);
    adj_.emplace_back(labels_.size(), false);
    return v;
}

bool Graph::add_edge(std::string_view u, std::string_view v) {
    if (u == v) throw std::invalid_argument("self-loop on vertex '" + std::string(u) + "'");
    const Vertex a = add_vertex(u);
    const Vertex b = add_vertex(v);
    return add_edge(a, b);
}

bool Graph::add_edge(Vertex u, Vertex v) {
    if (u == v) throw std::invalid_argument("self-loop on vertex '" + label(u) + "'");
    auto cell = adj_.at(static_cast<std::size_t>(u)).at(static_cast<std::size_t>(v));
    if (cell) return false;
    cell = true;
    adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
    ++edge_count_;
    return true;
}

bool Graph::remove_edge(std::string_view u, std::string_view v) {
    const Vertex a = index_of(u);
    const Vertex b = index_of(v);
    if (!adjacent(a, b)) return false;
    adj_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = false;
    adj_[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = false;
    --edge_count_;
    return true;
}

std::optional<Graph::Vertex> Graph::find(std::string_view label) const {
    if (auto it = index_.find(std::string(label)); it != index_.end()) return it->second;
    return std::nullopt;
}

Graph::Vertex Graph::index_of(std::string_view label) const {
    if (auto v = find(label)) return *v;
    throw std::invalid_argument("unknown vertex '" + std::string(label) + "'");
}

std::vector<Graph::Vertex> Graph::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    const auto& row = adj_.at(static_cast<std::size_t>(v));
    for (std::size_t u = 0; u < row.size(); ++u)
        if (row[u]) out.push_back(static_cast<Vertex>(u));
    return out;
}

int Graph::degree(Vertex v) const {
    const auto& row = adj_.at(static_cast<std::size_t>(v));
    return static_cast<int>(std::count(row.begin(), row.end(), true));
}

std::vector<std::pair<Graph::Vertex, Graph::Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < static_cast<Vertex>(size()); ++u)
        for (Vertex v = u + 1; v < static_cast<Vertex>(size()); ++v)
            if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
}

Graph Graph::without(const std::vector<std::string>& removed) const {
    std::set<std::string> drop(removed.begin(), removed.end());
    for (const auto& r : drop) index_of(r);
    std::vector<std::string> keep;
    for (const auto& l : labels_)
        if (!drop.count(l)) keep.push_back(l);
    return induced_subgraph(*this, keep);
}

bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.adj_ == b.adj_;
}

Graph induced_subgraph(const Graph& g, const std::vector<std::string>& keep) {
    std::vector<bool> in(g.size(), false);
    for (const auto& l : keep) in[static_cast<std::size_t>(g.index_of(l))] = true;
    Graph h;
    std::vector<Graph::Vertex> map(g.size(), -1);
    for (Graph::Vertex v = 0; v < static_cast<Graph::Vertex>(g.size()); ++v)
        if (in[static_cast<std::size_t>(v)]) map[static_cast<std::size_t>(v)] = h.add_vertex(g.label(v));
    for (auto [u, v] : g.edges())
        if (in[static_cast<std::size_t>(u)] && in[static_cast<std::size_t>(v)])
            h.add_edge(map[static_cast<std::size_t>(u)], map[static_cast<std::size_t>(v)]);
    return h;
}

bool same_labelled_graph(const Graph& a, const Graph& b) {
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
    for (const auto& l : a.labels())
        if (!b.contains(l)) return false;
    for (auto [u, v] : a.edges())
        if (!b.adjacent(a.label(u), a.label(v))) return false;
    return true;
}

Graph gen_sun(int k) {
    if (k < 3) throw std::invalid_argument("sun needs k >= 3");
    Graph g;
    for (int i = 1; i <= k; ++i) g.add_vertex("x" + std::to_string(i));
    for (int i = 1; i <= k; ++i) g.add_vertex("a" + std::to_string(i));
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) g.add_edge("x" + std::to_string(i), "x" + std::to_string(j));
    for (int i = 1; i <= k; ++i) {
        const int next = i % k + 1;
        g.add_edge("a" + std::to_string(i), "x" + std::to_string(i));
        g.add_edge("a" + std::to_string(i), "x" + std::to_string(next));
    }
    return g;
}

Graph gen_cycle(int n, std::string_view prefix) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    Graph g = gen_path(n, prefix);
    g.add_edge(std::string(prefix) + std::to_string(n - 1), std::string(prefix) + "0");
    return g;
}

Graph gen_path(int n, std::string_view prefix) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(std::string(prefix) + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph gen_complete(int n, std::string_view prefix) {
    if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(std::string(prefix) + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

} // namespace leafpower
