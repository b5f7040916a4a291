#include "leafpower/quartets.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>

#include "leafpower/errors.hpp"
#include "leafpower/topology_search.hpp"

namespace leafpower {

namespace {

// Union-find over a small index range.
struct Components {
    std::vector<int> parent;
    explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

void check_cap(std::size_t labels, int cap) {
    if (static_cast<int>(labels) > cap) throw CapExceeded(labels, cap);
}

// Induced 4-vertex subgraph -> forced quartets. Edges are listed as pairs of
// positions 0..3 into `v`.
void add_forced(const Graph& g, const std::array<Graph::Vertex, 4>& v, QuartetSet& out) {
    std::vector<std::pair<int, int>> edges;
    std::array<int, 4> deg{};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (g.adjacent(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)])) {
                edges.emplace_back(i, j);
                ++deg[static_cast<std::size_t>(i)];
                ++deg[static_cast<std::size_t>(j)];
            }
    auto lab = [&](int i) { return g.label(v[static_cast<std::size_t>(i)]); };
    auto add_split = [&](std::pair<int, int> e, std::pair<int, int> f) {
        out.insert(Quartet::make(lab(e.first), lab(e.second), lab(f.first), lab(f.second)));
    };
    auto disjoint = [](std::pair<int, int> e, std::pair<int, int> f) {
        return e.first != f.first && e.first != f.second && e.second != f.first && e.second != f.second;
    };
    const bool all_deg2 = std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; });
    const bool all_deg1 = std::all_of(deg.begin(), deg.end(), [](int d) { return d == 1; });
    if (edges.size() == 2 && all_deg1) {
        add_split(edges[0], edges[1]);  // 2K2
    } else if (edges.size() == 4 && all_deg2) {
        // C4: the two pairs of opposite edges
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j)
                if (disjoint(edges[i], edges[j])) add_split(edges[i], edges[j]);
    } else if (edges.size() == 3 && std::count(deg.begin(), deg.end(), 1) == 2 &&
               std::count(deg.begin(), deg.end(), 2) == 2) {
        // P4: the two end edges are the disjoint ones
        for (std::size_t i = 0; i < edges.size(); ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j)
                if (disjoint(edges[i], edges[j])) add_split(edges[i], edges[j]);
    }
}

} // namespace

QuartetSet required_quartets(const Graph& g) {
    QuartetSet out;
    const auto n = static_cast<Graph::Vertex>(g.size());
    for (Graph::Vertex a = 0; a < n; ++a)
        for (Graph::Vertex b = a + 1; b < n; ++b)
            for (Graph::Vertex c = b + 1; c < n; ++c)
                for (Graph::Vertex d = c + 1; d < n; ++d) add_forced(g, {a, b, c, d}, out);
    return out;
}

QuartetSet path_lemma_closure(const Graph& g, const QuartetSet& q) {
    const auto n = g.size();
    for (const auto& x : q)
        for (const auto& l : x.labels())
            if (!g.contains(l)) throw std::invalid_argument("quartet label '" + l + "' is not a vertex");
    // Sorted label order so the closure is independent of vertex insertion order.
    std::vector<std::string> labels = g.labels();
    std::sort(labels.begin(), labels.end());
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < n; ++i) pos[labels[i]] = static_cast<int>(i);

    QuartetSet out = q;
    for (bool changed = true; changed;) {
        changed = false;
        // side pair -> list of opposite pairs
        std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> sides;
        for (const auto& x : out) {
            const std::pair<int, int> ab{pos[x.a], pos[x.b]};
            const std::pair<int, int> cd{pos[x.c], pos[x.d]};
            sides[ab].push_back(cd);
            sides[cd].push_back(ab);
        }
        for (const auto& [ab, opposite] : sides) {
            Components comp(n);
            for (const auto& [c, d] : opposite) comp.unite(c, d);
            std::map<int, std::vector<int>> groups;
            for (const auto& [c, d] : opposite) {
                groups[comp.find(c)].push_back(c);
                groups[comp.find(d)].push_back(d);
            }
            for (auto& [root, members] : groups) {
                std::sort(members.begin(), members.end());
                members.erase(std::unique(members.begin(), members.end()), members.end());
                for (std::size_t i = 0; i < members.size(); ++i)
                    for (std::size_t j = i + 1; j < members.size(); ++j) {
                        auto quartet = Quartet::make(labels[static_cast<std::size_t>(ab.first)],
                                                     labels[static_cast<std::size_t>(ab.second)],
                                                     labels[static_cast<std::size_t>(members[i])],
                                                     labels[static_cast<std::size_t>(members[j])]);
                        if (out.insert(std::move(quartet)).second) changed = true;
                    }
            }
        }
    }
    return out;
}

bool has_conflicting_splits(const QuartetSet& q) {
    std::map<std::vector<std::string>, const Quartet*> seen;
    for (const auto& x : q) {
        auto [it, inserted] = seen.emplace(x.support(), &x);
        if (!inserted && !(*it->second == x)) return true;
    }
    return false;
}

std::vector<std::string> quartet_labels(const QuartetSet& q) {
    std::vector<std::string> out;
    for (const auto& x : q)
        for (auto& l : x.labels()) out.push_back(std::move(l));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<PhyloTree> is_compatible(const QuartetSet& q, int cap, int jobs) {
    const auto labels = quartet_labels(q);
    check_cap(labels.size(), cap);
    if (has_conflicting_splits(q)) return std::nullopt;
    if (labels.empty()) return PhyloTree{};
    auto hit = search_topologies_parallel(TopologySearch::from_quartets(q), jobs);
    if (!hit) return std::nullopt;
    return std::move(hit->tree);
}

std::optional<PhyloTree> is_compatible_serial(const QuartetSet& q, int cap) {
    const auto labels = quartet_labels(q);
    check_cap(labels.size(), cap);
    if (labels.empty()) return PhyloTree{};
    auto hit = search_topologies_serial(TopologySearch::from_quartets(q));
    if (!hit) return std::nullopt;
    return std::move(hit->tree);
}

QuartetSet shutters_family(int r, int q) {
    if (r < 3 || q < 3) throw std::invalid_argument("shutters_family needs r, q >= 3");
    auto a = [](int i) { return "a" + std::to_string(i); };
    auto b = [](int j) { return "b" + std::to_string(j); };
    QuartetSet out;
    for (int i = 1; i < r; ++i)
        for (int j = 1; j < q; ++j) out.insert(Quartet::make(a(i), a(i + 1), b(j), b(j + 1)));
    out.insert(Quartet::make(a(1), b(1), a(r), b(q)));
    return out;
}

std::optional<QuartetSet> nonleafpower_by_quartets(const Graph& g, int cap, int jobs) {
    auto closure = path_lemma_closure(g, required_quartets(g));
    if (has_conflicting_splits(closure)) return closure;
    check_cap(quartet_labels(closure).size(), cap);
    if (is_compatible(closure, cap, jobs)) return std::nullopt;
    return closure;
}

} // namespace leafpower
