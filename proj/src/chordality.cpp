#include "leafpower/chordality.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace leafpower {

namespace {

using Vertex = Graph::Vertex;

std::vector<Vertex> alive_neighbors(const Graph& g, Vertex v, const std::vector<bool>& alive) {
    std::vector<Vertex> out;
    for (Vertex u : g.neighbors(v))
        if (alive[static_cast<std::size_t>(u)]) out.push_back(u);
    return out;
}

// N[u] restricted to alive vertices.
std::vector<bool> closed_neighborhood(const Graph& g, Vertex u, const std::vector<bool>& alive) {
    std::vector<bool> out(g.size(), false);
    out[static_cast<std::size_t>(u)] = true;
    for (Vertex w : g.neighbors(u))
        if (alive[static_cast<std::size_t>(w)]) out[static_cast<std::size_t>(w)] = true;
    return out;
}

bool subset_of(const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

} // namespace

bool is_simplicial_in(const Graph& g, Vertex v, const std::vector<bool>& alive) {
    const auto nb = alive_neighbors(g, v, alive);
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (!g.adjacent(nb[i], nb[j])) return false;
    return true;
}

bool is_simple_in(const Graph& g, Vertex v, const std::vector<bool>& alive) {
    if (!is_simplicial_in(g, v, alive)) return false;
    // Closed neighbourhoods of N(v) must form a chain under inclusion.
    const auto nb = alive_neighbors(g, v, alive);
    std::vector<std::vector<bool>> hoods;
    hoods.reserve(nb.size());
    for (Vertex u : nb) hoods.push_back(closed_neighborhood(g, u, alive));
    std::sort(hoods.begin(), hoods.end(), [](const auto& a, const auto& b) {
        return std::count(a.begin(), a.end(), true) < std::count(b.begin(), b.end(), true);
    });
    for (std::size_t i = 0; i + 1 < hoods.size(); ++i)
        if (!subset_of(hoods[i], hoods[i + 1])) return false;
    return true;
}

bool verify_elimination(const Graph& g, const EliminationCertificate& cert) {
    if (cert.ordering.size() != g.size())
        throw std::invalid_argument("ordering length does not match vertex count");
    std::vector<Vertex> order;
    std::vector<bool> seen(g.size(), false);
    for (const auto& l : cert.ordering) {
        const Vertex v = g.index_of(l);
        if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("vertex '" + l + "' repeated in ordering");
        seen[static_cast<std::size_t>(v)] = true;
        order.push_back(v);
    }
    std::vector<bool> alive(g.size(), true);
    for (Vertex v : order) {
        const bool ok = cert.kind == EliminationKind::Perfect ? is_simplicial_in(g, v, alive) : is_simple_in(g, v, alive);
        if (!ok) return false;
        alive[static_cast<std::size_t>(v)] = false;
    }
    return true;
}

std::optional<EliminationCertificate> is_chordal(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<int> weight(n, 0);
    std::vector<bool> numbered(n, false);
    std::vector<Vertex> visit;
    visit.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        Vertex best = -1;
        for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
            if (numbered[static_cast<std::size_t>(v)]) continue;
            if (best < 0 || weight[static_cast<std::size_t>(v)] > weight[static_cast<std::size_t>(best)]) best = v;
        }
        numbered[static_cast<std::size_t>(best)] = true;
        visit.push_back(best);
        for (Vertex u : g.neighbors(best))
            if (!numbered[static_cast<std::size_t>(u)]) ++weight[static_cast<std::size_t>(u)];
    }
    EliminationCertificate cert;
    cert.kind = EliminationKind::Perfect;
    for (auto it = visit.rbegin(); it != visit.rend(); ++it) cert.ordering.push_back(g.label(*it));
    if (!verify_elimination(g, cert)) return std::nullopt;
    return cert;
}

std::optional<EliminationCertificate> is_strongly_chordal(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<bool> alive(n, true);
    EliminationCertificate cert;
    cert.kind = EliminationKind::Simple;
    for (std::size_t step = 0; step < n; ++step) {
        Vertex pick = -1;
        for (Vertex v = 0; v < static_cast<Vertex>(n) && pick < 0; ++v)
            if (alive[static_cast<std::size_t>(v)] && is_simple_in(g, v, alive)) pick = v;
        if (pick < 0) return std::nullopt;
        alive[static_cast<std::size_t>(pick)] = false;
        cert.ordering.push_back(g.label(pick));
    }
    return cert;
}

std::optional<std::array<std::string, 5>> find_gem(const Graph& g) {
    const auto n = static_cast<Vertex>(g.size());
    if (n < 5) return std::nullopt;
    for (Vertex c = 0; c < n; ++c) {
        if (g.degree(c) < 4) continue;
        std::vector<Vertex> nb;
        for (Vertex u : g.neighbors(c))
            if (g.degree(u) >= 2) nb.push_back(u);
        const auto m = nb.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = j + 1; k < m; ++k)
                    for (std::size_t l = k + 1; l < m; ++l) {
                        const std::array<Vertex, 4> q{nb[i], nb[j], nb[k], nb[l]};
                        std::array<int, 4> deg{};
                        int edges = 0;
                        for (int a = 0; a < 4; ++a)
                            for (int b = a + 1; b < 4; ++b)
                                if (g.adjacent(q[static_cast<std::size_t>(a)], q[static_cast<std::size_t>(b)])) {
                                    ++edges;
                                    ++deg[static_cast<std::size_t>(a)];
                                    ++deg[static_cast<std::size_t>(b)];
                                }
                        // 3 edges with degrees {1,1,2,2} is exactly P4.
                        if (edges != 3) continue;
                        auto sorted = deg;
                        std::sort(sorted.begin(), sorted.end());
                        if (sorted != std::array<int, 4>{1, 1, 2, 2}) continue;
                        std::array<Vertex, 4> path{};
                        std::size_t start = 0;
                        while (deg[start] != 1) ++start;
                        path[0] = q[start];
                        std::vector<bool> used(4, false);
                        used[start] = true;
                        for (std::size_t pos = 1; pos < 4; ++pos)
                            for (std::size_t t = 0; t < 4; ++t)
                                if (!used[t] && g.adjacent(path[pos - 1], q[t])) {
                                    path[pos] = q[t];
                                    used[t] = true;
                                    break;
                                }
                        return std::array<std::string, 5>{g.label(c), g.label(path[0]), g.label(path[1]),
                                                          g.label(path[2]), g.label(path[3])};
                    }
    }
    return std::nullopt;
}

} // namespace leafpower
