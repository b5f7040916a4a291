#include "leafpower/rcc.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <stdexcept>

#include "leafpower/errors.hpp"
#include "leafpower/grq.hpp"

namespace leafpower {

namespace {

std::string prime(const std::string& label) { return label + "'"; }

std::vector<std::string> neighbor_labels(const Graph& g, const std::string& v) {
    std::vector<std::string> out;
    for (auto w : g.neighbors(g.index_of(v))) out.push_back(g.label(w));
    return out;
}

std::string grq_label(char side, int i) { return std::string(1, side) + std::to_string(i); }

} // namespace

RccInstance validate_rcc(RccInstance inst) {
    const Graph& g = inst.graph;
    if (!g.contains(inst.s)) throw std::invalid_argument("terminal s '" + inst.s + "' is not a vertex");
    if (!g.contains(inst.t)) throw std::invalid_argument("terminal t '" + inst.t + "' is not a vertex");
    if (inst.s == inst.t) throw std::invalid_argument("terminals s and t must differ");
    if (g.degree(g.index_of(inst.s)) != 2) throw std::invalid_argument("s must have degree 2");
    if (g.degree(g.index_of(inst.t)) != 2) throw std::invalid_argument("t must have degree 2");
    for (const auto& c : neighbor_labels(g, inst.s))
        if (g.adjacent(c, inst.t)) throw std::invalid_argument("s and t share the neighbour '" + c + "'");

    if (inst.part_u.empty()) {
        std::vector<int> colour(g.size(), -1);
        auto paint = [&](Graph::Vertex start) {
            colour[static_cast<std::size_t>(start)] = 0;
            std::deque<Graph::Vertex> queue{start};
            while (!queue.empty()) {
                const auto x = queue.front();
                queue.pop_front();
                for (auto y : g.neighbors(x)) {
                    if (colour[static_cast<std::size_t>(y)] < 0) {
                        colour[static_cast<std::size_t>(y)] = 1 - colour[static_cast<std::size_t>(x)];
                        queue.push_back(y);
                    } else if (colour[static_cast<std::size_t>(y)] == colour[static_cast<std::size_t>(x)]) {
                        throw std::invalid_argument("graph is not bipartite (odd cycle through '" + g.label(y) + "')");
                    }
                }
            }
        };
        paint(g.index_of(inst.s));
        if (colour[static_cast<std::size_t>(g.index_of(inst.t))] < 0) paint(g.index_of(inst.t));
        if (colour[static_cast<std::size_t>(g.index_of(inst.t))] != 0)
            throw std::invalid_argument("s and t cannot both lie in U of a bipartition");
        for (Graph::Vertex v = 0; v < static_cast<Graph::Vertex>(g.size()); ++v)
            if (colour[static_cast<std::size_t>(v)] < 0) paint(v);
        for (Graph::Vertex v = 0; v < static_cast<Graph::Vertex>(g.size()); ++v)
            if (colour[static_cast<std::size_t>(v)] == 0) inst.part_u.insert(g.label(v));
    } else {
        for (const auto& u : inst.part_u)
            if (!g.contains(u)) throw std::invalid_argument("part U lists unknown vertex '" + u + "'");
        if (!inst.part_u.count(inst.s) || !inst.part_u.count(inst.t))
            throw std::invalid_argument("s and t must lie in part U");
        for (const auto& [u, v] : g.edges())
            if (inst.part_u.count(g.label(u)) == inst.part_u.count(g.label(v)))
                throw std::invalid_argument("edge " + g.label(u) + " " + g.label(v) + " does not cross the bipartition");
    }
    return inst;
}

ReductionOutput build_h(const RccInstance& raw) {
    const RccInstance inst = validate_rcc(raw);
    const Graph& g = inst.graph;
    ReductionOutput out;
    const auto ns = neighbor_labels(g, inst.s);
    const auto nt = neighbor_labels(g, inst.t);
    out.c1 = ns[0];
    out.c2 = ns[1];
    out.d1 = nt[0];
    out.d2 = nt[1];

    auto& h = out.h;
    const std::vector<std::pair<std::string, HVertex>> corners{{"s1", {HRole::S1, inst.s}},
                                                               {"t1", {HRole::T1, inst.t}},
                                                               {"s2", {HRole::S2, inst.s}},
                                                               {"t2", {HRole::T2, inst.t}}};
    for (const auto& [label, tag] : corners) {
        h.add_vertex(label);
        out.part_map.emplace(label, tag);
    }
    std::vector<std::string> near_clique{"s1", "t1", "s2", "t2"};
    for (const auto& z : g.labels())
        if (inst.part_u.count(z) && z != inst.s && z != inst.t) {
            h.add_vertex(prime(z));
            out.part_map.emplace(prime(z), HVertex{HRole::FromU, z});
            near_clique.push_back(prime(z));
        }
    for (const auto& z : g.labels())
        if (!inst.part_u.count(z)) {
            h.add_vertex(prime(z));
            out.part_map.emplace(prime(z), HVertex{HRole::FromV, z});
        }
    for (std::size_t i = 0; i < near_clique.size(); ++i)
        for (std::size_t j = i + 1; j < near_clique.size(); ++j) {
            const auto& p = near_clique[i];
            const auto& q = near_clique[j];
            const bool across = (p[0] == 's' && q[0] == 't') || (p[0] == 't' && q[0] == 's');
            if (i < 4 && j < 4 && across) continue;
            h.add_edge(p, q);
        }
    for (const auto& [u, v] : g.edges()) {
        const auto& lu = g.label(u);
        const auto& lv = g.label(v);
        const bool terminal = lu == inst.s || lu == inst.t || lv == inst.s || lv == inst.t;
        if (!terminal) h.add_edge(prime(lu), prime(lv));
    }
    h.add_edge("s1", prime(out.c1));
    h.add_edge("s2", prime(out.c2));
    h.add_edge("t1", prime(out.d1));
    h.add_edge("t2", prime(out.d2));
    return out;
}

bool is_chordless_cycle(const Graph& g, const std::vector<std::string>& cycle) {
    const auto n = cycle.size();
    if (n < 4) return false;
    std::vector<Graph::Vertex> idx;
    for (const auto& c : cycle) {
        auto v = g.find(c);
        if (!v) return false;
        idx.push_back(*v);
    }
    auto sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool consecutive = j == i + 1 || (i == 0 && j == n - 1);
            if (g.adjacent(idx[i], idx[j]) != consecutive) return false;
        }
    return true;
}

std::optional<std::vector<std::string>> find_chordless_st_cycle(const RccInstance& raw) {
    const RccInstance inst = validate_rcc(raw);
    const Graph& g = inst.graph;
    const auto s = g.index_of(inst.s);
    const auto t = g.index_of(inst.t);
    const auto ns = g.neighbors(s);
    const auto c1 = ns[0], c2 = ns[1];

    std::vector<Graph::Vertex> path{c1};
    std::vector<bool> on_path(g.size(), false);
    on_path[static_cast<std::size_t>(c1)] = true;
    std::optional<std::vector<std::string>> found;

    std::function<bool()> extend = [&]() -> bool {
        const auto last = path.back();
        for (auto w : g.neighbors(last)) {
            if (w == s || on_path[static_cast<std::size_t>(w)]) continue;
            bool induced = true;
            for (std::size_t i = 0; i + 1 < path.size() && induced; ++i)
                if (g.adjacent(w, path[i])) induced = false;
            if (!induced) continue;
            path.push_back(w);
            on_path[static_cast<std::size_t>(w)] = true;
            bool done = false;
            if (w == c2) {
                if (on_path[static_cast<std::size_t>(t)]) {
                    std::vector<std::string> cycle{inst.s};
                    for (auto v : path) cycle.push_back(g.label(v));
                    found = std::move(cycle);
                    done = true;
                }
            } else {
                done = extend();
            }
            on_path[static_cast<std::size_t>(w)] = false;
            path.pop_back();
            if (done) return true;
        }
        return false;
    };
    extend();
    return found;
}

bool verify_grq_embedding(const Graph& host, const GrqEmbedding& emb) {
    if (emb.r < 3 || emb.q < 3) return false;
    const Graph pattern = gen_grq(emb.r, emb.q).graph;
    if (emb.vertex_of.size() != pattern.size()) return false;
    std::vector<Graph::Vertex> image;
    for (const auto& label : pattern.labels()) {
        auto it = emb.vertex_of.find(label);
        if (it == emb.vertex_of.end()) return false;
        auto v = host.find(it->second);
        if (!v) return false;
        image.push_back(*v);
    }
    auto sorted = image;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::size_t i = 0; i < image.size(); ++i)
        for (std::size_t j = i + 1; j < image.size(); ++j)
            if (host.adjacent(image[i], image[j]) !=
                pattern.adjacent(static_cast<Graph::Vertex>(i), static_cast<Graph::Vertex>(j)))
                return false;
    return true;
}

std::optional<GrqEmbedding> find_induced_grq(const Graph& h) {
    const auto n = static_cast<Graph::Vertex>(h.size());
    std::vector<bool> used(h.size(), false);
    std::vector<Graph::Vertex> as, xs, bs, ys;  // chains, corners included in as/bs
    Graph::Vertex a_end = -1, b_end = -1;
    std::optional<GrqEmbedding> found;

    auto adj = [&](Graph::Vertex u, Graph::Vertex v) { return h.adjacent(u, v); };
    auto all_adj = [&](Graph::Vertex z, const std::vector<Graph::Vertex>& vs) {
        return std::all_of(vs.begin(), vs.end(), [&](auto v) { return adj(z, v); });
    };
    auto none_adj = [&](Graph::Vertex z, const std::vector<Graph::Vertex>& vs) {
        return std::none_of(vs.begin(), vs.end(), [&](auto v) { return adj(z, v); });
    };
    auto place = [&](std::vector<Graph::Vertex>& chain, Graph::Vertex v) {
        chain.push_back(v);
        used[static_cast<std::size_t>(v)] = true;
    };
    auto unplace = [&](std::vector<Graph::Vertex>& chain) {
        used[static_cast<std::size_t>(chain.back())] = false;
        chain.pop_back();
    };

    auto finish = [&]() {
        GrqEmbedding emb;
        emb.r = static_cast<int>(as.size());
        emb.q = static_cast<int>(bs.size());
        for (std::size_t i = 0; i < as.size(); ++i) emb.vertex_of[grq_label('a', static_cast<int>(i) + 1)] = h.label(as[i]);
        for (std::size_t i = 0; i < bs.size(); ++i) emb.vertex_of[grq_label('b', static_cast<int>(i) + 1)] = h.label(bs[i]);
        for (std::size_t i = 0; i < xs.size(); ++i) emb.vertex_of[grq_label('x', static_cast<int>(i) + 1)] = h.label(xs[i]);
        for (std::size_t i = 0; i < ys.size(); ++i) emb.vertex_of[grq_label('y', static_cast<int>(i) + 1)] = h.label(ys[i]);
        if (!verify_grq_embedding(h, emb)) throw std::logic_error("induced G_{r,q} search produced a bad embedding");
        found = std::move(emb);
        return true;
    };

    // b-chain: bs holds b1..b_j, ys holds y1..y_{j-1}; add y_j, then close on
    // b_end or add an interior b_{j+1}.
    std::function<bool()> grow_b = [&]() -> bool {
        const auto bj = bs.back();
        const int j = static_cast<int>(bs.size());
        for (Graph::Vertex y = 0; y < n; ++y) {
            if (used[static_cast<std::size_t>(y)] || !adj(y, bj)) continue;
            std::vector<Graph::Vertex> others(bs.begin(), bs.end() - 1);
            if (!none_adj(y, others) || !none_adj(y, as) || !none_adj(y, xs) || !none_adj(y, ys)) continue;
            place(ys, y);
            bool done = false;
            if (adj(y, b_end)) {
                if (j >= 2) {
                    bs.push_back(b_end);
                    done = finish();
                    if (!done) bs.pop_back();
                }
            } else {
                for (Graph::Vertex b = 0; b < n && !done; ++b) {
                    if (used[static_cast<std::size_t>(b)] || !adj(b, y)) continue;
                    if (!all_adj(b, as) || !all_adj(b, bs) || !adj(b, b_end) || !none_adj(b, xs)) continue;
                    std::vector<Graph::Vertex> earlier(ys.begin(), ys.end() - 1);
                    if (!none_adj(b, earlier)) continue;
                    place(bs, b);
                    done = grow_b();
                    unplace(bs);
                }
            }
            unplace(ys);
            if (done) return true;
        }
        return false;
    };

    // a-chain, same shape; closing on a_end starts the b-chain.
    std::function<bool()> grow_a = [&]() -> bool {
        const auto ai = as.back();
        const int i = static_cast<int>(as.size());
        for (Graph::Vertex x = 0; x < n; ++x) {
            if (used[static_cast<std::size_t>(x)] || !adj(x, ai)) continue;
            std::vector<Graph::Vertex> others(as.begin(), as.end() - 1);
            if (!none_adj(x, others) || !none_adj(x, bs) || adj(x, b_end) || !none_adj(x, xs)) continue;
            place(xs, x);
            bool done = false;
            if (adj(x, a_end)) {
                if (i >= 2) {
                    as.push_back(a_end);
                    done = grow_b();
                    as.pop_back();
                }
            } else {
                for (Graph::Vertex a = 0; a < n && !done; ++a) {
                    if (used[static_cast<std::size_t>(a)] || !adj(a, x)) continue;
                    if (!all_adj(a, as) || !all_adj(a, bs) || !adj(a, a_end) || !adj(a, b_end)) continue;
                    std::vector<Graph::Vertex> earlier(xs.begin(), xs.end() - 1);
                    if (!none_adj(a, earlier)) continue;
                    place(as, a);
                    done = grow_a();
                    unplace(as);
                }
            }
            unplace(xs);
            if (done) return true;
        }
        return false;
    };

    for (Graph::Vertex a1 = 0; a1 < n; ++a1)
        for (Graph::Vertex b1 = 0; b1 < n; ++b1) {
            if (b1 == a1 || !adj(a1, b1)) continue;
            for (Graph::Vertex ar = 0; ar < n; ++ar) {
                if (ar == a1 || ar == b1 || adj(ar, a1) || adj(ar, b1)) continue;
                for (Graph::Vertex bq = 0; bq < n; ++bq) {
                    if (bq == a1 || bq == b1 || bq == ar || !adj(bq, ar) || adj(bq, a1) || adj(bq, b1)) continue;
                    as = {a1};
                    bs = {b1};
                    xs.clear();
                    ys.clear();
                    std::fill(used.begin(), used.end(), false);
                    for (auto v : {a1, b1, ar, bq}) used[static_cast<std::size_t>(v)] = true;
                    a_end = ar;
                    b_end = bq;
                    if (grow_a()) return found;
                }
            }
        }
    return std::nullopt;
}

GrqEmbedding embed_cycle(const RccInstance& raw, const ReductionOutput& red, const std::vector<std::string>& cycle) {
    const RccInstance inst = validate_rcc(raw);
    const Graph& g = inst.graph;
    if (!is_chordless_cycle(g, cycle)) throw std::invalid_argument("not a chordless cycle of G");
    const auto s_pos = std::find(cycle.begin(), cycle.end(), inst.s);
    const auto t_pos = std::find(cycle.begin(), cycle.end(), inst.t);
    if (s_pos == cycle.end() || t_pos == cycle.end()) throw std::invalid_argument("cycle misses s or t");

    const auto len = cycle.size();
    const auto start = static_cast<std::size_t>(s_pos - cycle.begin());
    std::vector<std::string> walk;
    for (std::size_t i = 0; i < len; ++i) walk.push_back(cycle[(start + i) % len]);
    const auto t_at = static_cast<std::size_t>(std::find(walk.begin(), walk.end(), inst.t) - walk.begin());
    std::vector<std::string> forward(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(t_at) + 1);
    std::vector<std::string> backward{inst.s};
    for (std::size_t i = len - 1; i >= t_at; --i) backward.push_back(walk[i]);

    GrqEmbedding emb;
    auto lay = [&](const std::vector<std::string>& path, char corner, char link) {
        const int count = static_cast<int>(path.size() + 1) / 2;
        const std::string first = path[1] == red.c1 ? "s1" : "s2";
        const std::string last = path[path.size() - 2] == red.d1 ? "t1" : "t2";
        emb.vertex_of[grq_label(corner, 1)] = first;
        emb.vertex_of[grq_label(corner, count)] = last;
        for (int i = 2; i < count; ++i) emb.vertex_of[grq_label(corner, i)] = prime(path[static_cast<std::size_t>(2 * i - 2)]);
        for (int i = 1; i < count; ++i) emb.vertex_of[grq_label(link, i)] = prime(path[static_cast<std::size_t>(2 * i - 1)]);
        return count;
    };
    emb.r = lay(forward, 'a', 'x');
    emb.q = lay(backward, 'b', 'y');
    if (!verify_grq_embedding(red.h, emb)) throw VerificationError("cycle embedding is not an induced G_{r,q}");
    return emb;
}

std::vector<std::string> cycle_from_embedding(const RccInstance& raw, const ReductionOutput& red,
                                              const GrqEmbedding& emb) {
    const RccInstance inst = validate_rcc(raw);
    if (!verify_grq_embedding(red.h, emb)) throw std::invalid_argument("embedding is not an induced G_{r,q} of H");
    auto tag = [&](char side, int i) -> const HVertex& {
        return red.part_map.at(emb.vertex_of.at(grq_label(side, i)));
    };
    auto is_corner = [](const HVertex& v) { return v.role != HRole::FromU && v.role != HRole::FromV; };
    const auto& a1 = tag('a', 1);
    const auto& b1 = tag('b', 1);
    const auto& ar = tag('a', emb.r);
    const auto& bq = tag('b', emb.q);
    if (!is_corner(a1) || !is_corner(b1) || !is_corner(ar) || !is_corner(bq))
        throw std::invalid_argument("corners of the copy are not the terminal copies");
    if (a1.origin != b1.origin || ar.origin != bq.origin || a1.origin == ar.origin)
        throw std::invalid_argument("corners of the copy do not pair up as s and t");

    std::vector<std::string> cycle{a1.origin};
    for (int i = 1; i < emb.r; ++i) {
        cycle.push_back(tag('x', i).origin);
        if (i + 1 < emb.r) cycle.push_back(tag('a', i + 1).origin);
    }
    cycle.push_back(ar.origin);
    for (int j = emb.q - 1; j >= 1; --j) {
        cycle.push_back(tag('y', j).origin);
        if (j > 1) cycle.push_back(tag('b', j).origin);
    }
    if (!is_chordless_cycle(inst.graph, cycle)) throw std::invalid_argument("recovered walk is not a chordless cycle");
    return cycle;
}

ReductionReport cross_check_reduction(const RccInstance& raw, int cap) {
    const RccInstance inst = validate_rcc(raw);
    if (static_cast<int>(inst.graph.size()) > cap) throw CapExceeded(inst.graph.size(), cap);
    const auto red = build_h(inst);
    ReductionReport report;
    report.cycle = find_chordless_st_cycle(inst);
    report.embedding = find_induced_grq(red.h);
    report.agree = report.cycle.has_value() == report.embedding.has_value();

    report.forward_ok = true;
    if (report.cycle) {
        try {
            const auto emb = embed_cycle(inst, red, *report.cycle);
            report.forward_ok = emb.r + emb.q == static_cast<int>(report.cycle->size() / 2) + 2;
        } catch (const std::exception&) {
            report.forward_ok = false;
        }
    }
    report.backward_ok = true;
    if (report.embedding) {
        try {
            const auto cycle = cycle_from_embedding(inst, red, *report.embedding);
            report.backward_ok = static_cast<int>(cycle.size()) == 2 * (report.embedding->r + report.embedding->q - 2);
        } catch (const std::exception&) {
            report.backward_ok = false;
        }
    }
    return report;
}

RccInstance planted_rcc_instance(int half_length, int noise, std::uint64_t seed) {
    if (half_length < 4) throw std::invalid_argument("planted cycle needs half length >= 4");
    if (noise < 0) throw std::invalid_argument("noise must be nonnegative");
    std::mt19937_64 rng(seed);
    const int len = 2 * half_length;
    const int t_at = 2 * std::uniform_int_distribution<int>(2, half_length - 2)(rng);
    std::vector<std::string> cycle;
    std::vector<std::string> us, vs;
    for (int i = 0; i < len; ++i) {
        std::string label = i == 0 ? "s" : i == t_at ? "t" : (i % 2 == 0 ? "u" : "v") + std::to_string(i);
        cycle.push_back(label);
        if (i % 2 == 0 && i != 0 && i != t_at) us.push_back(label);
        if (i % 2 == 1) vs.push_back(label);
    }
    RccInstance inst;
    for (int i = 0; i < len; ++i) inst.graph.add_edge(cycle[static_cast<std::size_t>(i)], cycle[static_cast<std::size_t>((i + 1) % len)]);
    std::bernoulli_distribution coin(0.5), wire(0.35);
    for (int k = 0; k < noise; ++k) {
        const bool in_u = coin(rng);
        const std::string label = (in_u ? "nu" : "nv") + std::to_string(k);
        auto& targets = in_u ? vs : us;
        inst.graph.add_vertex(label);
        for (const auto& other : targets)
            if (wire(rng)) inst.graph.add_edge(label, other);
        (in_u ? us : vs).push_back(label);
    }
    inst.s = "s";
    inst.t = "t";
    for (const auto& u : us) inst.part_u.insert(u);
    inst.part_u.insert("s");
    inst.part_u.insert("t");
    return validate_rcc(std::move(inst));
}

RccInstance blocked_rcc_instance(int size, std::uint64_t seed) {
    if (size < 2) throw std::invalid_argument("blocked instance needs at least 2 extra vertices");
    std::mt19937_64 rng(seed);
    RccInstance inst;
    auto& g = inst.graph;
    inst.s = "s";
    inst.t = "t";
    g.add_edge("s", "c1");
    g.add_edge("s", "c2");
    g.add_edge("w", "c1");
    g.add_edge("w", "c2");
    g.add_edge("t", "d1");
    g.add_edge("t", "d2");
    std::vector<std::string> us{"w"}, vs{"d1", "d2"};
    std::bernoulli_distribution coin(0.5), wire(0.45);
    for (int k = 0; k < size; ++k) {
        const bool in_u = coin(rng);
        const std::string label = (in_u ? "bu" : "bv") + std::to_string(k);
        g.add_vertex(label);
        for (const auto& other : in_u ? vs : us)
            if (wire(rng)) g.add_edge(label, other);
        (in_u ? us : vs).push_back(label);
    }
    // w reaches into the t side
    g.add_edge("w", "d1");
    inst.part_u.insert(us.begin(), us.end());
    inst.part_u.insert("s");
    inst.part_u.insert("t");
    return validate_rcc(std::move(inst));
}

RccInstance random_rcc_instance(int u, int v, double p, std::uint64_t seed) {
    if (u < 3 || v < 4) throw std::invalid_argument("random instance needs |U| >= 3 and |V| >= 4");
    std::mt19937_64 rng(seed);
    RccInstance inst;
    auto& g = inst.graph;
    inst.s = "s";
    inst.t = "t";
    std::vector<std::string> us{"s", "t"}, vs;
    for (int i = 1; i <= u - 2; ++i) us.push_back("u" + std::to_string(i));
    for (int i = 1; i <= v; ++i) vs.push_back("v" + std::to_string(i));
    for (const auto& x : us) g.add_vertex(x);
    for (const auto& x : vs) g.add_vertex(x);
    auto picks = vs;
    std::shuffle(picks.begin(), picks.end(), rng);
    g.add_edge("s", picks[0]);
    g.add_edge("s", picks[1]);
    g.add_edge("t", picks[2]);
    g.add_edge("t", picks[3]);
    std::bernoulli_distribution wire(p);
    for (std::size_t i = 2; i < us.size(); ++i)
        for (const auto& x : vs)
            if (wire(rng)) g.add_edge(us[i], x);
    inst.part_u.insert(us.begin(), us.end());
    return validate_rcc(std::move(inst));
}

} // namespace leafpower
