#include "leafpower/topology_search.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "leafpower/topology.hpp"

namespace leafpower {

namespace {

thread_local SearchStats g_last_stats;

constexpr int kSplitLeaves = 7;

// required quartets bucketed by their largest label position: they become
// checkable exactly when that leaf is inserted.
std::vector<std::vector<IndexedQuartet>> bucket_by_last_leaf(const TopologySearch& s) {
    std::vector<std::vector<IndexedQuartet>> buckets(s.labels.size());
    for (const auto& q : s.required) {
        const int last = std::max({q.a, q.b, q.c, q.d});
        if (last < 0 || last >= static_cast<int>(s.labels.size())) throw std::out_of_range("quartet label index");
        buckets[static_cast<std::size_t>(last)].push_back(q);
    }
    return buckets;
}

bool bucket_holds(const TopologyBuilder& b, const std::vector<IndexedQuartet>& bucket, std::vector<int>& dist) {
    if (bucket.empty()) return true;
    b.leaf_distances(dist);
    for (const auto& q : bucket)
        if (!b.displays(q.a, q.b, q.c, q.d, dist)) return false;
    return true;
}

void validate_labels(const TopologySearch& s) {
    if (s.labels.empty()) throw std::invalid_argument("topology search needs at least one label");
    if (!std::is_sorted(s.labels.begin(), s.labels.end()) ||
        std::adjacent_find(s.labels.begin(), s.labels.end()) != s.labels.end())
        throw std::invalid_argument("topology search labels must be sorted and distinct");
}

std::vector<std::uint64_t> digit_weights(int n) {
    // weight of the digit chosen when inserting leaf m (m >= 3)
    std::vector<std::uint64_t> w(static_cast<std::size_t>(std::max(n, 3)), 0);
    std::uint64_t acc = 1;
    for (int m = n - 1; m >= 3; --m) {
        w[static_cast<std::size_t>(m)] = acc;
        acc *= static_cast<std::uint64_t>(2 * m - 3);
    }
    return w;
}

} // namespace

TopologySearch TopologySearch::from_quartets(const QuartetSet& quartets, std::vector<std::string> extra) {
    for (const auto& q : quartets)
        for (const auto& l : q.labels()) extra.push_back(l);
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    TopologySearch s;
    s.labels = std::move(extra);
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < s.labels.size(); ++i) pos[s.labels[i]] = static_cast<int>(i);
    for (const auto& q : quartets) s.required.push_back({pos[q.a], pos[q.b], pos[q.c], pos[q.d]});
    return s;
}

SearchStats last_search_stats() { return g_last_stats; }

std::optional<TopologyHit> search_topologies_serial(const TopologySearch& search) {
    validate_labels(search);
    const int n = static_cast<int>(search.labels.size());
    TopologyBuilder builder(n);
    std::vector<int> dist;
    std::uint64_t index = 0;
    std::optional<TopologyHit> hit;
    SearchStats stats;

    auto check_full = [&]() {
        ++stats.partial_trees;
        builder.leaf_distances(dist);
        for (const auto& q : search.required)
            if (!builder.displays(q.a, q.b, q.c, q.d, dist)) return false;
        auto tree = builder.to_tree(search.labels);
        ++stats.accept_calls;
        if (search.accept && !search.accept(tree)) return false;
        hit = TopologyHit{index, std::move(tree)};
        return true;
    };

    std::function<bool()> walk = [&]() -> bool {
        if (builder.complete()) {
            if (check_full()) return true;
            ++index;
            return false;
        }
        for (int e = 0, choices = builder.edge_choices(); e < choices; ++e) {
            builder.insert(e);
            const bool found = walk();
            builder.undo();
            if (found) return true;
        }
        return false;
    };
    walk();
    g_last_stats = stats;
    return hit;
}

std::optional<TopologyHit> search_topologies_parallel(const TopologySearch& search, int jobs) {
    validate_labels(search);
    const int n = static_cast<int>(search.labels.size());
    const auto buckets = bucket_by_last_leaf(search);
    const auto weights = digit_weights(n);
    const int split = std::min(n, kSplitLeaves);
    const auto prefixes = static_cast<std::int64_t>(binary_topology_count(split));

    std::atomic<std::int64_t> best_prefix{std::numeric_limits<std::int64_t>::max()};
    std::atomic<std::uint64_t> partial_trees{0};
    std::atomic<std::uint64_t> accept_calls{0};
    std::vector<std::optional<TopologyHit>> hits(static_cast<std::size_t>(prefixes));
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t p = 0; p < prefixes; ++p) {
        if (p > best_prefix.load(std::memory_order_relaxed)) continue;
        try {
            TopologyBuilder builder(n);
            std::vector<int> dist;
            std::uint64_t index = 0;
            std::uint64_t local_partials = 0;
            bool viable = true;
            // Leaves 0..2 are always present; quartets need four leaves, so
            // the first bucket that can be non-empty is leaf 3.
            for (int d : topology_digits(split, static_cast<std::uint64_t>(p))) {
                const int leaf = builder.inserted();
                builder.insert(d);
                index += static_cast<std::uint64_t>(d) * weights[static_cast<std::size_t>(leaf)];
                ++local_partials;
                if (!bucket_holds(builder, buckets[static_cast<std::size_t>(leaf)], dist)) {
                    viable = false;
                    break;
                }
            }
            if (viable) {
                std::function<bool()> walk = [&]() -> bool {
                    if (builder.complete()) {
                        auto tree = builder.to_tree(search.labels);
                        accept_calls.fetch_add(1, std::memory_order_relaxed);
                        if (search.accept && !search.accept(tree)) return false;
                        hits[static_cast<std::size_t>(p)] = TopologyHit{index, std::move(tree)};
                        return true;
                    }
                    if (best_prefix.load(std::memory_order_relaxed) < p) return true;  // a lower subtree already won
                    const int leaf = builder.inserted();
                    const auto w = weights[static_cast<std::size_t>(leaf)];
                    for (int e = 0, choices = builder.edge_choices(); e < choices; ++e) {
                        builder.insert(e);
                        index += static_cast<std::uint64_t>(e) * w;
                        ++local_partials;
                        bool stop = false;
                        if (bucket_holds(builder, buckets[static_cast<std::size_t>(leaf)], dist)) stop = walk();
                        index -= static_cast<std::uint64_t>(e) * w;
                        builder.undo();
                        if (stop) return true;
                    }
                    return false;
                };
                walk();
            }
            partial_trees.fetch_add(local_partials, std::memory_order_relaxed);
            if (hits[static_cast<std::size_t>(p)]) {
                std::int64_t cur = best_prefix.load();
                while (p < cur && !best_prefix.compare_exchange_weak(cur, p)) {
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            best_prefix.store(-1);
        }
    }
    if (failure) std::rethrow_exception(failure);

    g_last_stats = SearchStats{partial_trees.load(), accept_calls.load()};
    for (auto& h : hits)
        if (h) return std::move(h);
    return std::nullopt;
}

} // namespace leafpower
