#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nnhc/dataset.hpp"
#include "nnhc/errors.hpp"
#include "nnhc/knn_index.hpp"
#include "nnhc/nn_graph.hpp"

namespace nnhc {

/**
 * Levels k = 0..k_star of the nearest-neighbor cluster hierarchy.
 *
 * Level 0 is all singletons and level k_star is the first level with a
 * single cluster. Every k in between is kept, including levels whose
 * partition equals the previous one; distinct_levels() lists the k at
 * which the partition changed.
 */
class Hierarchy {
public:
    explicit Hierarchy(std::vector<Level> levels) : levels_(std::move(levels)) {
        if (levels_.empty()) {
            throw InputError("hierarchy needs at least one level");
        }
        const std::size_t n = levels_.front().size();
        for (std::size_t k = 0; k < levels_.size(); ++k) {
            if (levels_[k].k() != k) {
                throw InputError("level at position " + std::to_string(k) + " has k = " +
                                 std::to_string(levels_[k].k()));
            }
            if (levels_[k].size() != n) {
                throw InputError("levels cover different point counts");
            }
            if (k + 1 < levels_.size() && is_connected(levels_[k])) {
                throw InputError("level " + std::to_string(k) + " is already connected");
            }
        }
        if (levels_.front().cluster_count() != n) {
            throw InputError("level 0 must be all singletons");
        }
        if (!is_connected(levels_.back())) {
            throw InputError("top level is not a single cluster");
        }
    }

    std::size_t n() const noexcept { return levels_.front().size(); }
    std::size_t k_star() const noexcept { return levels_.size() - 1; }
    const std::vector<Level>& levels() const noexcept { return levels_; }
    const Level& level(std::size_t k) const { return levels_.at(k); }

    /// k values whose partition differs from level k-1; always starts with 0.
    std::vector<std::size_t> distinct_levels() const {
        std::vector<std::size_t> out{0};
        for (std::size_t k = 1; k < levels_.size(); ++k) {
            if (!levels_[k].same_partition(levels_[k - 1])) out.push_back(k);
        }
        return out;
    }

    friend bool operator==(const Hierarchy&, const Hierarchy&) = default;

private:
    std::vector<Level> levels_;
};

/// Wall-clock breakdown of build_hierarchy, in seconds.
struct BuildStats {
    double index_seconds = 0.0;
    double neighbor_seconds = 0.0;
    double level_seconds = 0.0;
    std::size_t table_depth = 0;
};

/**
 * Builds the hierarchy for a dataset.
 *
 * Neighbor depth doubles (1, 2, 4, ..., capped at N-1) until the k-NN graph
 * at that depth is connected. Levels are then grown one k at a time with
 * merge_level until the first connected level, which is k_star.
 */
inline Hierarchy build_hierarchy(const Dataset& data, const Metric& metric, Backend backend,
                                 BuildStats* stats = nullptr) {
    using Clock = std::chrono::steady_clock;
    auto seconds_since = [](Clock::time_point start) {
        return std::chrono::duration<double>(Clock::now() - start).count();
    };
    BuildStats local;
    auto start = Clock::now();
    const KnnIndex index(data, metric, backend);
    local.index_seconds = seconds_since(start);

    const std::size_t n = data.size();
    std::vector<Level> levels{Level::singletons(n)};
    if (n > 1) {
        start = Clock::now();
        NeighborTable table = index.all_knn(1);
        while (table.depth() < n - 1 && !is_connected(components_at_k(table, table.depth()))) {
            table = index.extend(table, std::min(2 * table.depth(), n - 1));
        }
        local.neighbor_seconds = seconds_since(start);
        local.table_depth = table.depth();

        start = Clock::now();
        while (!is_connected(levels.back())) {
            levels.push_back(merge_level(levels.back(), table, levels.size()));
        }
        local.level_seconds = seconds_since(start);
    }
    if (stats != nullptr) *stats = local;
    return Hierarchy(std::move(levels));
}

/// Minimal k whose level is a single cluster.
inline std::size_t find_kstar(const Hierarchy& hierarchy) {
    const auto& levels = hierarchy.levels();
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (is_connected(levels[k])) return k;
    }
    return hierarchy.k_star();  // unreachable: the constructor requires a connected top
}

/// True iff every cluster of level k+1 is a union of clusters of level k.
inline bool verify_nesting(const Hierarchy& hierarchy) {
    const auto& levels = hierarchy.levels();
    for (std::size_t k = 1; k < levels.size(); ++k) {
        const Level& lower = levels[k - 1];
        const Level& upper = levels[k];
        for (PointId x = 0; x < upper.size(); ++x) {
            if (upper.label(lower.label(x)) != upper.label(x)) return false;
        }
    }
    return true;
}

struct ClusterNode {
    std::vector<PointId> members;  // ascending
    std::size_t formation_k = 0;   // first k at which this exact set is a cluster
    std::size_t last_k = 0;        // last such k, capped at k_star
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;  // ordered by representative id

    PointId representative() const noexcept { return members.front(); }
    std::size_t size() const noexcept { return members.size(); }
    bool is_leaf() const noexcept { return children.empty(); }
};

/// Clusters of all distinct levels as a tree; node indices are stable.
class ClusterTree {
public:
    ClusterTree(std::vector<ClusterNode> nodes, std::size_t root)
        : nodes_(std::move(nodes)), root_(root) {}

    std::size_t root() const noexcept { return root_; }
    const ClusterNode& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<ClusterNode>& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }

private:
    std::vector<ClusterNode> nodes_;
    std::size_t root_;
};

/**
 * Collapses unchanged clusters across levels into single nodes.
 *
 * A cluster is identified by (minimum id, size): in a nested family two
 * different sets sharing a minimum id are strictly nested, so their sizes
 * differ. Requires verify_nesting(hierarchy).
 */
inline ClusterTree to_tree(const Hierarchy& hierarchy) {
    const std::size_t n = hierarchy.n();
    std::vector<ClusterNode> nodes;
    nodes.reserve(2 * n);
    std::vector<std::size_t> node_of(n, 0);  // by representative, current level
    std::vector<std::size_t> size_of(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        nodes.push_back(ClusterNode{{static_cast<PointId>(i)}, 0, 0, std::nullopt, {}});
        node_of[i] = i;
        size_of[i] = 1;
    }

    for (std::size_t k = 1; k <= hierarchy.k_star(); ++k) {
        const Level& lower = hierarchy.level(k - 1);
        const Level& upper = hierarchy.level(k);
        std::vector<std::size_t> sizes(n, 0);
        for (PointId x = 0; x < n; ++x) ++sizes[upper.label(x)];

        std::vector<std::size_t> next_node(n, 0);
        std::vector<std::vector<PointId>> clusters;
        bool clusters_ready = false;
        std::size_t cluster_index = 0;
        for (PointId rep = 0; rep < n; ++rep) {
            if (upper.label(rep) != rep) continue;
            const std::size_t this_cluster = cluster_index++;
            if (lower.label(rep) == rep && size_of[rep] == sizes[rep]) {
                next_node[rep] = node_of[rep];
                nodes[node_of[rep]].last_k = k;
                continue;
            }
            if (!clusters_ready) {
                clusters = upper.clusters();
                clusters_ready = true;
            }
            next_node[rep] = nodes.size();
            nodes.push_back(ClusterNode{std::move(clusters[this_cluster]), k, k, std::nullopt, {}});
        }
        for (PointId rep = 0; rep < n; ++rep) {
            if (lower.label(rep) != rep) continue;
            const std::size_t child = node_of[rep];
            const std::size_t parent = next_node[upper.label(rep)];
            if (parent != child) {
                nodes[parent].children.push_back(child);
                nodes[child].parent = parent;
            }
        }
        node_of = std::move(next_node);
        size_of = std::move(sizes);
    }
    return ClusterTree(std::move(nodes), node_of[0]);
}

}  // namespace nnhc
