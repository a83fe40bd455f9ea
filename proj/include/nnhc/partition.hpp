#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nnhc/errors.hpp"
#include "nnhc/hierarchy.hpp"

namespace nnhc {

enum class Provenance {
    bona_fide,  // size k + 1 at a level k >= 1 where it is a cluster
    remainder,  // points of one coarse cluster not covered by any selected bona fide cluster
    coarse,     // a cluster of the level just below the top
};

inline std::string_view to_string(Provenance p) noexcept {
    switch (p) {
    case Provenance::bona_fide: return "bona_fide";
    case Provenance::remainder: return "remainder";
    case Provenance::coarse: return "coarse";
    }
    return "unknown";
}

struct PartitionCluster {
    std::vector<PointId> members;  // ascending
    Provenance provenance;
    // bona_fide: the qualifying k (= size - 1). coarse and remainder: the
    // level of the coarse partition.
    std::size_t k;

    PointId representative() const noexcept { return members.front(); }
    friend bool operator==(const PartitionCluster&, const PartitionCluster&) = default;
};

/// Disjoint, covering clusters ordered by representative id.
class Partition {
public:
    Partition(std::size_t n, std::vector<PartitionCluster> clusters)
        : n_(n), clusters_(std::move(clusters)) {
        std::vector<bool> seen(n_, false);
        for (auto& c : clusters_) {
            if (c.members.empty()) throw InputError("partition has an empty cluster");
            std::sort(c.members.begin(), c.members.end());
            for (const PointId id : c.members) {
                if (id >= n_ || seen[id]) {
                    throw InputError("partition clusters overlap or exceed the dataset");
                }
                seen[id] = true;
            }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            throw InputError("partition does not cover every point");
        }
        std::sort(clusters_.begin(), clusters_.end(),
                  [](const auto& a, const auto& b) { return a.representative() < b.representative(); });
    }

    std::size_t n() const noexcept { return n_; }
    const std::vector<PartitionCluster>& clusters() const noexcept { return clusters_; }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::size_t n_;
    std::vector<PartitionCluster> clusters_;
};

/// The last level with at least two clusters (k_star - 1).
inline Partition coarsest_partition(const Hierarchy& hierarchy) {
    if (hierarchy.n() < 2) {
        throw DegenerateInput("a partition needs at least two points");
    }
    const std::size_t k = hierarchy.k_star() - 1;
    std::vector<PartitionCluster> out;
    for (auto& members : hierarchy.level(k).clusters()) {
        out.push_back({std::move(members), Provenance::coarse, k});
    }
    return Partition(hierarchy.n(), std::move(out));
}

/// Whether a tree node has size k + 1 at some level k >= 1 where it exists.
inline bool is_bona_fide(const ClusterNode& node) noexcept {
    if (node.size() < 2) return false;
    const std::size_t k = node.size() - 1;
    return node.formation_k <= k && k <= node.last_k;
}

/// Indices of bona fide nodes, by descending size then ascending representative.
inline std::vector<std::size_t> bona_fide_candidates(const ClusterTree& tree) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tree.size(); ++i) {
        if (is_bona_fide(tree.node(i))) out.push_back(i);
    }
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        const auto& na = tree.node(a);
        const auto& nb = tree.node(b);
        if (na.size() != nb.size()) return na.size() > nb.size();
        return na.representative() < nb.representative();
    });
    return out;
}

inline std::vector<ClusterNode> bona_fide_candidates(const Hierarchy& hierarchy) {
    const ClusterTree tree = to_tree(hierarchy);
    std::vector<ClusterNode> out;
    for (const std::size_t i : bona_fide_candidates(tree)) out.push_back(tree.node(i));
    return out;
}

/**
 * Maximal bona fide clusters, with the leftovers of each coarse cluster
 * grouped as one remainder cluster.
 *
 * A candidate is selected when no ancestor is also a candidate; selected
 * candidates are therefore pairwise disjoint. If the root qualifies the
 * result is the single whole-set cluster.
 */
inline Partition natural_partition(const Hierarchy& hierarchy) {
    if (hierarchy.n() < 2) {
        throw DegenerateInput("a partition needs at least two points");
    }
    const std::size_t n = hierarchy.n();
    const ClusterTree tree = to_tree(hierarchy);
    const auto candidates = bona_fide_candidates(tree);

    std::vector<bool> is_candidate(tree.size(), false);
    for (const std::size_t i : candidates) is_candidate[i] = true;

    std::vector<PartitionCluster> out;
    std::vector<bool> covered(n, false);
    for (const std::size_t i : candidates) {
        bool maximal = true;
        for (auto p = tree.node(i).parent; p; p = tree.node(*p).parent) {
            if (is_candidate[*p]) {
                maximal = false;
                break;
            }
        }
        if (!maximal) continue;
        const ClusterNode& node = tree.node(i);
        for (const PointId id : node.members) covered[id] = true;
        out.push_back({node.members, Provenance::bona_fide, node.size() - 1});
    }

    const std::size_t coarse_k = hierarchy.k_star() - 1;
    for (const auto& cluster : hierarchy.level(coarse_k).clusters()) {
        std::vector<PointId> rest;
        for (const PointId id : cluster) {
            if (!covered[id]) rest.push_back(id);
        }
        if (!rest.empty()) out.push_back({std::move(rest), Provenance::remainder, coarse_k});
    }
    return Partition(n, std::move(out));
}

/// Label per point: the minimum id of its cluster.
inline std::vector<PointId> flat_labels(const Partition& partition) {
    std::vector<PointId> labels(partition.n());
    for (const auto& c : partition.clusters()) {
        for (const PointId id : c.members) labels[id] = c.representative();
    }
    return labels;
}

}  // namespace nnhc
