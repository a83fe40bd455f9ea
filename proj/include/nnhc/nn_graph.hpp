#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nnhc/dataset.hpp"
#include "nnhc/errors.hpp"
#include "nnhc/knn_index.hpp"

namespace nnhc {

/// Disjoint sets over 0..n-1 with union by size and path halving.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<PointId>(i);
        sets_ = n;
    }

    /// Forest where every element points at its label. Labels must be
    /// self-labelled representatives (label[label[i]] == label[i]).
    static UnionFind from_labels(std::span<const PointId> labels) {
        UnionFind uf(labels.size());
        std::vector<std::uint32_t> counts(labels.size(), 0);
        for (const PointId label : labels) ++counts[label];
        uf.sets_ = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            uf.parent_[i] = labels[i];
            uf.size_[i] = counts[i];
            if (labels[i] == i) ++uf.sets_;
        }
        return uf;
    }

    PointId find(PointId x) noexcept {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Returns false when a and b were already in the same set.
    bool unite(PointId a, PointId b) noexcept {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --sets_;
        return true;
    }

    std::size_t size() const noexcept { return parent_.size(); }
    std::size_t set_count() const noexcept { return sets_; }

private:
    std::vector<PointId> parent_;
    std::vector<std::uint32_t> size_;
    std::size_t sets_ = 0;
};

/**
 * The clusters of the k-NN graph at one neighbor depth k.
 *
 * Stored as a label per point, where the label is the smallest id in the
 * point's cluster. Two Levels compare equal iff they have the same k and
 * the same partition.
 */
class Level {
public:
    /// `labels` must be canonical: labels[i] is the minimum id of i's cluster.
    Level(std::size_t k, std::vector<PointId> labels) : k_(k), labels_(std::move(labels)) {
        if (labels_.empty()) {
            throw InputError("level must cover at least one point");
        }
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            const PointId label = labels_[i];
            if (label > i || labels_[label] != label) {
                throw InputError("level labels are not canonical at point " + std::to_string(i));
            }
            if (label == i) ++count_;
        }
    }

    static Level singletons(std::size_t n) {
        std::vector<PointId> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<PointId>(i);
        return Level(0, std::move(labels));
    }

    /// Canonical level from any union-find state.
    static Level from_union_find(std::size_t k, UnionFind& uf) {
        const std::size_t n = uf.size();
        constexpr PointId unset = UINT32_MAX;
        std::vector<PointId> rep(n, unset);
        std::vector<PointId> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            const PointId root = uf.find(static_cast<PointId>(i));
            if (rep[root] == unset) rep[root] = static_cast<PointId>(i);
            labels[i] = rep[root];
        }
        return Level(k, std::move(labels));
    }

    /// Level from explicit clusters, which must be disjoint and cover 0..n-1.
    static Level from_clusters(std::size_t k, std::size_t n,
                               const std::vector<std::vector<PointId>>& clusters) {
        constexpr PointId unset = UINT32_MAX;
        std::vector<PointId> labels(n, unset);
        for (const auto& cluster : clusters) {
            if (cluster.empty()) throw InputError("empty cluster");
            PointId rep = unset;
            for (const PointId id : cluster) rep = std::min(rep, id);
            for (const PointId id : cluster) {
                if (id >= n) throw InputError("cluster member " + std::to_string(id) + " out of range");
                if (labels[id] != unset) {
                    throw InputError("point " + std::to_string(id) + " appears in two clusters");
                }
                labels[id] = rep;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] == unset) throw InputError("point " + std::to_string(i) + " is in no cluster");
        }
        return Level(k, std::move(labels));
    }

    std::size_t k() const noexcept { return k_; }
    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t cluster_count() const noexcept { return count_; }
    PointId label(PointId id) const noexcept { return labels_[id]; }
    std::span<const PointId> labels() const noexcept { return labels_; }

    /// Clusters ordered by canonical id, members ascending.
    std::vector<std::vector<PointId>> clusters() const {
        std::vector<std::size_t> slot(labels_.size(), 0);
        std::vector<std::vector<PointId>> out;
        out.reserve(count_);
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i] == i) {
                slot[i] = out.size();
                out.emplace_back();
            }
            out[slot[labels_[i]]].push_back(static_cast<PointId>(i));
        }
        return out;
    }

    /// Same partition, ignoring k.
    bool same_partition(const Level& other) const noexcept { return labels_ == other.labels_; }

    friend bool operator==(const Level&, const Level&) = default;

private:
    std::size_t k_;
    std::vector<PointId> labels_;
    std::size_t count_ = 0;
};

/// Weakly connected components of the k-NN digraph: every point is united
/// with each of its k nearest neighbors.
inline Level components_at_k(const NeighborTable& table, std::size_t k) {
    if (k > table.depth()) {
        throw RangeError("neighbor table depth " + std::to_string(table.depth()) +
                         " is shallower than k = " + std::to_string(k));
    }
    UnionFind uf(table.size());
    for (std::size_t x = 0; x < table.size(); ++x) {
        const auto row = table.row(static_cast<PointId>(x));
        for (std::size_t j = 0; j < k; ++j) {
            uf.unite(static_cast<PointId>(x), row[j].id);
        }
    }
    return Level::from_union_find(k, uf);
}

/// Level k from level k-1: only each point's k-th neighbor edge is added.
inline Level merge_level(const Level& prev, const NeighborTable& table, std::size_t k) {
    if (k == 0 || prev.k() + 1 != k) {
        throw PreconditionError("merge_level needs the level for k - 1; got k = " +
                                std::to_string(prev.k()) + " for target " + std::to_string(k));
    }
    if (prev.size() != table.size()) {
        throw PreconditionError("level and neighbor table cover different point counts");
    }
    if (k > table.depth()) {
        throw RangeError("neighbor table depth " + std::to_string(table.depth()) +
                         " is shallower than k = " + std::to_string(k));
    }
    UnionFind uf = UnionFind::from_labels(prev.labels());
    for (std::size_t x = 0; x < table.size(); ++x) {
        uf.unite(static_cast<PointId>(x), table.row(static_cast<PointId>(x))[k - 1].id);
    }
    return Level::from_union_find(k, uf);
}

inline bool is_connected(const Level& level) noexcept { return level.cluster_count() == 1; }

}  // namespace nnhc
