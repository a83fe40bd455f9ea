#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nnhc/dataset.hpp"
#include "nnhc/errors.hpp"

namespace nnhc {

struct Neighbor {
    PointId id;
    double distance;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Total order on neighbors: ascending distance, ties by ascending id.
/// Distances are compared exactly.
inline bool closer(const Neighbor& a, const Neighbor& b) noexcept {
    return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

/**
 * The first `depth` neighbors of every point, in `closer` order.
 *
 * A point never lists itself. Tables built at different depths agree on
 * their common prefix because the order is total.
 */
class NeighborTable {
public:
    NeighborTable() = default;
    NeighborTable(std::size_t n, std::size_t depth, std::vector<Neighbor> entries)
        : n_(n), depth_(depth), entries_(std::move(entries)) {
        if (entries_.size() != n_ * depth_) {
            throw InputError("neighbor table storage does not match n * depth");
        }
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t depth() const noexcept { return depth_; }

    std::span<const Neighbor> row(PointId id) const noexcept {
        return {entries_.data() + std::size_t{id} * depth_, depth_};
    }

    friend bool operator==(const NeighborTable&, const NeighborTable&) = default;

private:
    std::size_t n_ = 0;
    std::size_t depth_ = 0;
    std::vector<Neighbor> entries_;
};

enum class Backend { brute, kdtree };

inline std::string_view to_string(Backend backend) noexcept {
    return backend == Backend::brute ? "brute" : "kdtree";
}

inline Backend backend_from_name(std::string_view name) {
    if (name == "brute") return Backend::brute;
    if (name == "kdtree") return Backend::kdtree;
    throw InputError("unknown backend '" + std::string(name) + "'");
}

namespace detail {

/// Median-split k-d tree over point ids. The split axis cycles with depth;
/// left holds coordinates <= split, right holds coordinates >= split.
class KdTree {
public:
    static constexpr std::size_t kLeafSize = 12;

    explicit KdTree(const Dataset& data) : order_(data.size()) {
        std::iota(order_.begin(), order_.end(), PointId{0});
        nodes_.reserve(2 * (data.size() / kLeafSize + 1));
        build(data, 0, order_.size(), 0);
    }

    template <typename Visit>
    void search(const Dataset& data, const Metric& metric, std::span<const double> query,
                Visit&& visit, const auto& bound) const {
        descend(data, metric, query, 0, visit, bound);
    }

private:
    struct Node {
        std::size_t begin;
        std::size_t end;
        std::size_t axis = 0;
        double split = 0.0;
        std::size_t left = 0;  // 0 marks a leaf; the root is never a child
        std::size_t right = 0;
    };

    std::size_t build(const Dataset& data, std::size_t begin, std::size_t end, std::size_t depth) {
        const std::size_t self = nodes_.size();
        nodes_.push_back(Node{begin, end});
        if (end - begin <= kLeafSize) {
            return self;
        }
        const std::size_t axis = depth % data.dim();
        const std::size_t mid = begin + (end - begin) / 2;
        auto first = order_.begin() + static_cast<std::ptrdiff_t>(begin);
        auto last = order_.begin() + static_cast<std::ptrdiff_t>(end);
        std::nth_element(first, order_.begin() + static_cast<std::ptrdiff_t>(mid), last,
                         [&](PointId a, PointId b) {
                             const double ca = data.coord(a, axis);
                             const double cb = data.coord(b, axis);
                             return ca < cb || (ca == cb && a < b);
                         });
        const double split = data.coord(order_[mid], axis);
        const std::size_t left = build(data, begin, mid, depth + 1);
        const std::size_t right = build(data, mid, end, depth + 1);
        Node& node = nodes_[self];
        node.axis = axis;
        node.split = split;
        node.left = left;
        node.right = right;
        return self;
    }

    template <typename Visit, typename Bound>
    void descend(const Dataset& data, const Metric& metric, std::span<const double> query,
                 std::size_t index, Visit& visit, const Bound& bound) const {
        const Node& node = nodes_[index];
        if (node.left == 0) {
            for (std::size_t i = node.begin; i < node.end; ++i) {
                visit(order_[i]);
            }
            return;
        }
        const double gap = query[node.axis] - node.split;
        const std::size_t near = gap < 0.0 ? node.left : node.right;
        const std::size_t far = gap < 0.0 ? node.right : node.left;
        descend(data, metric, query, near, visit, bound);
        // Equal bound must still be visited: a tie may win on id.
        if (metric.plane_bound(gap) <= bound()) {
            descend(data, metric, query, far, visit, bound);
        }
    }

    std::vector<PointId> order_;
    std::vector<Node> nodes_;
};

}  // namespace detail

/**
 * Exact k-nearest-neighbor index over an owned copy of a dataset.
 *
 * Brute backend: distances and fully sorted rows are computed on first use
 * and cached, so deepening a table only slices cached rows. It accepts any
 * metric. Kdtree backend: one tree, queried per point with a bounded
 * max-heap; requires a metric with a per-axis bound.
 *
 * Both backends return identical neighbor lists. The index is immutable
 * after construction apart from the internally synchronized brute cache,
 * so concurrent queries are safe.
 */
class KnnIndex {
public:
    KnnIndex(Dataset data, Metric metric, Backend backend)
        : data_(std::make_shared<const Dataset>(std::move(data))),
          metric_(std::move(metric)),
          backend_(backend) {
        if (backend_ == Backend::kdtree) {
            if (!metric_.has_plane_bound()) {
                throw UnsupportedBackend("kdtree backend cannot use metric '" +
                                         std::string(metric_.name()) + "'");
            }
            tree_ = std::make_shared<const detail::KdTree>(*data_);
        } else {
            brute_ = std::make_shared<BruteCache>();
        }
    }

    const Dataset& dataset() const noexcept { return *data_; }
    const Metric& metric() const noexcept { return metric_; }
    Backend backend() const noexcept { return backend_; }
    std::size_t size() const noexcept { return data_->size(); }

    /// The k nearest neighbors of `id`; empty for k = 0.
    std::vector<Neighbor> query(PointId id, std::size_t k) const {
        check_id(id);
        check_depth(k);
        std::vector<Neighbor> out;
        out.reserve(k);
        append_neighbors(id, 0, k, out);
        return out;
    }

    NeighborTable all_knn(std::size_t k) const {
        check_depth(k);
        const std::size_t n = size();
        std::vector<Neighbor> entries;
        entries.reserve(n * k);
        for (std::size_t i = 0; i < n; ++i) {
            append_neighbors(static_cast<PointId>(i), 0, k, entries);
        }
        return NeighborTable(n, k, std::move(entries));
    }

    /// Deepens `table` to `new_depth`, keeping every existing prefix.
    NeighborTable extend(const NeighborTable& table, std::size_t new_depth) const {
        if (table.size() != size()) {
            throw PreconditionError("neighbor table was built for a different dataset size");
        }
        if (new_depth <= table.depth()) {
            throw PreconditionError("new depth " + std::to_string(new_depth) +
                                    " does not exceed current depth " +
                                    std::to_string(table.depth()));
        }
        check_depth(new_depth);
        const std::size_t n = size();
        std::vector<Neighbor> entries;
        entries.reserve(n * new_depth);
        for (std::size_t i = 0; i < n; ++i) {
            const auto id = static_cast<PointId>(i);
            const auto old = table.row(id);
            entries.insert(entries.end(), old.begin(), old.end());
            if (backend_ == Backend::brute) {
                append_neighbors(id, table.depth(), new_depth, entries);
            } else {
                // The tree search restarts with the larger k; only the new tail is kept.
                std::vector<Neighbor> fresh;
                fresh.reserve(new_depth);
                append_neighbors(id, 0, new_depth, fresh);
                entries.insert(entries.end(), fresh.begin() + static_cast<std::ptrdiff_t>(table.depth()),
                               fresh.end());
            }
        }
        return NeighborTable(n, new_depth, std::move(entries));
    }

private:
    struct BruteCache {
        std::once_flag once;
        std::vector<double> distances;  // row-major N x N
        std::vector<PointId> sorted;    // row i: the N-1 other ids in `closer` order
    };

    void check_id(PointId id) const {
        if (id >= size()) {
            throw RangeError("point id " + std::to_string(id) + " out of range for N = " +
                             std::to_string(size()));
        }
    }

    void check_depth(std::size_t k) const {
        if (k > size() - 1) {
            throw RangeError("neighbor depth " + std::to_string(k) + " exceeds N - 1 = " +
                             std::to_string(size() - 1));
        }
    }

    const BruteCache& brute_rows() const {
        std::call_once(brute_->once, [this] {
            const std::size_t n = size();
            brute_->distances.assign(n * n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double d = metric_.evaluate(data_->point(i), data_->point(j));
                    brute_->distances[i * n + j] = d;
                    brute_->distances[j * n + i] = d;
                }
            }
            brute_->sorted.resize(n * (n - 1));
            for (std::size_t i = 0; i < n; ++i) {
                auto row = brute_->sorted.begin() + static_cast<std::ptrdiff_t>(i * (n - 1));
                auto out = row;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j != i) *out++ = static_cast<PointId>(j);
                }
                const double* dist = brute_->distances.data() + i * n;
                std::sort(row, out, [dist](PointId a, PointId b) {
                    return closer({a, dist[a]}, {b, dist[b]});
                });
            }
        });
        return *brute_;
    }

    // Appends neighbors [from, to) of `id` in `closer` order.
    void append_neighbors(PointId id, std::size_t from, std::size_t to,
                          std::vector<Neighbor>& out) const {
        if (to <= from) return;
        if (backend_ == Backend::brute) {
            const BruteCache& cache = brute_rows();
            const std::size_t n = size();
            const PointId* row = cache.sorted.data() + std::size_t{id} * (n - 1);
            for (std::size_t j = from; j < to; ++j) {
                out.push_back({row[j], cache.distances[std::size_t{id} * n + row[j]]});
            }
            return;
        }
        auto worse = [](const Neighbor& a, const Neighbor& b) { return closer(a, b); };
        std::priority_queue<Neighbor, std::vector<Neighbor>, decltype(worse)> best(worse);
        const auto query = data_->point(id);
        const std::size_t k = to;
        auto visit = [&](PointId other) {
            if (other == id) return;
            const Neighbor candidate{other, metric_.evaluate(query, data_->point(other))};
            if (best.size() < k) {
                best.push(candidate);
            } else if (closer(candidate, best.top())) {
                best.pop();
                best.push(candidate);
            }
        };
        auto bound = [&] {
            return best.size() < k ? std::numeric_limits<double>::infinity() : best.top().distance;
        };
        tree_->search(*data_, metric_, query, visit, bound);
        std::vector<Neighbor> sorted(best.size());
        for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
            *it = best.top();
            best.pop();
        }
        out.insert(out.end(), sorted.begin() + static_cast<std::ptrdiff_t>(from), sorted.end());
    }

    std::shared_ptr<const Dataset> data_;
    Metric metric_;
    Backend backend_;
    std::shared_ptr<const detail::KdTree> tree_;
    std::shared_ptr<BruteCache> brute_;
};

inline KnnIndex build_index(const Dataset& data, const Metric& metric, Backend backend) {
    return KnnIndex(data, metric, backend);
}

inline std::vector<Neighbor> query_knn(const KnnIndex& index, PointId id, std::size_t k) {
    return index.query(id, k);
}

inline NeighborTable all_knn(const KnnIndex& index, std::size_t k) { return index.all_knn(k); }

inline NeighborTable extend_neighbors(const KnnIndex& index, const NeighborTable& table,
                                      std::size_t new_depth) {
    return index.extend(table, new_depth);
}

}  // namespace nnhc
