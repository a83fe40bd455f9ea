#pragma once

// Quadratic reference implementation for tests and fixture generation.
// Shares only the core data types with the main path: no union-find, no
// neighbor index, no shared neighbor ordering.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "nnhc/dataset.hpp"
#include "nnhc/errors.hpp"
#include "nnhc/hierarchy.hpp"
#include "nnhc/nn_graph.hpp"

namespace nnhc::oracle {

namespace detail {

// Row i: all other ids by distance; stable sort keeps equal distances in id order.
inline std::vector<std::vector<PointId>> ranked_rows(const DistanceMatrix& dm) {
    const std::size_t n = dm.size();
    std::vector<std::vector<PointId>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) rows[i].push_back(static_cast<PointId>(j));
        }
        const auto dist = dm.row(i);
        std::stable_sort(rows[i].begin(), rows[i].end(),
                         [&](PointId a, PointId b) { return dist[a] < dist[b]; });
    }
    return rows;
}

inline Level components(const std::vector<std::vector<PointId>>& rows, std::size_t k) {
    const std::size_t n = rows.size();
    std::vector<std::vector<PointId>> adjacent(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t j = 0; j < k; ++j) {
            const PointId y = rows[x][j];
            adjacent[x].push_back(y);
            adjacent[y].push_back(static_cast<PointId>(x));
        }
    }
    std::vector<PointId> labels(n);
    std::vector<bool> seen(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::deque<PointId> frontier{static_cast<PointId>(start)};
        seen[start] = true;
        while (!frontier.empty()) {
            const PointId x = frontier.front();
            frontier.pop_front();
            labels[x] = static_cast<PointId>(start);
            for (const PointId y : adjacent[x]) {
                if (!seen[y]) {
                    seen[y] = true;
                    frontier.push_back(y);
                }
            }
        }
    }
    return Level(k, std::move(labels));
}

}  // namespace detail

/// Connected components of the symmetrized k-NN graph, found by BFS.
inline Level oracle_components(const Dataset& data, const Metric& metric, std::size_t k) {
    if (k > data.size() - 1) {
        throw RangeError("k = " + std::to_string(k) + " exceeds N - 1");
    }
    return detail::components(detail::ranked_rows(distance_matrix(data, metric)), k);
}

/// Levels k = 0, 1, ... up to the first connected one.
inline Hierarchy oracle_hierarchy(const Dataset& data, const Metric& metric) {
    const auto rows = detail::ranked_rows(distance_matrix(data, metric));
    std::vector<Level> levels;
    for (std::size_t k = 0;; ++k) {
        levels.push_back(detail::components(rows, k));
        if (levels.back().cluster_count() == 1) break;
    }
    return Hierarchy(std::move(levels));
}

}  // namespace nnhc::oracle
