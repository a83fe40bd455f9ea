#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "nnhc/dataset.hpp"
#include "nnhc/hierarchy.hpp"
#include "nnhc/knn_index.hpp"
#include "nnhc/sampling.hpp"

namespace nnhc::bench {

struct KstarSample {
    std::size_t n;
    std::size_t trial;
    std::size_t k_star;
    double k_star_over_ln_n;
    double seconds;
};

/// k_star of `trials` random 2-D datasets per size. Trial data depends only
/// on (seed, n, trial).
inline std::vector<KstarSample> kstar_growth(const std::vector<std::size_t>& sizes, std::size_t trials,
                                             std::uint64_t seed, Distribution dist,
                                             Backend backend = Backend::kdtree) {
    std::vector<KstarSample> out;
    for (const std::size_t n : sizes) {
        for (std::size_t t = 0; t < trials; ++t) {
            const Dataset data = sample_points(n, dist, derive_seed(seed, n, t));
            const auto start = std::chrono::steady_clock::now();
            const Hierarchy h = build_hierarchy(data, Metric::euclidean(), backend);
            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            out.push_back({n, t, h.k_star(), static_cast<double>(h.k_star()) / std::log(double(n)),
                           seconds});
        }
    }
    return out;
}

struct ScalingSample {
    std::size_t n;
    Backend backend;
    double seconds;  // median over repeats
};

/// Median wall time of build_hierarchy on uniform-square data, per size.
inline std::vector<ScalingSample> build_scaling(const std::vector<std::size_t>& sizes, Backend backend,
                                                std::size_t repeats, std::uint64_t seed) {
    std::vector<ScalingSample> out;
    for (const std::size_t n : sizes) {
        const Dataset data = sample_points(n, Distribution::uniform_square, derive_seed(seed, n, 0));
        std::vector<double> times;
        for (std::size_t r = 0; r < repeats; ++r) {
            const auto start = std::chrono::steady_clock::now();
            const Hierarchy h = build_hierarchy(data, Metric::euclidean(), backend);
            times.push_back(
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        }
        std::sort(times.begin(), times.end());
        const std::size_t m = times.size();
        const double median = m % 2 == 1 ? times[m / 2] : 0.5 * (times[m / 2 - 1] + times[m / 2]);
        out.push_back({n, backend, median});
    }
    return out;
}

}  // namespace nnhc::bench
