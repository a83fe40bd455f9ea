#pragma once

// Random instance generators and small helpers shared by the test binaries.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nnhc.hpp"

namespace nnhc::testkit {

enum class Flavor {
    continuous,  // uniform reals, ties essentially impossible
    grid,        // small integer grid: many exact distance ties
    duplicates,  // continuous points, some repeated verbatim
};

struct Instance {
    Dataset data;
    Flavor flavor;
    std::uint64_t seed;
};

/// One random dataset with N in [min_n, max_n] and d in [1, max_dim].
inline Instance random_instance(std::uint64_t seed, std::size_t min_n = 2, std::size_t max_n = 200,
                                std::size_t max_dim = 5) {
    std::mt19937_64 rng(seed);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(min_n, max_n)(rng);
    const std::size_t dim = std::uniform_int_distribution<std::size_t>(1, max_dim)(rng);
    const auto flavor = static_cast<Flavor>(seed % 3);
    std::vector<double> coords(n * dim);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> cell(0, 4);
    for (double& c : coords) {
        c = flavor == Flavor::grid ? double(cell(rng)) : unit(rng);
    }
    if (flavor == Flavor::duplicates && n > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::size_t r = 0; r < n / 4 + 1; ++r) {
            const std::size_t from = pick(rng);
            const std::size_t to = pick(rng);
            for (std::size_t a = 0; a < dim; ++a) coords[to * dim + a] = coords[from * dim + a];
        }
    }
    return {Dataset(dim, std::move(coords)), flavor, seed};
}

inline std::vector<Metric> shipped_metrics() {
    return {Metric::euclidean(), Metric::manhattan(), Metric::chebyshev()};
}

inline Dataset line(std::vector<double> xs) { return Dataset(1, std::move(xs)); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline std::string data_path(const std::string& name) { return std::string(NNHC_TEST_DATA_DIR) + "/" + name; }

using IdSet = std::set<PointId>;

inline std::set<IdSet> as_sets(const std::vector<std::vector<PointId>>& clusters) {
    std::set<IdSet> out;
    for (const auto& c : clusters) out.insert(IdSet(c.begin(), c.end()));
    return out;
}

}  // namespace nnhc::testkit
