#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "nnhc/dataset.hpp"
#include "nnhc/errors.hpp"

namespace nnhc {

/// Seed for one (stream, index) pair derived from a base seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream * 0x100000001b3ULL + index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Uniform and normal variates with output fixed by the seed alone.
 *
 * std::uniform_real_distribution and std::normal_distribution differ
 * between standard libraries, so the transforms are spelled out here on
 * top of mt19937_64, whose sequence is fixed by the standard.
 */
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal by Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

enum class Distribution { uniform_square, gaussian };

inline Distribution distribution_from_name(std::string_view name) {
    if (name == "uniform" || name == "uniform-square") return Distribution::uniform_square;
    if (name == "gaussian") return Distribution::gaussian;
    throw InputError("unknown distribution '" + std::string(name) + "'");
}

/// n i.i.d. points in 2-D: uniform on the unit square or standard normal.
inline Dataset sample_points(std::size_t n, Distribution dist, std::uint64_t seed) {
    Sampler sampler(seed);
    std::vector<double> coords(2 * n);
    for (double& c : coords) {
        c = dist == Distribution::uniform_square ? sampler.uniform() : sampler.normal();
    }
    return Dataset(2, std::move(coords));
}

struct GaussianMode {
    std::vector<double> mean;
    double stddev;
    std::size_t count;
};

/// Isotropic Gaussian blobs, emitted mode by mode in the given order.
inline Dataset sample_mixture(const std::vector<GaussianMode>& modes, std::uint64_t seed) {
    if (modes.empty()) throw InputError("mixture needs at least one mode");
    const std::size_t dim = modes.front().mean.size();
    Sampler sampler(seed);
    std::vector<double> coords;
    for (const auto& mode : modes) {
        if (mode.mean.size() != dim) throw InputError("mixture modes differ in dimension");
        for (std::size_t i = 0; i < mode.count; ++i) {
            for (std::size_t a = 0; a < dim; ++a) {
                coords.push_back(mode.mean[a] + mode.stddev * sampler.normal());
            }
        }
    }
    return Dataset(dim, std::move(coords));
}

}  // namespace nnhc
