#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nnhc/errors.hpp"

namespace nnhc {

/// Position of a point in its dataset. Stable for the lifetime of the dataset.
using PointId = std::uint32_t;

/**
 * N points of a common dimension d, stored row-major.
 *
 * Construction validates the data: at least one point, d >= 1, and every
 * coordinate finite. Point i is always the i-th row handed in.
 */
class Dataset {
public:
    Dataset(std::size_t dim, std::vector<double> coords)
        : dim_(dim), coords_(std::move(coords)) {
        if (dim_ == 0) {
            throw InputError("dataset dimension must be at least 1");
        }
        if (coords_.empty()) {
            throw InputError("dataset is empty");
        }
        if (coords_.size() % dim_ != 0) {
            throw InputError("coordinate count is not a multiple of the dimension");
        }
        if (coords_.size() / dim_ > std::size_t{UINT32_MAX}) {
            throw InputError("dataset has too many points");
        }
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (!std::isfinite(coords_[i])) {
                throw InputError("non-finite coordinate in row " + std::to_string(i / dim_));
            }
        }
    }

    std::size_t size() const noexcept { return coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> point(std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }
    double coord(std::size_t i, std::size_t axis) const noexcept { return coords_[i * dim_ + axis]; }

    std::span<const double> coords() const noexcept { return coords_; }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

/// Builds a Dataset from rows, rejecting empty input, ragged rows and
/// non-finite values. Row order is preserved.
inline Dataset validate_dataset(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        throw InputError("dataset is empty");
    }
    const std::size_t dim = rows.front().size();
    if (dim == 0) {
        throw InputError("row 0 has no coordinates");
    }
    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != dim) {
            throw InputError("ragged dimensions: row " + std::to_string(r) + " has " +
                             std::to_string(rows[r].size()) + " values, expected " +
                             std::to_string(dim));
        }
        coords.insert(coords.end(), rows[r].begin(), rows[r].end());
    }
    return Dataset(dim, std::move(coords));
}

enum class MetricKind { euclidean, manhattan, chebyshev, custom };

/**
 * A distance function on R^d.
 *
 * The three coordinate-wise metrics are evaluated inline. A custom metric
 * wraps any callable satisfying the metric axioms; it works with the brute
 * backend only, since the k-d tree needs a per-axis lower bound.
 */
class Metric {
public:
    using Function = std::function<double(std::span<const double>, std::span<const double>)>;

    static Metric euclidean() { return Metric(MetricKind::euclidean, "euclidean", {}); }
    static Metric manhattan() { return Metric(MetricKind::manhattan, "manhattan", {}); }
    static Metric chebyshev() { return Metric(MetricKind::chebyshev, "chebyshev", {}); }

    static Metric custom(std::string name, Function fn) {
        if (!fn) {
            throw InputError("custom metric requires a callable");
        }
        return Metric(MetricKind::custom, std::move(name), std::move(fn));
    }

    MetricKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return name_; }

    /// Distance with a dimension check.
    double operator()(std::span<const double> a, std::span<const double> b) const {
        if (a.size() != b.size()) {
            throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
        }
        return evaluate(a, b);
    }

    /// Distance without the dimension check; callers guarantee equal sizes.
    double evaluate(std::span<const double> a, std::span<const double> b) const {
        switch (kind_) {
        case MetricKind::euclidean: {
            double sum = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double diff = a[i] - b[i];
                sum += diff * diff;
            }
            return std::sqrt(sum);
        }
        case MetricKind::manhattan: {
            double sum = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                sum += std::abs(a[i] - b[i]);
            }
            return sum;
        }
        case MetricKind::chebyshev: {
            double best = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                best = std::max(best, std::abs(a[i] - b[i]));
            }
            return best;
        }
        case MetricKind::custom:
            break;
        }
        return fn_(a, b);
    }

    /// True when plane_bound() is a valid lower bound for this metric.
    bool has_plane_bound() const noexcept { return kind_ != MetricKind::custom; }

    /**
     * Lower bound on evaluate(q, p) for any p whose coordinate on some axis
     * is at least `gap` away from q's. Computed with the same floating-point
     * operations as evaluate() on a vector differing in one coordinate, so
     * the bound also holds for the rounded distances.
     */
    double plane_bound(double gap) const {
        gap = std::abs(gap);
        switch (kind_) {
        case MetricKind::euclidean:
            return std::sqrt(gap * gap);
        case MetricKind::manhattan:
        case MetricKind::chebyshev:
            return gap;
        case MetricKind::custom:
            break;
        }
        throw UnsupportedBackend("metric '" + name_ + "' has no per-axis lower bound");
    }

private:
    Metric(MetricKind kind, std::string name, Function fn)
        : kind_(kind), name_(std::move(name)), fn_(std::move(fn)) {}

    MetricKind kind_;
    std::string name_;
    Function fn_;
};

inline double distance(const Metric& metric, std::span<const double> a, std::span<const double> b) {
    return metric(a, b);
}

/// Symmetric N x N matrix of pairwise distances with a zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
        if (values_.size() != n_ * n_) {
            throw InputError("distance matrix storage does not match its size");
        }
    }

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * n_, n_}; }

private:
    std::size_t n_;
    std::vector<double> values_;
};

/// Evaluates each unordered pair once and mirrors it.
inline DistanceMatrix distance_matrix(const Dataset& data, const Metric& metric) {
    const std::size_t n = data.size();
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = metric.evaluate(data.point(i), data.point(j));
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    return DistanceMatrix(n, std::move(values));
}

inline Metric metric_from_name(std::string_view name) {
    if (name == "euclidean") return Metric::euclidean();
    if (name == "manhattan") return Metric::manhattan();
    if (name == "chebyshev") return Metric::chebyshev();
    throw InputError("unknown metric '" + std::string(name) + "'");
}

}  // namespace nnhc
