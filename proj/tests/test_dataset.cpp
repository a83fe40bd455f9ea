#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "nnhc/dataset.hpp"
#include "support.hpp"

using namespace nnhc;

namespace {

const std::array<double, 2> origin{0.0, 0.0};
const std::array<double, 2> three_four{3.0, 4.0};

}  // namespace

TEST(Distance, EuclideanThreeFourFive) {
    EXPECT_EQ(distance(Metric::euclidean(), origin, three_four), 5.0);
}

TEST(Distance, ManhattanSumsCoordinates) {
    EXPECT_EQ(distance(Metric::manhattan(), origin, three_four), 7.0);
}

TEST(Distance, ChebyshevTakesLargestCoordinate) {
    EXPECT_EQ(distance(Metric::chebyshev(), origin, three_four), 4.0);
}

TEST(Distance, IdenticalPointsAreAtZero) {
    const std::array<double, 2> p{1.5, 2.5};
    for (const auto& metric : testkit::shipped_metrics()) {
        EXPECT_EQ(distance(metric, p, p), 0.0) << metric.name();
    }
}

TEST(Distance, DimensionMismatchIsAnInputError) {
    const std::array<double, 3> p{1.0, 2.0, 3.0};
    EXPECT_THROW(distance(Metric::euclidean(), origin, p), InputError);
}

TEST(Distance, CustomMetricIsCalled) {
    const auto twice_manhattan = Metric::custom("double", [](auto a, auto b) {
        return 2.0 * Metric::manhattan().evaluate(a, b);
    });
    EXPECT_EQ(twice_manhattan.kind(), MetricKind::custom);
    EXPECT_FALSE(twice_manhattan.has_plane_bound());
    EXPECT_EQ(distance(twice_manhattan, origin, three_four), 14.0);
    EXPECT_THROW(Metric::custom("empty", {}), InputError);
}

TEST(DistanceMatrix, OneDimensionalAbsoluteDifferences) {
    const auto dm = distance_matrix(testkit::line({0, 1, 10}), Metric::euclidean());
    const std::vector<std::vector<double>> expected{{0, 1, 10}, {1, 0, 9}, {10, 9, 0}};
    ASSERT_EQ(dm.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(dm(i, j), expected[i][j]);
    }
}

TEST(DistanceMatrix, SinglePoint) {
    const auto dm = distance_matrix(testkit::line({4.2}), Metric::euclidean());
    ASSERT_EQ(dm.size(), 1u);
    EXPECT_EQ(dm(0, 0), 0.0);
}

TEST(DistanceMatrix, DuplicatePointsGiveOffDiagonalZero) {
    const auto dm = distance_matrix(Dataset(2, {1, 1, 1, 1, 2, 2}), Metric::manhattan());
    EXPECT_EQ(dm(0, 1), 0.0);
    EXPECT_EQ(dm(1, 0), 0.0);
    EXPECT_EQ(dm(0, 2), 2.0);
}

TEST(ValidateDataset, AcceptsRectangularRows) {
    const Dataset d = validate_dataset({{0, 1}, {2, 3}});
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(d.dim(), 2u);
    EXPECT_EQ(d.coord(1, 0), 2.0);
}

TEST(ValidateDataset, RejectsRaggedRows) {
    EXPECT_THROW(validate_dataset({{0, 1}, {2}}), InputError);
}

TEST(ValidateDataset, RejectsEmpty) {
    EXPECT_THROW(validate_dataset({}), InputError);
    EXPECT_THROW(validate_dataset({{}}), InputError);
}

TEST(ValidateDataset, RejectsNonFinite) {
    EXPECT_THROW(validate_dataset({{0, std::nan("")}}), InputError);
    EXPECT_THROW(validate_dataset({{std::numeric_limits<double>::infinity()}}), InputError);
}

TEST(ValidateDataset, PreservesRowOrder) {
    const Dataset d = validate_dataset({{3}, {1}, {2}});
    EXPECT_EQ(d.coord(0, 0), 3.0);
    EXPECT_EQ(d.coord(1, 0), 1.0);
    EXPECT_EQ(d.coord(2, 0), 2.0);
}

TEST(MetricProperty, AxiomsOnRandomTriples) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    for (const auto& metric : testkit::shipped_metrics()) {
        for (int trial = 0; trial < 2000; ++trial) {
            const std::size_t dim = 1 + trial % 6;
            std::vector<double> a(dim), b(dim), c(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                a[i] = coord(rng);
                b[i] = coord(rng);
                c[i] = coord(rng);
            }
            const double ab = metric(a, b), ba = metric(b, a), bc = metric(b, c), ac = metric(a, c);
            ASSERT_EQ(ab, ba) << metric.name();
            ASSERT_GT(ab, 0.0);
            ASSERT_EQ(metric(a, a), 0.0);
            ASSERT_LE(ac, (ab + bc) * (1.0 + 1e-12)) << metric.name();
        }
    }
}

TEST(MetricProperty, MatrixAgreesWithPairwiseDistance) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = testkit::random_instance(seed, 1, 60);
        for (const auto& metric : testkit::shipped_metrics()) {
            const auto dm = distance_matrix(inst.data, metric);
            for (std::size_t i = 0; i < inst.data.size(); ++i) {
                ASSERT_EQ(dm(i, i), 0.0);
                for (std::size_t j = 0; j < inst.data.size(); ++j) {
                    ASSERT_EQ(dm(i, j), distance(metric, inst.data.point(i), inst.data.point(j)));
                    ASSERT_EQ(dm(i, j), dm(j, i));
                }
            }
        }
    }
}

TEST(MetricProperty, PlaneBoundNeverExceedsDistance) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coord(-1e3, 1e3);
    for (const auto& metric : testkit::shipped_metrics()) {
        for (int trial = 0; trial < 5000; ++trial) {
            std::vector<double> a(3), b(3);
            for (std::size_t i = 0; i < 3; ++i) {
                a[i] = coord(rng);
                b[i] = coord(rng);
            }
            const std::size_t axis = trial % 3;
            ASSERT_LE(metric.plane_bound(a[axis] - b[axis]), metric(a, b));
        }
    }
    EXPECT_THROW(Metric::custom("c", [](auto, auto) { return 0.0; }).plane_bound(1.0),
                 UnsupportedBackend);
}

TEST(MetricNames, RoundTrip) {
    for (const auto& metric : testkit::shipped_metrics()) {
        EXPECT_EQ(metric_from_name(metric.name()).kind(), metric.kind());
    }
    EXPECT_THROW(metric_from_name("cosine"), InputError);
}
