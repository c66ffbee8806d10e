#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rigidity/experiments.hpp"

using namespace rigidity;

namespace {

/// Random convex quadrilateral 1-2-3-4: four angles sorted around a centre,
/// radii perturbed, rejected unless strictly convex.
FloatConfiguration random_convex_quad(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ang(0.0, 2 * M_PI), rad(0.3, 2.0), off(-5.0, 5.0);
    while (true) {
        std::vector<double> a{ang(rng), ang(rng), ang(rng), ang(rng)};
        std::sort(a.begin(), a.end());
        const double cx = off(rng), cy = off(rng);
        std::vector<std::vector<double>> pts;
        for (double t : a) {
            const double r = rad(rng);
            pts.push_back({cx + r * std::cos(t), cy + r * std::sin(t)});
        }
        bool convex = true;
        for (int i = 0; i < 4; ++i) {
            const auto& p = pts[static_cast<std::size_t>(i)];
            const auto& q = pts[static_cast<std::size_t>((i + 1) % 4)];
            const auto& r = pts[static_cast<std::size_t>((i + 2) % 4)];
            const double cross = (q[0] - p[0]) * (r[1] - q[1]) - (q[1] - p[1]) * (r[0] - q[0]);
            if (cross <= 1e-3) convex = false;
        }
        if (convex) return FloatConfiguration(2, pts);
    }
}

double len(const FloatConfiguration& x, std::size_t a, std::size_t b) { return std::sqrt(squared_distance(x[a - 1], x[b - 1])); }

}  // namespace

TEST(EulerT24, UnitSquare) {
    EXPECT_NEAR(euler_t24(1, std::sqrt(2.0), 1, 1, 1), std::sqrt(2.0), 1e-15);
}

TEST(EulerT24, DegenerateTriangleRejected) {
    EXPECT_THROW(euler_t24(1, 2, 1, 1, 1), std::domain_error);  // t13 = t12 + t23
    EXPECT_THROW(euler_t24(1, 1.5, 10, 1, 1), std::domain_error);
    EXPECT_THROW(euler_t24(0, 1, 1, 1, 1), std::domain_error);
}

TEST(EulerT24, MatchesCoordinatesOnConvexQuadrilaterals) {
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto x = random_convex_quad(rng);
        ASSERT_EQ(diagonal_side(x), DiagonalSide::opposite);
        const double oracle_t24 = len(x, 2, 4);
        const double got = euler_t24(len(x, 1, 2), len(x, 1, 3), len(x, 1, 4), len(x, 2, 3), len(x, 3, 4));
        worst = std::max(worst, std::abs(got - oracle_t24) / oracle_t24);
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(EulerT24, SameSideBranch) {
    // 2 and 4 both above the diagonal 1-3
    const FloatConfiguration x(2, std::vector<std::vector<double>>{{0, 0}, {1, 2}, {4, 0}, {3, 1}});
    EXPECT_EQ(diagonal_side(x), DiagonalSide::same);
    EXPECT_NEAR(euler_t24(len(x, 1, 2), len(x, 1, 3), len(x, 1, 4), len(x, 2, 3), len(x, 3, 4), DiagonalSide::same), len(x, 2, 4), 1e-12);
    EXPECT_LT(euler_residual(x), 1e-12);
}

TEST(CongruenceClasses, SmallGrids) {
    EXPECT_EQ(count_congruence_classes(2, 1, 1), 3u);
    EXPECT_EQ(count_congruence_classes(2, 2, 1), 6u);
    EXPECT_EQ(count_congruence_classes(2, 1, 1, CongruenceKind::labeled), 3u);
}

TEST(CongruenceClasses, AgreeWithBruteForce) {
    for (int q = 1; q <= 3; ++q)
        for (int k = 1; k <= 2; ++k) {
            for (auto kind : {CongruenceKind::unlabeled, CongruenceKind::labeled}) {
                const auto got = count_congruence_classes(2, q, k, kind);
                EXPECT_EQ(got, oracle::brute_force_classes(2, q, k, kind == CongruenceKind::labeled)) << q << " " << k;
                EXPECT_LE(static_cast<double>(got), std::pow(2.0 * q + 1, 2.0 * k));
            }
        }
    EXPECT_EQ(count_congruence_classes(3, 1, 2), oracle::brute_force_classes(3, 1, 2, false));
}

TEST(CongruenceClasses, LabeledCountDominatesUnlabeled) {
    for (int q = 1; q <= 3; ++q)
        EXPECT_GE(count_congruence_classes(2, q, 2, CongruenceKind::labeled), count_congruence_classes(2, q, 2, CongruenceKind::unlabeled));
}

TEST(CongruenceClasses, GuardTrips) { EXPECT_THROW(count_congruence_classes(2, 30, 3), ResourceGuardError); }

TEST(ContentBound, Examples) {
    EXPECT_DOUBLE_EQ(hausdorff_content_bound(2, 2, 1, 1.5), std::pow(2.0, 2 - (2 / 1.5) * 1));
    EXPECT_THROW(hausdorff_content_bound(2, 2, 1, 1.0), std::invalid_argument);
    EXPECT_THROW(hausdorff_content_bound(2, 2, 1, 2.5), std::invalid_argument);
}

TEST(ContentBound, MonotoneDirection) {
    const std::vector<int> qs{2, 4, 8, 16};
    std::vector<double> below, above;
    for (int q : qs) {
        below.push_back(hausdorff_content_bound(2, q, 3, 1.5));
        above.push_back(hausdorff_content_bound(2, q, 3, 1.9));
    }
    for (std::size_t i = 1; i < qs.size(); ++i) {
        EXPECT_LT(below[i], below[i - 1]);
        EXPECT_GT(above[i], above[i - 1]);
    }
}

TEST(LatticeSet, Construction) {
    const auto set = build_lattice_set(2, 2, 1.5);
    EXPECT_EQ(set.points.size(), 9u);
    for (const auto& p : set.points)
        for (double c : p) {
            EXPECT_GE(c, 0.0);
            EXPECT_LE(c, 1.0);
        }
    EXPECT_DOUBLE_EQ(build_lattice_set(2, 4, 1.01).radius, std::pow(4.0, -2 / 1.01));
    EXPECT_EQ(build_lattice_set(3, 3, 2.0).points.size(), 64u);
    EXPECT_THROW(build_lattice_set(2, 4, 1.0), std::invalid_argument);
    EXPECT_LT(build_lattice_set(2, 64, 1.5).radius, 1.0 / (2 * 64));
}

TEST(Sampling, Deterministic) {
    const auto a = sample_distance_set(complete_graph(4), UnitCube{}, 2, 5000, 3);
    const auto b = sample_distance_set(complete_graph(4), UnitCube{}, 2, 5000, 3);
    const auto c = sample_distance_set(complete_graph(4), UnitCube{}, 2, 5000, 4);
    EXPECT_EQ(a.coords, b.coords);
    EXPECT_NE(a.coords, c.coords);
}

TEST(Sampling, PrefixStable) {
    const auto a = sample_tuples(UnitCube{}, 2, 3, 10000, 9);
    const auto b = sample_tuples(UnitCube{}, 2, 3, 5000, 9);
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Sampling, SingleEdgeOnUnitSquareStaysInRange) {
    const auto cloud = sample_distance_set(complete_graph(2), UnitCube{}, 2, 20000, 1);
    for (double t : cloud.coords) {
        EXPECT_GE(t, 0.0);
        EXPECT_LE(t, std::sqrt(2.0));
    }
}

TEST(Sampling, RejectsZeroSamples) { EXPECT_THROW(sample_distance_set(complete_graph(2), UnitCube{}, 2, 0, 1), std::invalid_argument); }

TEST(Sampling, CongruentTuplesMapToTheSamePoint) {
    const auto tuples = sample_tuples(UnitCube{}, 3, 5, 200, 8);
    const auto g = complete_graph(5);
    for (std::uint64_t s = 0; s < tuples.size(); ++s) {
        const auto iso = random_isometry(3, s);
        const auto a = distance_map(g, tuples[s]);
        const auto b = distance_map(g, apply_isometry(tuples[s], iso));
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-12 * std::max(1.0, a[k]));
    }
}

TEST(Sampling, LatticeAndCantorSamplersStayInTheirSets) {
    const auto set = build_lattice_set(2, 3, 1.5);
    for (const auto& x : sample_tuples(set, 2, 2, 2000, 5)) {
        for (std::size_t v = 0; v < x.size(); ++v) {
            double best = 1e9;
            for (const auto& c : set.points) best = std::min(best, std::hypot(x[v][0] - c[0], x[v][1] - c[1]));
            EXPECT_LE(best, set.radius + 1e-15);
        }
    }
    for (const auto& x : sample_tuples(CantorProduct{}, 2, 2, 2000, 5)) {
        for (double c : x.flat()) {
            EXPECT_GE(c, 0.0);
            EXPECT_LE(c, 1.0);
            // first ternary digit is 0 or 2
            EXPECT_TRUE(c <= 1.0 / 3 || c >= 2.0 / 3);
        }
    }
    EXPECT_THROW(sample_tuples(set, 3, 2, 10, 1), std::invalid_argument);
}

TEST(Sampling, K4SamplesLieOnTheEulerHypersurface) {
    const auto tuples = sample_tuples(UnitCube{}, 2, 4, 20000, 12);
    double worst = 0.0;
    for (const auto& x : tuples) worst = std::max(worst, euler_residual(x));
    EXPECT_LT(worst, 1e-9);
}

TEST(Covering, SinglePoint) {
    const PointCloud one{3, {0.3, 0.2, 0.9}};
    for (double eps : dyadic_scales(0, 10)) EXPECT_EQ(covering_count(one, eps), 1u);
}

TEST(Covering, Errors) {
    EXPECT_THROW(covering_count(PointCloud{2, {}}, 0.1), std::invalid_argument);
    EXPECT_THROW(covering_count(PointCloud{2, {0.0, 0.0}}, 0.0), std::invalid_argument);
}

TEST(Covering, DoublingEpsNeverIncreasesCount) {
    const auto cloud = sample_distance_set(complete_graph(3), UnitCube{}, 2, 20000, 2);
    std::size_t prev = 0;
    for (double eps : dyadic_scales(1, 9)) {
        const auto c = covering_count(cloud, eps);
        EXPECT_GE(c, prev);
        prev = c;
    }
}

TEST(Covering, SingleEdgeSlopeIsOne) {
    const auto cloud = sample_distance_set(complete_graph(2), UnitCube{}, 2, 1000000, 2024);
    const auto est = fit_box_dimension(cloud, dyadic_scales(3, 7));
    EXPECT_GE(est.slope, 0.9);
    EXPECT_LE(est.slope, 1.1);
    for (std::size_t i = 1; i < est.counts.size(); ++i) EXPECT_GE(est.counts[i], est.counts[i - 1]);
}
