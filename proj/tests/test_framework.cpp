#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rigidity/analysis.hpp"
#include "rigidity/framework.hpp"

using namespace rigidity;

namespace {

ExactConfiguration exact(int d, std::vector<std::vector<long>> pts) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : pts) {
        std::vector<Rational> r;
        for (long v : p) r.emplace_back(v);
        rows.push_back(std::move(r));
    }
    return ExactConfiguration(d, rows);
}

const FloatConfiguration kUnitSquare(2, std::vector<std::vector<double>>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});

Matrix<Rational> random_invertible(int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> v(-9, 9);
    while (true) {
        Matrix<Rational> a(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) a(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = Rational(v(rng), 1 + std::abs(v(rng)));
        if (exact_rank(a) == static_cast<std::size_t>(d)) return a;
    }
}

}  // namespace

TEST(DistanceMap, Examples) {
    const FloatConfiguration seg(2, std::vector<std::vector<double>>{{0, 0}, {3, 4}});
    EXPECT_EQ(distance_map(complete_graph(2), seg), (std::vector<double>{5.0}));
    EXPECT_EQ(squared_distance_map(complete_graph(2), seg), (std::vector<double>{25.0}));

    const FloatConfiguration tri(2, std::vector<std::vector<double>>{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    for (double t : distance_map(complete_graph(3), tri)) EXPECT_NEAR(t, 1.0, 1e-15);

    const auto dists = distance_map(complete_graph(4), kUnitSquare);
    const std::vector<double> want{1, std::sqrt(2.0), 1, 1, std::sqrt(2.0), 1};
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_DOUBLE_EQ(dists[k], want[k]);
    EXPECT_EQ(squared_distance_map(complete_graph(4), kUnitSquare), (std::vector<double>{1, 2, 1, 1, 2, 1}));
}

TEST(DistanceMap, SquaredIsSquareOfDistance) {
    const auto x = sample_generic_config(3, 6, 4);
    const auto g = complete_graph(6);
    const auto sq = squared_distance_map(g, x);
    const auto d = distance_map(g, x);
    for (std::size_t k = 0; k < sq.size(); ++k) EXPECT_NEAR(d[k] * d[k], to_double(sq[k]), 1e-12 * to_double(sq[k]));
}

TEST(DistanceMap, VertexCountMismatch) {
    EXPECT_THROW(distance_map(complete_graph(3), kUnitSquare), std::invalid_argument);
    EXPECT_THROW(rigidity_matrix(complete_graph(5), kUnitSquare), std::invalid_argument);
}

TEST(DistanceMap, ScalesLinearly) {
    const auto x = sample_generic_config(2, 5, 1);
    std::vector<Rational> scaled;
    for (const auto& c : x.flat()) scaled.push_back(c * Rational(7, 3));
    const ExactConfiguration y(2, scaled);
    const auto g = complete_graph(5);
    const auto a = squared_distance_map(g, x), b = squared_distance_map(g, y);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(b[k], a[k] * Rational(49, 9));
}

TEST(RigidityMatrix, SingleEdge) {
    const auto m = rigidity_matrix(complete_graph(2), exact(2, {{0, 0}, {1, 0}}));
    ASSERT_EQ(m.rows(), 1u);
    ASSERT_EQ(m.cols(), 4u);
    const std::vector<Rational> want{-2, 0, 2, 0};
    EXPECT_TRUE(std::equal(want.begin(), want.end(), m.row(0).begin()));
}

TEST(RigidityMatrix, IsTheJacobianOfTheSquaredMap) {
    // The squared map is quadratic, so a central difference is its exact derivative.
    const auto g = double_banana();
    const auto x = sample_generic_config(3, 8, 17);
    const auto m = rigidity_matrix(g, x);
    const Rational h(1, 3);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        auto plus = x.flat(), minus = x.flat();
        plus[c] += h;
        minus[c] -= h;
        const auto fp = squared_distance_map(g, ExactConfiguration(3, plus));
        const auto fm = squared_distance_map(g, ExactConfiguration(3, minus));
        for (std::size_t r = 0; r < m.rows(); ++r) EXPECT_EQ((fp[r] - fm[r]) / (2 * h), m(r, c));
    }
}

TEST(RigidityMatrix, TranslationsAreInTheKernel) {
    const auto g = complete_graph(5);
    const auto x = sample_generic_config(3, 5, 2);
    const auto m = rigidity_matrix(g, x);
    for (int axis = 0; axis < 3; ++axis) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            Rational s = 0;
            for (std::size_t v = 0; v < 5; ++v) s += m(r, v * 3 + static_cast<std::size_t>(axis));
            EXPECT_EQ(s, 0);
        }
    }
}

TEST(RigidityMatrix, CoincidentEndpointsGiveZeroRow) {
    const auto m = rigidity_matrix(complete_graph(3), exact(2, {{1, 1}, {1, 1}, {4, 0}}));
    for (const auto& v : m.row(0)) EXPECT_EQ(v, 0);
}

TEST(RigidityMatrix, K4InThePlaneHasRankFive) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto m = rigidity_matrix(complete_graph(4), sample_generic_config(2, 4, seed));
        oracle::RMatrix rows(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) rows[r].assign(m.row(r).begin(), m.row(r).end());
        EXPECT_EQ(oracle::rational_rank(rows), 5u);
        EXPECT_EQ(exact_rank(m), 5u);
    }
}

TEST(InfinitesimalMotions, KernelDimensions) {
    EXPECT_EQ(infinitesimal_motions(complete_graph(2), sample_generic_config(2, 2, 1)).size(), 3u);
    EXPECT_EQ(infinitesimal_motions(complete_graph(3), sample_generic_config(2, 3, 1)).size(), 3u);
    EXPECT_EQ(infinitesimal_motions(double_banana(), sample_generic_config(3, 8, 1)).size(), 7u);
}

TEST(InfinitesimalMotions, FloatingAgreesWithExact) {
    const auto x = sample_generic_config(3, 8, 9);
    const auto fx = to_double(x);
    EXPECT_EQ(infinitesimal_motions(double_banana(), fx).size(), infinitesimal_motions(double_banana(), x).size());
}

TEST(InfinitesimalMotions, CompleteGraphKernelIsTrivialMotions) {
    for (int d : {2, 3}) {
        for (int k = d; k <= 6; ++k) {
            const auto x = sample_generic_config(d, k + 1, static_cast<std::uint64_t>(100 * d + k));
            ASSERT_TRUE(is_general_position(x));
            EXPECT_EQ(infinitesimal_motions(complete_graph(k + 1), x).size(), static_cast<std::size_t>(d * (d + 1) / 2)) << d << " " << k;
        }
    }
}

TEST(Congruence, IsometriesPreserveIt) {
    const auto x = to_double(sample_generic_config(3, 6, 3));
    for (std::uint64_t s = 0; s < 10; ++s) EXPECT_TRUE(is_congruent(x, apply_isometry(x, random_isometry(3, s))));

    const auto xe = sample_generic_config(3, 6, 3);
    for (std::uint64_t s = 0; s < 10; ++s) EXPECT_TRUE(is_congruent(xe, apply_isometry(xe, random_signed_permutation(3, s))));
}

TEST(Congruence, ReflectionIsCongruent) {
    const auto x = exact(2, {{0, 0}, {5, 1}, {2, 7}});
    const auto mirrored = exact(2, {{0, 0}, {-5, 1}, {-2, 7}});
    EXPECT_TRUE(is_congruent(x, mirrored));
}

TEST(Congruence, ScalingIsNot) {
    const auto tri = exact(2, {{0, 0}, {1, 0}, {0, 1}});
    const auto big = exact(2, {{0, 0}, {2, 0}, {0, 2}});
    EXPECT_FALSE(is_congruent(tri, big));
}

TEST(Congruence, ShapeMismatchThrows) {
    EXPECT_THROW(is_congruent(exact(2, {{0, 0}, {1, 0}}), exact(2, {{0, 0}, {1, 0}, {2, 2}})), std::invalid_argument);
}

TEST(Congruence, EquivalenceRelationOnSamples) {
    // Small integer tuples so that congruent pairs actually occur.
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> c(0, 2);
    std::vector<ExactConfiguration> xs;
    for (int i = 0; i < 40; ++i) xs.push_back(exact(2, {{c(rng), c(rng)}, {c(rng), c(rng)}, {c(rng), c(rng)}}));
    for (const auto& a : xs) {
        EXPECT_TRUE(is_congruent(a, a));
        for (const auto& b : xs) {
            EXPECT_EQ(is_congruent(a, b), is_congruent(b, a));
            if (!is_congruent(a, b)) continue;
            for (const auto& z : xs)
                if (is_congruent(b, z)) EXPECT_TRUE(is_congruent(a, z));
        }
    }
}

TEST(GeneralPosition, Examples) {
    EXPECT_FALSE(is_general_position(exact(2, {{0, 0}, {1, 1}, {3, 3}})));
    EXPECT_TRUE(is_general_position(exact(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
    EXPECT_FALSE(is_general_position(exact(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}})));
    EXPECT_FALSE(is_general_position(exact(2, {{0, 0}, {0, 0}})));
    EXPECT_TRUE(is_general_position(exact(3, {{0, 0, 0}, {1, 0, 0}})));
}

TEST(GeneralPosition, AgreesWithDeterminantOracle) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + trial % 2;
        const int n = d + 1 + static_cast<int>(rng() % 3);
        // small box so that degenerate tuples show up
        std::uniform_int_distribution<int> c(0, 2);
        std::vector<std::vector<long>> pts(static_cast<std::size_t>(n));
        for (auto& p : pts)
            for (int k = 0; k < d; ++k) p.push_back(c(rng));
        const auto x = exact(d, pts);

        bool all_nonzero = true;
        std::vector<int> pick(static_cast<std::size_t>(d + 1));
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == d + 1) {
                oracle::RMatrix h;
                for (int i : pick) {
                    std::vector<Rational> row(x[static_cast<std::size_t>(i)].begin(), x[static_cast<std::size_t>(i)].end());
                    row.emplace_back(1);
                    h.push_back(row);
                }
                if (oracle::leibniz_det(h) == 0) all_nonzero = false;
                return;
            }
            for (int i = start; i < n; ++i) {
                pick[static_cast<std::size_t>(depth)] = i;
                rec(i + 1, depth + 1);
            }
        };
        rec(0, 0);
        EXPECT_EQ(is_general_position(x), all_nonzero);
    }
}

TEST(GeneralPosition, RandomWideBoxConfigurations) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_TRUE(is_general_position(sample_generic_config(3, 7, seed)));
}

TEST(Isometry, IdentityLeavesPointsFixed) {
    const auto x = sample_generic_config(2, 4, 6);
    Isometry<Rational> id{Matrix<Rational>(2, 2), {0, 0}};
    id.linear(0, 0) = 1;
    id.linear(1, 1) = 1;
    EXPECT_EQ(apply_isometry(x, id), x);
}

TEST(Isometry, RejectsNonOrthogonal) {
    Isometry<Rational> shear{Matrix<Rational>(2, 2), {0, 0}};
    shear.linear(0, 0) = 1;
    shear.linear(0, 1) = 1;
    shear.linear(1, 1) = 1;
    EXPECT_THROW(apply_isometry(sample_generic_config(2, 3, 1), shear), std::invalid_argument);
    Isometry<double> fshear{to_double(shear.linear), {0.0, 0.0}};
    EXPECT_THROW(apply_isometry(to_double(sample_generic_config(2, 3, 1)), fshear), std::invalid_argument);
}

TEST(Isometry, SignedPermutationIsExactlyOrthogonal) {
    for (std::uint64_t s = 0; s < 10; ++s) EXPECT_TRUE(is_orthogonal(random_signed_permutation(4, s).linear));
}

TEST(Isometry, DistanceMapInvariance) {
    const auto g = double_banana();
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto x = sample_generic_config(3, 8, s);
        EXPECT_EQ(squared_distance_map(g, apply_isometry(x, random_signed_permutation(3, s))), squared_distance_map(g, x));
        const auto fx = to_double(x);
        const auto a = distance_map(g, fx);
        const auto b = distance_map(g, apply_isometry(fx, random_isometry(3, s)));
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-12 * a[k]);
    }
}

TEST(Isometry, RankInvariantUnderAffineMaps) {
    std::mt19937_64 rng(44);
    const std::vector<std::pair<Graph, int>> cases{{complete_graph(4), 2}, {double_banana(), 3}, {path_graph(5), 2}, {complete_graph(6), 3}};
    for (const auto& [g, d] : cases) {
        for (int t = 0; t < 5; ++t) {
            const auto x = sample_generic_config(d, g.n_vertices(), rng());
            const auto a = random_invertible(d, rng);
            std::vector<Rational> b;
            for (int c = 0; c < d; ++c) b.emplace_back(static_cast<long>(rng() % 100));
            const auto y = apply_affine(x, a, b);
            EXPECT_EQ(exact_rank(rigidity_matrix(g, y)), exact_rank(rigidity_matrix(g, x)));
        }
    }
}

TEST(Isometry, AffineRejectsSingular) {
    Matrix<Rational> a(2, 2);
    a(0, 0) = 1;
    a(1, 0) = 2;
    EXPECT_THROW(apply_affine(sample_generic_config(2, 3, 0), a, {0, 0}), std::invalid_argument);
}
