#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidity/graph.hpp"
#include "rigidity/linalg.hpp"
#include "rigidity/random.hpp"

namespace rigidity {

/// A (k+1)-tuple of points in R^d. Points are stored contiguously; operator[]
/// is 0-based while graph vertices are 1-based, so vertex v lives at [v-1].
template <class T>
class Configuration {
public:
    using scalar_type = T;

    Configuration() = default;

    Configuration(int d, const std::vector<std::vector<T>>& points) : d_(d) {
        if (d < 2) throw std::invalid_argument("configuration dimension must be at least 2");
        coords_.reserve(points.size() * static_cast<std::size_t>(d));
        for (const auto& p : points) {
            if (static_cast<int>(p.size()) != d) {
                throw std::invalid_argument("point of dimension " + std::to_string(p.size()) + " in a configuration of dimension " +
                                            std::to_string(d));
            }
            coords_.insert(coords_.end(), p.begin(), p.end());
        }
    }

    /// Flat coordinates, point after point.
    Configuration(int d, std::vector<T> flat) : d_(d), coords_(std::move(flat)) {
        if (d < 2) throw std::invalid_argument("configuration dimension must be at least 2");
        if (coords_.size() % static_cast<std::size_t>(d) != 0) throw std::invalid_argument("flat coordinates not a multiple of d");
    }

    int dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return d_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(d_); }

    std::span<const T> operator[](std::size_t i) const { return {coords_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)}; }
    std::span<T> operator[](std::size_t i) { return {coords_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)}; }

    const std::vector<T>& flat() const noexcept { return coords_; }

    bool operator==(const Configuration&) const = default;

private:
    int d_ = 0;
    std::vector<T> coords_;
};

using ExactConfiguration = Configuration<Rational>;
using FloatConfiguration = Configuration<double>;

template <class T>
FloatConfiguration to_double(const Configuration<T>& x) {
    std::vector<double> flat;
    flat.reserve(x.flat().size());
    for (const auto& v : x.flat()) flat.push_back(to_double(v));
    return FloatConfiguration(x.dim(), std::move(flat));
}

template <class T>
T squared_distance(std::span<const T> a, std::span<const T> b) {
    T s(0);
    for (std::size_t c = 0; c < a.size(); ++c) {
        const T diff = a[c] - b[c];
        s += diff * diff;
    }
    return s;
}

namespace detail {

template <class T>
void require_vertex_count(const Graph& g, const Configuration<T>& x) {
    if (static_cast<int>(x.size()) != g.n_vertices()) {
        throw std::invalid_argument("graph has " + std::to_string(g.n_vertices()) + " vertices but the configuration has " +
                                    std::to_string(x.size()) + " points");
    }
}

}  // namespace detail

/// Squared edge lengths in canonical edge order. Exact on rational input.
template <class T>
std::vector<T> squared_distance_map(const Graph& g, const Configuration<T>& x) {
    detail::require_vertex_count(g, x);
    std::vector<T> out;
    out.reserve(g.edge_count());
    for (const auto& e : g.edges()) out.push_back(squared_distance(x[static_cast<std::size_t>(e.i - 1)], x[static_cast<std::size_t>(e.j - 1)]));
    return out;
}

/// Edge lengths |x^i - x^j| in canonical edge order.
template <class T>
std::vector<double> distance_map(const Graph& g, const Configuration<T>& x) {
    const auto sq = squared_distance_map(g, x);
    std::vector<double> out;
    out.reserve(sq.size());
    for (const auto& s : sq) out.push_back(std::sqrt(to_double(s)));
    return out;
}

/// Jacobian of the squared distance map: the row of edge ij carries
/// 2(x^i - x^j) in the block of vertex i and -2(x^i - x^j) in the block of j.
/// Coincident endpoints give a zero row.
template <class T>
Matrix<T> rigidity_matrix(const Graph& g, const Configuration<T>& x) {
    detail::require_vertex_count(g, x);
    const auto d = static_cast<std::size_t>(x.dim());
    Matrix<T> m(g.edge_count(), d * x.size());
    for (std::size_t r = 0; r < g.edge_count(); ++r) {
        const auto& e = g.edges()[r];
        const auto bi = static_cast<std::size_t>(e.i - 1) * d;
        const auto bj = static_cast<std::size_t>(e.j - 1) * d;
        const auto pi = x[static_cast<std::size_t>(e.i - 1)];
        const auto pj = x[static_cast<std::size_t>(e.j - 1)];
        for (std::size_t c = 0; c < d; ++c) {
            const T v = T(2) * (pi[c] - pj[c]);
            m(r, bi + c) = v;
            m(r, bj + c) = -v;
        }
    }
    return m;
}

/// Basis of the infinitesimal motions (kernel of the rigidity matrix). Each
/// vector is a flat motion: d velocity coordinates per vertex. The floating
/// version uses an SVD cutoff of 1e-9 relative to the largest singular value.
inline std::vector<std::vector<Rational>> infinitesimal_motions(const Graph& g, const ExactConfiguration& x) {
    return nullspace_basis(rigidity_matrix(g, x));
}

inline std::vector<std::vector<double>> infinitesimal_motions(const Graph& g, const FloatConfiguration& x, double rel_tol = 1e-9) {
    return nullspace_basis(rigidity_matrix(g, x), rel_tol);
}

/// Relative tolerance for floating congruence and rank fallbacks.
inline constexpr double kFloatRelTol = 1e-9;

/// True iff all pairwise distances agree, which for point tuples is the same as
/// the existence of an isometry (reflections included) carrying x onto y.
/// Exact comparison for rationals; relative 1e-9 against the largest squared
/// distance for doubles.
template <class T>
bool is_congruent(const Configuration<T>& x, const Configuration<T>& y) {
    if (x.dim() != y.dim() || x.size() != y.size()) {
        throw std::invalid_argument("is_congruent: configurations differ in dimension or point count");
    }
    const std::size_t n = x.size();
    if constexpr (std::is_floating_point_v<T>) {
        double scale = 0.0;
        std::vector<double> dx, dy;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                dx.push_back(squared_distance(x[a], x[b]));
                dy.push_back(squared_distance(y[a], y[b]));
                scale = std::max({scale, dx.back(), dy.back()});
            }
        for (std::size_t k = 0; k < dx.size(); ++k)
            if (std::abs(dx[k] - dy[k]) > kFloatRelTol * scale) return false;
        return true;
    } else {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (squared_distance(x[a], x[b]) != squared_distance(y[a], y[b])) return false;
        return true;
    }
}

/// True iff every subset of at most d+1 points is affinely independent. Checks
/// the subsets of size min(n, d+1); smaller subsets follow.
inline bool is_general_position(const ExactConfiguration& x) {
    const std::size_t n = x.size();
    const auto d = static_cast<std::size_t>(x.dim());
    const std::size_t s = std::min(n, d + 1);
    if (s <= 1) return true;

    std::vector<std::size_t> pick(s);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
        // Homogeneous coordinates (p, 1); affine independence <=> full row rank.
        Matrix<Rational> h(s, d + 1);
        for (std::size_t r = 0; r < s; ++r) {
            const auto p = x[pick[r]];
            for (std::size_t c = 0; c < d; ++c) h(r, c) = p[c];
            h(r, d) = 1;
        }
        if (exact_rank(h) != s) return false;

        std::size_t k = s;
        while (k > 0 && pick[k - 1] == n - s + (k - 1)) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t r = k; r < s; ++r) pick[r] = pick[r - 1] + 1;
    }
    return true;
}

/// y = linear * x + shift, applied pointwise.
template <class T>
struct Isometry {
    Matrix<T> linear;
    std::vector<T> shift;
};

template <class T>
bool is_orthogonal(const Matrix<T>& q) {
    if (q.rows() != q.cols()) return false;
    const std::size_t d = q.rows();
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            T dot(0);
            for (std::size_t r = 0; r < d; ++r) dot += q(r, a) * q(r, b);
            const T want = a == b ? T(1) : T(0);
            if constexpr (std::is_floating_point_v<T>) {
                if (std::abs(dot - want) > kFloatRelTol) return false;
            } else {
                if (dot != want) return false;
            }
        }
    return true;
}

namespace detail {

template <class T>
Configuration<T> apply_linear(const Configuration<T>& x, const Matrix<T>& a, const std::vector<T>& b) {
    const auto d = static_cast<std::size_t>(x.dim());
    if (a.rows() != d || a.cols() != d || b.size() != d) throw std::invalid_argument("map dimension does not match configuration");
    std::vector<T> flat;
    flat.reserve(x.flat().size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto p = x[i];
        for (std::size_t r = 0; r < d; ++r) {
            T v = b[r];
            for (std::size_t c = 0; c < d; ++c) v += a(r, c) * p[c];
            flat.push_back(std::move(v));
        }
    }
    return Configuration<T>(x.dim(), std::move(flat));
}

}  // namespace detail

/// Pointwise image under an isometry. The linear part must be orthogonal
/// (exactly for rationals, to 1e-9 for doubles).
template <class T>
Configuration<T> apply_isometry(const Configuration<T>& x, const Isometry<T>& iso) {
    if (!is_orthogonal(iso.linear)) throw std::invalid_argument("apply_isometry: linear part is not orthogonal");
    return detail::apply_linear(x, iso.linear, iso.shift);
}

/// Pointwise image under an invertible rational affine map.
inline ExactConfiguration apply_affine(const ExactConfiguration& x, const Matrix<Rational>& a, const std::vector<Rational>& b) {
    if (a.rows() != a.cols() || exact_rank(a) != a.rows()) throw std::invalid_argument("apply_affine: map is not invertible");
    return detail::apply_linear(x, a, b);
}

/// Haar-distributed orthogonal matrix (reflections included) from the QR
/// factorisation of a Gaussian matrix, plus a shift uniform in [-10, 10]^d.
inline Isometry<double> random_isometry(int d, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> shift(-10.0, 10.0);
    Eigen::MatrixXd g(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < d; ++c)
        if (r(c, c) < 0) q.col(c) *= -1.0;

    Isometry<double> iso{Matrix<double>(static_cast<std::size_t>(d), static_cast<std::size_t>(d)), {}};
    for (int r2 = 0; r2 < d; ++r2)
        for (int c = 0; c < d; ++c) iso.linear(static_cast<std::size_t>(r2), static_cast<std::size_t>(c)) = q(r2, c);
    for (int c = 0; c < d; ++c) iso.shift.push_back(shift(rng));
    return iso;
}

/// Random signed permutation matrix with an integer shift in [-1000, 1000]^d;
/// orthogonal exactly, so it acts on rational configurations without rounding.
inline Isometry<Rational> random_signed_permutation(int d, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 1));
    std::vector<std::size_t> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> shift(-1000, 1000);
    Isometry<Rational> iso{Matrix<Rational>(static_cast<std::size_t>(d), static_cast<std::size_t>(d)), {}};
    for (std::size_t r = 0; r < perm.size(); ++r) iso.linear(r, perm[r]) = coin(rng) ? 1 : -1;
    for (int c = 0; c < d; ++c) iso.shift.emplace_back(shift(rng));
    return iso;
}

}  // namespace rigidity
