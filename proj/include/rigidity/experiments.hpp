#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "rigidity/framework.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/random.hpp"

namespace rigidity {

/// Raised when an enumeration would exceed its size guard.
class ResourceGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Quadrilateral length identity

/// Which side of the diagonal 1-3 vertex 4 sits on relative to vertex 2.
/// Convex quadrilaterals 1-2-3-4 are always `opposite`.
enum class DiagonalSide { opposite, same };

namespace detail {

/// sin of the angle between sides a and b of a triangle with third side c,
/// through Kahan's cancellation-free Heron formula.
inline double sine_between(double a, double b, double c) {
    double s[3] = {a, b, c};
    std::sort(s, s + 3, std::greater<>());
    const double x = s[0], y = s[1], z = s[2];
    const double prod = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    const double area = 0.25 * std::sqrt(std::max(prod, 0.0));
    return 2.0 * area / (a * b);
}

inline double cosine_between(double a, double b, double c) {
    const double cs = (a * a + b * b - c * c) / (2.0 * a * b);
    if (std::abs(cs) > 1.0 + 1e-12) throw std::domain_error("law of cosines argument outside [-1, 1]");
    return std::clamp(cs, -1.0, 1.0);
}

inline void require_strict_triangle(double a, double b, double c, const char* which) {
    if (!(a < b + c && b < a + c && c < a + b)) {
        throw std::domain_error(std::string("lengths of triangle ") + which + " violate the strict triangle inequality");
    }
}

}  // namespace detail

/// Length of the diagonal 2-4 of a planar quadrilateral from the other five
/// lengths: t24^2 = t23^2 + t14^2 - t13^2 + 2 t12 t34 cos(theta -/+ psi), with
/// theta the angle at vertex 1 between 12 and 13 and psi the angle at vertex 3
/// between 31 and 34. The minus sign is the `opposite` branch.
inline double euler_t24(double t12, double t13, double t14, double t23, double t34, DiagonalSide side = DiagonalSide::opposite) {
    for (double t : {t12, t13, t14, t23, t34}) {
        if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("euler_t24: lengths must be positive and finite");
    }
    detail::require_strict_triangle(t12, t23, t13, "1-2-3");
    detail::require_strict_triangle(t13, t34, t14, "1-3-4");

    const double cos_theta = detail::cosine_between(t12, t13, t23);
    const double sin_theta = detail::sine_between(t12, t13, t23);
    const double cos_psi = detail::cosine_between(t13, t34, t14);
    const double sin_psi = detail::sine_between(t13, t34, t14);
    const double cross = side == DiagonalSide::opposite ? cos_theta * cos_psi + sin_theta * sin_psi
                                                        : cos_theta * cos_psi - sin_theta * sin_psi;
    const double sq = t23 * t23 + t14 * t14 - t13 * t13 + 2.0 * t12 * t34 * cross;
    return std::sqrt(std::max(sq, 0.0));
}

/// Branch bit from coordinates of a planar 4-point configuration.
inline DiagonalSide diagonal_side(const FloatConfiguration& x) {
    if (x.dim() != 2 || x.size() != 4) throw std::invalid_argument("diagonal_side: need four points in the plane");
    auto orient = [&](std::size_t p) {
        const auto a = x[0], c = x[2], q = x[p];
        return (c[0] - a[0]) * (q[1] - a[1]) - (c[1] - a[1]) * (q[0] - a[0]);
    };
    return orient(1) * orient(3) > 0.0 ? DiagonalSide::same : DiagonalSide::opposite;
}

/// |euler_t24 - |x2 - x4|| for a planar 4-point configuration, branch taken from
/// the coordinates.
inline double euler_residual(const FloatConfiguration& x) {
    const auto t = [&](std::size_t a, std::size_t b) { return std::sqrt(squared_distance(x[a - 1], x[b - 1])); };
    const double predicted = euler_t24(t(1, 2), t(1, 3), t(1, 4), t(2, 3), t(3, 4), diagonal_side(x));
    return std::abs(predicted - t(2, 4));
}

// ---------------------------------------------------------------------------
// Integer lattice frameworks

enum class CongruenceKind {
    unlabeled,  ///< point sets up to isometry and relabeling
    labeled,    ///< ordered tuples up to isometry
};

inline constexpr std::uint64_t kEnumerationGuard = 100'000'000;

/// Number of (k+1)-tuples of points of Z^d in [0,q]^d, or throws if it exceeds
/// the enumeration guard.
inline std::uint64_t lattice_tuple_count(int d, int q, int k) {
    if (d < 1 || q < 1 || k < 1) throw std::invalid_argument("lattice enumeration needs d, q, k >= 1");
    const double total = std::pow(static_cast<double>(q + 1), static_cast<double>(d) * (k + 1));
    if (total > static_cast<double>(kEnumerationGuard)) {
        throw ResourceGuardError("lattice enumeration of " + std::to_string(total) + " tuples exceeds the guard of 1e8");
    }
    return static_cast<std::uint64_t>(std::llround(total));
}

namespace detail {

struct VectorHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
        std::uint64_t h = 0x84222325CBF29CE4ULL;
        for (auto x : v) h = splitmix64(h ^ static_cast<std::uint64_t>(x));
        return static_cast<std::size_t>(h);
    }
};

/// Squared distances of all pairs a<b in lexicographic pair order.
inline std::vector<std::int64_t> pair_distances(const std::vector<std::vector<std::int64_t>>& pts, std::span<const std::size_t> order) {
    std::vector<std::int64_t> out;
    out.reserve(order.size() * (order.size() - 1) / 2);
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            std::int64_t s = 0;
            for (std::size_t c = 0; c < pts[order[a]].size(); ++c) {
                const auto diff = pts[order[a]][c] - pts[order[b]][c];
                s += diff * diff;
            }
            out.push_back(s);
        }
    return out;
}

}  // namespace detail

/// Exact congruence-class count of (k+1)-point frameworks on Z^d in [0,q]^d.
/// The key of a tuple is its vector of pairwise squared distances (a complete
/// isometry invariant for labeled tuples); for unlabeled classes it is the
/// lexicographic minimum of that vector over all relabelings.
inline std::uint64_t count_congruence_classes(int d, int q, int k, CongruenceKind kind = CongruenceKind::unlabeled) {
    lattice_tuple_count(d, q, k);
    const std::size_t side = static_cast<std::size_t>(q) + 1;
    std::size_t grid_size = 1;
    for (int c = 0; c < d; ++c) grid_size *= side;

    std::vector<std::vector<std::int64_t>> grid(grid_size, std::vector<std::int64_t>(static_cast<std::size_t>(d)));
    for (std::size_t p = 0; p < grid_size; ++p) {
        std::size_t rest = p;
        for (int c = 0; c < d; ++c) {
            grid[p][static_cast<std::size_t>(c)] = static_cast<std::int64_t>(rest % side);
            rest /= side;
        }
    }

    const auto npts = static_cast<std::size_t>(k) + 1;
    std::unordered_set<std::vector<std::int64_t>, detail::VectorHash> classes;
    std::vector<std::size_t> tuple(npts, 0);
    std::vector<std::size_t> perm(npts);
    std::vector<std::size_t> permuted(npts);
    while (true) {
        if (kind == CongruenceKind::labeled) {
            classes.insert(detail::pair_distances(grid, tuple));
        } else {
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            std::vector<std::int64_t> best;
            do {
                for (std::size_t a = 0; a < npts; ++a) permuted[a] = tuple[perm[a]];
                auto key = detail::pair_distances(grid, permuted);
                if (best.empty() || key < best) best = std::move(key);
            } while (std::next_permutation(perm.begin(), perm.end()));
            classes.insert(std::move(best));
        }

        // Labeled: all tuples. Unlabeled: nondecreasing tuples (multisets) suffice.
        std::size_t pos = npts;
        while (pos > 0 && tuple[pos - 1] == grid_size - 1) --pos;
        if (pos == 0) break;
        ++tuple[pos - 1];
        for (std::size_t r = pos; r < npts; ++r) tuple[r] = kind == CongruenceKind::labeled ? 0 : tuple[pos - 1];
    }
    return classes.size();
}

inline void require_exponent_range(int d, double s) {
    if (!(s > d / 2.0 && s < static_cast<double>(d))) {
        throw std::invalid_argument("s = " + std::to_string(s) + " is outside (d/2, d) for d = " + std::to_string(d));
    }
}

/// Normalised (C = 1) upper bound for the (dk - C(d,2))-dimensional content of
/// the rigid-graph distance set of E_q: (q^{-d/s})^{dk - C(d,2)} * q^{dk}.
/// It decays in q exactly when s < d - C(d,2)/k.
inline double hausdorff_content_bound(int d, int q, int k, double s) {
    if (d < 2 || q < 1 || k < 1) throw std::invalid_argument("hausdorff_content_bound: need d >= 2, q >= 1, k >= 1");
    require_exponent_range(d, s);
    const double dk = static_cast<double>(d) * k;
    const double m = dk - d * (d - 1) / 2.0;
    return std::pow(static_cast<double>(q), dk - (d / s) * m);
}

/// Exponent of q in hausdorff_content_bound.
inline double hausdorff_content_exponent(int d, int k, double s) {
    const double dk = static_cast<double>(d) * k;
    return dk - (d / s) * (dk - d * (d - 1) / 2.0);
}

/// The q^{-d/s}-neighbourhood of (1/q) (Z^d in [0,q]^d). Only one level of the
/// nested construction is materialised.
struct LatticeSet {
    int d = 2;
    int q = 1;
    double s = 1.5;
    double radius = 0.0;
    std::vector<std::vector<double>> points;  ///< the (q+1)^d centres
};

inline LatticeSet build_lattice_set(int d, int q, double s) {
    if (d < 2 || q < 1) throw std::invalid_argument("build_lattice_set: need d >= 2, q >= 1");
    require_exponent_range(d, s);
    LatticeSet set{d, q, s, std::pow(static_cast<double>(q), -d / s), {}};
    const std::size_t side = static_cast<std::size_t>(q) + 1;
    std::size_t total = 1;
    for (int c = 0; c < d; ++c) total *= side;
    set.points.reserve(total);
    for (std::size_t p = 0; p < total; ++p) {
        std::vector<double> pt(static_cast<std::size_t>(d));
        std::size_t rest = p;
        for (int c = 0; c < d; ++c) {
            pt[static_cast<std::size_t>(c)] = static_cast<double>(rest % side) / q;
            rest /= side;
        }
        set.points.push_back(std::move(pt));
    }
    return set;
}

// ---------------------------------------------------------------------------
// Sampling distance sets

struct UnitCube {};

/// Product of middle-thirds Cantor sets, truncated after `depth` ternary digits.
struct CantorProduct {
    int depth = 32;
};

using PointSampler = std::variant<UnitCube, LatticeSet, CantorProduct>;

namespace detail {

inline void draw_point(const PointSampler& sampler, int d, Rng& rng, std::span<double> out) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (std::holds_alternative<UnitCube>(sampler)) {
        for (auto& c : out) c = unit(rng);
    } else if (const auto* cantor = std::get_if<CantorProduct>(&sampler)) {
        std::uniform_int_distribution<int> bit(0, 1);
        for (auto& c : out) {
            double v = 0.0, scale = 1.0;
            for (int k = 0; k < cantor->depth; ++k) {
                scale /= 3.0;
                v += 2.0 * bit(rng) * scale;
            }
            c = v;
        }
    } else {
        const auto& set = std::get<LatticeSet>(sampler);
        if (set.d != d) throw std::invalid_argument("lattice sampler dimension does not match d");
        std::uniform_int_distribution<std::size_t> pick(0, set.points.size() - 1);
        const auto& centre = set.points[pick(rng)];
        std::uniform_real_distribution<double> ball(-1.0, 1.0);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (auto& c : out) {
                c = ball(rng);
                norm2 += c * c;
            }
        } while (norm2 > 1.0);
        for (std::size_t c = 0; c < out.size(); ++c) out[c] = centre[c] + set.radius * out[c];
    }
}

}  // namespace detail

/// Tuples per RNG stream. Tuple i comes from stream i / kSampleChunk, so chunks
/// can be generated independently with identical results.
inline constexpr std::size_t kSampleChunk = 4096;

/// N i.i.d. tuples of n_vertices points in R^d from the sampler.
inline std::vector<FloatConfiguration> sample_tuples(const PointSampler& sampler, int d, int n_vertices, std::size_t count,
                                                     std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample count must be at least 1");
    if (d < 2 || n_vertices < 1) throw std::invalid_argument("sample_tuples: need d >= 2 and at least one vertex");
    std::vector<FloatConfiguration> out;
    out.reserve(count);
    const auto width = static_cast<std::size_t>(d) * static_cast<std::size_t>(n_vertices);
    for (std::size_t chunk = 0; chunk * kSampleChunk < count; ++chunk) {
        Rng rng = make_rng(seed, chunk);
        const std::size_t end = std::min(count, (chunk + 1) * kSampleChunk);
        for (std::size_t i = chunk * kSampleChunk; i < end; ++i) {
            std::vector<double> flat(width);
            for (int v = 0; v < n_vertices; ++v) {
                detail::draw_point(sampler, d, rng,
                                   std::span<double>(flat.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(d),
                                                     static_cast<std::size_t>(d)));
            }
            out.emplace_back(d, std::move(flat));
        }
    }
    return out;
}

/// Points in R^dim, stored flat.
struct PointCloud {
    std::size_t dim = 0;
    std::vector<double> coords;

    std::size_t size() const noexcept { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const double> operator[](std::size_t i) const { return {coords.data() + i * dim, dim}; }
};

/// Image of the sampled tuples under the edge-length map of g.
inline PointCloud distance_cloud(const Graph& g, std::span<const FloatConfiguration> tuples) {
    PointCloud cloud{g.edge_count(), {}};
    cloud.coords.reserve(tuples.size() * g.edge_count());
    for (const auto& x : tuples) {
        const auto dist = distance_map(g, x);
        cloud.coords.insert(cloud.coords.end(), dist.begin(), dist.end());
    }
    return cloud;
}

inline PointCloud sample_distance_set(const Graph& g, const PointSampler& sampler, int d, std::size_t count, std::uint64_t seed) {
    const auto tuples = sample_tuples(sampler, d, g.n_vertices(), count, seed);
    return distance_cloud(g, tuples);
}

/// Occupied cells of the origin-anchored grid with side eps.
inline std::size_t covering_count(const PointCloud& cloud, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("covering_count: eps must be positive");
    if (cloud.size() == 0) throw std::invalid_argument("covering_count: empty point cloud");
    std::unordered_set<std::vector<std::int64_t>, detail::VectorHash> cells;
    cells.reserve(cloud.size());
    std::vector<std::int64_t> key(cloud.dim);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud[i];
        for (std::size_t c = 0; c < cloud.dim; ++c) key[c] = static_cast<std::int64_t>(std::floor(p[c] / eps));
        cells.insert(key);
    }
    return cells.size();
}

struct CoveringEstimate {
    std::vector<double> scales;
    std::vector<std::size_t> counts;
    double slope = 0.0;  ///< least-squares slope of log(count) against log(1/eps)
};

inline CoveringEstimate fit_box_dimension(const PointCloud& cloud, std::span<const double> scales) {
    if (scales.size() < 2) throw std::invalid_argument("fit_box_dimension: need at least two scales");
    CoveringEstimate est;
    est.scales.assign(scales.begin(), scales.end());
    for (double eps : scales) est.counts.push_back(covering_count(cloud, eps));

    const auto n = static_cast<double>(scales.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double x = -std::log(scales[i]);
        const double y = std::log(static_cast<double>(est.counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_box_dimension: scales must differ");
    est.slope = (n * sxy - sx * sy) / denom;
    return est;
}

/// Scales 2^-lo, ..., 2^-hi.
inline std::vector<double> dyadic_scales(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("dyadic_scales: lo must not exceed hi");
    std::vector<double> out;
    for (int e = lo; e <= hi; ++e) out.push_back(std::ldexp(1.0, -e));
    return out;
}

}  // namespace rigidity
