#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace rigidity {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Parses "p/q", "p" or a plain integer literal into an exact rational.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
}

inline std::string format_rational(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Dense row-major matrix. Only what the rigidity code needs.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(data_.begin() + static_cast<long>(a * cols_), data_.begin() + static_cast<long>((a + 1) * cols_),
                         data_.begin() + static_cast<long>(b * cols_));
    }

    /// Sub-matrix made of the given rows, in the given order.
    Matrix select_rows(std::span<const std::size_t> which) const {
        Matrix out(which.size(), cols_);
        for (std::size_t k = 0; k < which.size(); ++k) std::copy(row(which[k]).begin(), row(which[k]).end(), out.row(k).begin());
        return out;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<double> to_double(const Matrix<T>& m) {
    Matrix<double> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = to_double(m(r, c));
    return out;
}

/// Scales each row of a rational matrix by the lcm of its denominators. Row
/// scaling by nonzero integers leaves the row space and the rank unchanged.
inline Matrix<BigInt> clear_denominators(const Matrix<Rational>& m) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Matrix<BigInt> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BigInt l = 1;
        for (const auto& q : m.row(r)) l = boost::multiprecision::lcm(l, BigInt(denominator(q)));
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = numerator(m(r, c)) * (l / denominator(m(r, c)));
        }
    }
    return out;
}

/// Rank via Bareiss fraction-free elimination. Every division is exact, so the
/// entries stay integral and are bounded by minors of the input.
inline std::size_t exact_rank(Matrix<BigInt> a) {
    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < a.rows() && a(pivot, c) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        a.swap_rows(pivot, rank);
        const BigInt& p = a(rank, c);
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            const BigInt f = a(i, c);
            for (std::size_t j = c + 1; j < a.cols(); ++j) {
                a(i, j) = (p * a(i, j) - f * a(rank, j)) / prev;
            }
            a(i, c) = 0;
        }
        prev = p;
        ++rank;
    }
    return rank;
}

inline std::size_t exact_rank(const Matrix<Rational>& m) { return exact_rank(clear_denominators(m)); }

/// Floating matrices have no exact rank; use numeric_rank instead.
template <std::floating_point F>
std::size_t exact_rank(const Matrix<F>&) = delete;

/// Singular values of a dense double matrix, descending.
inline Eigen::VectorXd singular_values(const Matrix<double>& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    Eigen::MatrixXd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
    return Eigen::JacobiSVD<Eigen::MatrixXd>(e).singularValues();
}

/// SVD rank: singular values above rel_tol times the largest one.
inline std::size_t numeric_rank(const Matrix<double>& m, double rel_tol = 1e-9) {
    const auto sv = singular_values(m);
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > rel_tol * sv(0)) ++rank;
    return rank;
}

/// Basis of the right kernel of a rational matrix, one vector per free column
/// of the reduced row echelon form.
inline std::vector<std::vector<Rational>> nullspace_basis(Matrix<Rational> a) {
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(p, r);
        const Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Orthonormal kernel basis from the SVD; singular values at or below
/// rel_tol * largest count as zero.
inline std::vector<std::vector<double>> nullspace_basis(const Matrix<double>& m, double rel_tol = 1e-9) {
    const auto cols = static_cast<Eigen::Index>(m.cols());
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(static_cast<Eigen::Index>(m.rows()), 1), cols);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > cutoff && sv(k) > 0.0) ++rank;
    std::vector<std::vector<double>> basis;
    for (Eigen::Index k = rank; k < cols; ++k) {
        const auto col = svd.matrixV().col(k);
        basis.emplace_back(col.data(), col.data() + cols);
    }
    return basis;
}

/// Grows a row space one integer row at a time and reports whether each new
/// row is independent of the ones accepted so far. Stored rows are kept
/// primitive (gcd 1) and reduced against every earlier pivot.
class IncrementalRank {
public:
    explicit IncrementalRank(std::size_t cols) : cols_(cols) {}

    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    /// True when the row is independent (and is then kept).
    bool add(std::span<const BigInt> row) {
        std::vector<BigInt> v = reduce(row);
        auto lead = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
        if (lead == v.end()) return false;
        pivots_.push_back(static_cast<std::size_t>(lead - v.begin()));
        rows_.push_back(std::move(v));
        return true;
    }

    bool add(std::span<const Rational> row) {
        Matrix<Rational> one(1, row.size());
        std::copy(row.begin(), row.end(), one.row(0).begin());
        const auto ints = clear_denominators(one);
        return add(ints.row(0));
    }

    /// Independent of the accepted rows, without keeping it.
    template <class T>
    bool would_increase(std::span<const T> row) const {
        IncrementalRank probe = *this;
        return probe.add(row);
    }

private:
    std::vector<BigInt> reduce(std::span<const BigInt> row) const {
        if (row.size() != cols_) throw std::invalid_argument("IncrementalRank: row length mismatch");
        std::vector<BigInt> v(row.begin(), row.end());
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const std::size_t p = pivots_[k];
            if (v[p] == 0) continue;
            const BigInt a = rows_[k][p];
            const BigInt b = v[p];
            for (std::size_t j = 0; j < cols_; ++j) v[j] = a * v[j] - b * rows_[k][j];
            make_primitive(v);
        }
        return v;
    }

    static void make_primitive(std::vector<BigInt>& v) {
        BigInt g = 0;
        for (const auto& x : v)
            if (x != 0) g = boost::multiprecision::gcd(g, x);
        if (g > 1)
            for (auto& x : v) x /= g;
    }

    std::size_t cols_;
    std::vector<std::vector<BigInt>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace rigidity
