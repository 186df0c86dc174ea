// matrix.hpp: small fixed-size dense matrices for 2x2 / 4x4 / 6x6 work.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace optomech {

template <std::size_t R, std::size_t C = R>
struct Matrix {
    static constexpr std::size_t rows = R;
    static constexpr std::size_t cols = C;

    std::array<double, R * C> data{};

    constexpr double& operator()(std::size_t i, std::size_t j) { return data[i * C + j]; }
    constexpr double operator()(std::size_t i, std::size_t j) const { return data[i * C + j]; }

    static constexpr Matrix zero() { return Matrix{}; }

    static constexpr Matrix identity()
        requires(R == C)
    {
        Matrix m{};
        for (std::size_t i = 0; i < R; ++i) m(i, i) = 1.0;
        return m;
    }

    static constexpr Matrix diagonal(const std::array<double, R>& d)
        requires(R == C)
    {
        Matrix m{};
        for (std::size_t i = 0; i < R; ++i) m(i, i) = d[i];
        return m;
    }

    friend constexpr bool operator==(const Matrix&, const Matrix&) = default;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;
using Mat6 = Matrix<6>;

template <std::size_t R, std::size_t C>
constexpr Matrix<R, C> operator+(const Matrix<R, C>& a, const Matrix<R, C>& b) {
    Matrix<R, C> out;
    for (std::size_t k = 0; k < R * C; ++k) out.data[k] = a.data[k] + b.data[k];
    return out;
}

template <std::size_t R, std::size_t C>
constexpr Matrix<R, C> operator-(const Matrix<R, C>& a, const Matrix<R, C>& b) {
    Matrix<R, C> out;
    for (std::size_t k = 0; k < R * C; ++k) out.data[k] = a.data[k] - b.data[k];
    return out;
}

template <std::size_t R, std::size_t C>
constexpr Matrix<R, C> operator*(double s, const Matrix<R, C>& a) {
    Matrix<R, C> out;
    for (std::size_t k = 0; k < R * C; ++k) out.data[k] = s * a.data[k];
    return out;
}

template <std::size_t R, std::size_t K, std::size_t C>
constexpr Matrix<R, C> operator*(const Matrix<R, K>& a, const Matrix<K, C>& b) {
    Matrix<R, C> out;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t k = 0; k < K; ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < C; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

template <std::size_t R, std::size_t C>
constexpr Matrix<C, R> transpose(const Matrix<R, C>& a) {
    Matrix<C, R> out;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) out(j, i) = a(i, j);
    return out;
}

/// (M + Mᵀ)/2
template <std::size_t N>
constexpr Matrix<N> symmetrized(const Matrix<N>& a) {
    Matrix<N> out;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) out(i, j) = 0.5 * (a(i, j) + a(j, i));
    return out;
}

template <std::size_t R, std::size_t C>
double max_abs(const Matrix<R, C>& a) {
    double m = 0.0;
    for (double v : a.data) m = std::max(m, std::abs(v));
    return m;
}

template <std::size_t R, std::size_t C>
bool all_finite(const Matrix<R, C>& a) {
    return std::all_of(a.data.begin(), a.data.end(), [](double v) { return std::isfinite(v); });
}

template <std::size_t N>
constexpr double trace(const Matrix<N>& a) {
    double t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += a(i, i);
    return t;
}

constexpr double determinant(const Mat2& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

/// Laplace expansion along 2x2 minors of the first two rows.
constexpr double determinant(const Mat4& m) {
    const double s0 = m(0, 0) * m(1, 1) - m(1, 0) * m(0, 1);
    const double s1 = m(0, 0) * m(1, 2) - m(1, 0) * m(0, 2);
    const double s2 = m(0, 0) * m(1, 3) - m(1, 0) * m(0, 3);
    const double s3 = m(0, 1) * m(1, 2) - m(1, 1) * m(0, 2);
    const double s4 = m(0, 1) * m(1, 3) - m(1, 1) * m(0, 3);
    const double s5 = m(0, 2) * m(1, 3) - m(1, 2) * m(0, 3);

    const double c5 = m(2, 2) * m(3, 3) - m(3, 2) * m(2, 3);
    const double c4 = m(2, 1) * m(3, 3) - m(3, 1) * m(2, 3);
    const double c3 = m(2, 1) * m(3, 2) - m(3, 1) * m(2, 2);
    const double c2 = m(2, 0) * m(3, 3) - m(3, 0) * m(2, 3);
    const double c1 = m(2, 0) * m(3, 2) - m(3, 0) * m(2, 2);
    const double c0 = m(2, 0) * m(3, 1) - m(3, 0) * m(2, 1);

    return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
}

template <std::size_t N>
bool is_symmetric(const Matrix<N>& a, double rel_tol) {
    const double scale = std::max(max_abs(a), 1e-300);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (std::abs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
    return true;
}

}  // namespace optomech
