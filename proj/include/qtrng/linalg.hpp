#pragma once

// Small fixed-dimension complex linear algebra kernel (dimensions 2, 3, 4).
// Everything here is a value type; operations are pure and allocation-free.
// Dimensions are template parameters, so mixing them is a compile error.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace qtrng {

using Complex = std::complex<double>;

// Absolute entrywise tolerance for analytic identities. All quantities in
// this library are O(1) combinations of sqrt(2), sqrt(3) and eighth roots
// of unity, so 1e-12 leaves ~4 decades of headroom over double rounding.
inline constexpr double kIdentityTol = 1e-12;

template <std::size_t N>
struct Vec {
    std::array<Complex, N> e{};

    Complex& operator[](std::size_t i) { return e[i]; }
    const Complex& operator[](std::size_t i) const { return e[i]; }

    static constexpr std::size_t size() { return N; }
};

template <std::size_t N>
struct Mat {
    // Row-major entries.
    std::array<Complex, N * N> e{};

    Complex& operator()(std::size_t r, std::size_t c) { return e[r * N + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return e[r * N + c]; }

    static constexpr std::size_t dim() { return N; }
};

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;
using Vec4 = Vec<4>;
using Mat2 = Mat<2>;
using Mat3 = Mat<3>;
using Mat4 = Mat<4>;

template <std::size_t N>
Vec<N> operator+(const Vec<N>& a, const Vec<N>& b) {
    Vec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
    return r;
}

template <std::size_t N>
Vec<N> operator-(const Vec<N>& a, const Vec<N>& b) {
    Vec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
    return r;
}

template <std::size_t N>
Vec<N> operator*(const Complex& s, const Vec<N>& v) {
    Vec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = s * v[i];
    return r;
}

template <std::size_t N>
Mat<N> operator+(const Mat<N>& a, const Mat<N>& b) {
    Mat<N> r;
    for (std::size_t i = 0; i < N * N; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

template <std::size_t N>
Mat<N> operator-(const Mat<N>& a, const Mat<N>& b) {
    Mat<N> r;
    for (std::size_t i = 0; i < N * N; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

template <std::size_t N>
Mat<N> operator*(const Complex& s, const Mat<N>& m) {
    Mat<N> r;
    for (std::size_t i = 0; i < N * N; ++i) r.e[i] = s * m.e[i];
    return r;
}

template <std::size_t N>
Mat<N> operator*(const Mat<N>& a, const Mat<N>& b) {
    Mat<N> r;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t k = 0; k < N; ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

// Matrix-vector product.
template <std::size_t N>
Vec<N> operator*(const Mat<N>& m, const Vec<N>& v) {
    Vec<N> r;
    for (std::size_t i = 0; i < N; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < N; ++j) acc += m(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

template <std::size_t N>
Mat<N> identity() {
    Mat<N> r;
    for (std::size_t i = 0; i < N; ++i) r(i, i) = 1.0;
    return r;
}

template <std::size_t N>
Mat<N> adjoint(const Mat<N>& m) {
    Mat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

template <std::size_t N>
Complex trace(const Mat<N>& m) {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += m(i, i);
    return t;
}

template <std::size_t N>
Mat<N> commutator(const Mat<N>& a, const Mat<N>& b) {
    return a * b - b * a;
}

// Kronecker product with the left factor on the slow index, so the result
// acts on the basis |00>, |01>, |10>, |11>.
inline Mat4 tensor(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

inline Vec4 tensor(const Vec2& a, const Vec2& b) {
    Vec4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r[2 * i + j] = a[i] * b[j];
    return r;
}

// Bra-ket pairing <a|b>: conjugate-linear in the first argument.
template <std::size_t N>
Complex inner(const Vec<N>& a, const Vec<N>& b) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

template <std::size_t N>
double norm_sq(const Vec<N>& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) acc += std::norm(v[i]);
    return acc;
}

template <std::size_t N>
double norm(const Vec<N>& v) {
    return std::sqrt(norm_sq(v));
}

template <std::size_t N>
Vec<N> normalized(const Vec<N>& v) {
    const double n = norm(v);
    if (n <= 0.0) throw std::invalid_argument("normalized: zero vector");
    return Complex(1.0 / n, 0.0) * v;
}

// <v|m|v>.
template <std::size_t N>
Complex sandwich(const Vec<N>& v, const Mat<N>& m) {
    return inner(v, m * v);
}

// Rank-one projector |v><v|.
template <std::size_t N>
Mat<N> outer(const Vec<N>& v) {
    Mat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = v[i] * std::conj(v[j]);
    return r;
}

template <std::size_t N>
double max_abs_diff(const Mat<N>& a, const Mat<N>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
    return m;
}

template <std::size_t N>
double max_abs_diff(const Vec<N>& a, const Vec<N>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < N; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

template <std::size_t N>
double max_abs(const Mat<N>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(a.e[i]));
    return m;
}

template <std::size_t N>
bool is_hermitian(const Mat<N>& m, double tol = kIdentityTol) {
    return max_abs_diff(m, adjoint(m)) <= tol;
}

inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <std::size_t N>
bool is_finite(const Vec<N>& v) {
    for (std::size_t i = 0; i < N; ++i)
        if (!is_finite(v[i])) return false;
    return true;
}

template <std::size_t N>
bool is_finite(const Mat<N>& m) {
    for (std::size_t i = 0; i < N * N; ++i)
        if (!is_finite(m.e[i])) return false;
    return true;
}

template <typename T>
void require_finite(const T& value, const char* what) {
    if (!is_finite(value)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

}  // namespace qtrng
