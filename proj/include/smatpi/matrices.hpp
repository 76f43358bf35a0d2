// Small fixed-size complex matrices used throughout: the system propagator is
// 2x2 and everything indexed by pair states is 4x4. Row-major storage.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace smatpi {

using cplx = std::complex<double>;

struct Mat2 {
    std::array<cplx, 4> a{};

    cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
    const cplx& operator()(int r, int c) const { return a[static_cast<std::size_t>(2 * r + c)]; }

    static Mat2 identity() {
        Mat2 m;
        m(0, 0) = 1.0;
        m(1, 1) = 1.0;
        return m;
    }
};

struct Vec4 {
    std::array<cplx, 4> a{};

    cplx& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
    const cplx& operator[](int i) const { return a[static_cast<std::size_t>(i)]; }
};

struct Mat4 {
    std::array<cplx, 16> a{};

    cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(4 * r + c)]; }
    const cplx& operator()(int r, int c) const { return a[static_cast<std::size_t>(4 * r + c)]; }

    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat4& operator+=(const Mat4& o) {
        for (std::size_t i = 0; i < 16; ++i) a[i] += o.a[i];
        return *this;
    }
};

inline Mat4 operator+(Mat4 x, const Mat4& y) { return x += y; }

inline Mat4 operator-(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

inline Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const cplx xik = x(i, k);
            for (int j = 0; j < 4; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

inline Vec4 operator*(const Mat4& m, const Vec4& v) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < 4; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline double max_abs(const Mat4& m) {
    double r = 0.0;
    for (const auto& z : m.a) r = std::max(r, std::abs(z));
    return r;
}

inline double max_abs_diff(const Mat4& x, const Mat4& y) { return max_abs(x - y); }

}  // namespace smatpi
