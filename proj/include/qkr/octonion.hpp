#pragma once

// Octonions and split octonions built by doubling the quaternions.
// Scalar type T is double for float mode or mpq_class for exact mode.

#include <array>
#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <tuple>

namespace qkr {

struct AlgebraTag {
    int epsilon = 1;  // +1: octonions over R^7, -1: split octonions over R^{3,4}

    static AlgebraTag compact() { return {1}; }
    static AlgebraTag split() { return {-1}; }

    bool operator==(const AlgebraTag&) const = default;
    // Name used in JSON fixtures and CLI output.
    const char* name() const { return epsilon > 0 ? "O" : "Osplit"; }
};

inline AlgebraTag check_tag(int epsilon) {
    if (epsilon != 1 && epsilon != -1)
        throw std::domain_error("algebra tag epsilon must be +1 or -1");
    return AlgebraTag{epsilon};
}

template <class T>
struct AlgebraElement {
    AlgebraTag tag;
    std::array<T, 8> c{};

    AlgebraElement() = default;
    AlgebraElement(AlgebraTag t, const std::array<T, 8>& v) : tag(t), c(v) {}

    static AlgebraElement basis(AlgebraTag t, int k) {
        AlgebraElement e;
        e.tag = t;
        e.c.fill(T(0));
        e.c[k] = T(1);
        return e;
    }
    static AlgebraElement one(AlgebraTag t) { return basis(t, 0); }

    const T& operator[](int i) const { return c[i]; }
    T& operator[](int i) { return c[i]; }
    T real() const { return c[0]; }
    bool operator==(const AlgebraElement&) const = default;
};

// Element of V = Im O(V), coordinates on e1..e7.
template <class T>
struct SevenVector {
    AlgebraTag tag;
    std::array<T, 7> c{};

    SevenVector() = default;
    SevenVector(AlgebraTag t, const std::array<T, 7>& v) : tag(t), c(v) {}

    static SevenVector basis(AlgebraTag t, int k) {  // k in 1..7
        SevenVector e;
        e.tag = t;
        e.c.fill(T(0));
        e.c[k - 1] = T(1);
        return e;
    }

    AlgebraElement<T> embed() const {
        AlgebraElement<T> x;
        x.tag = tag;
        x.c[0] = T(0);
        for (int i = 0; i < 7; ++i) x.c[i + 1] = c[i];
        return x;
    }
    const T& operator[](int i) const { return c[i]; }
    T& operator[](int i) { return c[i]; }
};

// Imaginary part of an algebra element as a seven-vector.
template <class T>
SevenVector<T> imaginary(const AlgebraElement<T>& x) {
    SevenVector<T> v;
    v.tag = x.tag;
    for (int i = 0; i < 7; ++i) v.c[i] = x.c[i + 1];
    return v;
}

namespace detail {

template <class T>
using Quat = std::array<T, 4>;

// Quaternion product in the basis (1, I1, I2, I3) with I1 I2 = I3.
template <class T>
Quat<T> qmul(const Quat<T>& a, const Quat<T>& b) {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

template <class T>
Quat<T> qconj(const Quat<T>& a) {
    return {a[0], -a[1], -a[2], -a[3]};
}

inline void require_same(AlgebraTag a, AlgebraTag b) {
    if (!(a == b)) throw std::domain_error("algebra tag mismatch");
}

}  // namespace detail

template <class T>
AlgebraElement<T> operator+(const AlgebraElement<T>& x, const AlgebraElement<T>& y) {
    detail::require_same(x.tag, y.tag);
    AlgebraElement<T> r = x;
    for (int i = 0; i < 8; ++i) r.c[i] += y.c[i];
    return r;
}

template <class T>
AlgebraElement<T> operator-(const AlgebraElement<T>& x, const AlgebraElement<T>& y) {
    detail::require_same(x.tag, y.tag);
    AlgebraElement<T> r = x;
    for (int i = 0; i < 8; ++i) r.c[i] -= y.c[i];
    return r;
}

template <class T>
AlgebraElement<T> operator*(const T& s, const AlgebraElement<T>& x) {
    AlgebraElement<T> r = x;
    for (auto& v : r.c) v *= s;
    return r;
}

// (a,b)(c,d) = (ac - eps * conj(d) b, d a + b conj(c))
template <class T>
AlgebraElement<T> multiply(const AlgebraElement<T>& x, const AlgebraElement<T>& y) {
    detail::require_same(x.tag, y.tag);
    using detail::Quat;
    const Quat<T> a{x.c[0], x.c[1], x.c[2], x.c[3]}, b{x.c[4], x.c[5], x.c[6], x.c[7]};
    const Quat<T> c{y.c[0], y.c[1], y.c[2], y.c[3]}, d{y.c[4], y.c[5], y.c[6], y.c[7]};
    Quat<T> first = detail::qmul(a, c);
    const Quat<T> db = detail::qmul(detail::qconj(d), b);
    Quat<T> second = detail::qmul(d, a);
    const Quat<T> bc = detail::qmul(b, detail::qconj(c));
    AlgebraElement<T> r;
    r.tag = x.tag;
    for (int i = 0; i < 4; ++i) {
        r.c[i] = x.tag.epsilon > 0 ? T(first[i] - db[i]) : T(first[i] + db[i]);
        r.c[i + 4] = second[i] + bc[i];
    }
    return r;
}

// Exact product: denominators are cleared first so the 64 products run in integers.
AlgebraElement<mpq_class> multiply(const AlgebraElement<mpq_class>& x, const AlgebraElement<mpq_class>& y);

template <class T>
AlgebraElement<T> operator*(const AlgebraElement<T>& x, const AlgebraElement<T>& y) {
    return multiply(x, y);
}

template <class T>
AlgebraElement<T> conjugate(const AlgebraElement<T>& x) {
    AlgebraElement<T> r = x;
    for (int i = 1; i < 8; ++i) r.c[i] = -r.c[i];
    return r;
}

template <class T>
T inner(const AlgebraElement<T>& x, const AlgebraElement<T>& y) {
    detail::require_same(x.tag, y.tag);
    T lo = x.c[0] * y.c[0] + x.c[1] * y.c[1] + x.c[2] * y.c[2] + x.c[3] * y.c[3];
    T hi = x.c[4] * y.c[4] + x.c[5] * y.c[5] + x.c[6] * y.c[6] + x.c[7] * y.c[7];
    return x.tag.epsilon > 0 ? T(lo + hi) : T(lo - hi);
}

template <class T>
T norm(const AlgebraElement<T>& x) {
    return inner(x, x);
}

template <class T>
T inner(const SevenVector<T>& x, const SevenVector<T>& y) {
    return inner(x.embed(), y.embed());
}

template <class T>
T norm(const SevenVector<T>& x) {
    return inner(x, x);
}

template <class T>
AlgebraElement<T> associator(const AlgebraElement<T>& x, const AlgebraElement<T>& y,
                             const AlgebraElement<T>& z) {
    return (x * y) * z - x * (y * z);
}

template <class T>
struct MoufangResiduals {
    AlgebraElement<T> left, right, middle;
};

// (xyx)z - x(y(xz)),  z(xyx) - ((zx)y)x,  (xy)(zx) - x(yz)x
// xyx is unambiguous by flexibility; it is computed as (xy)x.
template <class T>
MoufangResiduals<T> moufang_residuals(const AlgebraElement<T>& x, const AlgebraElement<T>& y,
                                      const AlgebraElement<T>& z) {
    const AlgebraElement<T> xyx = (x * y) * x;
    return {xyx * z - x * (y * (x * z)),
            z * xyx - ((z * x) * y) * x,
            (x * y) * (z * x) - (x * (y * z)) * x};
}

// phi(x,y,z) = <x, yz>
template <class T>
T associative_form(const SevenVector<T>& x, const SevenVector<T>& y, const SevenVector<T>& z) {
    return inner(x.embed(), y.embed() * z.embed());
}

// psi(x,y,z,w) = <x, y(zw) - w(zy)>
template <class T>
T coassociative_form(const SevenVector<T>& x, const SevenVector<T>& y, const SevenVector<T>& z,
                     const SevenVector<T>& w) {
    const auto Y = y.embed(), Z = z.embed(), W = w.embed();
    return inner(x.embed(), Y * (Z * W) - W * (Z * Y));
}

// Product of imaginary vectors, kept as a full algebra element.
template <class T>
AlgebraElement<T> vmul(const SevenVector<T>& x, const SevenVector<T>& y) {
    return x.embed() * y.embed();
}

struct SignedBasis {
    int sign;
    int basis;
    bool operator==(const SignedBasis&) const = default;
};

using MultiplicationTable = std::array<std::array<SignedBasis, 8>, 8>;

// e_i e_j for all basis pairs, read off multiply().
MultiplicationTable multiplication_table(AlgebraTag tag);

std::string to_string(const AlgebraElement<double>& x);

}  // namespace qkr
