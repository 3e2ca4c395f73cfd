#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "error.hpp"
#include "quaternion.hpp"

namespace kleinscan {

namespace detail {

inline Complex conj_of(const Complex& c) { return std::conj(c); }
inline Quaternion conj_of(const Quaternion& q) { return qconj(q); }
inline double abs2_of(const Complex& c) { return std::norm(c); }
inline double abs2_of(const Quaternion& q) { return qnorm2(q); }

} // namespace detail

// 2x2 matrix [[a, b], [c, d]] over a (possibly noncommutative) scalar ring.
// Products keep the written left-to-right order of the entries.
template <class S>
struct Mat2 {
    S a{};
    S b{};
    S c{};
    S d{};

    static Mat2 identity() { return {S(1.0), S(0.0), S(0.0), S(1.0)}; }
    static Mat2 diag(const S& p, const S& q) { return {p, S(0.0), S(0.0), q}; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

using Mat2C = Mat2<Complex>;
using Mat2H = Mat2<Quaternion>;

template <class S>
Mat2<S> mmul(const Mat2<S>& g, const Mat2<S>& h) {
    return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

template <class S>
Mat2<S> operator*(const Mat2<S>& g, const Mat2<S>& h) {
    return mmul(g, h);
}

template <class S>
Mat2<S> operator+(const Mat2<S>& g, const Mat2<S>& h) {
    return {g.a + h.a, g.b + h.b, g.c + h.c, g.d + h.d};
}

template <class S>
Mat2<S> operator-(const Mat2<S>& g, const Mat2<S>& h) {
    return {g.a - h.a, g.b - h.b, g.c - h.c, g.d - h.d};
}

template <class S>
Mat2<S> operator-(const Mat2<S>& g) {
    return {-g.a, -g.b, -g.c, -g.d};
}

template <class S>
Mat2<S> scale(const Mat2<S>& g, double s) {
    return {g.a * s, g.b * s, g.c * s, g.d * s};
}

template <class S>
double frobenius(const Mat2<S>& g) {
    using detail::abs2_of;
    return std::sqrt(abs2_of(g.a) + abs2_of(g.b) + abs2_of(g.c) + abs2_of(g.d));
}

template <class S>
double frobenius_distance(const Mat2<S>& g, const Mat2<S>& h) {
    return frobenius(g - h);
}

// Conjugate transpose.
template <class S>
Mat2<S> adjoint(const Mat2<S>& g) {
    using detail::conj_of;
    return {conj_of(g.a), conj_of(g.c), conj_of(g.b), conj_of(g.d)};
}

// ---------------------------------------------------------------------------
// SL(2, C)

inline Complex det(const Mat2C& g) { return g.a * g.d - g.b * g.c; }

inline Complex ctrace(const Mat2C& g) { return g.a + g.d; }

// Residual |det - 1| relative to the size of the products that form it.
inline double det_residual(const Mat2C& g) {
    const double scale = std::max(1.0, std::abs(g.a * g.d) + std::abs(g.b * g.c));
    return std::abs(det(g) - 1.0) / scale;
}

inline bool is_sl2c(const Mat2C& g, double tol = 1e-9) { return det_residual(g) <= tol; }

inline const Mat2C& require_sl2c(const Mat2C& g, double tol = 1e-9) {
    if (!is_sl2c(g, tol)) {
        throw Error(Errc::not_in_sl2c, "not in SL(2,C)");
    }
    return g;
}

// Validating constructor for an SL(2,C) element.
inline Mat2C sl2c(Complex a, Complex b, Complex c, Complex d, double tol = 1e-9) {
    Mat2C g{a, b, c, d};
    require_sl2c(g, tol);
    return g;
}

// Inverse of a determinant-one matrix (adjugate).
inline Mat2C sl2_inverse(const Mat2C& g) { return {g.d, -g.b, -g.c, g.a}; }

// Scale by 1/sqrt(det) so the result has determinant one.
inline Mat2C normalize_det(const Mat2C& g) {
    const Complex dt = det(g);
    if (dt == 0.0) {
        throw Error(Errc::not_in_sl2c, "not in SL(2,C): singular matrix");
    }
    const Complex s = 1.0 / std::sqrt(dt);
    return {g.a * s, g.b * s, g.c * s, g.d * s};
}

// Distance to the identity as a Mobius transformation: g and -g are the same map.
inline double distance_to_identity(const Mat2C& g) {
    const Mat2C id = Mat2C::identity();
    return std::min(frobenius_distance(g, id), frobenius_distance(g, -id));
}

inline double sign_distance(const Mat2C& g, const Mat2C& h) {
    return std::min(frobenius_distance(g, h), frobenius_distance(g, -h));
}

inline Mat2C to_complex_entries(const Mat2H& g) {
    return {g.a.as_complex(), g.b.as_complex(), g.c.as_complex(), g.d.as_complex()};
}

inline Mat2H to_quaternion_entries(const Mat2C& g) { return {g.a, g.b, g.c, g.d}; }

// ---------------------------------------------------------------------------
// U(1,1; H) with J = diag(1, -1)

// Column vector (z1, z2) in H^{1,1}. Scalars act on the right.
struct HermPair {
    Quaternion z1;
    Quaternion z2;
};

inline HermPair apply(const Mat2H& g, const HermPair& z) {
    return {g.a * z.z1 + g.b * z.z2, g.c * z.z1 + g.d * z.z2};
}

// <z, w> = w* J z = conj(w1) z1 - conj(w2) z2.
inline Quaternion herm(const HermPair& z, const HermPair& w) {
    return qconj(w.z1) * z.z1 - qconj(w.z2) * z.z2;
}

inline Quaternion qtrace(const Mat2H& g) { return g.a + g.d; }

inline Mat2H j_form() { return Mat2H::diag(Quaternion(1.0), Quaternion(-1.0)); }

// g* J g
inline Mat2H form_pullback(const Mat2H& g) { return adjoint(g) * j_form() * g; }

struct UnitaryReport {
    bool unitary = false;
    double residual = 0.0;           // ||g* J g - J||_F
    std::array<double, 5> relations{}; // |a|-|d|, |b|-|c|, |a|^2-|c|^2-1, conj(a)b - conj(c)d, a conj(c) - b conj(d)
};

inline UnitaryReport is_unitary11(const Mat2H& g, double tol = 1e-9) {
    UnitaryReport r;
    r.residual = frobenius_distance(form_pullback(g), j_form());
    r.relations = {
        std::abs(qmod(g.a) - qmod(g.d)),
        std::abs(qmod(g.b) - qmod(g.c)),
        std::abs(qnorm2(g.a) - qnorm2(g.c) - 1.0),
        qmod(qconj(g.a) * g.b - qconj(g.c) * g.d),
        qmod(g.a * qconj(g.c) - g.b * qconj(g.d)),
    };
    r.unitary = r.residual <= tol;
    return r;
}

// Validating constructor for a U(1,1;H) element.
inline Mat2H u11h(Quaternion a, Quaternion b, Quaternion c, Quaternion d, double tol = 1e-9) {
    Mat2H g{a, b, c, d};
    if (!is_unitary11(g, tol).unitary) {
        throw Error(Errc::not_in_u11h, "not in U(1,1;H)");
    }
    return g;
}

// g^{-1} = J g* J = [[conj a, -conj c], [-conj b, conj d]].
inline Mat2H uinv(const Mat2H& g, double tol = 1e-9) {
    if (!is_unitary11(g, tol).unitary) {
        throw Error(Errc::not_in_u11h, "not in U(1,1;H)");
    }
    return {qconj(g.a), -qconj(g.c), -qconj(g.b), qconj(g.d)};
}

} // namespace kleinscan
