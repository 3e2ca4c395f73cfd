#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>
#include <string>

#include "error.hpp"

namespace kleinscan {

using Complex = std::complex<double>;

// Real quaternion w + x i + y j + z k. Complex numbers are the subring y = z = 0.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
        : w(w_), x(x_), y(y_), z(z_) {}
    constexpr Quaternion(Complex c) : w(c.real()), x(c.imag()) {}

    static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr std::array<double, 4> components() const { return {w, x, y, z}; }

    constexpr bool is_complex() const { return y == 0.0 && z == 0.0; }
    Complex as_complex() const { return {w, x}; }

    // Bitwise identity. Use approx_eq for tolerance comparisons.
    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w;
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
};

constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
constexpr Quaternion operator-(const Quaternion& q) { return {-q.w, -q.x, -q.y, -q.z}; }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }
constexpr Quaternion operator/(Quaternion q, double s) { return q *= (1.0 / s); }

// Hamilton product under i^2 = j^2 = k^2 = ijk = -1.
constexpr Quaternion qmul(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return qmul(p, q); }

constexpr Quaternion qconj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double qnorm2(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }

inline double qmod(const Quaternion& q) { return std::sqrt(qnorm2(q)); }

inline Quaternion qinv(const Quaternion& q) {
    const double n2 = qnorm2(q);
    if (n2 == 0.0) {
        throw Error(Errc::zero_divisor, "zero divisor");
    }
    return qconj(q) / n2;
}

constexpr double qre(const Quaternion& q) { return q.w; }
constexpr Quaternion qim(const Quaternion& q) { return {0.0, q.x, q.y, q.z}; }

// Componentwise absolute tolerance.
inline bool approx_eq(const Quaternion& p, const Quaternion& q, double tol = 1e-10) {
    return std::abs(p.w - q.w) <= tol && std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol &&
           std::abs(p.z - q.z) <= tol;
}

// "w+x i+y j+z k" with signs folded in, e.g. "1-2 i+3 j-4 k".
inline std::string to_string(const Quaternion& q) {
    std::ostringstream os;
    os.precision(17);
    os << q.w;
    const std::array<std::pair<double, const char*>, 3> parts{{{q.x, " i"}, {q.y, " j"}, {q.z, " k"}}};
    for (const auto& [v, unit] : parts) {
        if (std::signbit(v)) {
            os << '-' << -v << unit;
        } else {
            os << '+' << v << unit;
        }
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) { return os << to_string(q); }

} // namespace kleinscan
