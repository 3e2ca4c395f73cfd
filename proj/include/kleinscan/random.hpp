#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "matrix2.hpp"

namespace kleinscan {

// Samplers for property checks. All draws are bounded so entry sizes stay
// moderate (|entries| <= e^max_stretch).
class Sampler {
public:
    explicit Sampler(std::uint64_t seed = 20090403) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Complex complex_in_disk(double radius) {
        const double rho = radius * std::sqrt(uniform(0.0, 1.0));
        const double th = uniform(0.0, 2.0 * std::numbers::pi);
        return std::polar(rho, th);
    }

    Quaternion unit_quaternion() {
        std::normal_distribution<double> n(0.0, 1.0);
        Quaternion q{n(rng_), n(rng_), n(rng_), n(rng_)};
        return q / qmod(q);
    }

    // k1 diag(e^{t+i phi}, e^{-t-i phi}) k2 with k1, k2 in SU(2).
    Mat2C sl2c(double max_stretch = 2.0) {
        const Complex lam = std::exp(Complex(uniform(-max_stretch, max_stretch), uniform(0.0, 2.0 * std::numbers::pi)));
        return su2() * Mat2C::diag(lam, 1.0 / lam) * su2();
    }

    Mat2C su2() {
        const Quaternion q = unit_quaternion();
        const Complex alpha(q.w, q.x);
        const Complex beta(q.y, q.z);
        return {alpha, beta, -std::conj(beta), std::conj(alpha)};
    }

    // diag(u1, v1) boost(t) diag(u2, v2), unit quaternions u, v and a real
    // boost [[cosh t, sinh t], [sinh t, cosh t]]; covers U(1,1;H).
    Mat2H u11h(double max_stretch = 2.0) {
        const double t = uniform(-max_stretch, max_stretch);
        const Mat2H boost{std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t)};
        const Mat2H k1 = Mat2H::diag(unit_quaternion(), unit_quaternion());
        const Mat2H k2 = Mat2H::diag(unit_quaternion(), unit_quaternion());
        return k1 * boost * k2;
    }

    // Test-map eigenvalue with |r| in [lo, hi] and uniform argument.
    Complex eigenvalue(double lo = 0.1, double hi = 10.0) {
        const double mag = std::exp(uniform(std::log(lo), std::log(hi)));
        return std::polar(mag, uniform(0.0, 2.0 * std::numbers::pi));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace kleinscan
