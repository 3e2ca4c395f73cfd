#pragma once

#include <cmath>
#include <vector>

#include "classify.hpp"
#include "error.hpp"
#include "matrix2.hpp"

namespace kleinscan {

// Roots of -c z^2 + (d - a) z + b = 0, ordered canonically: smaller modulus
// first, then larger real part, then larger imaginary part. A linear equation
// (c = 0) yields a single root.
struct BetaRoots {
    std::vector<Complex> roots;

    const Complex& canonical() const { return roots.front(); }
};

namespace detail {

inline bool canonical_less(const Complex& p, const Complex& q) {
    const double mp = std::abs(p);
    const double mq = std::abs(q);
    const double tie = 1e-12 * std::max(1.0, std::max(mp, mq));
    if (std::abs(mp - mq) > tie) {
        return mp < mq;
    }
    if (std::abs(p.real() - q.real()) > tie) {
        return p.real() > q.real();
    }
    return p.imag() > q.imag();
}

} // namespace detail

inline double beta_equation_residual(const Mat2C& g, Complex z) {
    return std::abs(-g.c * z * z + (g.d - g.a) * z + g.b);
}

inline double beta_equation_scale(const Mat2C& g, Complex z) {
    return 1.0 + std::abs(g.c) * std::norm(z) + std::abs(g.d - g.a) * std::abs(z) + std::abs(g.b);
}

inline BetaRoots solve_beta(const Mat2C& g) {
    const Complex A = -g.c;
    const Complex B = g.d - g.a;
    const Complex C = g.b;
    BetaRoots out;
    if (A == 0.0) {
        if (B == 0.0) {
            if (C == 0.0) {
                throw Error(Errc::identity_element, "every z solves the equation for a scalar matrix");
            }
            throw Error(Errc::degenerate, "no solution (degenerate)");
        }
        out.roots.push_back(-C / B);
        return out;
    }
    const auto r = stable_quadratic_roots(A, B, C);
    out.roots = {r[0], r[1]};
    if (detail::canonical_less(out.roots[1], out.roots[0])) {
        std::swap(out.roots[0], out.roots[1]);
    }
    for (auto& z : out.roots) {
        z += Complex(0.0, 0.0); // -0.0 -> 0.0
    }
    return out;
}

inline Mat2C translation(Complex beta) { return {1.0, beta, 0.0, 1.0}; }

// s g s^{-1} with s = [[0, 1], [-1, 0]], which swaps the roles of b and c.
inline Mat2C swap_conjugate(const Mat2C& g) { return {g.d, -g.c, -g.b, g.a}; }

struct ConjugationResult {
    Complex beta{};
    Mat2C h = Mat2C::identity();      // full conjugator, h g h^{-1} = g_conj
    Mat2C g_conj = Mat2C::identity(); // lower triangular up to rounding
    double residual_12 = 0.0;         // |(g_conj)_12|
    bool pre_swapped = false;         // h = [[1, beta], [0, 1]] s when set
    Mat2C target = Mat2C::identity(); // matrix the translation acts on (g, or s g s^{-1})
};

// Conjugates g by the translation z -> z + beta, beta a root of
// -c z^2 + (d - a) z + b = 0, so the (1,2) entry vanishes. When c = 0 and
// b != 0 the matrix is first conjugated by s; when b = c = 0 it is already
// diagonal and h = I.
inline ConjugationResult conj_kill(const Mat2C& g, double eps = 1e-9) {
    if (classify(g, eps).kind == Kind::identity) {
        throw Error(Errc::identity_element, "conjugation undefined for the identity");
    }
    ConjugationResult out;
    out.target = g;
    if (g.c == 0.0) {
        if (g.b == 0.0) {
            out.g_conj = g;
            return out;
        }
        out.target = swap_conjugate(g);
        out.pre_swapped = true;
    }
    out.beta = solve_beta(out.target).canonical();
    const Mat2C t = translation(out.beta);
    out.g_conj = t * out.target * translation(-out.beta);
    out.h = out.pre_swapped ? t * Mat2C{0.0, 1.0, -1.0, 0.0} : t;
    out.residual_12 = std::abs(out.g_conj.b);
    return out;
}

inline double conj_kill_bound(const ConjugationResult& r) {
    return 1e-9 * beta_equation_scale(r.target, r.beta);
}

// Brute-force h g h^{-1} with beta = (d - a) / (2c) against
//   [[(a+d)/2, ((a+d)^2 - 4) / (4c)], [c, (a+d)/2]].
inline double midpoint_conjugation_check(const Mat2C& g) {
    if (g.c == 0.0) {
        throw Error(Errc::degenerate, "midpoint conjugation needs c != 0");
    }
    const Complex beta = (g.d - g.a) / (2.0 * g.c);
    const Mat2C brute = translation(beta) * g * translation(-beta);
    const Complex t = ctrace(g);
    const Mat2C closed{t / 2.0, (t * t - 4.0) / (4.0 * g.c), g.c, t / 2.0};
    return frobenius_distance(brute, closed);
}

inline double midpoint_bound(const Mat2C& g) {
    const Complex beta = (g.d - g.a) / (2.0 * g.c);
    return 1e-9 * beta_equation_scale(g, beta);
}

struct PerturbedTerm {
    double eps = 0.0;
    Mat2C g_n;
    double bc_abs = 0.0; // |b_n c_n|
};

struct PerturbedSequence {
    std::vector<PerturbedTerm> terms;
    double decay_constant = 0.0; // C with |b_n c_n| <= C eps_n while |c| eps_n <= 1
};

// g_n = h_n g h_n^{-1} with h_n = [[1, beta + eps_n], [0, 1]].
inline PerturbedSequence perturbed_sequence(const Mat2C& g, Complex beta, const std::vector<double>& eps_schedule) {
    PerturbedSequence out;
    out.decay_constant = (1.0 + std::abs(2.0 * g.c * beta) + std::abs(g.d - g.a)) * std::abs(g.c);
    out.terms.reserve(eps_schedule.size());
    for (double e : eps_schedule) {
        const Complex shift = beta + e;
        PerturbedTerm t;
        t.eps = e;
        t.g_n = translation(shift) * g * translation(-shift);
        t.bc_abs = std::abs(t.g_n.b * t.g_n.c);
        out.terms.push_back(t);
    }
    return out;
}

enum class DecayRegime { linear, quadratic };

inline const char* regime_name(DecayRegime r) { return r == DecayRegime::linear ? "linear" : "quadratic"; }

struct DecayFit {
    DecayRegime regime = DecayRegime::linear;
    double slope = 0.0;
    double first_order_coefficient = 0.0; // |(d - a) - 2 c beta|
};

// Expanding at beta: b_n = eps ((d - a) - 2 c beta) - c eps^2 (plus the root
// residual). The first-order coefficient is +-sqrt(tr^2 - 4), so it vanishes
// exactly for the double root of a parabolic element.
inline DecayFit fit_decay(const Mat2C& g, Complex beta, const std::vector<double>& eps_schedule) {
    DecayFit fit;
    fit.first_order_coefficient = std::abs((g.d - g.a) - 2.0 * g.c * beta);
    const double scale = 1.0 + std::abs(g.d - g.a) + std::abs(2.0 * g.c * beta);
    fit.regime = fit.first_order_coefficient <= 1e-7 * scale ? DecayRegime::quadratic : DecayRegime::linear;

    const PerturbedSequence seq = perturbed_sequence(g, beta, eps_schedule);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (const auto& t : seq.terms) {
        if (t.eps <= 0.0 || t.bc_abs <= 0.0) {
            continue;
        }
        const double x = std::log(t.eps);
        const double y = std::log(t.bc_abs);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) {
        const double dn = static_cast<double>(n);
        fit.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    }
    return fit;
}

} // namespace kleinscan
