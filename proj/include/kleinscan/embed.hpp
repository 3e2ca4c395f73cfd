#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "error.hpp"
#include "matrix2.hpp"

namespace kleinscan {

// T = (1/sqrt 2) [[1, -j], [-j, 1]] and its inverse (1/sqrt 2) [[1, j], [j, 1]].
struct EmbeddingConstant {
    Mat2H T;
    Mat2H Tinv;

    static const EmbeddingConstant& get() {
        static const EmbeddingConstant k = [] {
            const double s = 1.0 / std::numbers::sqrt2;
            const Quaternion one(s);
            const Quaternion jj = Quaternion::j() * s;
            return EmbeddingConstant{{one, -jj, -jj, one}, {one, jj, jj, one}};
        }();
        return k;
    }
};

// SL(2,C) -> U(1,1;H), f -> T f T^{-1}.
inline Mat2H embed(const Mat2C& f, double tol = 1e-9) {
    require_sl2c(f, tol);
    const auto& k = EmbeddingConstant::get();
    return k.T * to_quaternion_entries(f) * k.Tinv;
}

// P(z1, z2) = z1 z2^{-1}, the ball-model chart.
inline Quaternion project_ball(const HermPair& z, double tol = 1e-12) {
    if (qnorm2(z.z2) == 0.0) {
        throw Error(Errc::point_at_infinity, "point at infinity of the chart");
    }
    const double n = qre(herm(z, z));
    if (n > tol * (qnorm2(z.z1) + qnorm2(z.z2))) {
        throw Error(Errc::outside_ball, "positive vector lies outside the ball");
    }
    return z.z1 * qinv(z.z2);
}

// (a p + b)(c p + d)^{-1}
inline Quaternion mobius(const Mat2H& g, const Quaternion& p) { return (g.a * p + g.b) * qinv(g.c * p + g.d); }

// ---------------------------------------------------------------------------
// Stabilizer forms of the proper totally geodesic submanifolds of H^1_H.

enum class SubmanifoldTag { H_R1, H_C1, H_I1, H_H1_full, none_detected };

inline const char* tag_name(SubmanifoldTag t) {
    switch (t) {
    case SubmanifoldTag::H_R1: return "H_R1";
    case SubmanifoldTag::H_C1: return "H_C1";
    case SubmanifoldTag::H_I1: return "H_I1";
    case SubmanifoldTag::H_H1_full: return "H_H1_full";
    case SubmanifoldTag::none_detected: return "none_detected";
    }
    return "unknown";
}

struct SubmanifoldType {
    SubmanifoldTag tag = SubmanifoldTag::none_detected;
    std::optional<int> epsilon;       // H_I1 only, taken from the first matrix
    std::optional<Quaternion> lambda; // H_R1 only, taken from the first matrix
    std::vector<SubmanifoldTag> also_fits;
};

namespace detail {

inline bool entry_is_complex(const Quaternion& q, double tol) {
    return std::abs(q.y) <= tol && std::abs(q.z) <= tol;
}

inline bool entry_is_real(const Quaternion& q, double tol) {
    return entry_is_complex(q, tol) && std::abs(q.x) <= tol;
}

} // namespace detail

// g = A lambda with A real: lambda is the polar part of the first entry that
// is not negligible. Returns the unit quaternion when the factorization holds.
inline std::optional<Quaternion> real_form_factor(const Mat2H& g, double tol = 1e-8) {
    const std::array<Quaternion, 4> entries{g.a, g.b, g.c, g.d};
    std::optional<Quaternion> lambda;
    for (const auto& e : entries) {
        if (qmod(e) > tol) {
            lambda = e / qmod(e);
            break;
        }
    }
    if (!lambda) {
        return std::nullopt;
    }
    const Quaternion li = qconj(*lambda);
    for (const auto& e : entries) {
        if (!detail::entry_is_real(e * li, tol)) {
            return std::nullopt;
        }
    }
    return lambda;
}

inline bool complex_form(const Mat2H& g, double tol = 1e-8) {
    using detail::entry_is_complex;
    return entry_is_complex(g.a, tol) && entry_is_complex(g.b, tol) && entry_is_complex(g.c, tol) &&
           entry_is_complex(g.d, tol);
}

// [[a, b], [-eps b, eps a]]
inline bool imaginary_form(const Mat2H& g, int epsilon, double tol = 1e-8) {
    const double e = epsilon;
    return approx_eq(g.c, -e * g.b, tol) && approx_eq(g.d, e * g.a, tol);
}

inline std::optional<int> imaginary_form_sign(const Mat2H& g, double tol = 1e-8) {
    if (imaginary_form(g, +1, tol)) {
        return +1;
    }
    if (imaginary_form(g, -1, tol)) {
        return -1;
    }
    return std::nullopt;
}

// Strongest stabilizer form shared by every matrix, in the given coordinates.
// H_R1 ranks first; H_C1 and H_I1 are incomparable, and H_C1 is reported when
// both fit (with both listed in also_fits).
inline SubmanifoldType detect_form(const std::vector<Mat2H>& gs, double tol = 1e-8) {
    SubmanifoldType out;
    if (gs.empty()) {
        return out;
    }
    for (const auto& g : gs) {
        if (!is_unitary11(g, tol).unitary) {
            return out;
        }
    }

    bool real_fit = true;
    bool complex_fit = true;
    bool imag_fit = true;
    std::optional<Quaternion> first_lambda;
    std::optional<int> first_eps;
    for (const auto& g : gs) {
        const auto lam = real_form_factor(g, tol);
        real_fit = real_fit && lam.has_value();
        if (lam && !first_lambda) {
            first_lambda = lam;
        }
        complex_fit = complex_fit && complex_form(g, tol);
        const auto e = imaginary_form_sign(g, tol);
        imag_fit = imag_fit && e.has_value();
        if (e && !first_eps) {
            first_eps = e;
        }
    }

    if (real_fit) {
        out.also_fits.push_back(SubmanifoldTag::H_R1);
    }
    if (complex_fit) {
        out.also_fits.push_back(SubmanifoldTag::H_C1);
    }
    if (imag_fit) {
        out.also_fits.push_back(SubmanifoldTag::H_I1);
    }
    out.also_fits.push_back(SubmanifoldTag::H_H1_full);

    if (real_fit) {
        out.tag = SubmanifoldTag::H_R1;
        out.lambda = first_lambda;
    } else if (complex_fit) {
        out.tag = SubmanifoldTag::H_C1;
    } else if (imag_fit) {
        out.tag = SubmanifoldTag::H_I1;
        out.epsilon = first_eps;
    } else {
        out.tag = SubmanifoldTag::H_H1_full;
    }
    return out;
}

enum class TraceType { type_i, type_ii, neither };

inline const char* trace_type_name(TraceType t) {
    switch (t) {
    case TraceType::type_i: return "type_i";
    case TraceType::type_ii: return "type_ii";
    case TraceType::neither: return "neither";
    }
    return "unknown";
}

// type_i: a, d real and b, c purely imaginary.
// type_ii: a, d purely imaginary and b, c real.
inline TraceType sl2c_trace_type(const Mat2C& g, double tol = 1e-8) {
    auto real = [tol](Complex z) { return std::abs(z.imag()) <= tol; };
    auto imag = [tol](Complex z) { return std::abs(z.real()) <= tol; };
    if (real(g.a) && real(g.d) && imag(g.b) && imag(g.c)) {
        return TraceType::type_i;
    }
    if (imag(g.a) && imag(g.d) && real(g.b) && real(g.c)) {
        return TraceType::type_ii;
    }
    return TraceType::neither;
}

// |Re tr(g) - Re tr(f g f^{-1})|
inline double re_trace_invariance_check(const Mat2H& g, const Mat2H& f, double tol = 1e-9) {
    const Mat2H conj = f * g * uinv(f, tol);
    return std::abs(qre(qtrace(g)) - qre(qtrace(conj)));
}

inline double re_trace_bound(const Mat2H& g) { return 1e-9 * (1.0 + qmod(qtrace(g))); }

} // namespace kleinscan
