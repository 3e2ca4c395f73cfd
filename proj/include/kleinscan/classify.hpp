#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix2.hpp"

namespace kleinscan {

enum class Kind { identity, elliptic, parabolic, loxodromic };

inline const char* kind_name(Kind k) {
    switch (k) {
    case Kind::identity: return "identity";
    case Kind::elliptic: return "elliptic";
    case Kind::parabolic: return "parabolic";
    case Kind::loxodromic: return "loxodromic";
    }
    return "unknown";
}

struct ElementClass {
    Kind kind = Kind::identity;
    bool borderline = false;
    Complex trace_sq{};
};

// Real trace test: |Im tr| < 1e-9 (1 + |tr|).
inline bool trace_is_real(Complex tr, double tol = 1e-9) {
    return std::abs(tr.imag()) < tol * (1.0 + std::abs(tr));
}

// Classifies the Mobius transformation of g; g and -g get the same answer.
// borderline marks a decision that was made inside the tolerance band rather
// than by a clear margin.
inline ElementClass classify(const Mat2C& g, double eps = 1e-9) {
    ElementClass out;
    const Complex tr = ctrace(g);
    out.trace_sq = tr * tr;

    const double band = eps * (1.0 + std::norm(tr));
    if (distance_to_identity(g) <= eps * (1.0 + frobenius(g))) {
        out.kind = Kind::identity;
        return out;
    }

    const double to_parabolic = std::abs(out.trace_sq - 4.0);
    if (to_parabolic <= band) {
        out.kind = Kind::parabolic;
        out.borderline = to_parabolic != 0.0;
        return out;
    }

    const double im = std::abs(tr.imag());
    if (trace_is_real(tr, eps) && std::abs(tr.real()) < 2.0) {
        out.kind = Kind::elliptic;
        out.borderline = im != 0.0 || to_parabolic <= 10.0 * band;
        return out;
    }

    out.kind = Kind::loxodromic;
    // Nearly real trace inside (-2, 2) that just missed the elliptic test.
    out.borderline = (std::abs(tr.real()) < 2.0 && im <= 10.0 * eps * (1.0 + std::abs(tr))) ||
                     to_parabolic <= 10.0 * band;
    return out;
}

// ---------------------------------------------------------------------------
// Riemann sphere

struct SpherePoint {
    bool infinite = false;
    Complex z{};

    static SpherePoint at(Complex v) { return {false, v}; }
    static SpherePoint infinity() { return {true, {}}; }
};

// Chordal distance on the unit sphere (diameter 2).
inline double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    if (p.infinite && q.infinite) {
        return 0.0;
    }
    if (p.infinite || q.infinite) {
        const Complex& v = p.infinite ? q.z : p.z;
        return 2.0 / std::sqrt(1.0 + std::norm(v));
    }
    return 2.0 * std::abs(p.z - q.z) / std::sqrt((1.0 + std::norm(p.z)) * (1.0 + std::norm(q.z)));
}

// z -> (a z + b) / (c z + d), computed on homogeneous coordinates.
inline SpherePoint mobius(const Mat2C& g, const SpherePoint& p) {
    Complex num;
    Complex den;
    if (p.infinite) {
        num = g.a;
        den = g.c;
    } else {
        num = g.a * p.z + g.b;
        den = g.c * p.z + g.d;
    }
    const double scale = std::abs(num) + std::abs(den);
    if (std::abs(den) <= 1e-300 || std::abs(den) <= 1e-15 * scale) {
        return SpherePoint::infinity();
    }
    return SpherePoint::at(num / den);
}

struct FixedPoints {
    std::vector<SpherePoint> points;
};

// Roots of A z^2 + B z + C = 0 with A != 0, paired to avoid cancellation: the
// larger root comes from the formula, the other from the product C / A.
inline std::array<Complex, 2> stable_quadratic_roots(Complex A, Complex B, Complex C) {
    const Complex disc = B * B - 4.0 * A * C;
    Complex s = std::sqrt(disc);
    if ((std::conj(B) * s).real() < 0.0) {
        s = -s;
    }
    const Complex q = -0.5 * (B + s);
    if (q == 0.0) {
        return {0.0, 0.0};
    }
    return {q / A, C / q};
}

// Fixed points of z -> (az+b)/(cz+d): roots of c z^2 + (d - a) z - b = 0, plus
// infinity when c = 0.
inline FixedPoints fixed_points(const Mat2C& g, double eps = 1e-9) {
    const ElementClass cls = classify(g, eps);
    if (cls.kind == Kind::identity) {
        throw Error(Errc::identity_element, "identity has no isolated fixed points");
    }
    const double scale = frobenius(g);
    FixedPoints out;
    if (std::abs(g.c) <= 1e-14 * scale) {
        out.points.push_back(SpherePoint::infinity());
        if (cls.kind != Kind::parabolic) {
            out.points.push_back(SpherePoint::at(g.b / (g.a - g.d)));
        }
        return out;
    }
    if (cls.kind == Kind::parabolic) {
        out.points.push_back(SpherePoint::at((g.a - g.d) / (2.0 * g.c)));
        return out;
    }
    const auto roots = stable_quadratic_roots(g.c, g.d - g.a, -g.b);
    out.points.push_back(SpherePoint::at(roots[0]));
    out.points.push_back(SpherePoint::at(roots[1]));
    return out;
}

// [f, g] = f g f^{-1} g^{-1}
inline Mat2C commutator(const Mat2C& f, const Mat2C& g) {
    return f * g * sl2_inverse(f) * sl2_inverse(g);
}

// ---------------------------------------------------------------------------
// Elementary pairs

enum class ElementaryReason {
    none,
    identity_member,
    common_fixed_point,
    commutator_trace_2,
    both_elliptic_common_axis,
    interchanged_fixed_points,
};

inline const char* reason_name(ElementaryReason r) {
    switch (r) {
    case ElementaryReason::none: return "none";
    case ElementaryReason::identity_member: return "identity-member";
    case ElementaryReason::common_fixed_point: return "common-fixed-point";
    case ElementaryReason::commutator_trace_2: return "commutator-trace-2";
    case ElementaryReason::both_elliptic_common_axis: return "both-elliptic-common-axis";
    case ElementaryReason::interchanged_fixed_points: return "interchanged-fixed-points";
    }
    return "unknown";
}

struct ElementaryVerdict {
    bool elementary = false;
    ElementaryReason reason = ElementaryReason::none;

    explicit operator bool() const { return elementary; }
};

namespace detail {

inline bool preserves_pair(const Mat2C& g, const SpherePoint& p, const SpherePoint& q, double tol) {
    const SpherePoint gp = mobius(g, p);
    const SpherePoint gq = mobius(g, q);
    const bool same = chordal_distance(gp, p) <= tol && chordal_distance(gq, q) <= tol;
    const bool swapped = chordal_distance(gp, q) <= tol && chordal_distance(gq, p) <= tol;
    return same || swapped;
}

} // namespace detail

// Detects the elementary configurations of <f, g> that matter for
// Jorgensen's inequality:
//   - a common fixed point on the sphere (equivalently tr[f,g] = 2),
//   - two elliptics whose axes meet in H^3 (a common interior fixed point),
//   - an invariant pair of points that one generator interchanges.
// A false answer is a heuristic: exotic elementary groups may be missed.
inline ElementaryVerdict is_elementary_pair(const Mat2C& f, const Mat2C& g, double eps = 1e-9) {
    const ElementClass cf = classify(f, eps);
    const ElementClass cg = classify(g, eps);
    if (cf.kind == Kind::identity || cg.kind == Kind::identity) {
        return {true, ElementaryReason::identity_member};
    }

    const double point_tol = 1e-7;
    const FixedPoints pf = fixed_points(f, eps);
    const FixedPoints pg = fixed_points(g, eps);
    for (const auto& p : pf.points) {
        for (const auto& q : pg.points) {
            if (chordal_distance(p, q) <= point_tol) {
                return {true, ElementaryReason::common_fixed_point};
            }
        }
    }

    const Complex gamma = ctrace(commutator(f, g)) - 2.0;
    const double gamma_scale = 1.0 + frobenius(f) * frobenius(f) * frobenius(g) * frobenius(g);
    if (std::abs(gamma) <= eps * gamma_scale) {
        return {true, ElementaryReason::commutator_trace_2};
    }

    // Elliptic axes meet iff gamma is real and lies in [-beta_f beta_g / 4, 0).
    if (cf.kind == Kind::elliptic && cg.kind == Kind::elliptic) {
        const double beta_f = (cf.trace_sq - 4.0).real();
        const double beta_g = (cg.trace_sq - 4.0).real();
        const double lower = -beta_f * beta_g / 4.0;
        const double tol = 1e-9 * (1.0 + std::abs(lower));
        if (std::abs(gamma.imag()) <= tol && gamma.real() >= lower - tol && gamma.real() <= tol) {
            return {true, ElementaryReason::both_elliptic_common_axis};
        }
    }

    // Invariant two-point sets: the fixed pair of f, of g, or of fg.
    std::vector<FixedPoints> pairs{pf, pg};
    const Mat2C fg = f * g;
    if (classify(fg, eps).kind != Kind::identity) {
        pairs.push_back(fixed_points(fg, eps));
    }
    for (const auto& fp : pairs) {
        if (fp.points.size() != 2) {
            continue;
        }
        const auto& p = fp.points[0];
        const auto& q = fp.points[1];
        if (detail::preserves_pair(f, p, q, point_tol) && detail::preserves_pair(g, p, q, point_tol)) {
            return {true, ElementaryReason::interchanged_fixed_points};
        }
    }
    return {false, ElementaryReason::none};
}

} // namespace kleinscan
