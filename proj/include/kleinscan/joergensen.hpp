#pragma once

#include <cmath>
#include <string>

#include "classify.hpp"
#include "matrix2.hpp"

namespace kleinscan {

// The fixed transformation paired against elements of the group.
struct TestMap {
    Mat2C matrix = Mat2C::identity();
    Complex r{1.0, 0.0}; // eigenvalue when diagonal
    bool is_diagonal = false;

    // diag(r, 1/r)
    static TestMap diagonal(Complex r) {
        if (r == 0.0) {
            throw Error(Errc::invalid_test_map, "test map eigenvalue must be nonzero");
        }
        return {Mat2C::diag(r, 1.0 / r), r, true};
    }

    static TestMap from_matrix(const Mat2C& m, double tol = 1e-9) {
        require_sl2c(m, tol);
        const double off = std::abs(m.b) + std::abs(m.c);
        if (off == 0.0 && m.a != 0.0) {
            return {m, m.a, true};
        }
        return {m, Complex{}, false};
    }
};

// Values inside [1, 1 + tight_margin] are reported as tight.
inline constexpr double tight_margin = 1e-6;

struct JorgensenReport {
    double value = 0.0;      // |tr^2 f - 4| + |tr[f,g] - 2|
    double term_trace = 0.0; // |tr^2 f - 4|
    double term_comm = 0.0;  // |tr[f,g] - 2|
    bool violated = false;
    bool pair_elementary = false;
    ElementaryReason elementary_reason = ElementaryReason::none;
    bool tight = false;

    std::string status() const {
        if (violated) {
            return "violated";
        }
        if (value < 1.0) {
            return "inconclusive (elementary pair)";
        }
        return tight ? "tight" : "satisfied";
    }
};

// Jorgensen's quantity for the ordered pair (f, g). The pair is a
// non-discreteness certificate only when the value is below 1 and the pair is
// non-elementary.
inline JorgensenReport jorgensen_value(const Mat2C& f, const Mat2C& g, double eps = 1e-9) {
    JorgensenReport rep;
    const Complex tf = ctrace(f);
    rep.term_trace = std::abs(tf * tf - 4.0);
    rep.term_comm = std::abs(ctrace(commutator(f, g)) - 2.0);
    rep.value = rep.term_trace + rep.term_comm;
    const ElementaryVerdict ev = is_elementary_pair(f, g, eps);
    rep.pair_elementary = ev.elementary;
    rep.elementary_reason = ev.reason;
    rep.violated = rep.value < 1.0 && !rep.pair_elementary;
    rep.tight = rep.value >= 1.0 && rep.value <= 1.0 + tight_margin;
    return rep;
}

// |r - 1/r|^2
inline double testmap_displacement(Complex r) { return std::norm(r - 1.0 / r); }

// Closed form of jorgensen_value(g, diag(r, 1/r)).value:
//   |tr(g)^2 - 4| + |bc| |r - 1/r|^2,
// which for elliptic g with real trace t is 4 - t^2 + |bc| |r - 1/r|^2.
inline double jorgensen_diag(const Mat2C& g, Complex r) {
    const Complex t = ctrace(g);
    return std::abs(t * t - 4.0) + std::abs(g.b * g.c) * testmap_displacement(r);
}

// Closed form of jorgensen_value(diag(r, 1/r), g).value with the test map
// leading: (1 + |bc|) |r - 1/r|^2.
inline double jorgensen_diag_testmap(const Mat2C& g, Complex r) {
    return (1.0 + std::abs(g.b * g.c)) * testmap_displacement(r);
}

// |tr[g, f] - 2 + bc (r - 1/r)^2| for f = diag(r, 1/r). The identity
// tr[g, f] - 2 = -bc (r - 1/r)^2 makes this zero up to rounding.
inline double commutator_trace_identity_check(const Mat2C& g, Complex r) {
    const Mat2C f = Mat2C::diag(r, 1.0 / r);
    const Complex s = r - 1.0 / r;
    return std::abs(ctrace(commutator(g, f)) - 2.0 + g.b * g.c * s * s);
}

// Bound the identity residual must satisfy.
inline double commutator_identity_bound(const Mat2C& g, Complex r) {
    return 1e-9 * (1.0 + std::abs(g.b * g.c) * testmap_displacement(r));
}

} // namespace kleinscan
