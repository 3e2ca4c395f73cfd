#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "conjugate.hpp"
#include "embed.hpp"
#include "joergensen.hpp"
#include "random.hpp"

namespace kleinscan {

struct IdentityCheck {
    std::string name;
    std::size_t samples = 0;
    double max_residual = 0.0;
    double max_ratio = 0.0; // residual / bound, the check passes while <= 1
    bool passed() const { return max_ratio <= 1.0; }
};

namespace detail {

inline void record(IdentityCheck& c, double residual, double bound) {
    ++c.samples;
    c.max_residual = std::max(c.max_residual, residual);
    c.max_ratio = std::max(c.max_ratio, residual / bound);
}

} // namespace detail

// Randomized checks of the algebraic identities the toolkit relies on.
inline std::vector<IdentityCheck> check_identities(std::size_t n, std::uint64_t seed) {
    Sampler s(seed);
    IdentityCheck comm{"commutator_trace_identity"};
    IdentityCheck diag{"jorgensen_closed_form"};
    IdentityCheck unit{"embedding_unitary"};
    IdentityCheck hom{"embedding_homomorphism"};
    IdentityCheck retr{"real_trace_invariance"};
    IdentityCheck kill{"conjugation_kill"};
    IdentityCheck mid{"midpoint_closed_form"};

    for (std::size_t i = 0; i < n; ++i) {
        const Mat2C g = s.sl2c();
        const Mat2C h = s.sl2c();
        const Complex r = s.eigenvalue();

        detail::record(comm, commutator_trace_identity_check(g, r), commutator_identity_bound(g, r));

        const Mat2C f = Mat2C::diag(r, 1.0 / r);
        const double general = jorgensen_value(g, f).value;
        detail::record(diag, std::abs(jorgensen_diag(g, r) - general), 1e-9 * (1.0 + general));

        detail::record(unit, is_unitary11(embed(g)).residual, 1e-9);
        detail::record(hom, frobenius_distance(embed(g * h), embed(g) * embed(h)), 1e-10 * (1.0 + frobenius(g * h)));

        const Mat2H u = s.u11h();
        const Mat2H v = s.u11h();
        detail::record(retr, re_trace_invariance_check(u, v), re_trace_bound(u));

        if (std::abs(g.c) > 1e-3) {
            const ConjugationResult cr = conj_kill(g);
            detail::record(kill, cr.residual_12, conj_kill_bound(cr));
            detail::record(mid, midpoint_conjugation_check(g), midpoint_bound(g));
        }
    }
    return {comm, diag, unit, hom, retr, kill, mid};
}

} // namespace kleinscan
