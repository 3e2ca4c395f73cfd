#include <gtest/gtest.h>

#include <cmath>

#include "kleinscan/conjugate.hpp"
#include "kleinscan/random.hpp"
#include "oracle.hpp"

using namespace kleinscan;

namespace {

const Mat2C rot{0.0, 1.0, -1.0, 0.0};

std::vector<double> schedule() { return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

double quad_residual(const Mat2C& g, Complex z) {
    // Plain evaluation, independent of the library's helper.
    return std::abs(-g.c * z * z + (g.d - g.a) * z + g.b);
}

Mat2C random_with_c(Sampler& s, double min_c) {
    for (;;) {
        const Mat2C g = s.sl2c();
        if (std::abs(g.c) > min_c) {
            return g;
        }
    }
}

} // namespace

TEST(SolveBeta, QuarterTurn) {
    const BetaRoots r = solve_beta(rot);
    ASSERT_EQ(r.roots.size(), 2u);
    // Equal moduli and real parts: larger imaginary part first.
    EXPECT_LE(std::abs(r.roots[0] - Complex(0, 1)), 1e-15);
    EXPECT_LE(std::abs(r.roots[1] - Complex(0, -1)), 1e-15);
    EXPECT_EQ(r.canonical(), r.roots[0]);
}

TEST(SolveBeta, ZeroUpperEntryHasRootZero) {
    const Mat2C g{2.0, 0.0, 3.0, 0.5};
    const BetaRoots r = solve_beta(g);
    ASSERT_EQ(r.roots.size(), 2u);
    EXPECT_EQ(r.roots[0], Complex(0.0));
    EXPECT_LE(std::abs(r.roots[1] - (g.d - g.a) / g.c), 1e-15);
}

TEST(SolveBeta, DoubleRoot) {
    // A parabolic gives a true double root; a = d gives -c z^2 + b = 0.
    const Mat2C p{2.0, -1.0, 1.0, 0.0};
    const BetaRoots r = solve_beta(p);
    EXPECT_LE(std::abs(r.roots[0] - r.roots[1]), 1e-7);
    EXPECT_LE(std::abs(r.roots[0] + 1.0), 1e-7);
    EXPECT_LE(quad_residual(p, r.roots[0]), 1e-12);
    const Mat2C sym{Complex(0.0, 2.0), 3.0, 1.0, Complex(0.0, 2.0)};
    for (const auto& z : solve_beta(sym).roots) {
        EXPECT_LE(std::abs(-sym.c * z * z + sym.b), 1e-14);
    }
}

TEST(SolveBeta, Errors) {
    try {
        (void)solve_beta(Mat2C{1.0, 2.0, 0.0, 1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::degenerate);
        EXPECT_STREQ(e.what(), "no solution (degenerate)");
    }
    EXPECT_THROW((void)solve_beta(Mat2C::identity()), Error);
    const BetaRoots lin = solve_beta(Mat2C{2.0, 3.0, 0.0, 0.5});
    ASSERT_EQ(lin.roots.size(), 1u);
    EXPECT_LE(quad_residual(Mat2C{2.0, 3.0, 0.0, 0.5}, lin.roots[0]), 1e-15);
}

TEST(SolveBeta, RootsSatisfyEquation) {
    Sampler s(51);
    for (int n = 0; n < 2000; ++n) {
        const Mat2C g = s.sl2c();
        for (const auto& z : solve_beta(g).roots) {
            EXPECT_LE(quad_residual(g, z), 1e-10 * beta_equation_scale(g, z));
        }
    }
}

TEST(ConjKill, QuarterTurn) {
    const ConjugationResult r = conj_kill(rot);
    EXPECT_LE(std::abs(r.beta - Complex(0, 1)), 1e-15);
    const Mat2C want{Complex(0, -1), 0.0, -1.0, Complex(0, 1)};
    EXPECT_LE(frobenius_distance(r.g_conj, want), 1e-15);
    EXPECT_LE(oracle::dist(oracle::mul(oracle::mul(r.h, rot), oracle::inverse(r.h)), want), 1e-15);
    EXPECT_EQ(r.residual_12, std::abs(r.g_conj.b));
    EXPECT_EQ(ctrace(r.g_conj), Complex(0.0));
    EXPECT_FALSE(r.pre_swapped);
}

TEST(ConjKill, AlreadyTriangular) {
    const Mat2C g{2.0, 0.0, 3.0, 0.5};
    const ConjugationResult r = conj_kill(g);
    EXPECT_EQ(r.beta, Complex(0.0));
    EXPECT_EQ(r.g_conj, g);

    const Mat2C d = Mat2C::diag(2.0, 0.5);
    const ConjugationResult rd = conj_kill(d);
    EXPECT_EQ(rd.h, Mat2C::identity());
    EXPECT_EQ(rd.g_conj, d);
}

TEST(ConjKill, PreSwapWhenLowerEntryVanishes) {
    const Mat2C g{2.0, 3.0, 0.0, 0.5};
    const ConjugationResult r = conj_kill(g);
    EXPECT_TRUE(r.pre_swapped);
    EXPECT_LE(r.residual_12, 1e-15);
    const Mat2C brute = oracle::mul(oracle::mul(r.h, g), oracle::inverse(r.h));
    EXPECT_LE(oracle::dist(brute, r.g_conj), 1e-14);
    EXPECT_LE(std::abs(ctrace(r.g_conj) - ctrace(g)), 1e-15);
}

TEST(ConjKill, IdentityRejected) {
    EXPECT_THROW((void)conj_kill(Mat2C::identity()), Error);
    EXPECT_THROW((void)conj_kill(-Mat2C::identity()), Error);
}

TEST(ConjKillProperty, InvariantsOnRandomInput) {
    Sampler s(52);
    for (int n = 0; n < 2000; ++n) {
        const Mat2C g = random_with_c(s, 1e-3);
        const ConjugationResult r = conj_kill(g);
        EXPECT_LE(r.residual_12, conj_kill_bound(r));
        EXPECT_LE(std::abs(ctrace(r.g_conj) - ctrace(g)), 1e-10 * (1.0 + std::abs(ctrace(g))));
        EXPECT_EQ(r.g_conj.c, g.c);
        EXPECT_EQ(classify(r.g_conj).kind, classify(g).kind);
        const Mat2C brute = oracle::mul(oracle::mul(r.h, g), oracle::inverse(r.h));
        EXPECT_LE(oracle::dist(brute, r.g_conj), 1e-9 * (1.0 + frobenius(r.g_conj)));
    }
}

TEST(Midpoint, Examples) {
    EXPECT_EQ(midpoint_conjugation_check(rot), 0.0);
    const Mat2C g{2.0, 1.0, 1.0, 1.0};
    const Mat2C brute = oracle::mul(oracle::mul(Mat2C{1.0, -0.5, 0.0, 1.0}, g), Mat2C{1.0, 0.5, 0.0, 1.0});
    EXPECT_LE(oracle::dist(brute, Mat2C{1.5, 1.25, 1.0, 1.5}), 1e-15);
    EXPECT_LE(midpoint_conjugation_check(g), 1e-12);
    EXPECT_THROW((void)midpoint_conjugation_check(Mat2C{2.0, 1.0, 0.0, 0.5}), Error);
}

TEST(Midpoint, RandomBelowBound) {
    Sampler s(53);
    for (int n = 0; n < 2000; ++n) {
        const Mat2C g = random_with_c(s, 0.1);
        EXPECT_LE(midpoint_conjugation_check(g), midpoint_bound(g));
    }
}

TEST(Perturbed, Examples) {
    const PerturbedSequence zero = perturbed_sequence(rot, Complex(0, 1), {0.0});
    EXPECT_LE(zero.terms[0].bc_abs, 1e-15);

    // b_n = eps (-2 c beta + d - a) - c eps^2 = 2 i eps + eps^2, c_n = -1.
    const double e = 1e-3;
    const PerturbedSequence one = perturbed_sequence(rot, Complex(0, 1), {e});
    EXPECT_NEAR(one.terms[0].bc_abs, std::abs(Complex(e * e, 2.0 * e)), 1e-17);
    EXPECT_LE(one.terms[0].bc_abs, 3.0 * e);
    EXPECT_LE(one.terms[0].bc_abs, one.decay_constant * e);
    EXPECT_EQ(ctrace(one.terms[0].g_n), Complex(0.0));
}

TEST(Perturbed, HalvingEpsilonHalvesProduct) {
    const PerturbedSequence seq = perturbed_sequence(rot, Complex(0, 1), {1e-4, 5e-5});
    EXPECT_NEAR(seq.terms[1].bc_abs / seq.terms[0].bc_abs, 0.5, 0.025);
}

TEST(Decay, RegimesAndSlopes) {
    const DecayFit lin = fit_decay(rot, Complex(0, 1), schedule());
    EXPECT_EQ(lin.regime, DecayRegime::linear);
    EXPECT_NEAR(lin.slope, 1.0, 0.05);
    EXPECT_NEAR(lin.first_order_coefficient, 2.0, 1e-15);

    const Mat2C p{2.0, -1.0, 1.0, 0.0};
    const ConjugationResult r = conj_kill(p);
    const DecayFit quad = fit_decay(p, r.beta, schedule());
    EXPECT_EQ(quad.regime, DecayRegime::quadratic);
    EXPECT_NEAR(quad.slope, 2.0, 0.1);
}

TEST(DecayProperty, RandomSlopes) {
    Sampler s(54);
    for (int n = 0; n < 500; ++n) {
        const Mat2C g = random_with_c(s, 1e-3);
        const ConjugationResult r = conj_kill(g);
        const DecayFit fit = fit_decay(g, r.beta, schedule());
        const PerturbedSequence seq = perturbed_sequence(g, r.beta, schedule());
        for (const auto& t : seq.terms) {
            EXPECT_LE(std::abs(ctrace(t.g_n) - ctrace(g)), 1e-10 * (1.0 + std::abs(ctrace(g))));
        }
        if (fit.regime == DecayRegime::linear) {
            EXPECT_NEAR(fit.slope, 1.0, 0.05);
        } else {
            EXPECT_NEAR(fit.slope, 2.0, 0.1);
        }
    }
}
