// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>

#include "kleinscan/kleinscan.hpp"
#include "kleinscan/json_io.hpp"
#include "kleinscan/random.hpp"
#include "oracle.hpp"

using namespace kleinscan;

namespace {

const std::string fixtures = KLEINSCAN_FIXTURE_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

GroupSpec load_fixture(const std::string& name) {
    std::ifstream in(fixtures + "/" + name);
    return io::parse_group(nlohmann::json::parse(in)).spec;
}

Mat2C with_lower_entry(Sampler& s, double min_c) {
    for (;;) {
        const Mat2C g = s.sl2c();
        if (std::abs(g.c) > min_c) {
            return g;
        }
    }
}

// tr[g, diag(r, 1/r)] - 2 = -bc (r - 1/r)^2 on 1e4 samples, bound 1e-9 (1 + |bc||r - 1/r|^2).
Outcome ac1() {
    Sampler s(101);
    const int n = 10000;
    double worst = 0.0;
    double worst_oracle = 0.0;
    double elapsed = 0.0;
    for (int i = 0; i < n; ++i) {
        const Mat2C g = s.sl2c();
        const Complex r = s.eigenvalue(0.1, 10.0);
        const auto t0 = Clock::now();
        const double res = commutator_trace_identity_check(g, r);
        elapsed += seconds_since(t0);
        const double bound = 1e-9 * (1.0 + std::abs(g.b * g.c) * std::norm(r - 1.0 / r));
        const Complex sd = r - 1.0 / r;
        const double brute =
            std::abs(oracle::commutator_trace(g, Mat2C::diag(r, 1.0 / r)) - 2.0 + g.b * g.c * sd * sd);
        worst = std::max(worst, res / bound);
        worst_oracle = std::max(worst_oracle, brute / bound);
    }
    return {worst <= 1.0 && worst_oracle <= 1.0 && elapsed < 1.0,
            fmt("n=%d max residual/bound=%.3g (oracle %.3g) time=%.3fs", n, worst, worst_oracle, elapsed)};
}

// Embedded matrices are J-unitary to 1e-9 with all five relations; homomorphism to 1e-10.
Outcome ac2() {
    Sampler s(102);
    const int n = 10000;
    double form = 0.0;
    double rel = 0.0;
    double hom = 0.0;
    double elapsed = 0.0;
    for (int i = 0; i < n; ++i) {
        const Mat2C g = s.sl2c();
        const Mat2C h = s.sl2c();
        const auto t0 = Clock::now();
        const Mat2H eg = embed(g);
        const UnitaryReport u = is_unitary11(eg);
        const Mat2H egh = embed(g * h);
        const Mat2H eh = embed(h);
        elapsed += seconds_since(t0);
        form = std::max(form, u.residual);
        for (double x : u.relations) {
            rel = std::max(rel, x);
        }
        hom = std::max(hom, oracle::dist(egh, oracle::mul(eg, eh)));
    }
    return {form <= 1e-9 && rel <= 1e-9 && hom <= 1e-10 && elapsed < 2.0,
            fmt("n=%d max form residual=%.3g max relation=%.3g max homomorphism=%.3g time=%.3fs", n, form, rel, hom,
                elapsed)};
}

double form5_residual(const Mat2H& g, int eps) {
    return std::max(qmod(g.c + g.b * static_cast<double>(eps)), qmod(g.d - g.a * static_cast<double>(eps)));
}

// type_i lands in [[a, b], [-b, a]], type_ii in [[a, b], [b, -a]], generic in neither.
Outcome ac3() {
    Sampler s(103);
    const auto t0 = Clock::now();
    double worst_i = 0.0;
    double worst_ii = 0.0;
    double closest_generic = INFINITY;
    int type_hits = 0;
    for (int i = 0; i < 100; ++i) {
        const double a = s.uniform(0.5, 3.0);
        const double b = s.uniform(-2.0, 2.0);
        const double c = s.uniform(-2.0, 2.0);
        const Mat2C g1{a, Complex(0, b), Complex(0, c), (1.0 - b * c) / a};
        type_hits += sl2c_trace_type(g1) == TraceType::type_i;
        worst_i = std::max(worst_i, form5_residual(oracle::embed(g1), +1));

        const double bb = s.uniform(0.5, 2.0);
        const Mat2C g2{Complex(0, a), bb, c, Complex(0, -(1.0 + bb * c) / a)};
        type_hits += sl2c_trace_type(g2) == TraceType::type_ii;
        worst_ii = std::max(worst_ii, form5_residual(oracle::embed(g2), -1));

        const Mat2C g3 = s.sl2c();
        type_hits += sl2c_trace_type(g3) == TraceType::neither;
        const Mat2H e3 = embed(g3);
        closest_generic = std::min({closest_generic, form5_residual(e3, +1), form5_residual(e3, -1)});
    }
    const double elapsed = seconds_since(t0);
    return {worst_i <= 1e-10 && worst_ii <= 1e-10 && closest_generic > 1e-10 && type_hits == 300 && elapsed < 1.0,
            fmt("type_i residual=%.3g type_ii residual=%.3g generic min residual=%.3g classified %d/300 time=%.3fs",
                worst_i, worst_ii, closest_generic, type_hits, elapsed)};
}

// Re tr(g) = Re tr(f g f^-1) on 1e4 random unitary pairs to 1e-9.
Outcome ac4() {
    Sampler s(104);
    const int n = 10000;
    double worst = 0.0;
    double worst_oracle = 0.0;
    double elapsed = 0.0;
    for (int i = 0; i < n; ++i) {
        const Mat2H g = s.u11h();
        const Mat2H f = s.u11h();
        const auto t0 = Clock::now();
        worst = std::max(worst, re_trace_invariance_check(g, f));
        elapsed += seconds_since(t0);
        const Mat2H conj = oracle::mul(oracle::mul(f, g), oracle::inverse(f));
        worst_oracle = std::max(worst_oracle, std::abs(conj.a.w + conj.d.w - (g.a.w + g.d.w)));
    }
    return {worst <= 1e-9 && worst_oracle <= 1e-9 && elapsed < 1.0,
            fmt("n=%d max residual=%.3g (oracle %.3g) time=%.3fs", n, worst, worst_oracle, elapsed)};
}

// Kill the (1,2) entry, keep the trace, match the midpoint closed form, and
// recover the decay slope of |b_n c_n|.
Outcome ac5() {
    Sampler s(105);
    const int n = 10000;
    const std::vector<double> schedule{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    double kill = 0.0;
    double trace = 0.0;
    double mid = 0.0;
    double slope_err_lin = 0.0;
    double slope_err_quad = 0.0;
    int linear = 0;
    int quadratic = 0;
    for (int i = 0; i < n; ++i) {
        const Mat2C g = with_lower_entry(s, 1e-3);
        const ConjugationResult r = conj_kill(g);
        const Mat2C brute = oracle::mul(oracle::mul(r.h, g), oracle::inverse(r.h));
        kill = std::max(kill, std::abs(brute.b) / (1e-9 * beta_equation_scale(g, r.beta)));
        trace = std::max(trace, std::abs(ctrace(r.g_conj) - ctrace(g)));
        mid = std::max(mid, midpoint_conjugation_check(g) / midpoint_bound(g));
        const DecayFit fit = fit_decay(g, r.beta, schedule);
        if (fit.regime == DecayRegime::linear) {
            ++linear;
            slope_err_lin = std::max(slope_err_lin, std::abs(fit.slope - 1.0));
        } else {
            ++quadratic;
            slope_err_quad = std::max(slope_err_quad, std::abs(fit.slope - 2.0));
        }
    }
    // Detected double roots: parabolic elements with c != 0.
    for (const Mat2C& p : {Mat2C{2.0, -1.0, 1.0, 0.0}, Mat2C{-1.0, 0.0, Complex(0.5, 2.0), -1.0},
                           Mat2C{Complex(1.0, 1.0), 1.0, 1.0, Complex(1.0, -1.0)}}) {
        const ConjugationResult r = conj_kill(p);
        const DecayFit fit = fit_decay(p, r.beta, schedule);
        if (fit.regime == DecayRegime::quadratic) {
            ++quadratic;
            slope_err_quad = std::max(slope_err_quad, std::abs(fit.slope - 2.0));
        } else {
            slope_err_quad = INFINITY;
        }
    }
    return {kill <= 1.0 && trace <= 1e-10 && mid <= 1.0 && slope_err_lin <= 0.05 && slope_err_quad <= 0.1,
            fmt("n=%d max |(hgh^-1)_12|/bound=%.3g trace drift=%.3g midpoint/bound=%.3g linear=%d (|slope-1|<=%.3g) "
                "quadratic=%d (|slope-2|<=%.3g)",
                n, kill, trace, mid, linear, slope_err_lin, quadratic, slope_err_quad)};
}

// Closed forms agree with the general value; the modular group has no violation at L = 8.
Outcome ac6() {
    Sampler s(106);
    const int n = 10000;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const Mat2C g = s.sl2c();
        const Complex r = s.eigenvalue();
        const Mat2C f = Mat2C::diag(r, 1.0 / r);
        worst = std::max(worst, std::abs(jorgensen_diag(g, r) - jorgensen_value(g, f).value));
        worst = std::max(worst, std::abs(jorgensen_diag_testmap(g, r) - jorgensen_value(f, g).value));
    }
    const auto t0 = Clock::now();
    ScanOptions opt;
    opt.depth = 8;
    const ScanReport rep = scan(load_fixture("modular_group.json"), Mat2C::diag(2.0, 0.5), opt);
    const double elapsed = seconds_since(t0);
    return {worst <= 1e-9 && rep.violations.empty() && rep.verdict == Verdict::no_witness_up_to_depth &&
                elapsed < 30.0,
            fmt("n=%d max |closed - general|=%.3g; modular L=8: %zu elements, %zu elliptic, %zu violations, "
                "time=%.3fs",
                n, worst, rep.elements_seen, rep.kinds.elliptic, rep.violations.size(), elapsed)};
}

// Irrational rotation plus a loxodromic: near-identity elliptic within 0.3.
Outcome ac7() {
    const GroupSpec spec = load_fixture("irrational_rotation.json");
    const auto t0 = Clock::now();
    ScanOptions opt;
    opt.depth = 8;
    opt.delta = 0.3;
    const ScanReport rep = scan(spec, Mat2C::diag(2.0, 0.5), opt);
    const double elapsed = seconds_since(t0);
    if (rep.near_identity_elliptics.empty()) {
        return {false, fmt("no near-identity elliptic at L=%d, time=%.3fs", opt.depth, elapsed)};
    }
    const NearIdentity& best = rep.near_identity_elliptics.front();

    // Re-multiply the witness word with Eigen.
    const ElementTable table(spec, opt.depth);
    double brute = INFINITY;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table.word_string(i) != best.word) {
            continue;
        }
        oracle::M2 m = oracle::M2::Identity();
        const int k = static_cast<int>(spec.generators.size());
        for (int l : table.word(i)) {
            const oracle::M2 gen = oracle::rep(spec.generators[static_cast<std::size_t>(l % k)]);
            m = m * (l < k ? gen : oracle::M2(gen.inverse()));
        }
        const oracle::M2 id = oracle::M2::Identity();
        brute = std::min((m - id).norm(), (m + id).norm());
    }
    // The 44th power of the rotation, for reference: 44 - 14 pi ~ 0.0177.
    const double residue = 44.0 - 14.0 * std::numbers::pi;
    return {rep.verdict == Verdict::nondiscrete_witness && best.distance < 0.3 && brute < 0.3 && elapsed < 60.0,
            fmt("L=%d witness %s at distance %.6g (oracle %.6g), %zu near-identity, %zu violations; "
                "R^44 residue=%.4f; time=%.3fs",
                opt.depth, best.word.c_str(), best.distance, brute, rep.near_identity_elliptics.size(),
                rep.violations.size(), residue, elapsed)};
}

// All elliptics of order 2: the flag and the remark.
Outcome ac8() {
    const ScanReport rep = scan(load_fixture("theta_group.json"), Mat2C::diag(2.0, 0.5));
    double worst = 0.0;
    for (const auto& e : rep.elliptic_inventory) {
        worst = std::max(worst, std::sqrt(std::abs(e.trace_sq)));
    }
    const bool remark = rep.remark.has_value() && *rep.remark == order2_remark;
    return {rep.all_elliptic_order2 && remark && rep.kinds.elliptic > 0 && worst < 1e-9,
            fmt("%zu elliptics, max |trace|=%.3g, all_elliptic_order2=%s, remark %s", rep.kinds.elliptic, worst,
                rep.all_elliptic_order2 ? "true" : "false", remark ? "present" : "missing")};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 commutator trace identity", ac1},
        {"AC2 embedding soundness", ac2},
        {"AC3 trace-type round trip", ac3},
        {"AC4 real trace invariance", ac4},
        {"AC5 conjugation kill", ac5},
        {"AC6 Jorgensen consistency", ac6},
        {"AC7 non-discreteness witness", ac7},
        {"AC8 order-2 inventory", ac8},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
