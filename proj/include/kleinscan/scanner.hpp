#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "classify.hpp"
#include "embed.hpp"
#include "error.hpp"
#include "joergensen.hpp"
#include "matrix2.hpp"

namespace kleinscan {

struct GroupSpec {
    std::vector<Mat2C> generators;
    std::vector<std::string> labels;

    // Fills default labels g1, g2, ... and checks every generator.
    void validate(double tol = 1e-9) {
        if (generators.empty()) {
            throw Error(Errc::invalid_input, "group spec needs at least one generator");
        }
        if (labels.empty()) {
            for (std::size_t i = 0; i < generators.size(); ++i) {
                labels.push_back("g" + std::to_string(i + 1));
            }
        }
        if (labels.size() != generators.size()) {
            throw Error(Errc::invalid_input, "labels and generators differ in length");
        }
        for (const auto& g : generators) {
            require_sl2c(g, tol);
        }
    }
};

// Letters 0..k-1 are the generators, k..2k-1 their inverses.
using Word = std::vector<int>;

inline std::string render_word(const Word& w, const std::vector<std::string>& labels) {
    const int k = static_cast<int>(labels.size());
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
        const int gen = w[i] % k;
        const int sign = w[i] < k ? 1 : -1;
        std::size_t run = 1;
        while (i + run < w.size() && w[i + run] == w[i]) {
            ++run;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += labels[static_cast<std::size_t>(gen)];
        const long exponent = sign * static_cast<long>(run);
        if (exponent != 1) {
            out += '^' + std::to_string(exponent);
        }
        i += run;
    }
    return out;
}

// Breadth-first table of distinct group elements (up to sign) reached by
// freely reduced words of bounded length. Elements equal to +-I are dropped.
class ElementTable {
public:
    struct Entry {
        Mat2C m;
        std::int32_t parent = -1; // index of the prefix, -1 for single letters
        std::int16_t letter = 0;
        std::int16_t length = 0;
    };

    ElementTable(const GroupSpec& spec, int max_length, std::size_t cap = 2'000'000,
                 double tol = 1e-9)
        : labels_(spec.labels), tol_(tol) {
        if (max_length < 1) {
            throw Error(Errc::invalid_input, "depth must be at least 1");
        }
        const int k = static_cast<int>(spec.generators.size());
        alphabet_ = spec.generators;
        for (const auto& g : spec.generators) {
            alphabet_.push_back(sl2_inverse(g));
        }

        std::size_t level_begin = 0;
        for (int i = 0; i < 2 * k; ++i) {
            insert({alphabet_[static_cast<std::size_t>(i)], -1, static_cast<std::int16_t>(i), 1}, cap);
        }
        for (int len = 2; len <= max_length; ++len) {
            const std::size_t level_end = entries_.size();
            for (std::size_t idx = level_begin; idx < level_end; ++idx) {
                const int last = entries_[idx].letter;
                const int cancel = (last + k) % (2 * k);
                for (int l = 0; l < 2 * k; ++l) {
                    if (l == cancel) {
                        continue;
                    }
                    ++words_considered_;
                    insert({entries_[idx].m * alphabet_[static_cast<std::size_t>(l)],
                            static_cast<std::int32_t>(idx), static_cast<std::int16_t>(l),
                            static_cast<std::int16_t>(len)},
                           cap);
                }
            }
            level_begin = level_end;
        }
        words_considered_ += static_cast<std::size_t>(2 * k);
    }

    std::size_t size() const { return entries_.size(); }
    const Entry& operator[](std::size_t i) const { return entries_[i]; }
    const Mat2C& matrix(std::size_t i) const { return entries_[i].m; }
    std::size_t words_considered() const { return words_considered_; }
    const std::vector<std::string>& labels() const { return labels_; }

    Word word(std::size_t i) const {
        Word w;
        for (std::int32_t cur = static_cast<std::int32_t>(i); cur >= 0; cur = entries_[static_cast<std::size_t>(cur)].parent) {
            w.push_back(entries_[static_cast<std::size_t>(cur)].letter);
        }
        std::reverse(w.begin(), w.end());
        return w;
    }

    std::string word_string(std::size_t i) const { return render_word(word(i), labels_); }

private:
    static double fingerprint(const Mat2C& g) {
        return 0.7071 * g.a.real() - 0.3183 * g.a.imag() + 0.5772 * g.b.real() + 0.1415 * g.b.imag() -
               0.2718 * g.c.real() + 0.4142 * g.c.imag() - 0.6180 * g.d.real() + 0.2236 * g.d.imag();
    }

    double tolerance(const Mat2C& g) const { return tol_ * (1.0 + frobenius(g)); }

    bool has_match(const Mat2C& g, double key, double tol) const {
        const double window = 1.5 * tol;
        for (auto it = index_.lower_bound(key - window); it != index_.end() && it->first <= key + window; ++it) {
            if (sign_distance(g, entries_[it->second].m) <= tol) {
                return true;
            }
        }
        return false;
    }

    void insert(const Entry& e, std::size_t cap) {
        const double tol = tolerance(e.m);
        if (distance_to_identity(e.m) <= tol) {
            return;
        }
        const double key = fingerprint(e.m);
        if (has_match(e.m, key, tol) || has_match(e.m, -key, tol)) {
            return;
        }
        if (entries_.size() >= cap) {
            throw Error(Errc::depth_too_large, "depth too large: element table exceeds cap of " +
                                                   std::to_string(cap));
        }
        index_.emplace(key, static_cast<std::uint32_t>(entries_.size()));
        entries_.push_back(e);
    }

    std::vector<std::string> labels_;
    std::vector<Mat2C> alphabet_;
    std::vector<Entry> entries_;
    std::multimap<double, std::uint32_t> index_;
    std::size_t words_considered_ = 0;
    double tol_;
};

inline ElementTable enumerate_words(const GroupSpec& spec, int max_length, std::size_t cap = 2'000'000) {
    return ElementTable(spec, max_length, cap);
}

// ---------------------------------------------------------------------------
// Test map normal form

struct Diagonalization {
    Mat2C q = Mat2C::identity(); // q f q^{-1} = diag(r, 1/r)
    Complex r{1.0, 0.0};
};

// |r| >= 1, and for elliptic f (|r| = 1) the root with Im r >= 0.
inline Diagonalization diagonalize_testmap(const Mat2C& f, double eps = 1e-9) {
    const ElementClass cls = classify(f, eps);
    if (cls.kind == Kind::identity || cls.kind == Kind::parabolic) {
        throw Error(Errc::not_diagonalizable, "not diagonalizable in this sense");
    }
    const Complex t = ctrace(f);
    const Complex s = std::sqrt(t * t - 4.0);
    Complex big = (t + s) / 2.0;
    if (std::abs((t - s) / 2.0) > std::abs(big)) {
        big = (t - s) / 2.0;
    }
    const Complex small = 1.0 / big;
    Complex r = big;
    if (cls.kind == Kind::elliptic) {
        r = big.imag() >= 0.0 ? big : small;
    }
    const Complex rinv = 1.0 / r;

    Diagonalization out;
    out.r = r;
    if (f.b == 0.0 && f.c == 0.0) {
        // Already diagonal; only the order of the eigenvalues may need a swap.
        if (std::abs(f.a - r) > std::abs(f.a - rinv)) {
            out.q = Mat2C{0.0, 1.0, -1.0, 0.0};
        }
        return out;
    }

    auto eigenvector = [&f](Complex mu) -> std::array<Complex, 2> {
        const std::array<Complex, 2> v1{f.b, mu - f.a};
        const std::array<Complex, 2> v2{mu - f.d, f.c};
        const double n1 = std::norm(v1[0]) + std::norm(v1[1]);
        const double n2 = std::norm(v2[0]) + std::norm(v2[1]);
        return n1 >= n2 ? v1 : v2;
    };
    const auto vr = eigenvector(r);
    const auto vs = eigenvector(rinv);
    const Mat2C m = normalize_det(Mat2C{vr[0], vs[0], vr[1], vs[1]});
    out.q = sl2_inverse(m);
    return out;
}

// ---------------------------------------------------------------------------
// Scan

struct ScanOptions {
    int depth = 8;
    double delta = 1e-3;       // near-identity threshold on ||g - I||_F (up to sign)
    double eps = 1e-9;         // classification band
    double form_tol = 1e-8;    // trace-type detector
    double order2_tol = 1e-9;  // |tr g| below this marks an order-2 elliptic
    std::size_t cap = 2'000'000;
    unsigned threads = 0;      // 0 = hardware concurrency
};

enum class Verdict { nondiscrete_witness, no_witness_up_to_depth };

inline const char* verdict_name(Verdict v) {
    return v == Verdict::nondiscrete_witness ? "nondiscrete_witness" : "no_witness_up_to_depth";
}

enum class PairOrder { elliptic_first, testmap_first };

inline const char* order_name(PairOrder o) {
    return o == PairOrder::elliptic_first ? "elliptic-first" : "testmap-first";
}

struct EllipticRecord {
    std::string word;
    Complex trace_sq;
    double jorgensen = 0.0;         // |tr^2 g - 4| + |tr[g,f] - 2|
    double jorgensen_testmap = 0.0; // |tr^2 f - 4| + |tr[f,g] - 2|
    bool pair_elementary = false;
};

struct Violation {
    std::string word;
    PairOrder order = PairOrder::elliptic_first;
    JorgensenReport report;
    double value_diag = 0.0; // closed form on the conjugated pair
};

struct NearIdentity {
    std::string word;
    double distance = 0.0;
};

struct TraceTypeCounts {
    std::size_t type_i = 0;
    std::size_t type_ii = 0;
    std::size_t neither = 0;
};

struct KindCounts {
    std::size_t elliptic = 0;
    std::size_t parabolic = 0;
    std::size_t loxodromic = 0;
    std::size_t identity = 0;
};

inline const char* order2_remark =
    "every enumerated elliptic element has order 2; a non-elementary subgroup of PSL(2,C) "
    "whose elliptic elements all have order 2 cannot be non-discrete, so no such "
    "non-discrete group exists";

struct ScanReport {
    ScanOptions options;
    Mat2C test_map;
    Complex r;
    Mat2C normalizer; // q with q f q^{-1} = diag(r, 1/r)
    int depth = 0;
    std::size_t elements_seen = 0;
    std::size_t words_considered = 0;
    KindCounts kinds;
    std::vector<EllipticRecord> elliptic_inventory;
    std::vector<Violation> violations;
    std::vector<NearIdentity> near_identity_elliptics;
    TraceTypeCounts trace_types;
    bool all_elliptic_order2 = false;
    bool traces_all_real = true;
    double max_crosscheck_residual = 0.0; // closed form vs general Jorgensen, relative
    std::optional<std::string> remark;
    Verdict verdict = Verdict::no_witness_up_to_depth;
};

namespace detail {

struct ElementResult {
    ElementClass cls;
    TraceType trace_type = TraceType::neither;
    bool real_trace = true;
    bool order2 = false;
    double distance = 0.0;
    JorgensenReport elliptic_first;
    JorgensenReport testmap_first;
    double diag_elliptic_first = 0.0;
    double diag_testmap_first = 0.0;
};

inline ElementResult analyse(const Mat2C& g, const Mat2C& f, const Diagonalization& dz, const ScanOptions& opt) {
    ElementResult res;
    res.cls = classify(g, opt.eps);
    res.trace_type = sl2c_trace_type(g, opt.form_tol);
    res.real_trace = trace_is_real(ctrace(g), opt.eps);
    if (res.cls.kind != Kind::elliptic) {
        return res;
    }
    res.order2 = std::abs(ctrace(g)) < opt.order2_tol;
    res.distance = distance_to_identity(g);
    res.elliptic_first = jorgensen_value(g, f, opt.eps);
    res.testmap_first = jorgensen_value(f, g, opt.eps);
    const Mat2C gq = dz.q * g * sl2_inverse(dz.q);
    res.diag_elliptic_first = jorgensen_diag(gq, dz.r);
    res.diag_testmap_first = jorgensen_diag_testmap(gq, dz.r);
    return res;
}

} // namespace detail

// Enumerates words up to opt.depth and pairs every elliptic element with the
// test map. A witness is either a Jorgensen violation on a non-elementary pair
// (in either order) or an elliptic element within delta of the identity.
inline ScanReport scan(GroupSpec spec, const Mat2C& f, const ScanOptions& opt = {}) {
    spec.validate();
    require_sl2c(f);
    const ElementClass fc = classify(f, opt.eps);
    if (fc.kind != Kind::loxodromic && fc.kind != Kind::elliptic) {
        throw Error(Errc::invalid_test_map, "test map must be loxodromic or elliptic");
    }
    const Diagonalization dz = diagonalize_testmap(f, opt.eps);
    const ElementTable table(spec, opt.depth, opt.cap, opt.eps);

    std::vector<detail::ElementResult> results(table.size());
    unsigned workers = opt.threads != 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, table.size() / 256)));
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            results[i] = detail::analyse(table.matrix(i), f, dz, opt);
        }
    };
    if (workers <= 1) {
        work(0, table.size());
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (table.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(table.size(), begin + chunk);
            if (begin < end) {
                pool.emplace_back(work, begin, end);
            }
        }
    }

    ScanReport rep;
    rep.options = opt;
    rep.test_map = f;
    rep.r = dz.r;
    rep.normalizer = dz.q;
    rep.depth = opt.depth;
    rep.elements_seen = table.size();
    rep.words_considered = table.words_considered();

    bool any_elliptic = false;
    bool all_order2 = true;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& res = results[i];
        switch (res.trace_type) {
        case TraceType::type_i: ++rep.trace_types.type_i; break;
        case TraceType::type_ii: ++rep.trace_types.type_ii; break;
        case TraceType::neither: ++rep.trace_types.neither; break;
        }
        rep.traces_all_real = rep.traces_all_real && res.real_trace;
        switch (res.cls.kind) {
        case Kind::identity: ++rep.kinds.identity; continue;
        case Kind::parabolic: ++rep.kinds.parabolic; continue;
        case Kind::loxodromic: ++rep.kinds.loxodromic; continue;
        case Kind::elliptic: ++rep.kinds.elliptic; break;
        }

        any_elliptic = true;
        all_order2 = all_order2 && res.order2;
        const std::string word = table.word_string(i);
        rep.elliptic_inventory.push_back({word, res.cls.trace_sq, res.elliptic_first.value,
                                          res.testmap_first.value, res.elliptic_first.pair_elementary});
        rep.max_crosscheck_residual =
            std::max({rep.max_crosscheck_residual,
                      std::abs(res.diag_elliptic_first - res.elliptic_first.value) / (1.0 + res.elliptic_first.value),
                      std::abs(res.diag_testmap_first - res.testmap_first.value) / (1.0 + res.testmap_first.value)});
        if (res.elliptic_first.violated) {
            rep.violations.push_back({word, PairOrder::elliptic_first, res.elliptic_first, res.diag_elliptic_first});
        }
        if (res.testmap_first.violated) {
            rep.violations.push_back({word, PairOrder::testmap_first, res.testmap_first, res.diag_testmap_first});
        }
        if (res.distance < opt.delta) {
            rep.near_identity_elliptics.push_back({word, res.distance});
        }
    }
    std::stable_sort(rep.near_identity_elliptics.begin(), rep.near_identity_elliptics.end(),
                     [](const NearIdentity& x, const NearIdentity& y) { return x.distance < y.distance; });

    rep.all_elliptic_order2 = any_elliptic && all_order2;
    if (rep.all_elliptic_order2) {
        rep.remark = order2_remark;
    }
    rep.verdict = (!rep.violations.empty() || !rep.near_identity_elliptics.empty()) ? Verdict::nondiscrete_witness
                                                                                    : Verdict::no_witness_up_to_depth;
    return rep;
}

inline ScanReport scan(GroupSpec spec, const TestMap& f, const ScanOptions& opt = {}) {
    return scan(std::move(spec), f.matrix, opt);
}

} // namespace kleinscan
