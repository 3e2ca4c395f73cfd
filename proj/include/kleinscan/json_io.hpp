#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

#include "classify.hpp"
#include "conjugate.hpp"
#include "embed.hpp"
#include "error.hpp"
#include "joergensen.hpp"
#include "matrix2.hpp"
#include "quaternion.hpp"
#include "scanner.hpp"

// Wire format: complex = [re, im], quaternion = [w, x, y, z],
// matrix = [[e11, e12], [e21, e22]] (row-major).

namespace kleinscan {

using json = nlohmann::json;

namespace io {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    throw Error(Errc::invalid_input, (path.empty() ? std::string("/") : path) + ": " + what);
}

inline double parse_real(const json& j, const std::string& path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    return j.get<double>();
}

// Accepts [re, im] or a bare real number.
inline Complex parse_complex(const json& j, const std::string& path) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        fail(path, "expected [re, im] pair");
    }
    return {parse_real(j[0], path + "/0"), parse_real(j[1], path + "/1")};
}

// "w+x i+y j+z k"; terms may come in any order, a missing coefficient is 1.
inline Quaternion parse_quaternion_text(const std::string& s) {
    Quaternion q;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        }
    };
    skip();
    if (pos == s.size()) {
        throw Error(Errc::invalid_input, "empty quaternion text");
    }
    while (pos < s.size()) {
        double sign = 1.0;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1.0 : 1.0;
            ++pos;
            skip();
        }
        double coeff = 1.0;
        const char* begin = s.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        const bool has_number = end != begin;
        if (has_number) {
            coeff = v;
            pos += static_cast<std::size_t>(end - begin);
        }
        skip();
        double* slot = &q.w;
        if (pos < s.size() && (s[pos] == 'i' || s[pos] == 'j' || s[pos] == 'k')) {
            slot = s[pos] == 'i' ? &q.x : (s[pos] == 'j' ? &q.y : &q.z);
            ++pos;
        } else if (!has_number) {
            throw Error(Errc::invalid_input, "malformed quaternion text '" + s + "'");
        }
        *slot += sign * coeff;
        skip();
        if (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
            throw Error(Errc::invalid_input, "malformed quaternion text '" + s + "'");
        }
    }
    return q;
}

// Accepts [w, x, y, z], [re, im], a real number, or the text form.
inline Quaternion parse_quaternion(const json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_quaternion_text(j.get<std::string>());
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }
    if (j.is_number()) {
        return Quaternion(j.get<double>());
    }
    if (j.is_array() && j.size() == 2) {
        return Quaternion(parse_complex(j, path));
    }
    if (!j.is_array() || j.size() != 4) {
        fail(path, "expected quaternion [w, x, y, z]");
    }
    return {parse_real(j[0], path + "/0"), parse_real(j[1], path + "/1"), parse_real(j[2], path + "/2"),
            parse_real(j[3], path + "/3")};
}

template <class S, class EntryParser>
Mat2<S> parse_matrix(const json& j, const std::string& path, EntryParser entry) {
    if (!j.is_array() || j.size() != 2) {
        fail(path, "expected matrix [[e11, e12], [e21, e22]]");
    }
    for (std::size_t r = 0; r < 2; ++r) {
        if (!j[r].is_array() || j[r].size() != 2) {
            fail(path + "/" + std::to_string(r), "expected a row of two entries");
        }
    }
    return {entry(j[0][0], path + "/0/0"), entry(j[0][1], path + "/0/1"), entry(j[1][0], path + "/1/0"),
            entry(j[1][1], path + "/1/1")};
}

inline Mat2C parse_mat2c(const json& j, const std::string& path) {
    return parse_matrix<Complex>(j, path, parse_complex);
}

inline Mat2H parse_mat2h(const json& j, const std::string& path) {
    return parse_matrix<Quaternion>(j, path, parse_quaternion);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    if (!j.contains(key)) {
        fail(path + "/" + key, "missing field");
    }
    return j.at(key);
}

// SL(2,C) matrix; a determinant off by more than the tolerance names the field.
inline Mat2C parse_sl2c(const json& j, const std::string& path) {
    const Mat2C m = parse_mat2c(j, path);
    if (!is_sl2c(m)) {
        fail(path, "not in SL(2,C) (det != 1)");
    }
    return m;
}

struct GroupInput {
    GroupSpec spec;
    std::optional<Mat2C> test_map;
};

// {"generators": [matrix...], "labels": [...], "test_map": matrix?}
inline GroupInput parse_group(const json& j) {
    GroupInput in;
    const json& gens = field(j, "generators", "");
    if (!gens.is_array() || gens.empty()) {
        fail("/generators", "expected a nonempty array of matrices");
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        in.spec.generators.push_back(parse_sl2c(gens[i], "/generators/" + std::to_string(i)));
    }
    if (j.contains("labels")) {
        const json& labels = j.at("labels");
        if (!labels.is_array() || labels.size() != gens.size()) {
            fail("/labels", "expected one label per generator");
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!labels[i].is_string()) {
                fail("/labels/" + std::to_string(i), "expected a string");
            }
            in.spec.labels.push_back(labels[i].get<std::string>());
        }
    }
    if (j.contains("test_map")) {
        in.test_map = parse_sl2c(j.at("test_map"), "/test_map");
    }
    in.spec.validate();
    return in;
}

} // namespace io

// ---------------------------------------------------------------------------
// Serialization

inline json to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

inline json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

template <class S>
json to_json(const Mat2<S>& g) {
    return json::array({json::array({to_json(g.a), to_json(g.b)}), json::array({to_json(g.c), to_json(g.d)})});
}

inline json to_json(const ElementClass& c) {
    return {{"kind", kind_name(c.kind)}, {"borderline", c.borderline}, {"trace_sq", to_json(c.trace_sq)}};
}

inline json to_json(const SpherePoint& p) { return p.infinite ? json("inf") : to_json(p.z); }

inline json to_json(const FixedPoints& fp) {
    json arr = json::array();
    for (const auto& p : fp.points) {
        arr.push_back(to_json(p));
    }
    return arr;
}

inline json to_json(const JorgensenReport& r) {
    return {{"value", r.value},
            {"term_trace", r.term_trace},
            {"term_comm", r.term_comm},
            {"violated", r.violated},
            {"pair_elementary", r.pair_elementary},
            {"elementary_reason", reason_name(r.elementary_reason)},
            {"tight", r.tight},
            {"status", r.status()}};
}

inline json to_json(const UnitaryReport& r) {
    return {{"unitary", r.unitary},
            {"residual", r.residual},
            {"relations",
             {{"abs_a_minus_abs_d", r.relations[0]},
              {"abs_b_minus_abs_c", r.relations[1]},
              {"abs_a2_minus_abs_c2_minus_1", r.relations[2]},
              {"conj_a_b_minus_conj_c_d", r.relations[3]},
              {"a_conj_c_minus_b_conj_d", r.relations[4]}}}};
}

inline json to_json(const SubmanifoldType& t) {
    json j{{"tag", tag_name(t.tag)}};
    if (t.epsilon) {
        j["epsilon"] = *t.epsilon;
    }
    if (t.lambda) {
        j["lambda"] = to_json(*t.lambda);
    }
    json fits = json::array();
    for (auto f : t.also_fits) {
        fits.push_back(tag_name(f));
    }
    j["also_fits"] = fits;
    return j;
}

inline json to_json(const ConjugationResult& r) {
    return {{"beta", to_json(r.beta)},
            {"h", to_json(r.h)},
            {"g_conj", to_json(r.g_conj)},
            {"residual_12", r.residual_12},
            {"pre_swapped", r.pre_swapped}};
}

inline json to_json(const ScanOptions& o) {
    return {{"depth", o.depth},         {"delta", o.delta}, {"eps", o.eps}, {"form_tol", o.form_tol},
            {"order2_tol", o.order2_tol}, {"cap", o.cap}};
}

inline json to_json(const ScanReport& r) {
    json inventory = json::array();
    for (const auto& e : r.elliptic_inventory) {
        inventory.push_back({{"word", e.word},
                             {"trace_sq", to_json(e.trace_sq)},
                             {"jorgensen", e.jorgensen},
                             {"jorgensen_testmap", e.jorgensen_testmap},
                             {"pair_elementary", e.pair_elementary}});
    }
    json violations = json::array();
    for (const auto& v : r.violations) {
        violations.push_back(
            {{"word", v.word}, {"order", order_name(v.order)}, {"report", to_json(v.report)}, {"value_diag", v.value_diag}});
    }
    json near = json::array();
    for (const auto& n : r.near_identity_elliptics) {
        near.push_back({{"word", n.word}, {"distance", n.distance}});
    }
    json j{{"options", to_json(r.options)},
           {"test_map", to_json(r.test_map)},
           {"r", to_json(r.r)},
           {"normalizer", to_json(r.normalizer)},
           {"depth", r.depth},
           {"elements_seen", r.elements_seen},
           {"words_considered", r.words_considered},
           {"kinds",
            {{"elliptic", r.kinds.elliptic},
             {"parabolic", r.kinds.parabolic},
             {"loxodromic", r.kinds.loxodromic},
             {"identity", r.kinds.identity}}},
           {"trace_types",
            {{"type_i", r.trace_types.type_i}, {"type_ii", r.trace_types.type_ii}, {"neither", r.trace_types.neither}}},
           {"traces_all_real", r.traces_all_real},
           {"all_elliptic_order2", r.all_elliptic_order2},
           {"max_crosscheck_residual", r.max_crosscheck_residual},
           {"violations", violations},
           {"near_identity_elliptics", near},
           {"elliptic_inventory", inventory},
           {"verdict", verdict_name(r.verdict)}};
    if (r.remark) {
        j["remark"] = *r.remark;
    }
    return j;
}

} // namespace kleinscan
