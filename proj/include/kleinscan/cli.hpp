#pragma once

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "identities.hpp"
#include "json_io.hpp"

namespace kleinscan::cli {

enum class ExitCode : int { ok = 0, witness = 1, invalid_input = 2, tolerance_failure = 3 };

enum class OutputFormat { json, table };

struct CliConfig {
    std::string command;
    std::string input_path = "-"; // "-" reads standard input
    int depth = 8;
    double delta = 1e-3;
    double eps = 1e-9;
    double tol = 1e-8;
    std::size_t cap = 2'000'000;
    unsigned threads = 0;
    std::size_t samples = 1000;
    std::uint64_t seed = 20090403;
    OutputFormat output = OutputFormat::json;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"classify",  "jorgensen", "embed",            "detect-form",
                                                "trace-type", "conj-kill", "check-identities", "scan"};
    return names;
}

namespace detail {

inline std::string num(const json& v) { return v.dump(); }

// Flattened "path = value" lines; numbers print exactly as in the JSON form.
inline void flatten(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        }
    } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
        }
    } else {
        out << prefix << " = " << j.dump() << '\n';
    }
}

inline void print_scan_table(const json& j, std::ostream& out) {
    out << "# kleinscan scan\n";
    out << "# depth=" << num(j["options"]["depth"]) << " delta=" << num(j["options"]["delta"])
        << " eps=" << num(j["options"]["eps"]) << " form_tol=" << num(j["options"]["form_tol"])
        << " order2_tol=" << num(j["options"]["order2_tol"]) << " cap=" << num(j["options"]["cap"]) << '\n';
    out << "# test_map=" << j["test_map"].dump() << " r=" << j["r"].dump() << '\n';
    out << "elements_seen     " << num(j["elements_seen"]) << '\n';
    out << "words_considered  " << num(j["words_considered"]) << '\n';
    out << "elliptic          " << num(j["kinds"]["elliptic"]) << '\n';
    out << "parabolic         " << num(j["kinds"]["parabolic"]) << '\n';
    out << "loxodromic        " << num(j["kinds"]["loxodromic"]) << '\n';
    out << "type_i            " << num(j["trace_types"]["type_i"]) << '\n';
    out << "type_ii           " << num(j["trace_types"]["type_ii"]) << '\n';
    out << "neither           " << num(j["trace_types"]["neither"]) << '\n';
    out << "traces_all_real   " << num(j["traces_all_real"]) << '\n';
    out << "all_elliptic_ord2 " << num(j["all_elliptic_order2"]) << '\n';
    out << "crosscheck_resid  " << num(j["max_crosscheck_residual"]) << '\n';
    out << "\nviolations (" << j["violations"].size() << ")\n";
    for (const auto& v : j["violations"]) {
        out << "  " << std::left << std::setw(28) << v["word"].get<std::string>() << ' ' << std::setw(15)
            << v["order"].get<std::string>() << " value=" << num(v["report"]["value"])
            << " diag=" << num(v["value_diag"]) << '\n';
    }
    out << "\nnear-identity elliptics (" << j["near_identity_elliptics"].size() << ")\n";
    for (const auto& n : j["near_identity_elliptics"]) {
        out << "  " << std::left << std::setw(28) << n["word"].get<std::string>() << " distance=" << num(n["distance"])
            << '\n';
    }
    if (j.contains("remark")) {
        out << "\nremark: " << j["remark"].get<std::string>() << '\n';
    }
    out << "\nverdict: " << j["verdict"].get<std::string>() << '\n';
}

inline json read_input(const CliConfig& cfg, std::istream& stdin_stream) {
    std::string text;
    if (cfg.input_path == "-") {
        text.assign(std::istreambuf_iterator<char>(stdin_stream), {});
    } else {
        std::ifstream f(cfg.input_path);
        if (!f) {
            throw Error(Errc::invalid_input, "cannot open input file '" + cfg.input_path + "'");
        }
        text.assign(std::istreambuf_iterator<char>(f), {});
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::invalid_input, std::string("/: malformed JSON: ") + e.what());
    }
}

struct Outcome {
    json body;
    ExitCode code = ExitCode::ok;
};

inline Outcome run_classify(const json& in, const CliConfig& cfg) {
    const Mat2C g = io::parse_sl2c(io::field(in, "matrix", ""), "/matrix");
    const ElementClass c = classify(g, cfg.eps);
    json body{{"class", to_json(c)}};
    if (c.kind != Kind::identity) {
        body["fixed_points"] = to_json(fixed_points(g, cfg.eps));
    }
    return {body};
}

inline Outcome run_jorgensen(const json& in, const CliConfig& cfg) {
    const Mat2C f = io::parse_sl2c(io::field(in, "f", ""), "/f");
    const Mat2C g = io::parse_sl2c(io::field(in, "g", ""), "/g");
    Outcome o;
    o.body = {{"report", to_json(jorgensen_value(f, g, cfg.eps))},
              {"report_reversed", to_json(jorgensen_value(g, f, cfg.eps))}};
    const TestMap tm = TestMap::from_matrix(f);
    if (tm.is_diagonal) {
        const double residual = commutator_trace_identity_check(g, tm.r);
        const double bound = commutator_identity_bound(g, tm.r);
        o.body["diag"] = {{"r", to_json(tm.r)},
                          {"jorgensen_diag", jorgensen_diag(g, tm.r)},
                          {"jorgensen_diag_testmap", jorgensen_diag_testmap(g, tm.r)},
                          {"identity_residual", residual},
                          {"identity_bound", bound}};
        if (residual > bound) {
            o.code = ExitCode::tolerance_failure;
        }
    }
    return o;
}

inline Outcome run_embed(const json& in, const CliConfig&) {
    const Mat2C g = io::parse_sl2c(io::field(in, "matrix", ""), "/matrix");
    const Mat2H e = embed(g);
    const UnitaryReport u = is_unitary11(e);
    Outcome o{{{"embedded", to_json(e)}, {"unitary", to_json(u)}}};
    if (!u.unitary) {
        o.code = ExitCode::tolerance_failure;
    }
    return o;
}

inline Outcome run_detect_form(const json& in, const CliConfig& cfg) {
    std::vector<Mat2H> gs;
    if (in.is_object() && in.contains("sl2c")) {
        const json& arr = in.at("sl2c");
        if (!arr.is_array()) {
            io::fail("/sl2c", "expected an array of matrices");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            gs.push_back(embed(io::parse_sl2c(arr[i], "/sl2c/" + std::to_string(i))));
        }
    } else {
        const json& arr = io::field(in, "matrices", "");
        if (!arr.is_array()) {
            io::fail("/matrices", "expected an array of matrices");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "/matrices/" + std::to_string(i);
            const Mat2H g = io::parse_mat2h(arr[i], path);
            if (!is_unitary11(g, cfg.tol).unitary) {
                io::fail(path, "not in U(1,1;H)");
            }
            gs.push_back(g);
        }
    }
    return {to_json(detect_form(gs, cfg.tol))};
}

inline Outcome run_trace_type(const json& in, const CliConfig& cfg) {
    const Mat2C g = io::parse_sl2c(io::field(in, "matrix", ""), "/matrix");
    const auto eps = imaginary_form_sign(embed(g), cfg.tol);
    return {{{"trace_type", trace_type_name(sl2c_trace_type(g, cfg.tol))},
             {"embedded_form_epsilon", eps ? json(*eps) : json(nullptr)}}};
}

inline Outcome run_conj_kill(const json& in, const CliConfig& cfg) {
    const Mat2C g = io::parse_sl2c(io::field(in, "matrix", ""), "/matrix");
    std::vector<double> schedule{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    if (in.contains("eps_schedule")) {
        const json& arr = in.at("eps_schedule");
        if (!arr.is_array()) {
            io::fail("/eps_schedule", "expected an array of numbers");
        }
        schedule.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            schedule.push_back(io::parse_real(arr[i], "/eps_schedule/" + std::to_string(i)));
        }
    }
    const ConjugationResult cr = conj_kill(g, cfg.eps);
    Outcome o;
    o.body = {{"result", to_json(cr)}, {"bound_12", conj_kill_bound(cr)}};
    if (cr.residual_12 > conj_kill_bound(cr)) {
        o.code = ExitCode::tolerance_failure;
    }
    if (cr.target.c != 0.0) {
        o.body["midpoint_residual"] = midpoint_conjugation_check(cr.target);
        const PerturbedSequence seq = perturbed_sequence(cr.target, cr.beta, schedule);
        json terms = json::array();
        for (const auto& t : seq.terms) {
            terms.push_back({{"eps", t.eps}, {"g_n", to_json(t.g_n)}, {"bc_abs", t.bc_abs}});
        }
        const DecayFit fit = fit_decay(cr.target, cr.beta, schedule);
        o.body["sequence"] = {{"decay_constant", seq.decay_constant},
                              {"terms", terms},
                              {"regime", regime_name(fit.regime)},
                              {"slope", fit.slope}};
    }
    return o;
}

inline Outcome run_check_identities(const CliConfig& cfg) {
    Outcome o;
    json checks = json::array();
    for (const auto& c : check_identities(cfg.samples, cfg.seed)) {
        checks.push_back({{"name", c.name},
                          {"samples", c.samples},
                          {"max_residual", c.max_residual},
                          {"max_ratio_to_bound", c.max_ratio},
                          {"passed", c.passed()}});
        if (!c.passed()) {
            o.code = ExitCode::tolerance_failure;
        }
    }
    o.body = {{"n", cfg.samples}, {"seed", cfg.seed}, {"checks", checks}};
    return o;
}

inline Outcome run_scan(const json& in, const CliConfig& cfg) {
    const io::GroupInput gi = io::parse_group(in);
    const Mat2C f = gi.test_map.value_or(Mat2C::diag(2.0, 0.5));
    ScanOptions opt;
    opt.depth = cfg.depth;
    opt.delta = cfg.delta;
    opt.eps = cfg.eps;
    opt.form_tol = cfg.tol;
    opt.cap = cfg.cap;
    opt.threads = cfg.threads;
    const ScanReport rep = scan(gi.spec, f, opt);
    Outcome o{to_json(rep)};
    o.body["labels"] = gi.spec.labels;
    if (rep.verdict == Verdict::nondiscrete_witness) {
        o.code = ExitCode::witness;
    }
    return o;
}

} // namespace detail

inline void validate(const CliConfig& cfg) {
    if (std::find(commands().begin(), commands().end(), cfg.command) == commands().end()) {
        throw Error(Errc::invalid_input, "unknown command '" + cfg.command + "'");
    }
    if (cfg.depth < 1) {
        throw Error(Errc::invalid_input, "depth must be at least 1");
    }
    if (!(cfg.delta > 0.0) || !(cfg.eps > 0.0) || !(cfg.tol > 0.0)) {
        throw Error(Errc::invalid_input, "delta and tolerances must be positive");
    }
}

// Runs one command; the report goes to out, diagnostics to err.
inline int run(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
        detail::Outcome o;
        if (cfg.command == "check-identities") {
            o = detail::run_check_identities(cfg);
        } else {
            const json input = detail::read_input(cfg, in);
            if (cfg.command == "classify") {
                o = detail::run_classify(input, cfg);
            } else if (cfg.command == "jorgensen") {
                o = detail::run_jorgensen(input, cfg);
            } else if (cfg.command == "embed") {
                o = detail::run_embed(input, cfg);
            } else if (cfg.command == "detect-form") {
                o = detail::run_detect_form(input, cfg);
            } else if (cfg.command == "trace-type") {
                o = detail::run_trace_type(input, cfg);
            } else if (cfg.command == "conj-kill") {
                o = detail::run_conj_kill(input, cfg);
            } else {
                o = detail::run_scan(input, cfg);
            }
        }
        if (cfg.output == OutputFormat::json) {
            out << o.body.dump(2) << '\n';
        } else if (cfg.command == "scan") {
            detail::print_scan_table(o.body, out);
        } else {
            detail::flatten(o.body, "", out);
        }
        return static_cast<int>(o.code);
    } catch (const Error& e) {
        err << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
        return static_cast<int>(ExitCode::invalid_input);
    }
}

} // namespace kleinscan::cli
