#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "kleinscan/cli.hpp"

int main(int argc, char** argv) {
    using namespace kleinscan::cli;

    CliConfig cfg;
    std::string output = "json";

    CLI::App app{"Discreteness scans of SL(2,C) subgroups against a fixed test map"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-i,--input", cfg.input_path, "Input JSON file, '-' for standard input")->capture_default_str();
        sub->add_option("--eps", cfg.eps, "Classification tolerance band")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--tol", cfg.tol, "Form detector tolerance")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("-o,--output", output, "Output format")->capture_default_str()->check(CLI::IsMember({"json", "table"}));
    };

    const std::map<std::string, std::string> about{
        {"classify", "Kind and fixed points of {\"matrix\"}"},
        {"jorgensen", "Jorgensen value of {\"f\", \"g\"} in both orders"},
        {"embed", "Image of {\"matrix\"} in U(1,1;H) with its unitarity report"},
        {"detect-form", "Stabilizer form shared by {\"matrices\"} or {\"sl2c\"}"},
        {"trace-type", "Real/imaginary entry pattern of {\"matrix\"}"},
        {"conj-kill", "Conjugate {\"matrix\"} to lower triangular form; decay of the perturbed sequence"},
        {"check-identities", "Random checks of the closed-form identities"},
        {"scan", "Word-enumeration discreteness scan of a group spec"},
    };
    for (const auto& name : commands()) {
        CLI::App* sub = app.add_subcommand(name, about.at(name));
        add_common(sub);
        if (name == "scan") {
            sub->add_option("-L,--depth", cfg.depth, "Maximum word length")->capture_default_str()->check(CLI::PositiveNumber);
            sub->add_option("--delta", cfg.delta, "Near-identity threshold")->capture_default_str()->check(CLI::PositiveNumber);
            sub->add_option("--cap", cfg.cap, "Maximum number of distinct elements")->capture_default_str();
            sub->add_option("--threads", cfg.threads, "Worker threads, 0 = all cores")->capture_default_str();
        }
        if (name == "check-identities") {
            sub->add_option("-n,--n", cfg.samples, "Number of random samples")->capture_default_str();
            sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
        }
        sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ExitCode::invalid_input);
    }
    cfg.output = output == "table" ? OutputFormat::table : OutputFormat::json;
    return run(cfg, std::cin, std::cout, std::cerr);
}
