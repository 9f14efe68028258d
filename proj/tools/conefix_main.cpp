#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "conefix/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"conefix: contraction checks, Picard iteration and convergence "
                 "certificates on cone metric spaces"};
    app.require_subcommand(1);

    std::string problem;
    std::uint64_t seed = 42;
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::optional<std::string> out_file;
    std::size_t pairs = 100000;
    std::size_t samples = 10000;
    bool timings = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("problem", problem, "problem file path or bundled fixture name")
            ->required();
        sub->add_option("--seed", seed, "seed for all sampling operations");
        sub->add_option("--tol", tol, "override the problem file tolerance");
        sub->add_option("--max-iter", max_iter, "override the problem file iteration cap");
        sub->add_option("--out", out_file, "also write the JSON report to this file");
        sub->add_option("--pairs", pairs, "sampled pairs for the contraction check");
        sub->add_option("--samples", samples, "samples per axiom suite");
        sub->add_flag("--timings", timings,
                      "include wall-clock time in the report (report is no longer "
                      "byte-reproducible)");
    };

    add_common(app.add_subcommand("check", "check the declared contraction condition"));
    add_common(app.add_subcommand("estimate", "estimate the minimal admissible constant"));
    add_common(app.add_subcommand("solve", "run the Picard iteration with certificates"));
    add_common(app.add_subcommand("verify", "run the cone and metric axiom suites"));
    add_common(app.add_subcommand("all", "check, estimate, solve and verify"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    conefix::RunOptions options;
    options.subcommand = conefix::subcommand_from_string(app.get_subcommands().front()->get_name());
    options.seed = seed;
    options.tol = tol;
    options.max_iter = max_iter;
    options.check_pairs = pairs;
    options.verify_samples = samples;
    options.timings = timings;

    return conefix::run_to_streams(problem, options, std::cout, std::cerr, out_file);
}
