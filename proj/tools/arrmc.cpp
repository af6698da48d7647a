#include "arrmc/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    arrmc::JobSpec job;
    CLI::App app{"Middle convolution for Pfaffian systems on hyperplane arrangement complements"};
    app.add_option("command", job.command, "Subcommand")
        ->required()
        ->check(CLI::IsMember({"poset", "goodline", "cone", "decone", "check", "convolve", "middle-convolve",
                               "compose-verify", "katz-mc", "monodromy", "rh-verify"}));
    app.add_option("inputs", job.inputs, "Input JSON files (relative paths also searched in ARRMC_CORPUS_DIR)");
    app.add_option("--lambda", job.lambda, "Convolution parameter p/q");
    app.add_option("--mu", job.mu, "Second parameter p/q for compose-verify");
    app.add_option("--line", job.line, "Line direction, e.g. \"0,1\"");
    app.add_option("--base", job.bases, "Base point in the transverse coordinates, e.g. \"2\"; repeatable");
    app.add_option("--tol", job.tol, "Integration tolerance")->capture_default_str();
    app.add_option("--iso-tol", job.iso_tol, "Tuple isomorphism tolerance")->capture_default_str();
    app.add_option("--rank-tol", job.rank_tol, "Relative singular value threshold")->capture_default_str();
    app.add_option("--samples", job.samples, "Fiber samples for goodline")->capture_default_str();
    app.add_option("--seed", job.seed, "Seed for randomized intertwiner search")->capture_default_str();
    app.add_flag("--unchecked", job.unchecked, "Skip the integrability check on load");
    app.add_flag("--allow-non-good", job.allow_non_good, "Convolve along a line that is not good");
    app.add_flag("--json", job.json, "Print the report as JSON");
    app.add_flag("--shifted", job.shifted, "rh-verify: also report lambda + 1");
    app.add_option("--out", job.out, "Write the resulting system, arrangement or tuple here");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : arrmc::kExitInputError;
    }
    return arrmc::run(job, std::cout, std::cerr);
}
