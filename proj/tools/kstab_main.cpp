#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kstab/driver.hpp"
#include "kstab/errors.hpp"

namespace {

struct CommonOptions {
    std::string input;
    std::string output;
    std::string convention = "trace-free";
    std::string precision = "1/1000000000";
    std::string k_samples;
    int resolution = 0;
    long max_iterations = 0;
    std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--input", opts.input, "Input JSON file")->required();
    cmd->add_option("--output", opts.output, "Write the report to this file instead of stdout");
    cmd->add_option("--convention", opts.convention, "Inner-product convention: trace-free | paper")
        ->check(CLI::IsMember({"trace-free", "paper"}));
    cmd->add_option("--precision", opts.precision, "Approximation precision (rational or decimal string)");
    cmd->add_option("--k-samples", opts.k_samples, "Comma-separated dilation multipliers, e.g. 1,2,3,4,5");
    cmd->add_option("--resolution", opts.resolution, "Brute-force grid resolution (search cross-check)");
    cmd->add_option("--max-iterations", opts.max_iterations, "Iteration budget for the search");
    cmd->add_option("--seed", opts.seed, "Deterministic seed (default 0)");
}

kstab::cli::RunConfig to_config(kstab::cli::Command command, const CommonOptions& opts) {
    kstab::cli::RunConfig config;
    config.command = command;
    config.input_path = opts.input;
    config.output_path = opts.output;
    config.convention =
        opts.convention == "paper" ? kstab::Convention::PaperLiteral : kstab::Convention::TraceFree;
    config.precision = kstab::parse_rational(opts.precision);
    if (config.precision <= 0) throw kstab::InvalidPrecision("precision must be positive");
    if (!opts.k_samples.empty()) {
        std::vector<long> samples;
        std::string token;
        std::stringstream ss(opts.k_samples);
        while (std::getline(ss, token, ',')) samples.push_back(std::stol(token));
        config.k_samples = samples;
    }
    if (opts.resolution > 0) config.resolution = opts.resolution;
    if (opts.max_iterations > 0) config.max_iterations = opts.max_iterations;
    if (opts.seed >= 0) config.seed = static_cast<std::uint64_t>(opts.seed);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kstab: exact K-stability invariants of polarized toric data"};
    app.require_subcommand(1);

    CommonOptions analyze_opts, search_opts, verify_opts, oracle_opts;
    CLI::App* analyze = app.add_subcommand("analyze", "Invariant report for a polytope with PL functions");
    add_common(analyze, analyze_opts);
    CLI::App* search = app.add_subcommand("search", "Minimize the normalized DF invariant over a triangulation");
    add_common(search, search_opts);
    CLI::App* verify = app.add_subcommand("verify", "Relative K-semistability check for a candidate direction");
    add_common(verify, verify_opts);
    CLI::App* oracle = app.add_subcommand("oracle", "Continuous vs discrete coefficient cross-check");
    add_common(oracle, oracle_opts);

    CLI11_PARSE(app, argc, argv);

    kstab::cli::RunConfig config;
    try {
        if (analyze->parsed())
            config = to_config(kstab::cli::Command::Analyze, analyze_opts);
        else if (search->parsed())
            config = to_config(kstab::cli::Command::Search, search_opts);
        else if (verify->parsed())
            config = to_config(kstab::cli::Command::Verify, verify_opts);
        else
            config = to_config(kstab::cli::Command::Oracle, oracle_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    kstab::cli::RunResult result = kstab::cli::run(config);
    if (config.output_path.empty()) std::cout << result.report;
    std::cerr << result.summary << "\n";
    return result.exit_code;
}
