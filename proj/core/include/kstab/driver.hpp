#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kstab/invariants.hpp"

namespace kstab::cli {

enum class Command { Analyze, Search, Verify, Oracle };

/// Batch run configuration. Identical configurations on identical inputs
/// produce byte-identical reports; every random choice flows from `seed`.
struct RunConfig {
    Command command = Command::Analyze;
    std::string input_path;
    Convention convention = Convention::TraceFree;
    Rat precision = default_precision();
    std::optional<std::vector<long>> k_samples;
    std::optional<int> resolution;
    std::optional<long> max_iterations;
    std::optional<std::uint64_t> seed;
    std::string output_path;  // empty: report goes to stdout
};

struct RunResult {
    int exit_code = 0;        // 0 ok, 1 parse/validation, 2 fail verdict or mismatch, 3 not a candidate
    std::string report;       // machine-readable JSON document
    std::string summary;      // one-line human-readable note
};

/// Run on an already-loaded input document (no filesystem access).
RunResult run_on_text(const RunConfig& config, const std::string& input_text);

/// Read config.input_path, run, and write the report to config.output_path
/// (or leave it in the result for stdout).
RunResult run(const RunConfig& config);

}  // namespace kstab::cli
