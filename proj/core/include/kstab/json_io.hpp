#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kstab/invariants.hpp"
#include "kstab/pl_function.hpp"
#include "kstab/polytope.hpp"

namespace kstab {

/// Parsed form of the toric input document shared by analyze/search/oracle.
struct ToricInput {
    LatticePolytope polytope;
    std::vector<PLConvexFunction> functions;
    std::vector<Rat> shifts;               // resolved; defaults to max_P f
    std::vector<std::string> labels;
    std::optional<TriangulationData> triangulation;
    std::optional<std::vector<long>> k_samples;
    std::optional<int> resolution;
    std::optional<long> max_iterations;
    std::optional<std::uint64_t> seed;
};

ToricInput parse_toric_input(const std::string& json_text);

/// Pinned interchange schema:
/// {"n": int, "r": int, "a0": "p/q", "a1": "p/q",
///  "actions": [{"label": str, "b0": "p/q", "b1": "p/q"}...], "d0": [["p/q",...],...]}
std::string model_to_json(const EquivariantModel& model);
EquivariantModel model_from_json(const std::string& json_text);

struct VerifyInput {
    EquivariantModel model;
    LieAlgebraPoint candidate;
    std::vector<LieAlgebraPoint> directions;  // "span" is expanded to the basis and its negations
    bool span = false;
};

VerifyInput parse_verify_input(const std::string& json_text);

}  // namespace kstab
