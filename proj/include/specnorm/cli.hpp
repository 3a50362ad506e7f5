#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "specnorm/core.hpp"
#include "specnorm/engine.hpp"

namespace specnorm {

inline constexpr const char* kToolVersion = "1.0.0";

// {"d": n, "s": [...]}, a bare array of [re, im] pairs, or a bare array of reals.
QubitState parse_state(const nlohmann::json& doc, std::optional<int> d = std::nullopt);

// Inline JSON text or a path to a JSON file.
QubitState load_coeffs(const std::string& path_or_inline, std::optional<int> d = std::nullopt);

std::vector<Field> parse_fields(const std::string& spec);
std::vector<int> parse_index(const std::string& text);

struct ComputeRequest {
    QubitState state;
    std::vector<Field> fields{Field::complex};
    EngineOptions opt;
    bool emit_roots = false;
    bool oracle_check = false;
    std::uint64_t seed = 0x5eed;
};

nlohmann::json state_json(const QubitState& st);
nlohmann::json cmd_compute(const ComputeRequest& req);
nlohmann::json cmd_census(const QubitState& st, const EngineOptions& opt = {});
nlohmann::json cmd_oracle(const QubitState& st, const std::vector<Field>& fields, std::uint64_t seed);

// Request object as accepted by batch mode: a state document plus optional
// "field", "tol", "roots", "oracle" and "seed" members.
ComputeRequest request_from_json(const nlohmann::json& line);

// One report (or {"error": ...} object) per input line, in input order.
std::vector<nlohmann::json> run_batch(const std::vector<std::string>& lines);

struct ReproduceOutcome {
    std::string text;
    bool ok = true;
};

ReproduceOutcome cmd_reproduce(const std::string& target);

// JSON with every number printed to 17 significant digits.
std::string dump17(const nlohmann::json& j, int indent = 2);
std::string render_table(const nlohmann::json& report);

int exit_code_for(ErrorCode c);

} // namespace specnorm
