#pragma once

#include "homcat/json_io.hpp"

namespace homcat {

struct RunOptions {
    bool timings = false;
    std::uint64_t seed = 12345; // verify-suite seed (HOMCAT_SEED overrides)
};

// Dispatch a full problem file {"version", "command", "payload"} and build the
// report envelope. Throws Error with a stable code on bad input.
json run_problem(const json& problem, const RunOptions& opts);

// canonical byte rendering of a report (sorted keys, 2-space indent, newline)
std::string report_to_string(const json& report);

// deterministic plain-text rendering of a report
std::string render_text(const json& report);

// operation coverage registry: command -> engine operations it exercises
// (directly or through the paths it calls)
std::vector<std::pair<std::string, std::vector<std::string>>> operation_coverage();

// every operation name that must be reachable from the CLI
std::vector<std::string> all_operations();

} // namespace homcat
