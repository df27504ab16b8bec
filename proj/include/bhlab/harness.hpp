#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bhlab/json_io.hpp"

namespace bhlab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command { verify, trace, scan, constants, blei, lemmas };

std::string_view to_string(Command c);
Command command_from_string(std::string_view s);

/// Parsed run configuration. `params` holds the schema-checked
/// command-specific block; a config plus the code version determines every
/// output byte.
struct RunConfig {
    Command command = Command::verify;
    std::uint64_t seed = 0;
    Effort effort;
    std::filesystem::path out_dir = "bh-lab-out";
    bool expect_violations = false;
    Json params = Json::object();
};

/// Validates and parses a config document (schema_version 1). Throws
/// ConfigError with a field-level diagnostic. `cli_command`, when given,
/// must agree with the config's own "command" field (either may be the
/// only one present).
RunConfig parse_config(const Json& doc,
                       std::optional<Command> cli_command = std::nullopt);

struct RunResult {
    int exit_code = 0;
    int jobs = 0;
    int violations = 0;   // sound violation certificates / failed checks
    std::vector<std::filesystem::path> outputs;
    std::string summary;  // human-readable, one line per output + totals
};

/// Exit-status contract: nonzero exactly when sound violation certificates
/// were produced and were not declared expected.
int exit_code_for(int violations, bool expect_violations);

/// Executes the configured command, writing report.jsonl and summary.csv
/// (constants: constants.csv) under out_dir. Exit code follows
/// exit_code_for.
RunResult run(const RunConfig& config);

/// Constant table: one row per m with the theorem constant, the
/// plus-variant polarization constant, the sqrt(m)/e asymptote and its
/// ratio, and per requested M the corollary constants.
void emit_constant_table(std::ostream& out, const std::vector<int>& m_values,
                         const std::vector<int>& M_values);

/// Worker cap: BHLAB_MAX_WORKERS (>= 1) limits the pool; defaults to the
/// hardware concurrency. Results are ordered by job index, so the schedule
/// never changes output bytes.
unsigned effective_workers(std::size_t jobs);

}  // namespace bhlab
