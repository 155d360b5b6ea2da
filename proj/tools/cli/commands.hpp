#pragma once

#include "cli/config.hpp"
#include "cli/table.hpp"

namespace msgf::cli {

/// Result of a subcommand: a table, optionally a richer JSON document, and the exit status.
struct Output {
    Table table;
    std::optional<nlohmann::ordered_json> document;
    int status = 0;
};

enum class KernelMode { Full, Uniform, Scalar };

Output cmd_spectrum(const RunConfig& run);
Output cmd_kernel(const RunConfig& run, KernelMode mode, int threads);
Output cmd_propagate(const RunConfig& run, int threads);
Output cmd_nonrel(const RunConfig& run, int threads);
/// Status 3 when any check fails.
Output cmd_verify(const RunConfig& run, int threads);

/// Exit status for a library error: 1 for validation, 2 for numerical failures.
int status_for(const Error& e);

}  // namespace msgf::cli
