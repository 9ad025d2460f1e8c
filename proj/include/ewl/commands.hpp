/**
 * @file
 * Subcommands behind the `ewl` executable. Each writes to `out` (or to
 * `config.output` when set) and returns the process exit code.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ewl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCrossCheck = 3;

/// Largest n accepted on the command line (n + 1 qubits).
inline constexpr int kMaxCliN = 19;

enum class Command { simulate, optimize, verify, landscape, reproduce };
enum class Format { text, csv, json };
enum class OptimizeMode { both, classical, quantum };
enum class VerifyTarget { prop1, prop2, prop3, recall, formulas, eta, embedding };

struct RunConfig {
    Command command = Command::simulate;
    std::optional<int> n;
    double lambda = 4.0;
    std::optional<double> theta;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<int> samples;
    std::uint64_t seed = 7;
    std::optional<int> grid;
    std::optional<int> grid_theta;
    std::optional<int> grid_alpha;
    std::optional<int> grid_beta;
    std::optional<int> starts;
    std::optional<double> tol;
    std::optional<double> delta;
    std::optional<Format> format;
    std::optional<std::string> output;
    OptimizeMode mode = OptimizeMode::both;
    VerifyTarget target = VerifyTarget::formulas;
    std::vector<double> lambda_sweep;
    std::optional<std::string> problem_path;
};

/// Range checks for the selected command; throws ValidationError.
void validate(const RunConfig &config);

/// Validates, dispatches and maps errors onto exit codes.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

int cmd_simulate(const RunConfig &config, std::ostream &out);
int cmd_optimize(const RunConfig &config, std::ostream &out);
int cmd_verify(const RunConfig &config, std::ostream &out);
int cmd_landscape(const RunConfig &config, std::ostream &out);
int cmd_reproduce(const RunConfig &config, std::ostream &out);

std::optional<Format> parse_format(const std::string &s);
std::optional<VerifyTarget> parse_target(const std::string &s);
std::optional<OptimizeMode> parse_mode(const std::string &s);

} // namespace ewl::cli
