#pragma once

// Command-line front end. Every subcommand renders json, csv and ascii from
// one in-memory result, so the formats cannot disagree.
//
// Exit status: 0 on success or a passing certificate, 1 when a certificate
// or verification fails, 2 on a usage error.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dmeq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::string subcommand;
    int p = 0;
    /// json | csv | ascii
    std::string format = "json";
    std::optional<int> max_degree;
    std::optional<int> max_i;
    int window = 4;
    /// trivial | regular | perm:<cycles>
    std::string rep = "trivial";
    std::string input;
    /// Empty means standard output.
    std::string out;
    bool timings = false;
};

struct StageResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyAllReport {
    int p = 0;
    int window = 0;
    std::vector<StageResult> stages;
    /// The common value of the three independent counts of fixed data, or -1
    /// when they disagree.
    long long cross_count = -1;
    bool pass = false;
};

/// Runs every stage in order; failures (including exceptions) are recorded,
/// never thrown.
VerifyAllReport verify_all(int p, int window);

/// Executes a parsed configuration, writing the rendered result to `out`
/// (or to config.out) and diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (including the program name) and runs it.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dmeq
