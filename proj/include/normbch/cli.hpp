#ifndef NORMBCH_CLI_HPP
#define NORMBCH_CLI_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace nbch {

inline constexpr const char* kToolVersion = "1.0.0";
/// Environment variable overriding the default subset budget.
inline constexpr const char* kBudgetEnv = "NBCH_BUDGET";

enum ExitCode : int { kExitOk = 0, kExitCounterexample = 1, kExitUsage = 2 };

/// Record written next to each output file as `<output>.manifest.json`.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    std::map<std::string, std::string> input_hashes;   // path -> fnv1a64 hex
    std::map<std::string, std::string> output_hashes;  // path -> fnv1a64 hex
    double seconds = 0;

    std::string to_json() const;
};

/// Runs one subcommand; args exclude the program name. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nbch

#endif  // NORMBCH_CLI_HPP
