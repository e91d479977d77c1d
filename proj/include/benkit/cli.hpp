#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "benkit/config.hpp"

namespace benkit {

// Exit-code contract, exhaustive and mutually exclusive.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitFlagged = 2;   // precondition-flagged rows present
inline constexpr int kExitValidityFail = 3;

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::string format = "csv";  // csv | json
    std::optional<uint64_t> seed;  // overrides config seeds
};

// Subcommand runners. Each writes its outputs under opts.out_dir (atomic
// write-then-rename), emits an envelope JSON, prints a short summary to
// stdout, and returns the exit code. Config errors throw ConfigError.
int run_eval(const Config& cfg, const RunOptions& opts);
int run_invert(const Config& cfg, const RunOptions& opts);
int run_constants(const Config& cfg, const RunOptions& opts);
int run_complexity(const Config& cfg, const RunOptions& opts);
int run_simulate(const Config& cfg, const RunOptions& opts);
int run_rates(const Config& cfg, const RunOptions& opts);

// The shipped default configuration (identical to configs/default.cfg).
const std::string& default_config_text();

}  // namespace benkit
