#pragma once

#include "chdg/ch_solver.hpp"
#include "chdg/verification.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chdg {

/// Invalid or inconsistent run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RunMode { Convergence, Spinodal, Single };

std::string to_string(RunMode mode);

struct RunConfig {
    RunMode mode = RunMode::Convergence;
    int k = 0;
    Scheme scheme = Scheme::FullyImplicit;
    double epsilon = 1.0;
    double final_time = 1.0;
    /// Exactly one of dt / dt_rule is in effect after parsing.
    std::optional<double> dt;
    std::optional<int> dt_rule_offset; // dt = (1/n)^(k + offset)
    std::vector<int> levels{4, 8, 16, 32, 64};
    int n = 16;
    NewtonSettings newton;
    SourceTiming source = SourceTiming::TimeDiscrete;
    bool negative_norm = false;
    std::string output_dir = "out";
    std::uint64_t seed = 1;
    int vtk_every = 0; // 0: initial and final snapshot only

    DtRule dt_rule() const;
    /// Canonical key=value text; parse_config_text() of it gives back the
    /// same configuration.
    std::string to_text() const;
};

struct ConfigKey {
    const char* name;
    const char* help;
};

/// Every key accepted by the parser.
const std::vector<ConfigKey>& config_keys();

/// Parses key=value tokens. Unset keys take the defaults of the mode
/// (spinodal: eps 0.05, n 64, k 1, dt 1e-4, T 0.05, cs). Throws ConfigError
/// on unknown keys, malformed or out-of-range values and dt/dt_rule
/// conflicts.
RunConfig parse_config(const std::vector<std::string>& tokens);

/// Splits a config file (one key=value per line, '#' comments, blank lines
/// ignored) into tokens for parse_config.
std::vector<std::string> config_tokens_from_text(const std::string& text);

RunConfig parse_config_text(const std::string& text);

} // namespace chdg
