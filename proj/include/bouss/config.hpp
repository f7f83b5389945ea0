#pragma once

/// @file config.hpp
/// Run-configuration files: `key = value` lines, `#` comments, sections
/// [problem] [grid] [sponge] [stepping] [output]. parse(emit(cfg)) is a
/// fixpoint.

#include <string>

#include "bouss/problems.hpp"

namespace bouss {

struct OutputConfig {
    std::string dir = "out";
    long dump_every = 0;        ///< 0 disables periodic field dumps
    long checkpoint_every = 1000;
    int threads = 1;
};

struct RunConfig {
    ProblemConfig problem;
    OutputConfig output;
};

/// Parses and validates; collects every named error (unknown key, bad type,
/// violated invariant) into one ParseError.
RunConfig parse_config(const std::string& text);

/// Canonical emission with fully resolved values.
std::string emit_config(const RunConfig& cfg);

RunConfig load_config_file(const std::string& path);
void save_config_file(const RunConfig& cfg, const std::string& path);

} // namespace bouss
