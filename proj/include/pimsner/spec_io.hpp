#pragma once

#include <string>
#include <string_view>

#include "pimsner/reduction.hpp"

namespace pimsner {

/// A parsed system specification.  The file format is line oriented:
///
///     # comment
///     name   swap
///     blocks 1 1
///     mult   0 1 ; 1 0
///     ideal  1 2            (1-based block indices; omit for the zero ideal)
///     opt    levels 3       (also: tol, amp, seed)
struct SystemSpec {
    std::string name = "system";
    std::vector<int> block_dims;
    std::vector<std::vector<int>> mult;
    std::vector<int> ideal_support;      // 0-based internally
    double tol = 1e-10;
    int levels = 3;
    int amp = 2;
    std::uint64_t seed = 1;

    DynSystem build() const;
};

/// Parses a specification.  Malformed input raises input_error whose
/// message carries the line number and a diagnostic code, e.g.
/// "line 3: unknown key 'mul' [unknown-key]".
SystemSpec parse_spec(const std::string& text);

/// Exit codes of the command pipelines.
inline constexpr int kExitOk             = 0;
inline constexpr int kExitVerifyFailure  = 1;
inline constexpr int kExitMalformedInput = 2;
inline constexpr int kExitResourceGuard  = 3;

struct RunReport {
    int exit_code = kExitOk;
    std::string human;      // table for stdout
    std::string machine;    // flat key = value lines, byte-deterministic
};

/// Runs one of reduce | canonical | classify | verify | oracle-check.
RunReport run_command(std::string_view command, const SystemSpec& spec);

} // namespace pimsner
