#ifndef RES2D_TOOLS_COMMANDS_HPP
#define RES2D_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "json_io.hpp"
#include "res2d/version.hpp"

namespace res2d::cli
{

enum ExitCode { kOk = 0, kViolation = 1, kInputError = 2, kArithmeticError = 3 };

struct Overrides {
    std::optional<long> precision;
    std::optional<long> tmax;
    std::optional<std::uint64_t> seed;
    std::optional<long> count;
};

struct Outcome {
    json report;
    int exit_code = kOk;
};

// Runs one scenario given as JSON text. Never throws: schema problems and
// library errors become error reports with the matching exit code.
Outcome run_scenario(const std::string &command, const std::string &text, const Overrides &overrides = {});

// Serialized form written by the executable.
std::string render(const json &report);

} // namespace res2d::cli

#endif
