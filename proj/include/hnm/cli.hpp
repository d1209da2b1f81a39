#pragma once

#include "hnm/config.hpp"
#include "hnm/error.hpp"
#include "hnm/trace.hpp"

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace hnm {

/// Exit statuses of the runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitConfig = 65;
inline constexpr int kExitIo = 74;

int exit_code(ErrorKind kind) noexcept;

/// Amplitude trace of a config with the chosen backend.
AmplitudeTrace compute_trace(const ExperimentConfig& config, Backend backend);

struct FigureCase {
    std::string file_name;
    ExperimentConfig config;
};

/// Parameter sets behind the figure CSVs, with T = 1. which is "fig2" or "fig3".
std::vector<FigureCase> figure_cases(const std::string& which);

/// args[0] is the subcommand. Errors are reported on err as one JSON line
/// {"error": kind, "message": text}.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace hnm
