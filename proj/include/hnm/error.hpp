#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hnm {

enum class ErrorKind {
    // invalid input
    BadParameter,
    NonPositiveDensity,
    DistributionalDensity,
    LowerHalfPlane,
    OutOfRange,
    BadQuadrature,
    GridMismatch,
    UnsupportedKind,
    DimensionTooLarge,
    InvalidAmplitude,
    InvalidState,
    IndexOutOfRange,
    TraceTooShort,
    // numerical breakdown
    ResolventPole,
    AmplitudeNearZero,
    PhaseJump,
    CrosscheckFailed,
    // runner
    IoError,
    ConfigParse,
    UnknownSubcommand,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for kinds that signal a numerical breakdown rather than bad input.
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace hnm
