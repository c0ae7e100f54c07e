#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hetlda {

enum class ErrorKind {
    EmptyClass,
    DimensionMismatch,
    DegenerateProjection,
    ComplexRoot,
    ZeroDirection,
    SingularUpdate,
    Indeterminate,
    ParseError,
    InconsistentWidth,
    InfeasibleStratification,
    InvalidArgument,
    IoError,
    VersionMismatch,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (trainers, the benchmark harness, the CLI) can branch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hetlda
