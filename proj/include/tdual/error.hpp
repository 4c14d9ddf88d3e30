#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tdual {

enum class ErrorKind {
    InvalidArgument,
    ParseError,
    UnknownName,
    CompositionNonzero,
    NotChainMap,
    NotInStar,
    DisconnectedStar,
    NotClosedPseudomanifold,
    BaseMismatch,
    RingMismatch,
    FlatnessViolation,
    NotSignSystem,
    IncoherentCover,
    TwoIsZero,
    DegreeMismatch,
    BadIndices,
    NotRelativeCocycle,
    NotACover,
    NotACycle,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` is stable and machine-checkable.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace tdual
