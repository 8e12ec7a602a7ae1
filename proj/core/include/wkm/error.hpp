#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wkm {

enum class ErrorKind {
    // configuration / validation
    InvalidParams,
    ConfigError,
    // data
    IoError,
    ParseError,
    DuplicateBlockId,
    InvalidCoordinate,
    UnknownBlockGroup,
    EmptyDataset,
    ZeroTotalWeight,
    DegenerateMean,
    InsufficientPoints,
    AllZeroCardinalities,
    DegenerateReference,
    PlanMismatch,
    RankDeficient,
    // search
    SearchExhausted,
    // bugs
    InvariantViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace wkm
