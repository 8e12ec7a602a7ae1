#include "wkm/error.hpp"

namespace wkm {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateBlockId: return "DuplicateBlockId";
    case ErrorKind::InvalidCoordinate: return "InvalidCoordinate";
    case ErrorKind::UnknownBlockGroup: return "UnknownBlockGroup";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::ZeroTotalWeight: return "ZeroTotalWeight";
    case ErrorKind::DegenerateMean: return "DegenerateMean";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::AllZeroCardinalities: return "AllZeroCardinalities";
    case ErrorKind::DegenerateReference: return "DegenerateReference";
    case ErrorKind::PlanMismatch: return "PlanMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

}  // namespace wkm
