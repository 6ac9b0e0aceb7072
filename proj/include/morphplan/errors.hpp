#pragma once

#include <stdexcept>
#include <string>

namespace morphplan {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateCell : Error { using Error::Error; };
struct BadModuleId : Error { using Error::Error; };
struct DisconnectedConfiguration : Error { using Error::Error; };
struct LinearConfiguration : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct SlotConflict : Error { using Error::Error; };
struct UnknownEdge : Error { using Error::Error; };
struct NoEmbedding : Error { using Error::Error; };
struct MappingInvalid : Error { using Error::Error; };
struct ScheduleFailure : Error { using Error::Error; };
struct SearchExhausted : Error { using Error::Error; };
struct ValidationFailure : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

}  // namespace morphplan
