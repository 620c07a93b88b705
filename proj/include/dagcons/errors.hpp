#pragma once

#include <stdexcept>
#include <string>

namespace dagcons {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CycleError : Error { using Error::Error; };
struct DuplicateArcError : Error { using Error::Error; };
struct SelfArcError : Error { using Error::Error; };
struct MissingArcError : Error { using Error::Error; };
struct NotCoveredError : Error { using Error::Error; };
struct NodeSetMismatchError : Error { using Error::Error; };
struct InvalidQueryError : Error { using Error::Error; };
struct SizeLimitError : Error { using Error::Error; };
struct MissingBoundError : Error { using Error::Error; };
struct NotAnIMapError : Error { using Error::Error; };
struct DuplicateNodeError : Error { using Error::Error; };
struct NotAPermutationError : Error { using Error::Error; };

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

}  // namespace dagcons
