#pragma once

#include <stdexcept>
#include <string>

namespace mfic {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// model / mining
struct MalformedTuple : Error { using Error::Error; };
struct InvalidThreshold : Error { using Error::Error; };
struct InvalidK : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

// compression
struct EmptyDb : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct ScopeMismatch : Error { using Error::Error; };

// propagation
struct UnderflowError : Error { using Error::Error; };

// io
struct ParseError : Error {
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};
struct ScopeError : Error { using Error::Error; };
struct RaggedTuple : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };

}  // namespace mfic
