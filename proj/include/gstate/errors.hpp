#pragma once

#include <stdexcept>
#include <string>

namespace gstate {

/// Raised when an input violates an operation's precondition. The CLI maps it to exit code 2.
class InvalidInput : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed graph, rotation or decomposition file.
class ParseError : public InvalidInput {
   public:
    ParseError(size_t line, const std::string &what)
        : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
    size_t line() const { return line_; }

   private:
    size_t line_;
};

}  // namespace gstate
