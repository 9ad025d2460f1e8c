#pragma once

#include <stdexcept>
#include <string>

namespace ewl {

/// Raised when an input violates the precondition of a public operation.
class ValidationError : public std::invalid_argument {
  public:
    explicit ValidationError(const std::string &what)
        : std::invalid_argument(what) {}
};

} // namespace ewl
