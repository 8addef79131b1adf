#include "rmplate/errors.hpp"

#include <utility>

namespace rmplate {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

SingularMatrixError::SingularMatrixError(std::string block, const std::string& what)
    : Error(what + " (zero pivot in " + block + " block)"), block_(std::move(block)) {}

}  // namespace rmplate
