#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rmplate {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed mesh text. Carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid connectivity: bad vertex index, duplicate triangle, edge shared by
/// more than two triangles, or a zero-area triangle.
class TopologyError : public Error {
 public:
  using Error::Error;
};

/// The clamped multiplier modification cannot absorb some boundary vertex
/// because no interior vertex is reachable from it.
class AllBoundaryTriangleError : public Error {
 public:
  using Error::Error;
};

class DegenerateTriangleError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// Factorization hit a zero pivot. `block()` names the unknown block
/// (rotation, displacement, multiplier) the null direction lives in.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(std::string block, const std::string& what);
  const std::string& block() const noexcept { return block_; }

 private:
  std::string block_;
};

/// Static condensation requested for a multiplier space whose Gram matrix
/// against the rotation space is not diagonal.
class NonDiagonalGramError : public Error {
 public:
  using Error::Error;
};

class FactorizationError : public Error {
 public:
  using Error::Error;
};

class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// Dense diagnostics refuse problems above their size limit.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace rmplate
