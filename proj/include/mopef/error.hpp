#ifndef MOPEF_ERROR_HPP
#define MOPEF_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mopef {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two vectors (or a vector and an instance) disagree on the number of objectives.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A point, label, parameter or argument falls outside the operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: bad instance data, bad spec fields, bad grids.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Expression text that does not follow the grammar; `offset` is a 0-based byte offset.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Non-finite or undefined intermediate while evaluating an expression.
class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mopef

#endif  // MOPEF_ERROR_HPP
