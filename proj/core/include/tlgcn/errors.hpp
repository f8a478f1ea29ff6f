#ifndef TLGCN_ERRORS_HPP
#define TLGCN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tlgcn {

/// Shape or time-slot disagreement between operands.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Transform matrix has a zero diagonal entry, so M^{-1} does not exist.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// A text input failed to parse; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An input file or list contained no usable records.
class EmptyInputError : public std::runtime_error {
 public:
  explicit EmptyInputError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was invoked on an object missing required state
/// (e.g. an ablation encoder without layer weights).
class InvalidStateError : public std::logic_error {
 public:
  explicit InvalidStateError(const std::string& what) : std::logic_error(what) {}
};

/// Checkpoint and dataset disagree on a configuration field; names the field.
class ConfigMismatchError : public std::runtime_error {
 public:
  ConfigMismatchError(const std::string& field, const std::string& detail)
      : std::runtime_error("config mismatch on '" + field + "': " + detail), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A serialized container (dataset or checkpoint) is corrupt or of the wrong type.
class FileFormatError : public std::runtime_error {
 public:
  explicit FileFormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tlgcn

#endif  // TLGCN_ERRORS_HPP
