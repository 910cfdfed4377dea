#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmdnov {

enum class ErrorKind {
  kIo,
  kFormat,
  kValidation,
  kShape,
  kConfig,
  kInsufficientSamples,
  kNumerical,
};

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for errors caused by bad input or configuration, as opposed to a
  /// numerical failure during computation.
  bool is_user_error() const noexcept { return kind_ != ErrorKind::kNumerical; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

/// Malformed file content. `offset()` is the byte offset (NPY) or the
/// 1-based line number (CSV, manifest) where parsing stopped.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(ErrorKind::kFormat, what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A value that parsed but violates a data invariant (non-finite entry).
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::size_t row, std::size_t col)
      : Error(ErrorKind::kValidation, what + " at row " + std::to_string(row) +
                                          ", col " + std::to_string(col)),
        row_(row),
        col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(ErrorKind::kShape, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::kConfig, what) {}
};

class InsufficientSamplesError : public Error {
 public:
  InsufficientSamplesError(std::size_t m, std::size_t n)
      : Error(ErrorKind::kInsufficientSamples,
              "need at least 2 samples in each set (got m=" + std::to_string(m) +
                  ", n=" + std::to_string(n) + ")") {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::kNumerical, what) {}
};

}  // namespace mmdnov
