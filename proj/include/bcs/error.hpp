#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcs {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kUsage = 1,    // bad arguments or parameters
  kIo = 2,       // file system failures
  kFormat = 3,   // malformed or corrupt input data
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::kUsage, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(ErrorKind::kFormat, what) {}
};

/// A reader ran out of input. `offset` is the byte position where more data was needed.
class TruncatedError : public FormatError {
 public:
  TruncatedError(const std::string& what, std::size_t offset)
      : FormatError(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace bcs
