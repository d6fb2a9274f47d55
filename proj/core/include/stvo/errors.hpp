#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stvo {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value left the admissible domain of the dynamics (core expulsion,
/// finite-time blow-up, negative drive).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Shape mismatch between vectors or matrices.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Linear-algebra or optimisation failure.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed dataset file. Carries the byte offset where parsing failed.
class DatasetError : public Error {
 public:
  DatasetError(const std::string& what, std::uint64_t byte_offset)
      : Error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
        message_(what),
        byte_offset_(byte_offset) {}

  std::uint64_t byte_offset() const noexcept { return byte_offset_; }
  /// The description without the offset suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::uint64_t byte_offset_;
};

}  // namespace stvo
