#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dbsim {

enum class ErrorCode {
  OutOfRange,
  DegenerateDenominator,
  OddLength,
  NoSolution,
  LengthMismatch,
  InvalidArgument,
  Io,
};

/// Exception carrying a machine-readable code plus the offending field name.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string field, const std::string &message)
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string &field() const noexcept { return field_; }

private:
  ErrorCode code_;
  std::string field_;
};

[[noreturn]] inline void throw_out_of_range(const std::string &field, const std::string &message) {
  throw Error(ErrorCode::OutOfRange, field, message);
}

} // namespace dbsim
