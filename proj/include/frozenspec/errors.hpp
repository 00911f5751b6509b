#pragma once

#include <stdexcept>
#include <string>

namespace frozenspec {

enum class ErrorCode {
  parameter = 1,
  domain = 2,
  numeric = 3,
  contour_through_zero = 4,
  unreliable_count = 5,
  mode = 6,
  config = 7,
  io = 8,
};

// Base of every exception thrown by the library. The C API maps code() onto
// its status enum one to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& w) : Error(ErrorCode::parameter, w) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(ErrorCode::numeric, w) {}
};

/// |f| fell below the contour floor; the caller should perturb the contour.
struct ContourThroughZeroError : Error {
  explicit ContourThroughZeroError(const std::string& w) : Error(ErrorCode::contour_through_zero, w) {}
};

/// The rounded winding integral stayed too far from an integer after refinement.
struct UnreliableCountError : Error {
  UnreliableCountError(const std::string& w, double radius)
      : Error(ErrorCode::unreliable_count, w), radius_(radius) {}
  double radius() const noexcept { return radius_; }

 private:
  double radius_;
};

struct ModeError : Error {
  explicit ModeError(const std::string& w) : Error(ErrorCode::mode, w) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::config, w) {}
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::io, w) {}
};

}  // namespace frozenspec
