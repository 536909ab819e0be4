#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pivotlab {

enum class Errc {
  InvalidInput,
  ZeroPivot,
  InvalidSequence,
  DimensionMismatch,
  InvalidParameter,
  DomainError,
  TieAngle,
  EmptySample,
  ConfigError,
  NoConvergence,
  ParseError,
  IoError,
};

std::string_view errc_name(Errc code);

/// Exception carrying a stable error name; the CLI reports `name()` verbatim.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace pivotlab
