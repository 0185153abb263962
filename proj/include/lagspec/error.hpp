#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lagspec {

enum class ErrorCode {
  ParseError,
  InsufficientData,
  NonFinite,
  LagOutOfRange,
  UnsupportedModel,
  NonStationaryModel,
  BandwidthTooLarge,
  InvalidLevel,
  DegenerateSpectrum,
  BandUndefined,
  InsufficientInnerReps,
  InvalidArgument,
  IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

// Every domain failure in the library is reported through this type. The
// message always starts with the error name so that it survives being
// printed by a front end.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lagspec
