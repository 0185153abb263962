#include "lagspec/error.hpp"

namespace lagspec {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::LagOutOfRange: return "LagOutOfRange";
    case ErrorCode::UnsupportedModel: return "UnsupportedModel";
    case ErrorCode::NonStationaryModel: return "NonStationaryModel";
    case ErrorCode::BandwidthTooLarge: return "BandwidthTooLarge";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::BandUndefined: return "BandUndefined";
    case ErrorCode::InsufficientInnerReps: return "InsufficientInnerReps";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace lagspec
