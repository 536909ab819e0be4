#include "pivotlab/error.hpp"

namespace pivotlab {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::ZeroPivot: return "ZeroPivot";
    case Errc::InvalidSequence: return "InvalidSequence";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::DomainError: return "DomainError";
    case Errc::TieAngle: return "TieAngle";
    case Errc::EmptySample: return "EmptySample";
    case Errc::ConfigError: return "ConfigError";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace pivotlab
