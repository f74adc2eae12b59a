#include "nrq/error.hpp"

namespace nrq {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::NegativeRate: return "NegativeRate";
    case ErrorKind::BadWavelength: return "BadWavelength";
    case ErrorKind::BadEnergy: return "BadEnergy";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::StateInvariantViolated: return "StateInvariantViolated";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace nrq
