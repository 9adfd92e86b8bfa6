#include "fracgs/error.hpp"

namespace fracgs {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::NonPositiveL: return "NonPositiveL";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::SpectralTail: return "SpectralTail";
    case ErrorCode::ZeroModeSingular: return "ZeroModeSingular";
    case ErrorCode::SupportMargin: return "SupportMargin";
    case ErrorCode::NoPositivePart: return "NoPositivePart";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::EndpointNotNegative: return "EndpointNotNegative";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace fracgs
