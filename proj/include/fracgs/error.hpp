#pragma once

#include <stdexcept>
#include <string>

namespace fracgs {

enum class ErrorCode {
  InvalidInput,
  OddN,
  NonPositiveL,
  NonFinite,
  InvalidOrder,
  SpectralTail,
  ZeroModeSingular,
  SupportMargin,
  NoPositivePart,
  BracketFailure,
  Diverged,
  EndpointNotNegative,
  Config,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fracgs
