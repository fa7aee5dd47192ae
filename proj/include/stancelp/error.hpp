#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stancelp {

// Mirrored one-to-one by slp_status in stancelp.h; keep the order in sync.
enum class ErrorCode {
  kIo = 1,
  kEncoding,
  kEmptyTranscript,
  kParse,
  kDanglingLabel,
  kDuplicateLabel,
  kInvalidLexicon,
  kEmptyEvent,
  kEmptySeries,
  kInvalidPrice,
  kDuplicateDate,
  kNoAnchor,
  kInsufficientHorizon,
  kInsufficientSample,
  kCollinearDesign,
  kInvalidConfig,
  kNoEstimableHorizon,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  // Extra items, e.g. every violated config field.
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

// A non-fatal condition surfaced in the run summary.
struct Warning {
  std::string code;
  std::string message;
};

using Warnings = std::vector<Warning>;

}  // namespace stancelp
