#include "stancelp/error.hpp"

namespace stancelp {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kEncoding: return "EncodingError";
    case ErrorCode::kEmptyTranscript: return "EmptyTranscript";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kDanglingLabel: return "DanglingLabel";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kInvalidLexicon: return "InvalidLexicon";
    case ErrorCode::kEmptyEvent: return "EmptyEvent";
    case ErrorCode::kEmptySeries: return "EmptySeries";
    case ErrorCode::kInvalidPrice: return "InvalidPrice";
    case ErrorCode::kDuplicateDate: return "DuplicateDate";
    case ErrorCode::kNoAnchor: return "NoAnchor";
    case ErrorCode::kInsufficientHorizon: return "InsufficientHorizon";
    case ErrorCode::kInsufficientSample: return "InsufficientSample";
    case ErrorCode::kCollinearDesign: return "CollinearDesign";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kNoEstimableHorizon: return "NoEstimableHorizon";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "InternalError";
}

}  // namespace stancelp
