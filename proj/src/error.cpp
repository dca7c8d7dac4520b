#include "wxsp/error.hpp"

namespace wxsp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound: return "file not found";
    case ErrorCode::kUnsupportedFormat: return "unsupported format";
    case ErrorCode::kCorruptData: return "corrupt data";
    case ErrorCode::kIoFailure: return "io failure";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kTargetCountExceedsPixels: return "target count exceeds pixels";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kImageTooSmall: return "image too small";
    case ErrorCode::kNonFiniteInput: return "non-finite input";
    case ErrorCode::kMalformedHeader: return "malformed header";
    case ErrorCode::kMalformedRow: return "malformed row";
    case ErrorCode::kDimensionInconsistency: return "dimension inconsistency";
    case ErrorCode::kDuplicateId: return "duplicate id";
    case ErrorCode::kEmptyClass: return "empty class";
    case ErrorCode::kNoPositives: return "no positives";
    case ErrorCode::kNoNegatives: return "no negatives";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kUnknownCategory: return "unknown category";
    case ErrorCode::kMissingFile: return "missing file";
    case ErrorCode::kCategoryMissing: return "category missing";
    case ErrorCode::kInsufficientNegatives: return "insufficient negatives";
    case ErrorCode::kConfig: return "config error";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace wxsp
