#pragma once

#include <stdexcept>
#include <string>

namespace wxsp {

enum class ErrorCode {
  kFileNotFound,
  kUnsupportedFormat,
  kCorruptData,
  kIoFailure,
  kInvalidArgument,
  kTargetCountExceedsPixels,
  kDimensionMismatch,
  kImageTooSmall,
  kNonFiniteInput,
  kMalformedHeader,
  kMalformedRow,
  kDimensionInconsistency,
  kDuplicateId,
  kEmptyClass,
  kNoPositives,
  kNoNegatives,
  kEmptyInput,
  kUnknownCategory,
  kMissingFile,
  kCategoryMissing,
  kInsufficientNegatives,
  kConfig,
};

const char* to_string(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above so
// callers (and tests) can tell error kinds apart without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The message without the "<code>: " prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace wxsp
