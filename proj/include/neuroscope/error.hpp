#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace neuroscope {

enum class ErrorCode {
  // Weights / index file formats.
  MagicMismatch,
  UnsupportedVersion,
  ShapeMismatch,
  TruncatedFile,
  InvalidModel,
  StaleIndex,
  Io,
  // Numeric and argument validation.
  NonFinite,
  DimensionMismatch,
  InvalidArgument,
  // Corpus / images.
  EmptyCorpus,
  UnreadableImage,
  RegionOutsideImage,
  // Query and labeling.
  UnknownNeuron,
  EmptyMask,
  DuplicateConcept,
  EmptyName,
  UnknownConcept,
  ReportUnavailable,
  CorruptLog,
  NotFound,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace neuroscope
