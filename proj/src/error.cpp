#include "neuroscope/error.hpp"

namespace neuroscope {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MagicMismatch: return "magic_mismatch";
    case ErrorCode::UnsupportedVersion: return "unsupported_version";
    case ErrorCode::ShapeMismatch: return "shape_mismatch";
    case ErrorCode::TruncatedFile: return "truncated_file";
    case ErrorCode::InvalidModel: return "invalid_model";
    case ErrorCode::StaleIndex: return "stale_index";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::NonFinite: return "non_finite";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::EmptyCorpus: return "empty_corpus";
    case ErrorCode::UnreadableImage: return "unreadable_image";
    case ErrorCode::RegionOutsideImage: return "region_outside_image";
    case ErrorCode::UnknownNeuron: return "unknown_neuron";
    case ErrorCode::EmptyMask: return "empty_mask";
    case ErrorCode::DuplicateConcept: return "duplicate_concept";
    case ErrorCode::EmptyName: return "empty_name";
    case ErrorCode::UnknownConcept: return "unknown_concept";
    case ErrorCode::ReportUnavailable: return "report_unavailable";
    case ErrorCode::CorruptLog: return "corrupt_log";
    case ErrorCode::NotFound: return "not_found";
  }
  return "unknown";
}

}  // namespace neuroscope
