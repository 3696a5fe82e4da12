#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neuroscope/activation_index.hpp"
#include "neuroscope/binary_mask.hpp"
#include "neuroscope/inference.hpp"
#include "neuroscope/model.hpp"

namespace neuroscope {

struct Concept {
  std::string id;            // slug
  std::string display_name;
  std::string created_at;

  friend bool operator==(const Concept&, const Concept&) = default;
};

struct LabelAudit {
  NeuronRef neuron;
  std::string concept_id;
  std::string timestamp;
  std::string source_patch;
  std::optional<double> iou;

  friend bool operator==(const LabelAudit&, const LabelAudit&) = default;
};

/// Immutable view of the labeling at one point in the event history.
struct LabelSnapshot {
  std::vector<Concept> concepts;  // creation order
  std::map<NeuronRef, std::string> labels;
  std::vector<LabelAudit> audit;

  const Concept* find_concept(const std::string& id) const;
  std::optional<std::string> label_of(NeuronRef neuron) const;
  /// Position of the concept in creation order (drives palette colours).
  std::optional<std::size_t> concept_rank(const std::string& id) const;

  friend bool operator==(const LabelSnapshot&, const LabelSnapshot&) = default;
};

struct LabelTarget {
  NeuronRef neuron;
  std::optional<double> iou;
};

/// Lowercase ASCII slug: runs of non-alphanumerics become '-', trimmed.
std::string slugify(const std::string& name);

/// Neuron->concept labeling persisted as an append-only JSON-lines event
/// log (see docs/label_log.md). Mutations are serialized; readers take
/// snapshots that never change underneath them.
class ConceptStore {
 public:
  using Clock = std::function<std::string()>;

  /// Replays the log at log_path (created if absent). An empty path keeps
  /// the store in memory only. valid_layer / channel_count bound the
  /// neurons that may be labeled.
  ConceptStore(std::filesystem::path log_path, std::size_t valid_layer, std::size_t channel_count,
               Clock clock = {});

  /// Throws EmptyName or DuplicateConcept.
  Concept add_concept(const std::string& name);

  /// Last write wins per neuron; neurons already carrying the concept are
  /// skipped, so repeating a call changes nothing.
  /// Throws UnknownConcept or UnknownNeuron.
  std::shared_ptr<const LabelSnapshot> label_neurons(std::span<const LabelTarget> targets,
                                                     const std::string& concept_id,
                                                     const std::string& source_patch = {});

  std::shared_ptr<const LabelSnapshot> snapshot() const;

  /// Replays up to max_events complete events of a log (all when nullopt).
  /// A torn final line without newline is ignored.
  static LabelSnapshot replay(const std::filesystem::path& log_path,
                              std::optional<std::size_t> max_events = std::nullopt);

  static std::string utc_now();

 private:
  void append(const std::string& line);
  void publish(LabelSnapshot next);

  std::filesystem::path log_path_;
  std::size_t valid_layer_;
  std::size_t channel_count_;
  Clock clock_;
  std::mutex write_mutex_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const LabelSnapshot> current_;
};

enum class ReportKind { ActivationValue, ActivationArea };

struct ConceptReportEntry {
  std::string concept_id;
  double mean = 0.0;
  std::size_t neuron_count = 0;

  friend bool operator==(const ConceptReportEntry&, const ConceptReportEntry&) = default;
};

struct ConceptReport {
  ReportKind kind = ReportKind::ActivationValue;
  /// Descending by mean, ties by concept creation order. Concepts without
  /// labeled neurons are omitted.
  std::vector<ConceptReportEntry> entries;

  const ConceptReportEntry* find(const std::string& concept_id) const;
};

/// Per concept: mean spatial-max activation of its neurons on this patch.
/// Throws ReportUnavailable when no dissection neuron is labeled.
ConceptReport activation_report(const InferenceResult& result, const LabelSnapshot& labels);

/// Per concept: mean IoU between user_mask and its neurons' activation masks.
/// Throws ReportUnavailable, EmptyMask, or DimensionMismatch.
ConceptReport region_report(const InferenceResult& result, const BinaryMask& user_mask,
                            const QuantileThresholds& thresholds, const LabelSnapshot& labels);

}  // namespace neuroscope
