#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "neuroscope/activation_index.hpp"
#include "neuroscope/binary_mask.hpp"
#include "neuroscope/inference.hpp"

namespace neuroscope {

/// |A ∩ B| / |A ∪ B|; 0 when both masks are empty.
/// Throws DimensionMismatch for masks of different size.
double iou(const BinaryMask& a, const BinaryMask& b);

struct NeuronScore {
  NeuronRef neuron;
  double iou = 0.0;

  friend bool operator==(const NeuronScore&, const NeuronScore&) = default;
};

struct QueryResult {
  std::string patch_id;
  double iou_threshold = 0.2;
  BinaryMask query_mask;
  /// Descending by iou, ties by ascending channel; all entries >= threshold.
  std::vector<NeuronScore> matches;
};

/// Activation masks of every dissection neuron at out_w x out_h.
std::vector<BinaryMask> neuron_masks(const InferenceResult& result,
                                     const QuantileThresholds& thresholds, std::size_t out_w,
                                     std::size_t out_h);

/// Scores precomputed masks (mask i belongs to channel i of layer) against
/// the user region and keeps those with iou >= threshold, in result order.
std::vector<NeuronScore> rank_by_iou(std::span<const BinaryMask> masks, const BinaryMask& user_mask,
                                     double threshold, std::size_t layer);

/// Throws EmptyMask for an empty user mask.
QueryResult query_by_region(const InferenceResult& result, const BinaryMask& user_mask,
                            const QuantileThresholds& thresholds, double iou_threshold = 0.2,
                            std::string patch_id = {});

struct AlignedNeuron {
  NeuronRef neuron;
  double iou = 0.0;
  BinaryMask mask;
};

/// Argmax of iou over all neurons (no threshold), ties by ascending channel.
AlignedNeuron best_aligned_neuron(const InferenceResult& result, const BinaryMask& user_mask,
                                  const QuantileThresholds& thresholds);

struct ActivatedNeuron {
  NeuronRef neuron;
  float max_activation = 0.0f;
  BinaryMask mask;
};

/// Neuron with the largest spatial-max activation on the patch, ties by
/// ascending channel; its mask is rendered at out_w x out_h.
ActivatedNeuron most_activated_neuron(const InferenceResult& result,
                                      const QuantileThresholds& thresholds, std::size_t out_w,
                                      std::size_t out_h);

}  // namespace neuroscope
