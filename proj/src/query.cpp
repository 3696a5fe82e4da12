#include "neuroscope/query.hpp"

#include <algorithm>

#include "neuroscope/error.hpp"
#include "neuroscope/parallel.hpp"

namespace neuroscope {

double iou(const BinaryMask& a, const BinaryMask& b) {
  const std::size_t uni = union_count(a, b);
  if (uni == 0) return 0.0;
  return static_cast<double>(intersection_count(a, b)) / static_cast<double>(uni);
}

namespace {

void check_result(const InferenceResult& result, const QuantileThresholds& thresholds) {
  if (result.neuron_count() == 0) fail(ErrorCode::InvalidArgument, "inference result has no dissection maps");
  if (thresholds.size() != result.neuron_count()) {
    fail(ErrorCode::DimensionMismatch, "thresholds cover " + std::to_string(thresholds.size()) +
                                           " neurons, result has " +
                                           std::to_string(result.neuron_count()));
  }
}

void check_user_mask(const BinaryMask& user_mask) {
  if (user_mask.empty()) fail(ErrorCode::EmptyMask, "no region drawn: the query mask is empty");
}

bool ranks_before(const NeuronScore& a, const NeuronScore& b) {
  if (a.iou != b.iou) return a.iou > b.iou;
  return a.neuron.channel < b.neuron.channel;
}

}  // namespace

std::vector<BinaryMask> neuron_masks(const InferenceResult& result,
                                     const QuantileThresholds& thresholds, std::size_t out_w,
                                     std::size_t out_h) {
  check_result(result, thresholds);
  std::vector<BinaryMask> masks(result.neuron_count());
  parallel_for(masks.size(), [&](std::size_t c) {
    masks[c] = activation_mask(result.dissection_maps.map(c), thresholds[c], out_w, out_h);
  });
  return masks;
}

std::vector<NeuronScore> rank_by_iou(std::span<const BinaryMask> masks, const BinaryMask& user_mask,
                                     double threshold, std::size_t layer) {
  std::vector<NeuronScore> scores(masks.size());
  parallel_for(masks.size(), [&](std::size_t c) {
    scores[c] = {{layer, c}, iou(user_mask, masks[c])};
  });
  std::erase_if(scores, [&](const NeuronScore& s) { return s.iou < threshold; });
  std::sort(scores.begin(), scores.end(), ranks_before);
  return scores;
}

QueryResult query_by_region(const InferenceResult& result, const BinaryMask& user_mask,
                            const QuantileThresholds& thresholds, double iou_threshold,
                            std::string patch_id) {
  check_user_mask(user_mask);
  const auto masks = neuron_masks(result, thresholds, user_mask.width(), user_mask.height());
  QueryResult out;
  out.patch_id = std::move(patch_id);
  out.iou_threshold = iou_threshold;
  out.query_mask = user_mask;
  out.matches = rank_by_iou(masks, user_mask, iou_threshold, result.dissection_layer);
  return out;
}

AlignedNeuron best_aligned_neuron(const InferenceResult& result, const BinaryMask& user_mask,
                                  const QuantileThresholds& thresholds) {
  check_user_mask(user_mask);
  auto masks = neuron_masks(result, thresholds, user_mask.width(), user_mask.height());
  std::size_t best = 0;
  double best_iou = -1.0;
  for (std::size_t c = 0; c < masks.size(); ++c) {
    const double v = iou(user_mask, masks[c]);
    if (v > best_iou) {
      best = c;
      best_iou = v;
    }
  }
  return {{result.dissection_layer, best}, best_iou, std::move(masks[best])};
}

ActivatedNeuron most_activated_neuron(const InferenceResult& result,
                                      const QuantileThresholds& thresholds, std::size_t out_w,
                                      std::size_t out_h) {
  check_result(result, thresholds);
  const auto maxima = result.neuron_maxima();
  const auto best = static_cast<std::size_t>(
      std::distance(maxima.begin(), std::max_element(maxima.begin(), maxima.end())));
  return {{result.dissection_layer, best},
          maxima[best],
          activation_mask(result.dissection_maps.map(best), thresholds[best], out_w, out_h)};
}

}  // namespace neuroscope
