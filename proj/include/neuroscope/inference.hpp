#pragma once

#include <cstddef>
#include <vector>

#include "neuroscope/model.hpp"
#include "neuroscope/tensor.hpp"

namespace neuroscope {

struct InferenceResult {
  std::vector<double> class_scores;
  /// Post-ReLU output of the dissection layer, one map per neuron.
  FeatureTensor dissection_maps;
  std::size_t dissection_layer = 0;

  std::size_t neuron_count() const noexcept { return dissection_maps.channels(); }
  /// Spatial maximum of each neuron's map.
  std::vector<float> neuron_maxima() const;
};

/// Full forward pass on an already-normalized input.
/// Throws ShapeMismatch when the input does not pass evenly through the
/// pooling chain or does not match the Linear head.
InferenceResult forward(const Model& model, const FeatureTensor& input);

/// Runs only up to the dissection layer's ReLU and returns its maps.
FeatureTensor forward_trunk(const Model& model, const FeatureTensor& input);

/// normalize() followed by forward(); patch values in [0,1].
InferenceResult infer_patch(const Model& model, const FeatureTensor& patch);

/// Zero-pads a [0,1] patch on the right/bottom so both sides are multiples
/// of the model's trunk stride.
FeatureTensor pad_to_trunk(const Model& model, const FeatureTensor& patch);

}  // namespace neuroscope
