#include "neuroscope/inference.hpp"

#include <algorithm>
#include <string>
#include <variant>

#include "neuroscope/error.hpp"
#include "neuroscope/layers.hpp"

namespace neuroscope {

namespace {

void check_pool_fit(const FeatureTensor& t, const LayerSpec& l, std::size_t index) {
  const bool fits = t.height() >= l.kernel && t.width() >= l.kernel &&
                    (t.height() - l.kernel) % l.stride == 0 &&
                    (t.width() - l.kernel) % l.stride == 0;
  if (!fits) {
    fail(ErrorCode::ShapeMismatch,
         "input of " + std::to_string(t.height()) + "x" + std::to_string(t.width()) +
             " does not divide through pooling layer " + std::to_string(index));
  }
}

// Runs layers [0, stop) and returns the tensor or vector state. When stop
// covers the dissection layer's ReLU, the maps are copied into *captured.
struct Pass {
  std::variant<FeatureTensor, std::vector<float>> state;
};

Pass run_layers(const Model& model, const FeatureTensor& input, std::size_t stop,
                FeatureTensor* captured) {
  Pass pass{input};
  const std::size_t capture_at = model.dissection_layer() + 1;
  for (std::size_t i = 0; i < stop; ++i) {
    const LayerSpec& l = model.layer(i);
    switch (l.kind) {
      case LayerKind::Conv: {
        auto& t = std::get<FeatureTensor>(pass.state);
        pass.state = conv2d(t, model.weights(i), model.bias(i), l.conv_params());
        break;
      }
      case LayerKind::ReLU:
        if (auto* t = std::get_if<FeatureTensor>(&pass.state)) {
          *t = relu(std::move(*t));
        } else {
          auto& v = std::get<std::vector<float>>(pass.state);
          v = relu(std::move(v));
        }
        break;
      case LayerKind::MaxPool: {
        auto& t = std::get<FeatureTensor>(pass.state);
        check_pool_fit(t, l, i);
        pass.state = maxpool2d(t, l.kernel, l.stride);
        break;
      }
      case LayerKind::Flatten: {
        auto& t = std::get<FeatureTensor>(pass.state);
        std::vector<float> flat = std::move(t.storage());
        pass.state = std::move(flat);
        break;
      }
      case LayerKind::Linear: {
        auto& v = std::get<std::vector<float>>(pass.state);
        if (v.size() != l.in) {
          fail(ErrorCode::ShapeMismatch,
               "layer " + std::to_string(i) + " expects " + std::to_string(l.in) +
                   " inputs, got " + std::to_string(v.size()) + " (input size incompatible)");
        }
        pass.state = linear(v, model.weights(i), model.bias(i));
        break;
      }
      case LayerKind::Softmax:
        break;  // applied by forward() so scores stay in double precision
    }
    if (captured && i == capture_at) *captured = std::get<FeatureTensor>(pass.state);
  }
  return pass;
}

void check_input(const Model& model, const FeatureTensor& input) {
  const LayerSpec& first_conv = *std::find_if(
      model.spec().layers.begin(), model.spec().layers.end(),
      [](const LayerSpec& l) { return l.kind == LayerKind::Conv; });
  if (input.channels() != first_conv.in) {
    fail(ErrorCode::DimensionMismatch, "input has " + std::to_string(input.channels()) +
                                           " channels, model expects " +
                                           std::to_string(first_conv.in));
  }
  if (!input.all_finite()) fail(ErrorCode::NonFinite, "input contains non-finite values");
}

}  // namespace

std::vector<float> InferenceResult::neuron_maxima() const {
  std::vector<float> out(dissection_maps.channels(), 0.0f);
  for (std::size_t c = 0; c < out.size(); ++c) {
    auto ch = dissection_maps.channel(c);
    if (!ch.empty()) out[c] = *std::max_element(ch.begin(), ch.end());
  }
  return out;
}

InferenceResult forward(const Model& model, const FeatureTensor& input) {
  check_input(model, input);
  InferenceResult result;
  result.dissection_layer = model.dissection_layer();
  Pass pass = run_layers(model, input, model.layer_count(), &result.dissection_maps);
  const auto& logits = std::get<std::vector<float>>(pass.state);
  result.class_scores = softmax(logits);
  return result;
}

FeatureTensor forward_trunk(const Model& model, const FeatureTensor& input) {
  check_input(model, input);
  FeatureTensor maps;
  run_layers(model, input, model.dissection_layer() + 2, &maps);
  return maps;
}

InferenceResult infer_patch(const Model& model, const FeatureTensor& patch) {
  return forward(model, normalize(patch));
}

FeatureTensor pad_to_trunk(const Model& model, const FeatureTensor& patch) {
  const std::size_t s = model.trunk_stride();
  const std::size_t h = (patch.height() + s - 1) / s * s;
  const std::size_t w = (patch.width() + s - 1) / s * s;
  if (h == patch.height() && w == patch.width()) return patch;
  FeatureTensor out(patch.channels(), h, w, 0.0f);
  for (std::size_t c = 0; c < patch.channels(); ++c)
    for (std::size_t y = 0; y < patch.height(); ++y)
      for (std::size_t x = 0; x < patch.width(); ++x) out.at(c, y, x) = patch.at(c, y, x);
  return out;
}

}  // namespace neuroscope
