#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neuroscope/layers.hpp"

namespace neuroscope {

/// One convolutional channel of a named layer; the unit of dissection.
struct NeuronRef {
  std::size_t layer = 0;
  std::size_t channel = 0;

  friend auto operator<=>(const NeuronRef&, const NeuronRef&) = default;
};

enum class LayerKind : std::uint8_t {
  Conv = 1,
  ReLU = 2,
  MaxPool = 3,
  Flatten = 4,
  Linear = 5,
  Softmax = 6,
};

struct LayerSpec {
  LayerKind kind = LayerKind::ReLU;
  // Conv: in/out channels, kernel, stride, pad. Linear: in/out dims.
  // MaxPool: kernel, stride.
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t kernel = 0;
  std::size_t stride = 0;
  std::size_t pad = 0;

  static LayerSpec conv(std::size_t in_ch, std::size_t out_ch, std::size_t kernel = 3,
                        std::size_t stride = 1, std::size_t pad = 1);
  static LayerSpec relu();
  static LayerSpec maxpool(std::size_t kernel = 2, std::size_t stride = 2);
  static LayerSpec flatten();
  static LayerSpec linear(std::size_t in_dim, std::size_t out_dim);
  static LayerSpec softmax();

  std::size_t weight_count() const;
  std::size_t bias_count() const;
  Conv2dParams conv_params() const { return {in, out, kernel, stride, pad}; }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

std::string to_string(const LayerSpec& layer);

struct ModelSpec {
  std::vector<LayerSpec> layers;
  /// Layer whose post-ReLU output is retained; defaults to the last Conv
  /// before the first Flatten.
  std::optional<std::size_t> dissection_layer;

  /// Throws ShapeMismatch when adjacent dimensions disagree and
  /// InvalidModel for structural violations.
  void validate() const;
  std::size_t resolved_dissection_layer() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Immutable network: layer specs plus per-layer parameters. Throws
/// NonFinite for NaN or infinite parameters. Safe to share across threads
/// once constructed.
class Model {
 public:
  Model(ModelSpec spec, std::vector<std::vector<float>> weights,
        std::vector<std::vector<float>> biases);

  const ModelSpec& spec() const noexcept { return spec_; }
  std::size_t layer_count() const noexcept { return spec_.layers.size(); }
  const LayerSpec& layer(std::size_t i) const { return spec_.layers.at(i); }
  std::span<const float> weights(std::size_t i) const { return weights_.at(i); }
  std::span<const float> bias(std::size_t i) const { return biases_.at(i); }

  std::size_t dissection_layer() const noexcept { return dissection_layer_; }
  std::size_t dissection_channels() const { return layer(dissection_layer_).out; }
  /// Product of pooling strides before the dissection layer; input sides
  /// must be multiples of this for the trunk to run.
  std::size_t trunk_stride() const noexcept { return trunk_stride_; }
  /// Square input side implied by the Flatten->Linear head, if derivable.
  std::optional<std::size_t> native_input_size() const;

  /// FNV-1a 64 over the canonical weights-file encoding.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  friend bool operator==(const Model& a, const Model& b) {
    return a.spec_ == b.spec_ && a.weights_ == b.weights_ && a.biases_ == b.biases_;
  }

 private:
  ModelSpec spec_;
  std::vector<std::vector<float>> weights_;
  std::vector<std::vector<float>> biases_;
  std::size_t dissection_layer_ = 0;
  std::size_t trunk_stride_ = 1;
  std::uint64_t fingerprint_ = 0;
};

/// Canonical weights-file bytes (see docs/weights_format.md).
std::string serialize_weights(const Model& model);
Model parse_weights(std::string_view bytes);

Model load_weights(const std::filesystem::path& path);
void write_weights(const Model& model, const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace neuroscope
