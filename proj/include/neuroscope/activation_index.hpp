#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neuroscope/binary_mask.hpp"
#include "neuroscope/corpus.hpp"
#include "neuroscope/image.hpp"
#include "neuroscope/model.hpp"
#include "neuroscope/tensor.hpp"

namespace neuroscope {

/// neurons x images matrix of per-image spatial-max activations,
/// neuron-major. Rows follow dissection-layer channel order, columns follow
/// corpus order.
struct ActivationTable {
  std::size_t layer = 0;
  std::size_t neurons = 0;
  std::size_t images = 0;
  std::vector<float> values;

  float at(std::size_t neuron, std::size_t image) const { return values[neuron * images + image]; }
  std::span<const float> row(std::size_t neuron) const {
    return {values.data() + neuron * images, images};
  }

  friend bool operator==(const ActivationTable&, const ActivationTable&) = default;
};

struct QuantileThresholds {
  double tau = 0.99;
  std::vector<float> values;  // one per neuron

  float operator[](std::size_t neuron) const { return values.at(neuron); }
  std::size_t size() const noexcept { return values.size(); }

  friend bool operator==(const QuantileThresholds&, const QuantileThresholds&) = default;
};

/// Which values the per-neuron quantile is taken over.
enum class QuantileSource : std::uint8_t {
  /// Every (sampled) spatial activation of the neuron across the corpus.
  PooledActivations = 0,
  /// The neuron's per-image maxima (one value per corpus image).
  ImageMaxima = 1,
};

struct IndexOptions {
  double tau = 0.99;
  double sample_rate = 0.1;
  std::uint64_t seed = 0;
  QuantileSource source = QuantileSource::PooledActivations;

  friend bool operator==(const IndexOptions&, const IndexOptions&) = default;
};

struct CorpusRecord {
  std::string image_id;
  std::string path;
  std::size_t width = 0;
  std::size_t height = 0;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

struct ActivationIndex {
  std::uint64_t model_fingerprint = 0;
  IndexOptions options;
  std::vector<CorpusRecord> corpus;
  ActivationTable table;
  QuantileThresholds thresholds;

  std::size_t neuron_count() const noexcept { return table.neurons; }
  std::size_t image_count() const noexcept { return table.images; }

  friend bool operator==(const ActivationIndex&, const ActivationIndex&) = default;
};

/// Element at 1-based rank ceil(tau*N) of the ascending order.
/// Throws InvalidArgument for empty input or tau outside (0,1).
float nearest_rank_quantile(std::vector<float> values, double tau);

/// Flattened positions kept when subsampling `count` values: every
/// round(1/rate)-th position starting at seed mod stride.
std::vector<std::size_t> sample_positions(std::size_t count, double rate, std::uint64_t seed);

/// Dissection maps of a whole corpus image: zero-padded to the trunk
/// stride, normalized, then run through the trunk.
FeatureTensor image_maps(const Model& model, const GrayImage& image);

using ImageLoader = std::function<GrayImage(std::size_t)>;

/// Core builder. records supply ids/paths; load(j) yields image j.
ActivationIndex build_index(const Model& model, std::vector<CorpusRecord> records,
                            const ImageLoader& load, const IndexOptions& options);
ActivationIndex build_index(const Model& model, const ReferenceCorpus& corpus,
                            const IndexOptions& options);

/// Bilinearly upsamples the map to out_w x out_h (half-pixel centres,
/// edge-clamped) and sets bits whose value is strictly greater than q.
BinaryMask activation_mask(const MapView& map, float q, std::size_t out_w, std::size_t out_h);

struct RankedImage {
  std::size_t position = 0;  // corpus column
  float activation = 0.0f;

  friend bool operator==(const RankedImage&, const RankedImage&) = default;
};

/// Descending by activation, ties by ascending corpus position.
std::vector<RankedImage> top_k_images(const ActivationTable& table, NeuronRef neuron, std::size_t k);

void save_index(const ActivationIndex& index, const std::filesystem::path& path);
std::string serialize_index(const ActivationIndex& index);
/// Throws StaleIndex when expected_fingerprint is given and differs.
ActivationIndex parse_index(std::string_view bytes,
                            std::optional<std::uint64_t> expected_fingerprint = std::nullopt);
ActivationIndex load_index(const std::filesystem::path& path,
                           std::optional<std::uint64_t> expected_fingerprint = std::nullopt);

}  // namespace neuroscope
