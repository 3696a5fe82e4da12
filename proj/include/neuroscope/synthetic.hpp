#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "neuroscope/activation_index.hpp"
#include "neuroscope/image.hpp"
#include "neuroscope/model.hpp"

namespace neuroscope::synthetic {

/// Hand-set 8-neuron network over 32x32 patches. Dissection neuron 0 fires
/// on bright squares, neuron 1 on bright circles; neurons 2-6 are weaker
/// edge and background detectors, neuron 7 never fires. Class 1 scores
/// patches that contain either shape.
Model shape_model();

inline constexpr std::size_t kSquareNeuron = 0;
inline constexpr std::size_t kCircleNeuron = 1;
inline constexpr std::size_t kPatchSize = 32;
inline constexpr std::size_t kImageSize = 128;
inline constexpr std::size_t kSquareSide = 12;
inline constexpr std::size_t kCircleRadius = 7;

struct Shape {
  enum class Kind { Square, Circle };
  Kind kind = Kind::Square;
  /// Square: top-left corner. Circle: centre.
  std::size_t x = 0;
  std::size_t y = 0;
};

/// Dim noise background (0-0.05) with bright shapes (0.9-0.95), 8-bit.
GrayImage render_shapes(std::size_t width, std::size_t height, const std::vector<Shape>& shapes,
                        std::uint64_t seed);

/// Pixels covered by a shape, as a mask over the region [x0,x0+w) x [y0,y0+h).
BinaryMask shape_mask(const Shape& shape, std::size_t x0, std::size_t y0, std::size_t w,
                      std::size_t h);

struct FixtureImage {
  std::string id;
  std::vector<Shape> shapes;
  std::uint64_t seed = 0;
};

/// The three 128x128 fixture images; each holds one square and one circle,
/// both lying wholly inside a single 32x32 grid patch.
std::vector<FixtureImage> fixture_images();

struct FixturePaths {
  std::filesystem::path model;
  std::filesystem::path corpus;  // directory with manifest.tsv
  std::filesystem::path index;
};

/// Writes model.nscw, corpus/{manifest.tsv,*.png} and index.nsci
/// (tau 0.99, every spatial activation sampled) under root.
FixturePaths write_fixtures(const std::filesystem::path& root);

inline IndexOptions fixture_index_options() {
  IndexOptions o;
  o.tau = 0.99;
  o.sample_rate = 1.0;
  return o;
}

}  // namespace neuroscope::synthetic
