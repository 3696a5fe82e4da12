#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "neuroscope/image.hpp"
#include "neuroscope/tensor.hpp"

namespace neuroscope {

enum class Provenance { Grid, SlidingWindow };

struct PatchRef {
  std::string image_id;
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t size = 512;
  Provenance provenance = Provenance::Grid;

  friend bool operator==(const PatchRef&, const PatchRef&) = default;
};

/// Axis-aligned box in image pixels; may extend past the image.
struct Region {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;
};

/// Non-overlapping tiles covering the image zero-padded up to the next
/// multiple of patch on the right and bottom; row-major.
std::vector<PatchRef> grid_patches(const std::string& image_id, std::size_t image_width,
                                   std::size_t image_height, std::size_t patch = 512);

/// Windows at region origin + i*stride that stay inside region and image.
/// When no window fits along an axis, one window is emitted there, shifted
/// inward to fit the image (or at 0 when the image is narrower than patch).
/// Throws RegionOutsideImage when the region misses the image.
std::vector<PatchRef> sliding_window(const std::string& image_id, const Region& region,
                                     std::size_t image_width, std::size_t image_height,
                                     std::size_t patch = 512, std::size_t stride = 256);

/// Crops the patch, zero-filling outside the image, scaled to [0,1] by the
/// image's maximum sample value. Result is 1 x size x size.
FeatureTensor extract(const GrayImage& image, const PatchRef& ref);

/// "<image_id>:<x>:<y>" identifiers used by the service for grid patches.
std::string patch_id(const PatchRef& ref);
/// Inverse of patch_id; returns nullopt when the text is malformed.
std::optional<PatchRef> parse_patch_id(const std::string& id, std::size_t patch_size);

}  // namespace neuroscope
