#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace neuroscope {

/// Read-only view of one 2-D activation map (row-major).
struct MapView {
  std::span<const float> values;
  std::size_t height = 0;
  std::size_t width = 0;

  float at(std::size_t y, std::size_t x) const { return values[y * width + x]; }
};

/// Dense channels x height x width tensor of float activations, row-major.
class FeatureTensor {
 public:
  FeatureTensor() = default;
  FeatureTensor(std::size_t channels, std::size_t height, std::size_t width,
                float fill = 0.0f);
  /// Throws DimensionMismatch when data.size() != c*h*w.
  FeatureTensor(std::size_t channels, std::size_t height, std::size_t width,
                std::vector<float> data);

  std::size_t channels() const noexcept { return channels_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t plane_size() const noexcept { return height_ * width_; }

  float& at(std::size_t c, std::size_t y, std::size_t x) {
    return data_[(c * height_ + y) * width_ + x];
  }
  float at(std::size_t c, std::size_t y, std::size_t x) const {
    return data_[(c * height_ + y) * width_ + x];
  }

  std::span<float> channel(std::size_t c) {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<const float> channel(std::size_t c) const {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  MapView map(std::size_t c) const { return {channel(c), height_, width_}; }

  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }
  std::vector<float>& storage() noexcept { return data_; }
  const std::vector<float>& storage() const noexcept { return data_; }

  bool all_finite() const;

  friend bool operator==(const FeatureTensor&, const FeatureTensor&) = default;

 private:
  std::size_t channels_ = 0;
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<float> data_;
};

}  // namespace neuroscope
