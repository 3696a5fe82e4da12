#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace neuroscope {

/// Single-channel image with 8- or 16-bit samples.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  int bit_depth = 8;
  std::vector<std::uint16_t> pixels;  // row-major

  GrayImage() = default;
  GrayImage(std::size_t w, std::size_t h, int depth = 8)
      : width(w), height(h), bit_depth(depth), pixels(w * h, 0) {}

  std::uint16_t& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  std::uint16_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
  /// Largest representable sample (255 or 65535).
  double max_value() const { return bit_depth == 16 ? 65535.0 : 255.0; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

/// Decodes PNG bytes. Colour images are converted to gray, alpha is
/// stripped, and sub-byte depths expand to 8 bits.
/// Throws UnreadableImage on malformed input.
GrayImage decode_png(std::string_view bytes);
std::string encode_png(const GrayImage& image);

GrayImage read_png(const std::filesystem::path& path);
void write_png(const GrayImage& image, const std::filesystem::path& path);

}  // namespace neuroscope
