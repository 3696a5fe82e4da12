#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace neuroscope {

/// Bit-packed 2-D boolean grid, row-major (bit index y*width + x).
/// Bits past width*height in the last word are always zero.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(std::size_t width, std::size_t height);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return width_ * height_; }

  bool get(std::size_t x, std::size_t y) const {
    const std::size_t i = y * width_ + x;
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t x, std::size_t y, bool on = true) {
    const std::size_t i = y * width_ + x;
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (on) words_[i >> 6] |= bit;
    else words_[i >> 6] &= ~bit;
  }
  /// Sets every pixel in [x0,x1) x [y0,y1), clipped to the grid.
  void fill_rect(std::size_t x0, std::size_t y0, std::size_t x1, std::size_t y1);

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Run lengths of alternating values starting with a (possibly empty)
  /// run of zeros; runs after the first are positive.
  std::vector<std::uint64_t> to_rle() const;
  /// Throws InvalidArgument unless runs sum to width*height.
  static BinaryMask from_rle(std::size_t width, std::size_t height,
                             std::span<const std::uint64_t> runs);

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint64_t> words_;
};

std::size_t intersection_count(const BinaryMask& a, const BinaryMask& b);
std::size_t union_count(const BinaryMask& a, const BinaryMask& b);

}  // namespace neuroscope
