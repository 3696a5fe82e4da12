#include "neuroscope/binary_mask.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "neuroscope/error.hpp"

namespace neuroscope {

BinaryMask::BinaryMask(std::size_t width, std::size_t height)
    : width_(width), height_(height), words_((width * height + 63) / 64, 0) {}

void BinaryMask::fill_rect(std::size_t x0, std::size_t y0, std::size_t x1, std::size_t y1) {
  x1 = std::min(x1, width_);
  y1 = std::min(y1, height_);
  for (std::size_t y = y0; y < y1; ++y)
    for (std::size_t x = x0; x < x1; ++x) set(x, y);
}

std::size_t BinaryMask::count() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::uint64_t> BinaryMask::to_rle() const {
  std::vector<std::uint64_t> runs;
  bool current = false;
  std::uint64_t length = 0;
  const std::size_t n = pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    const bool bit = (words_[i >> 6] >> (i & 63)) & 1u;
    if (bit != current) {
      runs.push_back(length);
      current = bit;
      length = 0;
    }
    ++length;
  }
  runs.push_back(length);
  return runs;
}

BinaryMask BinaryMask::from_rle(std::size_t width, std::size_t height,
                                std::span<const std::uint64_t> runs) {
  BinaryMask mask(width, height);
  const std::uint64_t total = static_cast<std::uint64_t>(width) * height;
  std::uint64_t pos = 0;
  bool value = false;
  for (std::uint64_t run : runs) {
    if (run > total - pos) {
      fail(ErrorCode::InvalidArgument, "RLE runs exceed " + std::to_string(width) + "x" +
                                           std::to_string(height) + " pixels");
    }
    if (value)
      for (std::uint64_t i = pos; i < pos + run; ++i)
        mask.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    pos += run;
    value = !value;
  }
  if (pos != total) {
    fail(ErrorCode::InvalidArgument, "RLE runs cover " + std::to_string(pos) + " of " +
                                         std::to_string(total) + " pixels");
  }
  return mask;
}

namespace {

void require_same_shape(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    fail(ErrorCode::DimensionMismatch,
         "mask sizes differ: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
             " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

}  // namespace

std::size_t intersection_count(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  auto wa = a.words();
  auto wb = b.words();
  std::size_t n = 0;
  for (std::size_t i = 0; i < wa.size(); ++i)
    n += static_cast<std::size_t>(std::popcount(wa[i] & wb[i]));
  return n;
}

std::size_t union_count(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  auto wa = a.words();
  auto wb = b.words();
  std::size_t n = 0;
  for (std::size_t i = 0; i < wa.size(); ++i)
    n += static_cast<std::size_t>(std::popcount(wa[i] | wb[i]));
  return n;
}

}  // namespace neuroscope
