#include "neuroscope/patches.hpp"

#include <algorithm>
#include <charconv>

#include "neuroscope/error.hpp"

namespace neuroscope {

std::vector<PatchRef> grid_patches(const std::string& image_id, std::size_t image_width,
                                   std::size_t image_height, std::size_t patch) {
  if (patch == 0) fail(ErrorCode::InvalidArgument, "patch size must be positive");
  const std::size_t cols = (image_width + patch - 1) / patch;
  const std::size_t rows = (image_height + patch - 1) / patch;
  std::vector<PatchRef> out;
  out.reserve(cols * rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out.push_back({image_id, c * patch, r * patch, patch, Provenance::Grid});
  return out;
}

namespace {

// Window origins along one axis for the clipped span [lo, hi).
std::vector<std::size_t> axis_origins(std::int64_t lo, std::int64_t hi, std::int64_t extent,
                                      std::int64_t patch, std::int64_t stride) {
  std::vector<std::size_t> out;
  for (std::int64_t o = lo; o + patch <= hi; o += stride) out.push_back(static_cast<std::size_t>(o));
  if (out.empty()) {
    const std::int64_t shifted = std::clamp<std::int64_t>(lo, 0, std::max<std::int64_t>(0, extent - patch));
    out.push_back(static_cast<std::size_t>(shifted));
  }
  return out;
}

}  // namespace

std::vector<PatchRef> sliding_window(const std::string& image_id, const Region& region,
                                     std::size_t image_width, std::size_t image_height,
                                     std::size_t patch, std::size_t stride) {
  if (patch == 0 || stride == 0) fail(ErrorCode::InvalidArgument, "patch and stride must be positive");
  if (region.width <= 0 || region.height <= 0) fail(ErrorCode::InvalidArgument, "empty region");
  const auto w = static_cast<std::int64_t>(image_width);
  const auto h = static_cast<std::int64_t>(image_height);
  const std::int64_t x0 = std::max<std::int64_t>(region.x, 0);
  const std::int64_t y0 = std::max<std::int64_t>(region.y, 0);
  const std::int64_t x1 = std::min(region.x + region.width, w);
  const std::int64_t y1 = std::min(region.y + region.height, h);
  if (x0 >= x1 || y0 >= y1) fail(ErrorCode::RegionOutsideImage, "region does not intersect the image");

  const auto p = static_cast<std::int64_t>(patch);
  const auto s = static_cast<std::int64_t>(stride);
  const auto xs = axis_origins(x0, x1, w, p, s);
  const auto ys = axis_origins(y0, y1, h, p, s);
  std::vector<PatchRef> out;
  out.reserve(xs.size() * ys.size());
  for (std::size_t y : ys)
    for (std::size_t x : xs) out.push_back({image_id, x, y, patch, Provenance::SlidingWindow});
  return out;
}

FeatureTensor extract(const GrayImage& image, const PatchRef& ref) {
  if (image.pixels.size() != image.width * image.height) {
    fail(ErrorCode::UnreadableImage, "image buffer does not match its dimensions");
  }
  FeatureTensor out(1, ref.size, ref.size, 0.0f);
  const double scale = 1.0 / image.max_value();
  const std::size_t y_end = std::min(ref.y + ref.size, image.height);
  const std::size_t x_end = std::min(ref.x + ref.size, image.width);
  for (std::size_t y = ref.y; y < y_end; ++y)
    for (std::size_t x = ref.x; x < x_end; ++x)
      out.at(0, y - ref.y, x - ref.x) = static_cast<float>(image.at(x, y) * scale);
  return out;
}

std::string patch_id(const PatchRef& ref) {
  return ref.image_id + ":" + std::to_string(ref.x) + ":" + std::to_string(ref.y);
}

std::optional<PatchRef> parse_patch_id(const std::string& id, std::size_t patch_size) {
  const auto second = id.rfind(':');
  if (second == std::string::npos || second == 0) return std::nullopt;
  const auto first = id.rfind(':', second - 1);
  if (first == std::string::npos || first == 0) return std::nullopt;
  auto parse = [](std::string_view text, std::size_t& out) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
  };
  PatchRef ref;
  ref.image_id = id.substr(0, first);
  ref.size = patch_size;
  const std::string_view view(id);
  if (!parse(view.substr(first + 1, second - first - 1), ref.x) ||
      !parse(view.substr(second + 1), ref.y)) {
    return std::nullopt;
  }
  return ref;
}

}  // namespace neuroscope
