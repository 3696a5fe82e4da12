#include "neuroscope/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "neuroscope/error.hpp"
#include "neuroscope/parallel.hpp"

namespace neuroscope {

FeatureTensor::FeatureTensor(std::size_t channels, std::size_t height,
                             std::size_t width, float fill)
    : channels_(channels),
      height_(height),
      width_(width),
      data_(channels * height * width, fill) {}

FeatureTensor::FeatureTensor(std::size_t channels, std::size_t height,
                             std::size_t width, std::vector<float> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
  if (data_.size() != channels * height * width) {
    fail(ErrorCode::DimensionMismatch,
         "tensor data has " + std::to_string(data_.size()) + " values, shape needs " +
             std::to_string(channels * height * width));
  }
}

bool FeatureTensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](float v) { return std::isfinite(v); });
}

FeatureTensor normalize(const FeatureTensor& patch) {
  if (!patch.all_finite()) fail(ErrorCode::NonFinite, "normalize: non-finite input");
  FeatureTensor out = patch;
  for (float& v : out.data()) v = (v - 0.5f) / 0.5f;
  return out;
}

FeatureTensor conv2d(const FeatureTensor& input, std::span<const float> weights,
                     std::span<const float> bias, const Conv2dParams& p) {
  if (input.channels() != p.in_channels) {
    fail(ErrorCode::DimensionMismatch,
         "conv2d: input has " + std::to_string(input.channels()) +
             " channels, weights expect " + std::to_string(p.in_channels));
  }
  if (weights.size() != p.weight_count() || bias.size() != p.out_channels) {
    fail(ErrorCode::ShapeMismatch, "conv2d: weight or bias size does not match params");
  }
  if (p.kernel == 0 || p.stride == 0) {
    fail(ErrorCode::InvalidArgument, "conv2d: kernel and stride must be positive");
  }
  const auto padded_h = static_cast<long>(input.height() + 2 * p.pad);
  const auto padded_w = static_cast<long>(input.width() + 2 * p.pad);
  const auto k = static_cast<long>(p.kernel);
  if (padded_h < k || padded_w < k) {
    fail(ErrorCode::ShapeMismatch, "conv2d: non-positive output size");
  }
  const std::size_t oh = static_cast<std::size_t>((padded_h - k) / static_cast<long>(p.stride)) + 1;
  const std::size_t ow = static_cast<std::size_t>((padded_w - k) / static_cast<long>(p.stride)) + 1;
  const long ih = static_cast<long>(input.height());
  const long iw = static_cast<long>(input.width());
  const long stride = static_cast<long>(p.stride);
  const long pad = static_cast<long>(p.pad);

  FeatureTensor out(p.out_channels, oh, ow);
  parallel_for(p.out_channels, [&](std::size_t o) {
    std::span<float> dst = out.channel(o);
    std::fill(dst.begin(), dst.end(), bias[o]);
    for (std::size_t c = 0; c < p.in_channels; ++c) {
      std::span<const float> src = input.channel(c);
      const float* w = weights.data() + (o * p.in_channels + c) * p.kernel * p.kernel;
      for (long ky = 0; ky < k; ++ky) {
        for (long kx = 0; kx < k; ++kx) {
          const float wv = w[ky * k + kx];
          if (wv == 0.0f) continue;
          // x range whose source column x*s+kx-pad lies inside the input.
          long x_lo = 0;
          if (kx - pad < 0) x_lo = (pad - kx + stride - 1) / stride;
          long x_hi = static_cast<long>(ow);
          if ((x_hi - 1) * stride + kx - pad >= iw) {
            x_hi = (iw - 1 - kx + pad) / stride + 1;
            if (iw - 1 - kx + pad < 0) x_hi = 0;
          }
          if (x_lo >= x_hi) continue;
          for (std::size_t y = 0; y < oh; ++y) {
            const long iy = static_cast<long>(y) * stride + ky - pad;
            if (iy < 0 || iy >= ih) continue;
            const float* row = src.data() + iy * iw + kx - pad;
            float* orow = dst.data() + y * ow;
            if (stride == 1) {
              for (long x = x_lo; x < x_hi; ++x) orow[x] += wv * row[x];
            } else {
              for (long x = x_lo; x < x_hi; ++x) orow[x] += wv * row[x * stride];
            }
          }
        }
      }
    }
  });
  return out;
}

FeatureTensor relu(FeatureTensor t) {
  for (float& v : t.data()) v = std::max(v, 0.0f);
  return t;
}

std::vector<float> relu(std::vector<float> v) {
  for (float& x : v) x = std::max(x, 0.0f);
  return v;
}

FeatureTensor maxpool2d(const FeatureTensor& input, std::size_t kernel, std::size_t stride) {
  if (kernel == 0 || stride == 0) {
    fail(ErrorCode::InvalidArgument, "maxpool2d: kernel and stride must be positive");
  }
  if (input.height() < kernel || input.width() < kernel) {
    fail(ErrorCode::ShapeMismatch, "maxpool2d: input smaller than window");
  }
  const std::size_t oh = (input.height() - kernel) / stride + 1;
  const std::size_t ow = (input.width() - kernel) / stride + 1;
  FeatureTensor out(input.channels(), oh, ow);
  for (std::size_t c = 0; c < input.channels(); ++c) {
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        float m = -std::numeric_limits<float>::infinity();
        for (std::size_t dy = 0; dy < kernel; ++dy)
          for (std::size_t dx = 0; dx < kernel; ++dx)
            m = std::max(m, input.at(c, y * stride + dy, x * stride + dx));
        out.at(c, y, x) = m;
      }
    }
  }
  return out;
}

std::vector<float> linear(std::span<const float> v, std::span<const float> weights,
                          std::span<const float> bias) {
  const std::size_t out_dim = bias.size();
  if (weights.size() != out_dim * v.size()) {
    fail(ErrorCode::DimensionMismatch,
         "linear: weights hold " + std::to_string(weights.size()) + " values, expected " +
             std::to_string(out_dim) + "x" + std::to_string(v.size()));
  }
  std::vector<float> out(out_dim);
  for (std::size_t o = 0; o < out_dim; ++o) {
    const float* w = weights.data() + o * v.size();
    float acc = 0.0f;
    for (std::size_t i = 0; i < v.size(); ++i) acc += w[i] * v[i];
    out[o] = acc + bias[o];
  }
  return out;
}

std::vector<double> softmax(std::span<const float> logits) {
  if (logits.empty()) fail(ErrorCode::DimensionMismatch, "softmax: empty input");
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(static_cast<double>(logits[i]) - peak);
    total += out[i];
  }
  for (double& p : out) p /= total;
  return out;
}

}  // namespace neuroscope
