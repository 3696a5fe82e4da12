#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "neuroscope/tensor.hpp"

namespace neuroscope {

struct Conv2dParams {
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  std::size_t kernel = 3;
  std::size_t stride = 1;
  std::size_t pad = 1;

  std::size_t weight_count() const {
    return out_channels * in_channels * kernel * kernel;
  }
};

/// Maps pixel values in [0,1] to [-1,1] with mean 0.5 / std 0.5.
/// Throws NonFinite on NaN or infinite input.
FeatureTensor normalize(const FeatureTensor& patch);

/// Cross-correlation (no kernel flip) with zero padding.
/// weights are laid out [out][in][ky][kx]; bias has out_channels entries.
/// out(o,y,x) = bias(o) + sum_{c,dy,dx} w(o,c,dy,dx) * in(c, y*s+dy-pad, x*s+dx-pad)
FeatureTensor conv2d(const FeatureTensor& input, std::span<const float> weights,
                     std::span<const float> bias, const Conv2dParams& params);

FeatureTensor relu(FeatureTensor t);
std::vector<float> relu(std::vector<float> v);

/// Max over each kernel x kernel window, output size floor((h-k)/s)+1.
FeatureTensor maxpool2d(const FeatureTensor& input, std::size_t kernel = 2,
                        std::size_t stride = 2);

/// y = W v + b, W row-major [out][in]; output dimension is bias.size().
std::vector<float> linear(std::span<const float> v, std::span<const float> weights,
                          std::span<const float> bias);

/// Numerically stable softmax (max-subtracted), accumulated in double.
std::vector<double> softmax(std::span<const float> logits);

}  // namespace neuroscope
