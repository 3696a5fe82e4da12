#include "neuroscope/synthetic.hpp"

#include <array>
#include <cmath>
#include <random>

#include "neuroscope/corpus.hpp"

namespace neuroscope::synthetic {

namespace {

using Kernel = std::array<float, 9>;

constexpr Kernel kH{1, 2, 1, 0, 0, 0, -1, -2, -1};
constexpr Kernel kV{1, 0, -1, 2, 0, -2, 1, 0, -1};
constexpr Kernel kD1{2, 1, 0, 1, 0, -1, 0, -1, -2};
constexpr Kernel kD2{0, 1, 2, -1, 0, 1, -2, -1, 0};
constexpr Kernel kRow{0, 0, 0, 1, 1, 1, 0, 0, 0};
constexpr Kernel kCol{0, 1, 0, 0, 1, 0, 0, 1, 0};
constexpr Kernel kDiag{1, 0, 0, 0, 1, 0, 0, 0, 1};
constexpr Kernel kAntiDiag{0, 0, 1, 0, 1, 0, 1, 0, 0};

Kernel scaled(const Kernel& k, float s) {
  Kernel out{};
  for (std::size_t i = 0; i < 9; ++i) out[i] = k[i] * s;
  return out;
}

// Adds s*k into the [o][c] 3x3 slot of a conv weight block.
void add(std::vector<float>& w, std::size_t in_channels, std::size_t o, std::size_t c,
         const Kernel& k, float s = 1.0f) {
  float* dst = w.data() + (o * in_channels + c) * 9;
  for (std::size_t i = 0; i < 9; ++i) dst[i] += k[i] * s;
}

void add_uniform(std::vector<float>& w, std::size_t in_channels, std::size_t o, std::size_t c,
                 float v) {
  float* dst = w.data() + (o * in_channels + c) * 9;
  for (std::size_t i = 0; i < 9; ++i) dst[i] += v;
}

std::vector<float> blur_weights(std::size_t channels) {
  std::vector<float> w(channels * channels * 9, 0.0f);
  for (std::size_t c = 0; c < channels; ++c) add_uniform(w, channels, c, c, 1.0f / 3.0f);
  return w;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Model shape_model() {
  ModelSpec spec;
  spec.layers = {
      LayerSpec::conv(1, 9), LayerSpec::relu(),  LayerSpec::maxpool(),   // 0-2
      LayerSpec::conv(9, 8), LayerSpec::relu(),                          // 3-4
      LayerSpec::conv(8, 8), LayerSpec::relu(),                          // 5-6
      LayerSpec::conv(8, 8), LayerSpec::relu(),                          // 7-8
      LayerSpec::maxpool(),  LayerSpec::flatten(), LayerSpec::linear(512, 8),
      LayerSpec::relu(),     LayerSpec::linear(8, 2), LayerSpec::softmax(),
  };
  spec.dissection_layer = 7;

  std::vector<std::vector<float>> weights(spec.layers.size());
  std::vector<std::vector<float>> biases(spec.layers.size());
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    weights[i].assign(spec.layers[i].weight_count(), 0.0f);
    biases[i].assign(spec.layers[i].bias_count(), 0.0f);
  }

  // Oriented edge detectors (both polarities) plus a shifted intensity channel.
  const std::array<Kernel, 8> edges{kH, scaled(kH, -1), kV, scaled(kV, -1),
                                    kD1, scaled(kD1, -1), kD2, scaled(kD2, -1)};
  for (std::size_t o = 0; o < 8; ++o) {
    add(weights[0], 1, o, 0, edges[o]);
    biases[0][o] = -5.0f;
  }
  weights[0][8 * 9 + 4] = 1.0f;
  biases[0][8] = 1.0f;

  auto& w3 = weights[3];
  // 0: square = axis-aligned edges continuing along their direction.
  add(w3, 9, 0, 0, kRow);
  add(w3, 9, 0, 1, kRow);
  add(w3, 9, 0, 2, kCol);
  add(w3, 9, 0, 3, kCol);
  for (std::size_t c = 4; c < 8; ++c) add_uniform(w3, 9, 0, c, -1.0f / 3.0f);
  // 1: circle = diagonal edges continuing along their direction.
  add(w3, 9, 1, 4, kAntiDiag, 1.5f);
  add(w3, 9, 1, 5, kAntiDiag, 1.5f);
  add(w3, 9, 1, 6, kDiag, 1.5f);
  add(w3, 9, 1, 7, kDiag, 1.5f);
  for (std::size_t c = 0; c < 4; ++c) add_uniform(w3, 9, 1, c, -0.5f);
  // 2: dark background.
  w3[(2 * 9 + 8) * 9 + 4] = -0.5f;
  biases[3][2] = 1.2f;
  // 3-6: weak single-orientation edges. 7 stays dead.
  add(w3, 9, 3, 0, kRow, 0.3f);
  add(w3, 9, 3, 1, kRow, 0.3f);
  add(w3, 9, 4, 2, kCol, 0.3f);
  add(w3, 9, 4, 3, kCol, 0.3f);
  add(w3, 9, 5, 4, kAntiDiag, 0.3f);
  add(w3, 9, 5, 5, kAntiDiag, 0.3f);
  add(w3, 9, 6, 6, kDiag, 0.3f);
  add(w3, 9, 6, 7, kDiag, 0.3f);

  weights[5] = blur_weights(8);
  weights[7] = blur_weights(8);

  // Head: per-channel means of the pooled 8x8 maps, then a shape score.
  for (std::size_t o = 0; o < 8; ++o)
    for (std::size_t i = 0; i < 64; ++i) weights[11][o * 512 + o * 64 + i] = 1.0f / 64.0f;
  biases[13][0] = 1.5f;
  weights[13][8 + kSquareNeuron] = 0.6f;
  weights[13][8 + kCircleNeuron] = 0.6f;

  return Model(std::move(spec), std::move(weights), std::move(biases));
}

BinaryMask shape_mask(const Shape& shape, std::size_t x0, std::size_t y0, std::size_t w,
                      std::size_t h) {
  BinaryMask mask(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t gx = x0 + x;
      const std::size_t gy = y0 + y;
      bool inside = false;
      if (shape.kind == Shape::Kind::Square) {
        inside = gx >= shape.x && gx < shape.x + kSquareSide && gy >= shape.y &&
                 gy < shape.y + kSquareSide;
      } else {
        const double dx = static_cast<double>(gx) + 0.5 - static_cast<double>(shape.x);
        const double dy = static_cast<double>(gy) + 0.5 - static_cast<double>(shape.y);
        inside = dx * dx + dy * dy <= static_cast<double>(kCircleRadius * kCircleRadius);
      }
      if (inside) mask.set(x, y);
    }
  }
  return mask;
}

GrayImage render_shapes(std::size_t width, std::size_t height, const std::vector<Shape>& shapes,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> values(width * height);
  for (double& v : values) v = 0.05 * unit(rng);
  for (const Shape& s : shapes) {
    const BinaryMask m = shape_mask(s, 0, 0, width, height);
    for (std::size_t y = 0; y < height; ++y)
      for (std::size_t x = 0; x < width; ++x)
        if (m.get(x, y)) values[y * width + x] = 0.9 + 0.05 * unit(rng);
  }
  GrayImage image(width, height, 8);
  for (std::size_t i = 0; i < values.size(); ++i)
    image.pixels[i] = static_cast<std::uint16_t>(std::lround(values[i] * 255.0));
  return image;
}

std::vector<FixtureImage> fixture_images() {
  using K = Shape::Kind;
  return {
      {"fixture-a", {{K::Square, 10, 10}, {K::Circle, 80, 80}}, 1},
      {"fixture-b", {{K::Circle, 16, 16}, {K::Square, 74, 10}}, 2},
      {"fixture-c", {{K::Square, 42, 74}, {K::Circle, 112, 48}}, 3},
  };
}

FixturePaths write_fixtures(const std::filesystem::path& root) {
  FixturePaths paths{root / "model.nscw", root / "corpus", root / "index.nsci"};
  std::filesystem::create_directories(paths.corpus);

  const Model model = shape_model();
  write_weights(model, paths.model);

  std::vector<CorpusEntry> entries;
  for (const auto& f : fixture_images()) {
    const std::string file = f.id + ".png";
    write_png(render_shapes(kImageSize, kImageSize, f.shapes, f.seed), paths.corpus / file);
    entries.push_back({f.id, file});
  }
  write_manifest(paths.corpus, entries);

  save_index(build_index(model, ReferenceCorpus::load(paths.corpus), fixture_index_options()),
             paths.index);
  return paths;
}

}  // namespace neuroscope::synthetic
