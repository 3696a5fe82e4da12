#include "neuroscope/activation_index.hpp"

#include <algorithm>
#include <cmath>

#include "neuroscope/binary_io.hpp"
#include "neuroscope/error.hpp"
#include "neuroscope/inference.hpp"
#include "neuroscope/layers.hpp"
#include "neuroscope/parallel.hpp"

namespace neuroscope {

namespace {

constexpr std::string_view kMagic = "NSCI";
constexpr std::uint32_t kVersion = 1;

std::size_t nearest_rank(std::size_t n, double tau) {
  const double exact = tau * static_cast<double>(n);
  auto rank = static_cast<std::size_t>(std::ceil(exact));
  // tau*n that is an integer up to rounding (0.99*100) must not round up.
  if (rank > 0 && static_cast<double>(rank) - exact > 1.0 - 1e-9) --rank;
  return std::clamp<std::size_t>(rank, 1, n);
}

FeatureTensor to_unit_tensor(const GrayImage& image) {
  FeatureTensor t(1, image.height, image.width);
  const double scale = 1.0 / image.max_value();
  for (std::size_t i = 0; i < image.pixels.size(); ++i)
    t.data()[i] = static_cast<float>(image.pixels[i] * scale);
  return t;
}

struct ImageStats {
  std::vector<float> maxima;                 // per neuron
  std::vector<std::vector<float>> sampled;   // per neuron
};

}  // namespace

float nearest_rank_quantile(std::vector<float> values, double tau) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, "quantile of an empty set");
  if (!(tau > 0.0 && tau < 1.0)) fail(ErrorCode::InvalidArgument, "tau must lie in (0,1)");
  const std::size_t k = nearest_rank(values.size(), tau) - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
  return values[k];
}

std::vector<std::size_t> sample_positions(std::size_t count, double rate, std::uint64_t seed) {
  if (!(rate > 0.0 && rate <= 1.0)) fail(ErrorCode::InvalidArgument, "sample rate must lie in (0,1]");
  std::vector<std::size_t> out;
  if (count == 0) return out;
  const auto stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / rate)));
  std::size_t offset = static_cast<std::size_t>(seed % stride);
  if (offset >= count) offset = 0;
  out.reserve(count / stride + 1);
  for (std::size_t p = offset; p < count; p += stride) out.push_back(p);
  return out;
}

FeatureTensor image_maps(const Model& model, const GrayImage& image) {
  return forward_trunk(model, normalize(pad_to_trunk(model, to_unit_tensor(image))));
}

ActivationIndex build_index(const Model& model, std::vector<CorpusRecord> records,
                            const ImageLoader& load, const IndexOptions& options) {
  if (records.empty()) fail(ErrorCode::EmptyCorpus, "reference corpus is empty");
  if (!(options.tau > 0.0 && options.tau < 1.0)) fail(ErrorCode::InvalidArgument, "tau must lie in (0,1)");
  if (!(options.sample_rate > 0.0 && options.sample_rate <= 1.0))
    fail(ErrorCode::InvalidArgument, "sample rate must lie in (0,1]");

  const std::size_t m = model.dissection_channels();
  const std::size_t n = records.size();
  std::vector<ImageStats> stats(n);
  parallel_for(n, [&](std::size_t j) {
    GrayImage image;
    try {
      image = load(j);
    } catch (const Error& e) {
      fail(ErrorCode::UnreadableImage, records[j].image_id + ": " + e.what());
    }
    records[j].width = image.width;
    records[j].height = image.height;
    const FeatureTensor maps = image_maps(model, image);
    const auto positions =
        sample_positions(maps.plane_size(), options.sample_rate, options.seed + j);
    ImageStats& s = stats[j];
    s.maxima.resize(m);
    s.sampled.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto ch = maps.channel(i);
      s.maxima[i] = *std::max_element(ch.begin(), ch.end());
      if (options.source == QuantileSource::PooledActivations) {
        s.sampled[i].reserve(positions.size());
        for (std::size_t p : positions) s.sampled[i].push_back(ch[p]);
      }
    }
  });

  ActivationIndex index;
  index.model_fingerprint = model.fingerprint();
  index.options = options;
  index.table.layer = model.dissection_layer();
  index.table.neurons = m;
  index.table.images = n;
  index.table.values.resize(m * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) index.table.values[i * n + j] = stats[j].maxima[i];

  index.thresholds.tau = options.tau;
  index.thresholds.values.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<float> pool;
    if (options.source == QuantileSource::PooledActivations) {
      for (const auto& s : stats) pool.insert(pool.end(), s.sampled[i].begin(), s.sampled[i].end());
    } else {
      auto row = index.table.row(i);
      pool.assign(row.begin(), row.end());
    }
    index.thresholds.values[i] = nearest_rank_quantile(std::move(pool), options.tau);
  }
  index.corpus = std::move(records);
  return index;
}

ActivationIndex build_index(const Model& model, const ReferenceCorpus& corpus,
                            const IndexOptions& options) {
  std::vector<CorpusRecord> records;
  records.reserve(corpus.size());
  for (const auto& e : corpus.entries()) records.push_back({e.image_id, e.path.string(), 0, 0});
  return build_index(model, std::move(records),
                     [&](std::size_t j) { return corpus.load_image(j); }, options);
}

BinaryMask activation_mask(const MapView& map, float q, std::size_t out_w, std::size_t out_h) {
  if (map.width == 0 || map.height == 0) fail(ErrorCode::InvalidArgument, "empty activation map");
  if (out_w < map.width || out_h < map.height) {
    fail(ErrorCode::InvalidArgument, "mask resolution smaller than the activation map");
  }
  for (float v : map.values)
    if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "activation map has non-finite values");

  struct Tap {
    std::size_t lo, hi;
    double frac;
  };
  auto taps = [](std::size_t in, std::size_t out) {
    std::vector<Tap> t(out);
    const double scale = static_cast<double>(in) / static_cast<double>(out);
    for (std::size_t o = 0; o < out; ++o) {
      double s = (static_cast<double>(o) + 0.5) * scale - 0.5;
      s = std::clamp(s, 0.0, static_cast<double>(in - 1));
      const auto lo = static_cast<std::size_t>(std::floor(s));
      t[o] = {lo, std::min(lo + 1, in - 1), s - static_cast<double>(lo)};
    }
    return t;
  };
  const auto xs = taps(map.width, out_w);
  const auto ys = taps(map.height, out_h);

  BinaryMask mask(out_w, out_h);
  const double threshold = q;
  for (std::size_t y = 0; y < out_h; ++y) {
    const Tap& ty = ys[y];
    for (std::size_t x = 0; x < out_w; ++x) {
      const Tap& tx = xs[x];
      const double top = (1.0 - tx.frac) * map.at(ty.lo, tx.lo) + tx.frac * map.at(ty.lo, tx.hi);
      const double bottom = (1.0 - tx.frac) * map.at(ty.hi, tx.lo) + tx.frac * map.at(ty.hi, tx.hi);
      const double v = (1.0 - ty.frac) * top + ty.frac * bottom;
      if (v > threshold) mask.set(x, y);
    }
  }
  return mask;
}

std::vector<RankedImage> top_k_images(const ActivationTable& table, NeuronRef neuron, std::size_t k) {
  if (neuron.layer != table.layer || neuron.channel >= table.neurons) {
    fail(ErrorCode::UnknownNeuron, "no neuron " + std::to_string(neuron.layer) + "/" +
                                       std::to_string(neuron.channel) + " in the index");
  }
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  const auto row = table.row(neuron.channel);
  std::vector<RankedImage> ranked(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) ranked[j] = {j, row[j]};
  const std::size_t keep = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                    [](const RankedImage& a, const RankedImage& b) {
                      if (a.activation != b.activation) return a.activation > b.activation;
                      return a.position < b.position;
                    });
  ranked.resize(keep);
  return ranked;
}

std::string serialize_index(const ActivationIndex& index) {
  detail::ByteWriter w;
  w.raw(kMagic);
  w.u32(kVersion);
  w.u64(index.model_fingerprint);
  w.u32(static_cast<std::uint32_t>(index.table.layer));
  w.f64(index.options.tau);
  w.f64(index.options.sample_rate);
  w.u64(index.options.seed);
  w.u8(static_cast<std::uint8_t>(index.options.source));
  w.u32(static_cast<std::uint32_t>(index.table.neurons));
  w.u32(static_cast<std::uint32_t>(index.table.images));
  for (const auto& r : index.corpus) {
    w.str(r.image_id);
    w.str(r.path);
    w.u32(static_cast<std::uint32_t>(r.width));
    w.u32(static_cast<std::uint32_t>(r.height));
  }
  for (float v : index.table.values) w.f32(v);
  for (float v : index.thresholds.values) w.f32(v);
  return std::move(w.bytes());
}

ActivationIndex parse_index(std::string_view bytes, std::optional<std::uint64_t> expected_fingerprint) {
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic) {
    fail(ErrorCode::MagicMismatch, "not an index file (expected magic \"NSCI\")");
  }
  detail::ByteReader r(bytes);
  r.raw(kMagic.size());
  const std::uint32_t version = r.u32();
  if (version != kVersion) fail(ErrorCode::UnsupportedVersion, "index format version " + std::to_string(version));

  ActivationIndex index;
  index.model_fingerprint = r.u64();
  if (expected_fingerprint && *expected_fingerprint != index.model_fingerprint) {
    fail(ErrorCode::StaleIndex, "index was built for a different model; rebuild it");
  }
  index.table.layer = r.u32();
  index.options.tau = r.f64();
  index.options.sample_rate = r.f64();
  index.options.seed = r.u64();
  const std::uint8_t source = r.u8();
  if (source > 1) fail(ErrorCode::InvalidArgument, "unknown quantile source " + std::to_string(source));
  index.options.source = static_cast<QuantileSource>(source);
  index.table.neurons = r.u32();
  index.table.images = r.u32();
  // Each manifest record takes at least 16 bytes; reject impossible counts early.
  if (index.table.images > r.remaining() / 16) {
    fail(ErrorCode::TruncatedFile, "index declares more images than the file holds");
  }
  index.corpus.resize(index.table.images);
  for (auto& rec : index.corpus) {
    rec.image_id = r.str();
    rec.path = r.str();
    rec.width = r.u32();
    rec.height = r.u32();
  }
  const std::size_t cells = index.table.neurons * index.table.images;
  if (r.remaining() / 4 < cells + index.table.neurons) {
    fail(ErrorCode::TruncatedFile, "index table is shorter than its declared size");
  }
  index.table.values.resize(cells);
  for (float& v : index.table.values) v = r.f32();
  index.thresholds.tau = index.options.tau;
  index.thresholds.values.resize(index.table.neurons);
  for (float& v : index.thresholds.values) v = r.f32();
  if (r.remaining() != 0) fail(ErrorCode::ShapeMismatch, "trailing bytes after index payload");
  return index;
}

void save_index(const ActivationIndex& index, const std::filesystem::path& path) {
  detail::write_file_atomic(path.string(), serialize_index(index));
}

ActivationIndex load_index(const std::filesystem::path& path,
                           std::optional<std::uint64_t> expected_fingerprint) {
  return parse_index(detail::read_file(path.string()), expected_fingerprint);
}

}  // namespace neuroscope
