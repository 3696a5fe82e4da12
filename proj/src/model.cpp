#include "neuroscope/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "neuroscope/binary_io.hpp"
#include "neuroscope/error.hpp"

namespace neuroscope {

namespace {

constexpr std::string_view kMagic = "NSCW";
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kDefaultDissection = 0xFFFFFFFFu;

}  // namespace

LayerSpec LayerSpec::conv(std::size_t in_ch, std::size_t out_ch, std::size_t kernel,
                          std::size_t stride, std::size_t pad) {
  return {LayerKind::Conv, in_ch, out_ch, kernel, stride, pad};
}
LayerSpec LayerSpec::relu() { return {LayerKind::ReLU}; }
LayerSpec LayerSpec::maxpool(std::size_t kernel, std::size_t stride) {
  return {LayerKind::MaxPool, 0, 0, kernel, stride, 0};
}
LayerSpec LayerSpec::flatten() { return {LayerKind::Flatten}; }
LayerSpec LayerSpec::linear(std::size_t in_dim, std::size_t out_dim) {
  return {LayerKind::Linear, in_dim, out_dim};
}
LayerSpec LayerSpec::softmax() { return {LayerKind::Softmax}; }

std::size_t LayerSpec::weight_count() const {
  switch (kind) {
    case LayerKind::Conv: return out * in * kernel * kernel;
    case LayerKind::Linear: return out * in;
    default: return 0;
  }
}

std::size_t LayerSpec::bias_count() const {
  return (kind == LayerKind::Conv || kind == LayerKind::Linear) ? out : 0;
}

std::string to_string(const LayerSpec& l) {
  std::ostringstream os;
  switch (l.kind) {
    case LayerKind::Conv:
      os << "Conv(" << l.in << "->" << l.out << ", k=" << l.kernel << ", s=" << l.stride
         << ", p=" << l.pad << ")";
      break;
    case LayerKind::ReLU: os << "ReLU"; break;
    case LayerKind::MaxPool: os << "MaxPool(k=" << l.kernel << ", s=" << l.stride << ")"; break;
    case LayerKind::Flatten: os << "Flatten"; break;
    case LayerKind::Linear: os << "Linear(" << l.in << "->" << l.out << ")"; break;
    case LayerKind::Softmax: os << "Softmax"; break;
  }
  return os.str();
}

void ModelSpec::validate() const {
  if (layers.empty()) fail(ErrorCode::InvalidModel, "model has no layers");

  bool flattened = false;
  std::size_t channels = 0;     // tensor channels, 0 until the first Conv
  std::size_t vector_dim = 0;   // known vector length after a Linear
  std::size_t softmax_count = 0;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const LayerSpec& l = layers[i];
    const std::string where = "layer " + std::to_string(i) + " " + to_string(l);
    switch (l.kind) {
      case LayerKind::Conv:
        if (flattened) fail(ErrorCode::InvalidModel, where + " follows Flatten");
        if (l.in == 0 || l.out == 0 || l.kernel == 0 || l.stride == 0)
          fail(ErrorCode::InvalidModel, where + " has a zero dimension");
        if (channels != 0 && l.in != channels)
          fail(ErrorCode::ShapeMismatch,
               where + " expects " + std::to_string(l.in) + " channels, previous layer gives " +
                   std::to_string(channels));
        channels = l.out;
        break;
      case LayerKind::ReLU:
        break;
      case LayerKind::MaxPool:
        if (flattened) fail(ErrorCode::InvalidModel, where + " follows Flatten");
        if (l.kernel == 0 || l.stride == 0)
          fail(ErrorCode::InvalidModel, where + " has a zero dimension");
        break;
      case LayerKind::Flatten:
        if (flattened) fail(ErrorCode::InvalidModel, where + ": second Flatten");
        if (channels == 0) fail(ErrorCode::InvalidModel, where + " precedes any Conv");
        flattened = true;
        break;
      case LayerKind::Linear:
        if (!flattened) fail(ErrorCode::InvalidModel, where + " before Flatten");
        if (l.in == 0 || l.out == 0) fail(ErrorCode::InvalidModel, where + " has a zero dimension");
        if (vector_dim != 0 && l.in != vector_dim)
          fail(ErrorCode::ShapeMismatch,
               where + " expects " + std::to_string(l.in) + " inputs, previous layer gives " +
                   std::to_string(vector_dim));
        vector_dim = l.out;
        break;
      case LayerKind::Softmax:
        ++softmax_count;
        if (i + 1 != layers.size()) fail(ErrorCode::InvalidModel, where + " is not the last layer");
        if (!flattened) fail(ErrorCode::InvalidModel, where + " before Flatten");
        break;
      default:
        fail(ErrorCode::InvalidModel, "layer " + std::to_string(i) + " has an unknown kind");
    }
  }
  if (softmax_count != 1) fail(ErrorCode::InvalidModel, "model must end in exactly one Softmax");
  if (vector_dim == 0) fail(ErrorCode::InvalidModel, "model has no Linear head");

  const std::size_t d = resolved_dissection_layer();
  if (d >= layers.size() || layers[d].kind != LayerKind::Conv)
    fail(ErrorCode::InvalidModel, "dissection layer " + std::to_string(d) + " is not a Conv");
  for (std::size_t i = 0; i < d; ++i)
    if (layers[i].kind == LayerKind::Flatten)
      fail(ErrorCode::InvalidModel, "dissection layer lies after Flatten");
  if (d + 1 >= layers.size() || layers[d + 1].kind != LayerKind::ReLU)
    fail(ErrorCode::InvalidModel, "dissection layer must be followed by ReLU");
}

std::size_t ModelSpec::resolved_dissection_layer() const {
  if (dissection_layer) return *dissection_layer;
  std::size_t last_conv = layers.size();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].kind == LayerKind::Flatten) break;
    if (layers[i].kind == LayerKind::Conv) last_conv = i;
  }
  return last_conv;
}

Model::Model(ModelSpec spec, std::vector<std::vector<float>> weights,
             std::vector<std::vector<float>> biases)
    : spec_(std::move(spec)), weights_(std::move(weights)), biases_(std::move(biases)) {
  spec_.validate();
  if (weights_.size() != spec_.layers.size() || biases_.size() != spec_.layers.size()) {
    fail(ErrorCode::ShapeMismatch, "parameter list length does not match layer count");
  }
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    const LayerSpec& l = spec_.layers[i];
    if (weights_[i].size() != l.weight_count() || biases_[i].size() != l.bias_count()) {
      fail(ErrorCode::ShapeMismatch, "layer " + std::to_string(i) + " " + to_string(l) +
                                         " has " + std::to_string(weights_[i].size()) +
                                         " weights and " + std::to_string(biases_[i].size()) +
                                         " biases");
    }
    const auto finite = [](float v) { return std::isfinite(v); };
    if (!std::all_of(weights_[i].begin(), weights_[i].end(), finite) ||
        !std::all_of(biases_[i].begin(), biases_[i].end(), finite)) {
      fail(ErrorCode::NonFinite, "layer " + std::to_string(i) + " has non-finite parameters");
    }
  }
  dissection_layer_ = spec_.resolved_dissection_layer();
  for (std::size_t i = 0; i < dissection_layer_; ++i) {
    const LayerSpec& l = spec_.layers[i];
    if (l.kind == LayerKind::MaxPool || l.kind == LayerKind::Conv) trunk_stride_ *= l.stride;
  }
  fingerprint_ = fnv1a64(serialize_weights(*this));
}

std::optional<std::size_t> Model::native_input_size() const {
  std::size_t flatten_at = 0;
  while (spec_.layers[flatten_at].kind != LayerKind::Flatten) ++flatten_at;
  std::size_t channels = 0;
  for (std::size_t i = 0; i < flatten_at; ++i)
    if (spec_.layers[i].kind == LayerKind::Conv) channels = spec_.layers[i].out;
  std::size_t head_in = 0;
  for (std::size_t i = flatten_at; i < spec_.layers.size(); ++i) {
    if (spec_.layers[i].kind == LayerKind::Linear) {
      head_in = spec_.layers[i].in;
      break;
    }
  }
  if (channels == 0 || head_in % channels != 0) return std::nullopt;
  const std::size_t area = head_in / channels;

  constexpr std::size_t kMaxSide = 16384;
  for (std::size_t side = 1; side <= kMaxSide; ++side) {
    std::size_t s = side;
    bool ok = true;
    for (std::size_t i = 0; i < flatten_at && ok; ++i) {
      const LayerSpec& l = spec_.layers[i];
      if (l.kind == LayerKind::Conv) {
        if (s + 2 * l.pad < l.kernel) ok = false;
        else s = (s + 2 * l.pad - l.kernel) / l.stride + 1;
      } else if (l.kind == LayerKind::MaxPool) {
        if (s < l.kernel || (s - l.kernel) % l.stride != 0) ok = false;
        else s = (s - l.kernel) / l.stride + 1;
      }
    }
    if (ok && s * s == area) return side;
    if (ok && s * s > area) break;
  }
  return std::nullopt;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string serialize_weights(const Model& model) {
  detail::ByteWriter w;
  w.raw(kMagic);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(model.layer_count()));
  const auto& d = model.spec().dissection_layer;
  w.u32(d ? static_cast<std::uint32_t>(*d) : kDefaultDissection);
  for (std::size_t i = 0; i < model.layer_count(); ++i) {
    const LayerSpec& l = model.layer(i);
    w.u8(static_cast<std::uint8_t>(l.kind));
    switch (l.kind) {
      case LayerKind::Conv:
        for (std::size_t v : {l.in, l.out, l.kernel, l.stride, l.pad})
          w.u32(static_cast<std::uint32_t>(v));
        break;
      case LayerKind::MaxPool:
        w.u32(static_cast<std::uint32_t>(l.kernel));
        w.u32(static_cast<std::uint32_t>(l.stride));
        break;
      case LayerKind::Linear:
        w.u32(static_cast<std::uint32_t>(l.in));
        w.u32(static_cast<std::uint32_t>(l.out));
        break;
      default:
        break;
    }
    for (float v : model.weights(i)) w.f32(v);
    for (float v : model.bias(i)) w.f32(v);
  }
  return std::move(w.bytes());
}

Model parse_weights(std::string_view bytes) {
  detail::ByteReader r(bytes);
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic) {
    fail(ErrorCode::MagicMismatch, "not a weights file (expected magic \"NSCW\")");
  }
  r.raw(kMagic.size());
  const std::uint32_t version = r.u32();
  if (version != kVersion) {
    fail(ErrorCode::UnsupportedVersion, "weights format version " + std::to_string(version));
  }
  const std::uint32_t count = r.u32();
  const std::uint32_t dissection = r.u32();

  ModelSpec spec;
  if (dissection != kDefaultDissection) spec.dissection_layer = dissection;
  std::vector<std::vector<float>> weights, biases;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto tag = r.u8();
    LayerSpec l;
    switch (static_cast<LayerKind>(tag)) {
      case LayerKind::Conv: {
        const std::size_t in = r.u32(), out = r.u32(), k = r.u32(), s = r.u32(), p = r.u32();
        l = LayerSpec::conv(in, out, k, s, p);
        break;
      }
      case LayerKind::MaxPool: {
        const std::size_t k = r.u32(), s = r.u32();
        l = LayerSpec::maxpool(k, s);
        break;
      }
      case LayerKind::Linear: {
        const std::size_t in = r.u32(), out = r.u32();
        l = LayerSpec::linear(in, out);
        break;
      }
      case LayerKind::ReLU:
      case LayerKind::Flatten:
      case LayerKind::Softmax:
        l.kind = static_cast<LayerKind>(tag);
        break;
      default:
        fail(ErrorCode::InvalidModel,
             "layer " + std::to_string(i) + " has unknown kind tag " + std::to_string(tag));
    }
    const std::size_t wn = l.weight_count();
    const std::size_t bn = l.bias_count();
    if (r.remaining() / 4 < wn + bn) {
      fail(ErrorCode::TruncatedFile,
           "layer " + std::to_string(i) + " " + to_string(l) + " needs " +
               std::to_string(wn + bn) + " floats, file holds " +
               std::to_string(r.remaining() / 4));
    }
    std::vector<float> wv(wn), bv(bn);
    for (float& v : wv) v = r.f32();
    for (float& v : bv) v = r.f32();
    spec.layers.push_back(l);
    weights.push_back(std::move(wv));
    biases.push_back(std::move(bv));
  }
  if (r.remaining() != 0) {
    fail(ErrorCode::ShapeMismatch, std::to_string(r.remaining()) +
                                       " trailing bytes after the declared layers");
  }
  return Model(std::move(spec), std::move(weights), std::move(biases));
}

Model load_weights(const std::filesystem::path& path) {
  return parse_weights(detail::read_file(path.string()));
}

void write_weights(const Model& model, const std::filesystem::path& path) {
  detail::write_file_atomic(path.string(), serialize_weights(model));
}

}  // namespace neuroscope
