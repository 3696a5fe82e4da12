#include "neuroscope/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <list>
#include <mutex>
#include <regex>
#include <unordered_map>

#include "neuroscope/binary_io.hpp"
#include "neuroscope/error.hpp"
#include "neuroscope/patches.hpp"
#include "neuroscope/query.hpp"

namespace neuroscope {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 10> kPalette{"#e6194b", "#3cb44b", "#4363d8", "#f58231",
                                               "#911eb4", "#42d4f4", "#f032e6", "#bfef45",
                                               "#fabed4", "#469990"};
constexpr const char* kUnlabeledColor = "#9e9e9e";

template <class V>
class LruCache {
 public:
  explicit LruCache(std::size_t capacity) : capacity_(capacity) {}

  std::shared_ptr<const V> get(const std::string& key, const std::function<V()>& compute) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) {
        order_.splice(order_.begin(), order_, it->second);
        ++hits_;
        return it->second->second;
      }
      ++misses_;
    }
    auto value = std::make_shared<const V>(compute());
    if (capacity_ == 0) return value;
    std::lock_guard lock(mutex_);
    if (auto it = map_.find(key); it != map_.end()) return it->second->second;
    order_.emplace_front(key, value);
    map_[key] = order_.begin();
    while (map_.size() > capacity_) {
      map_.erase(order_.back().first);
      order_.pop_back();
    }
    return value;
  }

  Service::CacheStats stats() const {
    std::lock_guard lock(mutex_);
    return {hits_, misses_, map_.size()};
  }

 private:
  using Entry = std::pair<std::string, std::shared_ptr<const V>>;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> order_;
  std::unordered_map<std::string, typename std::list<Entry>::iterator> map_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

struct HttpError {
  int status;
  std::string code;
  std::string message;
};

[[noreturn]] void bad_request(const std::string& message) { throw HttpError{400, "validation_error", message}; }
[[noreturn]] void not_found(const std::string& message) { throw HttpError{404, "not_found", message}; }

HttpError map_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyMask:
    case ErrorCode::EmptyName:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NonFinite:
      return {400, "validation_error", e.what()};
    case ErrorCode::NotFound:
    case ErrorCode::UnknownConcept:
    case ErrorCode::UnknownNeuron:
    case ErrorCode::RegionOutsideImage:
      return {404, "not_found", e.what()};
    case ErrorCode::DuplicateConcept:
      return {409, "conflict", e.what()};
    case ErrorCode::ReportUnavailable:
      return {409, "report_unavailable", e.what()};
    default:
      return {500, "internal_error", e.what()};
  }
}

HttpResponse json_response(const json& body, int status = 200) {
  return {status, "application/json", body.dump()};
}

HttpResponse error_response(const HttpError& e) {
  return json_response({{"code", e.code}, {"message", e.message}}, e.status);
}

json mask_json(const BinaryMask& mask) {
  return {{"width", mask.width()}, {"height", mask.height()}, {"rle", mask.to_rle()}};
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) bad_request("request body is not valid JSON");
  if (!j.is_object()) bad_request("request body must be a JSON object");
  return j;
}

BinaryMask parse_mask(const json& body, std::size_t side) {
  if (!body.contains("mask") || !body["mask"].is_object()) bad_request("missing mask object");
  const json& m = body["mask"];
  for (const char* key : {"width", "height"})
    if (!m.contains(key) || !m[key].is_number_unsigned()) bad_request(std::string("mask.") + key + " must be a non-negative integer");
  if (!m.contains("rle") || !m["rle"].is_array()) bad_request("mask.rle must be an array");
  const auto w = m["width"].get<std::size_t>();
  const auto h = m["height"].get<std::size_t>();
  if (w != side || h != side) {
    bad_request("mask is " + std::to_string(w) + "x" + std::to_string(h) + ", patch is " +
                std::to_string(side) + "x" + std::to_string(side));
  }
  std::vector<std::uint64_t> runs;
  runs.reserve(m["rle"].size());
  for (const auto& r : m["rle"]) {
    if (!r.is_number_unsigned()) bad_request("mask.rle entries must be non-negative integers");
    runs.push_back(r.get<std::uint64_t>());
  }
  try {
    return BinaryMask::from_rle(w, h, runs);
  } catch (const Error& e) {
    bad_request(std::string("malformed RLE mask: ") + e.what());
  }
}

std::size_t parse_count(const std::string& text, const char* what) {
  if (text.empty() || text.size() > 9 || !std::all_of(text.begin(), text.end(), ::isdigit))
    bad_request(std::string(what) + " must be a non-negative integer");
  return static_cast<std::size_t>(std::stoul(text));
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::size_t round_up(std::size_t v, std::size_t m) { return (v + m - 1) / m * m; }

}  // namespace

struct Request {
  std::smatch match;
  json body;
  const QueryParams* query = nullptr;

  std::string param(std::size_t i) const { return match[static_cast<int>(i)].str(); }
};

struct Route {
  std::string method;
  std::regex pattern;
  std::function<HttpResponse(const Request&)> handler;
};

struct Service::Impl {
  Model model;
  ActivationIndex index;
  ReferenceCorpus corpus;
  ServiceConfig config;
  std::size_t patch = 512;
  std::string fingerprint;
  Projection projection;
  ConceptStore store;
  std::filesystem::path label_log;
  LruCache<InferenceResult> results;
  LruCache<GrayImage> images;
  LruCache<FeatureTensor> image_maps;
  std::vector<Route> routes;

  Impl(Model m, ActivationIndex idx, ReferenceCorpus c, std::filesystem::path log, ServiceConfig cfg,
       ConceptStore::Clock clock)
      : model(std::move(m)),
        index(std::move(idx)),
        corpus(std::move(c)),
        config(cfg),
        store(log, model.dissection_layer(), model.dissection_channels(), std::move(clock)),
        label_log(std::move(log)),
        results(cfg.cache_capacity),
        images(std::min<std::size_t>(cfg.cache_capacity, 8)),
        image_maps(std::min<std::size_t>(cfg.cache_capacity, 16)) {}

  // ---- lookups

  std::size_t image_position(const std::string& id) const {
    const auto pos = corpus.find(id);
    if (!pos) not_found("unknown image " + id);
    return *pos;
  }

  PatchRef resolve_patch(const std::string& id) const {
    auto ref = parse_patch_id(id, patch);
    if (!ref) bad_request("malformed patch id " + id + " (expected <image>:<x>:<y>)");
    const auto& rec = index.corpus[image_position(ref->image_id)];
    if (ref->x >= rec.width || ref->y >= rec.height) not_found("patch " + id + " lies outside its image");
    ref->provenance = (ref->x % patch == 0 && ref->y % patch == 0) ? Provenance::Grid : Provenance::SlidingWindow;
    return *ref;
  }

  NeuronRef resolve_neuron(const std::string& layer, const std::string& channel) const {
    const NeuronRef n{parse_count(layer, "layer"), parse_count(channel, "channel")};
    if (n.layer != model.dissection_layer() || n.channel >= model.dissection_channels()) {
      not_found("unknown neuron " + layer + "/" + channel);
    }
    return n;
  }

  std::shared_ptr<const GrayImage> image(std::size_t pos) {
    return images.get(fingerprint + "/" + corpus.entries()[pos].image_id,
                      [&] { return corpus.load_image(pos); });
  }

  std::shared_ptr<const InferenceResult> infer(const PatchRef& ref) {
    return results.get(fingerprint + "/" + patch_id(ref), [&] {
      const auto img = image(image_position(ref.image_id));
      return infer_patch(model, extract(*img, ref));
    });
  }

  std::shared_ptr<const FeatureTensor> maps_of(std::size_t pos) {
    return image_maps.get(fingerprint + "/" + corpus.entries()[pos].image_id,
                          [&] { return neuroscope::image_maps(model, *image(pos)); });
  }

  // Neuron mask over a whole corpus image at native resolution.
  BinaryMask image_mask(std::size_t pos, std::size_t channel) {
    const auto maps = maps_of(pos);
    const auto& rec = index.corpus[pos];
    const std::size_t stride = model.trunk_stride();
    const BinaryMask padded = activation_mask(maps->map(channel), index.thresholds[channel],
                                              round_up(rec.width, stride), round_up(rec.height, stride));
    if (padded.width() == rec.width && padded.height() == rec.height) return padded;
    BinaryMask out(rec.width, rec.height);
    for (std::size_t y = 0; y < rec.height; ++y)
      for (std::size_t x = 0; x < rec.width; ++x)
        if (padded.get(x, y)) out.set(x, y);
    return out;
  }

  double positive_score(const InferenceResult& r) const {
    return config.positive_class < r.class_scores.size() ? r.class_scores[config.positive_class] : 0.0;
  }

  json concept_json(const Concept& c, const LabelSnapshot& snap) const {
    return {{"id", c.id},
            {"display_name", c.display_name},
            {"created_at", c.created_at},
            {"color", color_of(c.id, snap)}};
  }

  static std::string color_of(const std::string& concept_id, const LabelSnapshot& snap) {
    const auto rank = snap.concept_rank(concept_id);
    return rank ? kPalette[*rank % kPalette.size()] : kUnlabeledColor;
  }

  json label_json(NeuronRef n, const LabelSnapshot& snap) const {
    const auto label = snap.label_of(n);
    if (!label) return nullptr;
    const Concept* c = snap.find_concept(*label);
    return {{"id", *label}, {"display_name", c ? c->display_name : *label}, {"color", color_of(*label, snap)}};
  }

  json report_json(const std::string& pid, const ConceptReport& report, const LabelSnapshot& snap) const {
    json entries = json::array();
    for (const auto& e : report.entries) {
      const Concept* c = snap.find_concept(e.concept_id);
      entries.push_back({{"concept", e.concept_id},
                         {"display_name", c ? c->display_name : e.concept_id},
                         {"color", color_of(e.concept_id, snap)},
                         {"mean", e.mean},
                         {"neurons", e.neuron_count}});
    }
    return {{"patch_id", pid},
            {"kind", report.kind == ReportKind::ActivationValue ? "activation_value" : "activation_area"},
            {"entries", entries}};
  }

  // ---- handlers

  HttpResponse list_images(const Request&) {
    json out = json::array();
    for (const auto& rec : index.corpus) {
      out.push_back({{"id", rec.image_id},
                     {"width", rec.width},
                     {"height", rec.height},
                     {"url", "/images/" + rec.image_id},
                     {"patch_count", round_up(rec.width, patch) / patch * (round_up(rec.height, patch) / patch)}});
    }
    return json_response({{"images", out}});
  }

  HttpResponse image_bytes(const Request& req) {
    const std::size_t pos = image_position(req.param(1));
    return {200, "image/png", detail::read_file(corpus.resolve(pos).string())};
  }

  HttpResponse image_patches(const Request& req) {
    const std::string id = req.param(1);
    const auto& rec = index.corpus[image_position(id)];
    json out = json::array();
    for (const auto& ref : grid_patches(id, rec.width, rec.height, patch)) {
      const double score = positive_score(*infer(ref));
      out.push_back({{"patch_id", patch_id(ref)},
                     {"x", ref.x},
                     {"y", ref.y},
                     {"size", ref.size},
                     {"score", score},
                     {"lesion", score >= config.lesion_threshold}});
    }
    return json_response({{"image_id", id},
                          {"patch_size", patch},
                          {"lesion_threshold", config.lesion_threshold},
                          {"patches", out}});
  }

  HttpResponse select(const Request& req) {
    const PatchRef ref = resolve_patch(req.param(1));
    const auto result = infer(ref);
    const auto top = most_activated_neuron(*result, index.thresholds, patch, patch);
    const double score = positive_score(*result);
    return json_response({{"patch_id", patch_id(ref)},
                          {"class_scores", result->class_scores},
                          {"score", score},
                          {"lesion", score >= config.lesion_threshold},
                          {"most_activated",
                           {{"layer", top.neuron.layer},
                            {"channel", top.neuron.channel},
                            {"activation", top.max_activation},
                            {"mask", mask_json(top.mask)}}}});
  }

  HttpResponse query(const Request& req) {
    const PatchRef ref = resolve_patch(req.param(1));
    const BinaryMask user = parse_mask(req.body, patch);
    double threshold = config.default_iou_threshold;
    if (req.body.contains("iou_threshold")) {
      const json& t = req.body["iou_threshold"];
      if (!t.is_number() || !(t.get<double>() >= 0.0 && t.get<double>() <= 1.0))
        bad_request("iou_threshold must be a number in [0,1]");
      threshold = t.get<double>();
    }
    const auto result = infer(ref);
    const QueryResult q = query_by_region(*result, user, index.thresholds, threshold, patch_id(ref));
    const AlignedNeuron best = best_aligned_neuron(*result, user, index.thresholds);
    const auto snap = store.snapshot();
    json matches = json::array();
    for (const auto& m : q.matches) {
      matches.push_back({{"layer", m.neuron.layer},
                         {"channel", m.neuron.channel},
                         {"iou", m.iou},
                         {"label", label_json(m.neuron, *snap)}});
    }
    return json_response({{"patch_id", q.patch_id},
                          {"iou_threshold", q.iou_threshold},
                          {"matches", matches},
                          {"best_aligned",
                           {{"layer", best.neuron.layer},
                            {"channel", best.neuron.channel},
                            {"iou", best.iou},
                            {"mask", mask_json(best.mask)}}}});
  }

  HttpResponse neuron(const Request& req) {
    const NeuronRef n = resolve_neuron(req.param(1), req.param(2));
    std::size_t k = config.top_k;
    if (auto it = req.query->find("k"); it != req.query->end()) {
      k = parse_count(it->second, "k");
      if (k == 0) bad_request("k must be positive");
    }
    json top = json::array();
    for (const auto& r : top_k_images(index.table, n, k)) {
      const auto& rec = index.corpus[r.position];
      top.push_back({{"image_id", rec.image_id},
                     {"url", "/images/" + rec.image_id},
                     {"activation", r.activation},
                     {"mask", mask_json(image_mask(r.position, n.channel))}});
    }
    json patch_view = nullptr;
    if (auto it = req.query->find("patch_id"); it != req.query->end() && !it->second.empty()) {
      const PatchRef ref = resolve_patch(it->second);
      const auto result = infer(ref);
      patch_view = {{"patch_id", patch_id(ref)},
                    {"max_activation", result->neuron_maxima()[n.channel]},
                    {"mask", mask_json(activation_mask(result->dissection_maps.map(n.channel),
                                                       index.thresholds[n.channel], patch, patch))}};
    }
    const auto snap = store.snapshot();
    return json_response({{"layer", n.layer},
                          {"channel", n.channel},
                          {"threshold", index.thresholds[n.channel]},
                          {"label", label_json(n, *snap)},
                          {"top_images", top},
                          {"patch", patch_view}});
  }

  HttpResponse embedding(const Request&) {
    const auto snap = store.snapshot();
    json points = json::array();
    for (std::size_t c = 0; c < projection.rows; ++c) {
      const NeuronRef n{model.dissection_layer(), c};
      const auto label = snap->label_of(n);
      points.push_back({{"layer", n.layer},
                        {"channel", n.channel},
                        {"x", projection.components > 0 ? projection.at(c, 0) : 0.0},
                        {"y", projection.components > 1 ? projection.at(c, 1) : 0.0},
                        {"label", label ? json(*label) : json(nullptr)},
                        {"color", label ? color_of(*label, *snap) : kUnlabeledColor}});
    }
    return json_response({{"layer", model.dissection_layer()},
                          {"explained_variance_ratio", projection.explained_variance_ratio},
                          {"points", points}});
  }

  HttpResponse create_concept(const Request& req) {
    if (!req.body.contains("name") || !req.body["name"].is_string()) bad_request("name must be a string");
    const Concept c = store.add_concept(req.body["name"].get<std::string>());
    return json_response(concept_json(c, *store.snapshot()), 201);
  }

  HttpResponse list_concepts(const Request&) {
    const auto snap = store.snapshot();
    json out = json::array();
    for (const auto& c : snap->concepts) {
      json j = concept_json(c, *snap);
      json neurons = json::array();
      for (const auto& [n, id] : snap->labels)
        if (id == c.id) neurons.push_back({{"layer", n.layer}, {"channel", n.channel}});
      j["neurons"] = neurons;
      out.push_back(std::move(j));
    }
    return json_response({{"concepts", out}});
  }

  json labels_json(const LabelSnapshot& snap) const {
    json out = json::array();
    for (const auto& [n, id] : snap.labels)
      out.push_back({{"layer", n.layer}, {"channel", n.channel}, {"concept", id}});
    return out;
  }

  HttpResponse add_labels(const Request& req) {
    const json& b = req.body;
    if (!b.contains("concept") || !b["concept"].is_string()) bad_request("concept must be a string");
    if (!b.contains("neurons") || !b["neurons"].is_array() || b["neurons"].empty())
      bad_request("neurons must be a non-empty array");
    std::string source;
    if (b.contains("source_patch")) {
      if (!b["source_patch"].is_string()) bad_request("source_patch must be a string");
      source = b["source_patch"].get<std::string>();
    }
    std::vector<LabelTarget> targets;
    for (const auto& n : b["neurons"]) {
      if (!n.is_object() || !n.contains("layer") || !n.contains("channel") || !n["layer"].is_number_unsigned() ||
          !n["channel"].is_number_unsigned())
        bad_request("each neuron needs non-negative integer layer and channel");
      LabelTarget t{{n["layer"].get<std::size_t>(), n["channel"].get<std::size_t>()}, std::nullopt};
      if (n.contains("iou") && !n["iou"].is_null()) {
        if (!n["iou"].is_number()) bad_request("neuron iou must be a number");
        t.iou = n["iou"].get<double>();
      }
      targets.push_back(t);
    }
    const auto snap = store.label_neurons(targets, b["concept"].get<std::string>(), source);
    return json_response({{"concept", b["concept"]}, {"labels", labels_json(*snap)}});
  }

  HttpResponse list_labels(const Request&) {
    const auto snap = store.snapshot();
    json audit = json::array();
    for (const auto& a : snap->audit) {
      audit.push_back({{"layer", a.neuron.layer},
                       {"channel", a.neuron.channel},
                       {"concept", a.concept_id},
                       {"at", a.timestamp},
                       {"source_patch", a.source_patch},
                       {"iou", a.iou ? json(*a.iou) : json(nullptr)}});
    }
    return json_response({{"labels", labels_json(*snap)}, {"audit", audit}});
  }

  HttpResponse label_log_export(const Request&) {
    std::string bytes;
    if (!label_log.empty() && std::filesystem::exists(label_log)) bytes = detail::read_file(label_log.string());
    return {200, "application/x-ndjson", bytes};
  }

  HttpResponse activation_report_route(const Request& req) {
    const PatchRef ref = resolve_patch(req.param(1));
    const auto result = infer(ref);
    const auto snap = store.snapshot();
    return json_response(report_json(patch_id(ref), activation_report(*result, *snap), *snap));
  }

  HttpResponse region_report_route(const Request& req) {
    const PatchRef ref = resolve_patch(req.param(1));
    const BinaryMask user = parse_mask(req.body, patch);
    const auto result = infer(ref);
    const auto snap = store.snapshot();
    return json_response(
        report_json(patch_id(ref), region_report(*result, user, index.thresholds, *snap), *snap));
  }

  void add_route(const char* method, const char* pattern, HttpResponse (Impl::*fn)(const Request&)) {
    routes.push_back({method, std::regex(pattern), [this, fn](const Request& r) { return (this->*fn)(r); }});
  }

  void build_routes() {
    add_route("GET", "/images", &Impl::list_images);
    add_route("GET", "/images/([^/]+)", &Impl::image_bytes);
    add_route("GET", "/images/([^/]+)/patches", &Impl::image_patches);
    add_route("POST", "/patches/([^/]+)/select", &Impl::select);
    add_route("POST", "/patches/([^/]+)/query", &Impl::query);
    add_route("GET", "/neurons/([^/]+)/([^/]+)", &Impl::neuron);
    add_route("GET", "/embedding", &Impl::embedding);
    add_route("POST", "/concepts", &Impl::create_concept);
    add_route("GET", "/concepts", &Impl::list_concepts);
    add_route("POST", "/labels", &Impl::add_labels);
    add_route("GET", "/labels", &Impl::list_labels);
    add_route("GET", "/labels/log", &Impl::label_log_export);
    add_route("GET", "/patches/([^/]+)/report/activation", &Impl::activation_report_route);
    add_route("POST", "/patches/([^/]+)/report/region", &Impl::region_report_route);
  }
};

Service::Service(Model model, ActivationIndex index, ReferenceCorpus corpus, std::filesystem::path label_log,
                 ServiceConfig config, ConceptStore::Clock clock) {
  if (index.model_fingerprint != model.fingerprint()) {
    fail(ErrorCode::StaleIndex, "index was built for model " + hex64(index.model_fingerprint) +
                                    ", loaded model is " + hex64(model.fingerprint()));
  }
  if (index.table.layer != model.dissection_layer() || index.neuron_count() != model.dissection_channels()) {
    fail(ErrorCode::StaleIndex, "index covers a different dissection layer");
  }
  if (corpus.size() != index.corpus.size()) {
    fail(ErrorCode::InvalidArgument, "corpus has " + std::to_string(corpus.size()) + " images, index has " +
                                         std::to_string(index.corpus.size()));
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus.entries()[i].image_id != index.corpus[i].image_id) {
      fail(ErrorCode::InvalidArgument, "corpus image " + corpus.entries()[i].image_id +
                                           " does not match index entry " + index.corpus[i].image_id);
    }
  }
  const auto native = model.native_input_size();
  const std::size_t patch = config.patch_size.value_or(native.value_or(512));
  if (patch == 0 || (native && patch != *native)) {
    fail(ErrorCode::InvalidArgument, "patch size " + std::to_string(patch) + " does not fit the model");
  }

  impl_ = std::make_unique<Impl>(std::move(model), std::move(index), std::move(corpus), std::move(label_log),
                                 config, std::move(clock));
  impl_->patch = patch;
  impl_->fingerprint = hex64(impl_->model.fingerprint());
  if (impl_->index.table.neurons >= 2) impl_->projection = pca_project(build_embedding(impl_->index));
  impl_->build_routes();
}

Service::~Service() = default;

HttpResponse Service::handle(const std::string& method, const std::string& path, const std::string& body,
                             const QueryParams& query) {
  try {
    bool path_known = false;
    for (const auto& route : impl_->routes) {
      Request req;
      if (!std::regex_match(path, req.match, route.pattern)) continue;
      path_known = true;
      if (route.method != method) continue;
      req.body = parse_body(body);
      req.query = &query;
      return route.handler(req);
    }
    if (path_known) return error_response({405, "method_not_allowed", method + " is not supported on " + path});
    return error_response({404, "not_found", "no endpoint " + path});
  } catch (const HttpError& e) {
    return error_response(e);
  } catch (const Error& e) {
    return error_response(map_error(e));
  } catch (const json::exception& e) {
    return error_response({400, "validation_error", e.what()});
  } catch (const std::exception& e) {
    return error_response({500, "internal_error", e.what()});
  }
}

void Service::mount(httplib::Server& server) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    QueryParams params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    const HttpResponse out = handle(req.method, req.path, req.body, params);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
}

std::size_t Service::patch_size() const noexcept { return impl_->patch; }
const Model& Service::model() const noexcept { return impl_->model; }
const ActivationIndex& Service::index() const noexcept { return impl_->index; }
const Projection& Service::projection() const noexcept { return impl_->projection; }
ConceptStore& Service::store() noexcept { return impl_->store; }
Service::CacheStats Service::cache_stats() const { return impl_->results.stats(); }

}  // namespace neuroscope
