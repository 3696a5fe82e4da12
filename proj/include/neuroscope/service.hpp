#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "neuroscope/activation_index.hpp"
#include "neuroscope/atlas.hpp"
#include "neuroscope/concept_store.hpp"
#include "neuroscope/corpus.hpp"
#include "neuroscope/inference.hpp"
#include "neuroscope/model.hpp"

namespace httplib {
class Server;
}

namespace neuroscope {

struct ServiceConfig {
  /// Patches scoring at or above this on the positive class are flagged.
  double lesion_threshold = 0.5;
  std::size_t positive_class = 1;
  /// Per-patch inference results retained; 0 disables caching.
  std::size_t cache_capacity = 64;
  std::size_t top_k = 12;
  double default_iou_threshold = 0.2;
  /// Defaults to the model's native input size.
  std::optional<std::size_t> patch_size;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

using QueryParams = std::map<std::string, std::string>;

/// Long-lived session over one model, its activation index, the reference
/// corpus and the label store, exposed as JSON endpoints (docs/api.md).
/// handle() is transport independent and safe to call concurrently.
class Service {
 public:
  /// Throws StaleIndex when the index was built for another model and
  /// InvalidArgument when the corpus does not match the index.
  Service(Model model, ActivationIndex index, ReferenceCorpus corpus,
          std::filesystem::path label_log, ServiceConfig config = {},
          ConceptStore::Clock clock = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  HttpResponse handle(const std::string& method, const std::string& path,
                      const std::string& body = {}, const QueryParams& query = {});

  /// Routes every GET/POST of the server through handle().
  void mount(httplib::Server& server);

  std::size_t patch_size() const noexcept;
  const Model& model() const noexcept;
  const ActivationIndex& index() const noexcept;
  const Projection& projection() const noexcept;
  ConceptStore& store() noexcept;

  struct CacheStats {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t size = 0;
  };
  CacheStats cache_stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace neuroscope
