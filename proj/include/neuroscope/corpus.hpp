#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "neuroscope/image.hpp"

namespace neuroscope {

struct CorpusEntry {
  std::string image_id;
  std::filesystem::path path;  // absolute, or relative to the corpus root
};

/// Ordered image list read from <root>/manifest.tsv (image_id<TAB>path per
/// line, '#' comments allowed). Order defines embedding column order.
class ReferenceCorpus {
 public:
  ReferenceCorpus() = default;
  ReferenceCorpus(std::filesystem::path root, std::vector<CorpusEntry> entries);

  static ReferenceCorpus load(const std::filesystem::path& root);
  static constexpr const char* kManifestName = "manifest.tsv";

  const std::filesystem::path& root() const noexcept { return root_; }
  const std::vector<CorpusEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::optional<std::size_t> find(const std::string& image_id) const;
  std::filesystem::path resolve(std::size_t index) const;
  GrayImage load_image(std::size_t index) const;

 private:
  std::filesystem::path root_;
  std::vector<CorpusEntry> entries_;
};

void write_manifest(const std::filesystem::path& root, const std::vector<CorpusEntry>& entries);

}  // namespace neuroscope
