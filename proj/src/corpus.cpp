#include "neuroscope/corpus.hpp"

#include <fstream>
#include <set>

#include "neuroscope/binary_io.hpp"
#include "neuroscope/error.hpp"

namespace neuroscope {

ReferenceCorpus::ReferenceCorpus(std::filesystem::path root, std::vector<CorpusEntry> entries)
    : root_(std::move(root)), entries_(std::move(entries)) {
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    if (e.image_id.empty()) fail(ErrorCode::InvalidArgument, "corpus entry with empty image id");
    if (!seen.insert(e.image_id).second)
      fail(ErrorCode::InvalidArgument, "duplicate image id in corpus: " + e.image_id);
  }
}

ReferenceCorpus ReferenceCorpus::load(const std::filesystem::path& root) {
  const auto manifest = root / kManifestName;
  std::ifstream in(manifest);
  if (!in) fail(ErrorCode::Io, "cannot open corpus manifest " + manifest.string());
  std::vector<CorpusEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      fail(ErrorCode::InvalidArgument,
           manifest.string() + ":" + std::to_string(line_no) + ": expected image_id<TAB>path");
    }
    entries.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return ReferenceCorpus(root, std::move(entries));
}

std::optional<std::size_t> ReferenceCorpus::find(const std::string& image_id) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].image_id == image_id) return i;
  return std::nullopt;
}

std::filesystem::path ReferenceCorpus::resolve(std::size_t index) const {
  const auto& p = entries_.at(index).path;
  return p.is_absolute() ? p : root_ / p;
}

GrayImage ReferenceCorpus::load_image(std::size_t index) const {
  return read_png(resolve(index));
}

void write_manifest(const std::filesystem::path& root, const std::vector<CorpusEntry>& entries) {
  std::string text;
  for (const auto& e : entries) text += e.image_id + "\t" + e.path.string() + "\n";
  detail::write_file_atomic((root / ReferenceCorpus::kManifestName).string(), text);
}

}  // namespace neuroscope
