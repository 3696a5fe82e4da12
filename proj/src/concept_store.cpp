#include "neuroscope/concept_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>

#include "neuroscope/error.hpp"
#include "neuroscope/query.hpp"

namespace neuroscope {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void apply_event(LabelSnapshot& snap, const json& ev) {
  const std::string type = ev.at("event").get<std::string>();
  if (type == "concept_created") {
    Concept c{ev.at("id").get<std::string>(), ev.at("display_name").get<std::string>(),
              ev.at("at").get<std::string>()};
    if (snap.find_concept(c.id)) fail(ErrorCode::CorruptLog, "concept created twice: " + c.id);
    snap.concepts.push_back(std::move(c));
  } else if (type == "neurons_labeled") {
    const std::string concept_id = ev.at("concept").get<std::string>();
    if (!snap.find_concept(concept_id)) fail(ErrorCode::CorruptLog, "label refers to unknown concept " + concept_id);
    const std::string at = ev.at("at").get<std::string>();
    const std::string patch = ev.value("source_patch", std::string{});
    for (const auto& n : ev.at("neurons")) {
      NeuronRef ref{n.at("layer").get<std::size_t>(), n.at("channel").get<std::size_t>()};
      std::optional<double> iou;
      if (n.contains("iou") && !n.at("iou").is_null()) iou = n.at("iou").get<double>();
      snap.labels[ref] = concept_id;
      snap.audit.push_back({ref, concept_id, at, patch, iou});
    }
  } else {
    fail(ErrorCode::CorruptLog, "unknown event type " + type);
  }
}

}  // namespace

const Concept* LabelSnapshot::find_concept(const std::string& id) const {
  for (const auto& c : concepts)
    if (c.id == id) return &c;
  return nullptr;
}

std::optional<std::string> LabelSnapshot::label_of(NeuronRef neuron) const {
  auto it = labels.find(neuron);
  if (it == labels.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> LabelSnapshot::concept_rank(const std::string& id) const {
  for (std::size_t i = 0; i < concepts.size(); ++i)
    if (concepts[i].id == id) return i;
  return std::nullopt;
}

std::string slugify(const std::string& name) {
  std::string out;
  bool pending_dash = false;
  for (unsigned char c : name) {
    if (std::isalnum(c)) {
      if (pending_dash && !out.empty()) out.push_back('-');
      pending_dash = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_dash = true;
    }
  }
  return out;
}

std::string ConceptStore::utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ConceptStore::ConceptStore(std::filesystem::path log_path, std::size_t valid_layer,
                           std::size_t channel_count, Clock clock)
    : log_path_(std::move(log_path)),
      valid_layer_(valid_layer),
      channel_count_(channel_count),
      clock_(clock ? std::move(clock) : Clock(&ConceptStore::utc_now)) {
  LabelSnapshot initial;
  if (!log_path_.empty() && std::filesystem::exists(log_path_)) initial = replay(log_path_);
  current_ = std::make_shared<const LabelSnapshot>(std::move(initial));
}

LabelSnapshot ConceptStore::replay(const std::filesystem::path& log_path,
                                   std::optional<std::size_t> max_events) {
  std::ifstream in(log_path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open label log " + log_path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  LabelSnapshot snap;
  std::size_t applied = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (max_events && applied >= *max_events) break;
    const auto end = text.find('\n', pos);
    if (end == std::string::npos) break;  // torn tail from an interrupted append
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      apply_event(snap, json::parse(line));
    } catch (const json::exception& e) {
      fail(ErrorCode::CorruptLog, log_path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    ++applied;
  }
  return snap;
}

std::shared_ptr<const LabelSnapshot> ConceptStore::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

void ConceptStore::publish(LabelSnapshot next) {
  auto ptr = std::make_shared<const LabelSnapshot>(std::move(next));
  std::lock_guard lock(snapshot_mutex_);
  current_ = std::move(ptr);
}

void ConceptStore::append(const std::string& line) {
  if (log_path_.empty()) return;
  const int fd = ::open(log_path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) fail(ErrorCode::Io, "cannot open label log " + log_path_.string());
  const std::string record = line + "\n";
  std::size_t written = 0;
  while (written < record.size()) {
    const ssize_t n = ::write(fd, record.data() + written, record.size() - written);
    if (n <= 0) {
      ::close(fd);
      fail(ErrorCode::Io, "write to label log failed");
    }
    written += static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
}

Concept ConceptStore::add_concept(const std::string& name) {
  const std::string display = trim(name);
  if (display.empty()) fail(ErrorCode::EmptyName, "concept name is empty");
  const std::string id = slugify(display);
  if (id.empty()) fail(ErrorCode::EmptyName, "concept name has no letters or digits: " + display);

  std::lock_guard lock(write_mutex_);
  LabelSnapshot next = *snapshot();
  for (const auto& c : next.concepts) {
    if (c.id == id || lower(c.display_name) == lower(display)) {
      fail(ErrorCode::DuplicateConcept, "concept already exists: " + c.display_name);
    }
  }
  Concept created{id, display, clock_()};
  const json ev = {{"event", "concept_created"},
                   {"id", created.id},
                   {"display_name", created.display_name},
                   {"at", created.created_at}};
  append(ev.dump());
  next.concepts.push_back(created);
  publish(std::move(next));
  return created;
}

std::shared_ptr<const LabelSnapshot> ConceptStore::label_neurons(std::span<const LabelTarget> targets,
                                                                 const std::string& concept_id,
                                                                 const std::string& source_patch) {
  std::lock_guard lock(write_mutex_);
  auto current = snapshot();
  if (!current->find_concept(concept_id)) fail(ErrorCode::UnknownConcept, "unknown concept: " + concept_id);
  for (const auto& t : targets) {
    if (t.neuron.layer != valid_layer_ || t.neuron.channel >= channel_count_) {
      fail(ErrorCode::UnknownNeuron, "unknown neuron " + std::to_string(t.neuron.layer) + "/" +
                                         std::to_string(t.neuron.channel));
    }
  }

  json neurons = json::array();
  std::vector<NeuronRef> seen;
  for (const auto& t : targets) {
    if (std::find(seen.begin(), seen.end(), t.neuron) != seen.end()) continue;
    seen.push_back(t.neuron);
    if (current->label_of(t.neuron) == concept_id) continue;
    json n = {{"layer", t.neuron.layer}, {"channel", t.neuron.channel}};
    n["iou"] = t.iou ? json(*t.iou) : json(nullptr);
    neurons.push_back(std::move(n));
  }
  if (neurons.empty()) return current;

  const json ev = {{"event", "neurons_labeled"},
                   {"concept", concept_id},
                   {"at", clock_()},
                   {"source_patch", source_patch},
                   {"neurons", neurons}};
  append(ev.dump());
  LabelSnapshot next = *current;
  apply_event(next, ev);
  publish(std::move(next));
  return snapshot();
}

const ConceptReportEntry* ConceptReport::find(const std::string& concept_id) const {
  for (const auto& e : entries)
    if (e.concept_id == concept_id) return &e;
  return nullptr;
}

namespace {

// Labeled neurons of the result's layer, grouped by concept in creation order.
std::vector<std::pair<std::string, std::vector<std::size_t>>> group_labels(
    const InferenceResult& result, const LabelSnapshot& labels) {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
  for (const auto& c : labels.concepts) groups.emplace_back(c.id, std::vector<std::size_t>{});
  for (const auto& [neuron, concept_id] : labels.labels) {
    if (neuron.layer != result.dissection_layer || neuron.channel >= result.neuron_count()) continue;
    for (auto& g : groups)
      if (g.first == concept_id) g.second.push_back(neuron.channel);
  }
  std::erase_if(groups, [](const auto& g) { return g.second.empty(); });
  if (groups.empty()) fail(ErrorCode::ReportUnavailable, "no labeled neurons yet");
  return groups;
}

void sort_entries(ConceptReport& report) {
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const ConceptReportEntry& a, const ConceptReportEntry& b) { return a.mean > b.mean; });
}

}  // namespace

ConceptReport activation_report(const InferenceResult& result, const LabelSnapshot& labels) {
  const auto groups = group_labels(result, labels);
  const auto maxima = result.neuron_maxima();
  ConceptReport report{ReportKind::ActivationValue, {}};
  for (const auto& [concept_id, channels] : groups) {
    double sum = 0.0;
    for (std::size_t c : channels) sum += maxima[c];
    report.entries.push_back({concept_id, sum / static_cast<double>(channels.size()), channels.size()});
  }
  sort_entries(report);
  return report;
}

ConceptReport region_report(const InferenceResult& result, const BinaryMask& user_mask,
                            const QuantileThresholds& thresholds, const LabelSnapshot& labels) {
  if (user_mask.empty()) fail(ErrorCode::EmptyMask, "no region drawn: the report mask is empty");
  if (thresholds.size() != result.neuron_count()) {
    fail(ErrorCode::DimensionMismatch, "thresholds do not match the dissection layer");
  }
  const auto groups = group_labels(result, labels);
  ConceptReport report{ReportKind::ActivationArea, {}};
  for (const auto& [concept_id, channels] : groups) {
    double sum = 0.0;
    for (std::size_t c : channels) {
      const BinaryMask mask =
          activation_mask(result.dissection_maps.map(c), thresholds[c], user_mask.width(), user_mask.height());
      sum += iou(user_mask, mask);
    }
    report.entries.push_back({concept_id, sum / static_cast<double>(channels.size()), channels.size()});
  }
  sort_entries(report);
  return report;
}

}  // namespace neuroscope
