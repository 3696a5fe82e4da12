#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "neuroscope/concept_store.hpp"
#include "neuroscope/error.hpp"
#include "neuroscope/query.hpp"

using namespace neuroscope;
using Catch::Matchers::WithinAbs;

namespace {

std::filesystem::path fresh_log(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("neuroscope_" + name + ".jsonl");
  std::filesystem::remove(p);
  return p;
}

ConceptStore::Clock counting_clock() {
  auto n = std::make_shared<int>(0);
  return [n] { return "t" + std::to_string(++*n); };
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

std::vector<LabelTarget> targets(std::initializer_list<std::size_t> channels, std::size_t layer = 4) {
  std::vector<LabelTarget> out;
  for (std::size_t c : channels) out.push_back({{layer, c}, std::nullopt});
  return out;
}

// Four 2x2 maps with distinct maxima: neuron c peaks at c+1 at pixel c.
InferenceResult staged_result() {
  InferenceResult r;
  r.dissection_layer = 4;
  r.dissection_maps = FeatureTensor(4, 2, 2);
  for (std::size_t c = 0; c < 4; ++c) r.dissection_maps.at(c, c / 2, c % 2) = float(c + 1);
  return r;
}

}  // namespace

TEST_CASE("slugify") {
  CHECK(slugify("calcification") == "calcification");
  CHECK(slugify("  Architectural  Distortion! ") == "architectural-distortion");
  CHECK(slugify("mass/round") == "mass-round");
  CHECK(slugify("!!!").empty());
}

TEST_CASE("concept creation rules") {
  ConceptStore store({}, 4, 8, counting_clock());
  const Concept c = store.add_concept("calcification");
  CHECK(c.id == "calcification");
  CHECK(c.display_name == "calcification");
  CHECK(c.created_at == "t1");
  CHECK(code_of([&] { store.add_concept(""); }) == ErrorCode::EmptyName);
  CHECK(code_of([&] { store.add_concept("   "); }) == ErrorCode::EmptyName);
  store.add_concept("mass");
  CHECK(code_of([&] { store.add_concept("mass"); }) == ErrorCode::DuplicateConcept);
  CHECK(code_of([&] { store.add_concept(" MASS "); }) == ErrorCode::DuplicateConcept);
  CHECK(store.snapshot()->concepts.size() == 2);
  CHECK(store.snapshot()->concept_rank("mass") == std::optional<std::size_t>(1));
}

TEST_CASE("labeling, relabeling and audit history") {
  ConceptStore store({}, 4, 8, counting_clock());
  store.add_concept("mass");
  store.add_concept("calcification");
  const auto t37 = targets({3, 7});
  auto snap = store.label_neurons(t37, "mass", "img:0:0");
  CHECK(snap->label_of({4, 3}) == "mass");
  CHECK(snap->label_of({4, 7}) == "mass");
  CHECK_FALSE(snap->label_of({4, 0}));

  const auto t3 = targets({3});
  snap = store.label_neurons(t3, "calcification");
  CHECK(snap->label_of({4, 3}) == "calcification");
  CHECK(snap->label_of({4, 7}) == "mass");
  const auto n3 = std::count_if(snap->audit.begin(), snap->audit.end(),
                                [](const LabelAudit& a) { return a.neuron == NeuronRef{4, 3}; });
  CHECK(n3 == 2);
  CHECK(snap->audit.front().source_patch == "img:0:0");

  const auto before = *store.snapshot();
  store.label_neurons(t3, "calcification");
  CHECK(*store.snapshot() == before);

  CHECK(code_of([&] { store.label_neurons(t3, "nope"); }) == ErrorCode::UnknownConcept);
  const auto bad_channel = targets({8});
  CHECK(code_of([&] { store.label_neurons(bad_channel, "mass"); }) == ErrorCode::UnknownNeuron);
  const auto bad_layer = targets({1}, 5);
  CHECK(code_of([&] { store.label_neurons(bad_layer, "mass"); }) == ErrorCode::UnknownNeuron);
  CHECK(*store.snapshot() == before);
}

TEST_CASE("snapshots are immutable") {
  ConceptStore store({}, 4, 8, counting_clock());
  store.add_concept("mass");
  const auto old = store.snapshot();
  const auto t = targets({1});
  store.label_neurons(t, "mass");
  CHECK(old->labels.empty());
  CHECK(store.snapshot()->labels.size() == 1);
}

TEST_CASE("store persists and reloads identically") {
  const auto log = fresh_log("persist");
  {
    ConceptStore store(log, 4, 8, counting_clock());
    store.add_concept("Mass");
    store.add_concept("calcification");
    std::vector<LabelTarget> t{{{4, 2}, 0.75}, {{4, 5}, std::nullopt}};
    store.label_neurons(t, "mass", "a:0:0");
    const auto t5 = targets({5});
    store.label_neurons(t5, "calcification");
  }
  ConceptStore reloaded(log, 4, 8, counting_clock());
  const auto snap = reloaded.snapshot();
  CHECK(snap->label_of({4, 2}) == "mass");
  CHECK(snap->label_of({4, 5}) == "calcification");
  CHECK(snap->find_concept("mass")->display_name == "Mass");
  CHECK(snap->audit.size() == 3);
  CHECK(snap->audit[0].iou == std::optional<double>(0.75));
  CHECK(*snap == ConceptStore::replay(log));
  std::filesystem::remove(log);
}

TEST_CASE("every log prefix replays to the state at that point in history") {
  const auto log = fresh_log("prefix");
  std::vector<LabelSnapshot> history{LabelSnapshot{}};
  {
    ConceptStore store(log, 4, 8, counting_clock());
    std::mt19937_64 rng(3);
    const std::vector<std::string> names{"a", "b", "c"};
    for (const auto& n : names) {
      store.add_concept(n);
      history.push_back(*store.snapshot());
    }
    for (int step = 0; step < 20; ++step) {
      const auto t = targets({rng() % 8, rng() % 8});
      const std::size_t lines_before = history.size();
      store.label_neurons(t, names[rng() % 3]);
      if (*store.snapshot() != history.back()) history.push_back(*store.snapshot());
      REQUIRE(history.size() >= lines_before);
    }
  }
  for (std::size_t k = 0; k < history.size(); ++k) REQUIRE(ConceptStore::replay(log, k) == history[k]);
  std::filesystem::remove(log);
}

TEST_CASE("replay ignores a torn final line and rejects corrupt lines") {
  const auto log = fresh_log("torn");
  {
    ConceptStore store(log, 4, 8, counting_clock());
    store.add_concept("mass");
  }
  {
    std::ofstream out(log, std::ios::app);
    out << R"({"event":"neurons_labeled","concept":"mass","at":"t9","neu)";
  }
  const auto snap = ConceptStore::replay(log);
  CHECK(snap.concepts.size() == 1);
  CHECK(snap.labels.empty());
  {
    std::ofstream out(log, std::ios::app);
    out << "\n";
  }
  CHECK(code_of([&] { ConceptStore::replay(log); }) == ErrorCode::CorruptLog);
  std::filesystem::remove(log);
}

TEST_CASE("concurrent labeling is serialized") {
  ConceptStore store({}, 4, 64, counting_clock());
  store.add_concept("x");
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = 0; i < 16; ++i) {
        const auto one = targets({t * 16 + i});
        store.label_neurons(one, "x");
        (void)store.snapshot()->labels.size();
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(store.snapshot()->labels.size() == 64);
  CHECK(store.snapshot()->audit.size() == 64);
}

TEST_CASE("activation report averages spatial maxima per concept") {
  ConceptStore store({}, 4, 4, counting_clock());
  CHECK(code_of([&] { activation_report(staged_result(), *store.snapshot()); }) == ErrorCode::ReportUnavailable);
  store.add_concept("mass");
  store.add_concept("calc");
  store.add_concept("unused");
  CHECK(code_of([&] { activation_report(staged_result(), *store.snapshot()); }) == ErrorCode::ReportUnavailable);
  const auto t13 = targets({1, 3});
  const auto t0 = targets({0});
  store.label_neurons(t13, "mass");
  store.label_neurons(t0, "calc");
  const auto report = activation_report(staged_result(), *store.snapshot());
  REQUIRE(report.entries.size() == 2);
  CHECK(report.kind == ReportKind::ActivationValue);
  CHECK(report.entries[0] == ConceptReportEntry{"mass", 3.0, 2});  // (2 + 4) / 2
  CHECK(report.entries[1] == ConceptReportEntry{"calc", 1.0, 1});
  CHECK_FALSE(report.find("unused"));
}

TEST_CASE("report ties keep concept creation order") {
  ConceptStore store({}, 4, 4, counting_clock());
  store.add_concept("first");
  store.add_concept("second");
  const auto t2 = targets({2});
  store.label_neurons(t2, "second");
  store.label_neurons(t2, "second");
  const auto t0 = targets({0});
  store.label_neurons(t0, "first");
  InferenceResult flat;
  flat.dissection_layer = 4;
  flat.dissection_maps = FeatureTensor(4, 2, 2, 1.0f);
  const auto r = activation_report(flat, *store.snapshot());
  CHECK(r.entries[0].concept_id == "first");
  CHECK(r.entries[1].concept_id == "second");
}

TEST_CASE("region report averages IoU per concept") {
  ConceptStore store({}, 4, 4, counting_clock());
  store.add_concept("a");
  store.add_concept("b");
  const auto t0 = targets({0});
  const auto t123 = targets({1, 2, 3});
  store.label_neurons(t0, "a");
  store.label_neurons(t123, "b");
  const auto result = staged_result();
  const QuantileThresholds q{0.5, {0.5f, 0.5f, 0.5f, 0.5f}};
  BinaryMask user(2, 2);
  user.set(0, 0);

  const auto report = region_report(result, user, q, *store.snapshot());
  REQUIRE(report.entries.size() == 2);
  CHECK(report.kind == ReportKind::ActivationArea);
  CHECK(report.entries[0] == ConceptReportEntry{"a", 1.0, 1});
  CHECK(report.entries[1] == ConceptReportEntry{"b", 0.0, 3});

  // Per-neuron IoU then average, against a hand computation.
  BinaryMask wide(2, 2);
  wide.fill_rect(0, 0, 2, 1);
  const auto r2 = region_report(result, wide, q, *store.snapshot());
  CHECK_THAT(r2.find("a")->mean, WithinAbs(0.5, 1e-12));
  CHECK_THAT(r2.find("b")->mean, WithinAbs(0.5 / 3.0, 1e-12));

  CHECK(code_of([&] { region_report(result, BinaryMask(2, 2), q, *store.snapshot()); }) == ErrorCode::EmptyMask);
  const QuantileThresholds short_q{0.5, {0.5f}};
  CHECK(code_of([&] { region_report(result, user, short_q, *store.snapshot()); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("report means are permutation invariant and bounded by member values") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<float> uni(0.0f, 5.0f);
  for (int trial = 0; trial < 20; ++trial) {
    InferenceResult r;
    r.dissection_layer = 4;
    r.dissection_maps = FeatureTensor(8, 3, 3);
    for (float& v : r.dissection_maps.data()) v = uni(rng);
    std::vector<std::size_t> members{0, 1, 2, 3, 4, 5};
    std::shuffle(members.begin(), members.end(), rng);
    members.resize(1 + rng() % 6);

    auto report_for = [&](const std::vector<std::size_t>& order) {
      ConceptStore store({}, 4, 8, counting_clock());
      store.add_concept("c");
      std::vector<LabelTarget> t;
      for (std::size_t m : order) t.push_back({{4, m}, std::nullopt});
      store.label_neurons(t, "c");
      return activation_report(r, *store.snapshot()).entries.at(0).mean;
    };
    auto reversed = members;
    std::reverse(reversed.begin(), reversed.end());
    const double mean = report_for(members);
    REQUIRE_THAT(report_for(reversed), WithinAbs(mean, 1e-12));
    const auto maxima = r.neuron_maxima();
    float lo = 1e9f, hi = -1e9f;
    for (std::size_t m : members) {
      lo = std::min(lo, maxima[m]);
      hi = std::max(hi, maxima[m]);
    }
    REQUIRE(mean >= lo - 1e-9);
    REQUIRE(mean <= hi + 1e-9);
    REQUIRE(mean >= 0.0);
  }
}
