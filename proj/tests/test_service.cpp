#include <catch2/catch_amalgamated.hpp>

#include <httplib.h>

#include <filesystem>
#include <thread>

#include "neuroscope/binary_io.hpp"
#include "neuroscope/error.hpp"
#include "neuroscope/patches.hpp"
#include "neuroscope/query.hpp"
#include "neuroscope/service.hpp"
#include "neuroscope/synthetic.hpp"
#include "session_script.hpp"

using namespace neuroscope;
using nlohmann::json;
using Catch::Matchers::WithinAbs;

namespace {

const synthetic::FixturePaths& fixtures() {
  static const synthetic::FixturePaths paths = [] {
    const auto root = std::filesystem::temp_directory_path() / "neuroscope_service_fixtures";
    std::filesystem::remove_all(root);
    return synthetic::write_fixtures(root);
  }();
  return paths;
}

std::filesystem::path fresh_log(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("neuroscope_service_" + name + ".jsonl");
  std::filesystem::remove(p);
  return p;
}

ConceptStore::Clock fixed_clock() {
  return [] { return std::string("2024-01-01T00:00:00Z"); };
}

std::unique_ptr<Service> make_service(const std::string& log_name, ServiceConfig config = {}) {
  const auto& f = fixtures();
  return std::make_unique<Service>(load_weights(f.model), load_index(f.index), ReferenceCorpus::load(f.corpus),
                                   fresh_log(log_name), config, fixed_clock());
}

json body_of(const HttpResponse& r) { return json::parse(r.body); }

std::string square_query() { return json{{"mask", session::mask_json(session::square_mask_a())}}.dump(); }

}  // namespace

TEST_CASE("image manifest and raw image bytes") {
  auto svc = make_service("manifest");
  const auto list = svc->handle("GET", "/images");
  REQUIRE(list.status == 200);
  const auto images = body_of(list).at("images");
  REQUIRE(images.size() == 3);
  CHECK(images[0].at("id") == "fixture-a");
  CHECK(images[2].at("id") == "fixture-c");
  CHECK(images[0].at("width") == 128);
  CHECK(images[0].at("patch_count") == 16);

  const auto png = svc->handle("GET", "/images/fixture-b");
  CHECK(png.status == 200);
  CHECK(png.content_type == "image/png");
  CHECK(png.body == detail::read_file((fixtures().corpus / "fixture-b.png").string()));

  const auto missing = svc->handle("GET", "/images/nope");
  CHECK(missing.status == 404);
  CHECK(body_of(missing).at("code") == "not_found");
}

TEST_CASE("patch listing is row-major and scores match direct inference") {
  auto svc = make_service("patches");
  const auto first = svc->handle("GET", "/images/fixture-a/patches");
  REQUIRE(first.status == 200);
  const auto body = body_of(first);
  CHECK(body.at("patch_size") == 32);
  const auto& patches = body.at("patches");
  REQUIRE(patches.size() == 16);
  const GrayImage img = read_png(fixtures().corpus / "fixture-a.png");
  const Model model = synthetic::shape_model();
  for (std::size_t i = 0; i < 16; ++i) {
    const auto& p = patches[i];
    REQUIRE(p.at("x") == (i % 4) * 32);
    REQUIRE(p.at("y") == (i / 4) * 32);
    const PatchRef ref{"fixture-a", p.at("x").get<std::size_t>(), p.at("y").get<std::size_t>(), 32};
    REQUIRE(p.at("patch_id") == patch_id(ref));
    const double score = infer_patch(model, extract(img, ref)).class_scores[1];
    REQUIRE(p.at("score").get<double>() == score);
    REQUIRE(p.at("lesion") == (score >= 0.5));
  }
  CHECK(patches[0].at("lesion") == true);
  CHECK(patches[1].at("lesion") == false);

  const auto again = svc->handle("GET", "/images/fixture-a/patches");
  CHECK(again.body == first.body);
  CHECK(svc->cache_stats().hits >= 16);
}

TEST_CASE("select reports class scores and the most activated neuron") {
  auto svc = make_service("select");
  const auto r = svc->handle("POST", "/patches/fixture-a:0:0/select");
  REQUIRE(r.status == 200);
  const auto b = body_of(r);
  CHECK(b.at("class_scores").size() == 2);
  CHECK(b.at("lesion") == true);
  CHECK(b.at("most_activated").at("channel") == synthetic::kSquareNeuron);
  CHECK(b.at("most_activated").at("mask").at("width") == 32);
  CHECK(svc->handle("POST", "/patches/fixture-a:200:0/select").status == 404);
  CHECK(svc->handle("POST", "/patches/garbage/select").status == 400);
}

TEST_CASE("region query ranks the square neuron first on a square") {
  auto svc = make_service("query");
  const auto r = svc->handle("POST", "/patches/fixture-a:0:0/query", square_query());
  REQUIRE(r.status == 200);
  const auto b = body_of(r);
  CHECK(b.at("iou_threshold") == 0.2);
  REQUIRE_FALSE(b.at("matches").empty());
  CHECK(b.at("matches")[0].at("channel") == synthetic::kSquareNeuron);
  CHECK(b.at("best_aligned").at("channel") == synthetic::kSquareNeuron);
  for (std::size_t i = 1; i < b.at("matches").size(); ++i)
    CHECK(b.at("matches")[i - 1].at("iou").get<double>() >= b.at("matches")[i].at("iou").get<double>());

  json strict = json::parse(square_query());
  strict["iou_threshold"] = 0.45;
  const auto s = body_of(svc->handle("POST", "/patches/fixture-a:0:0/query", strict.dump()));
  CHECK(s.at("matches").size() == 1);
  strict["iou_threshold"] = 1.5;
  CHECK(svc->handle("POST", "/patches/fixture-a:0:0/query", strict.dump()).status == 400);
}

TEST_CASE("malformed requests are rejected with validation errors") {
  auto svc = make_service("malformed");
  const std::string bad_rle = R"({"mask":{"width":32,"height":32,"rle":[5,3]}})";
  const auto r = svc->handle("POST", "/patches/fixture-a:0:0/query", bad_rle);
  CHECK(r.status == 400);
  CHECK(body_of(r).at("code") == "validation_error");
  CHECK(svc->handle("POST", "/patches/fixture-a:0:0/query", R"({"mask":{"width":16,"height":32,"rle":[512]}})")
            .status == 400);
  CHECK(svc->handle("POST", "/patches/fixture-a:0:0/query", R"({"mask":{"width":32,"height":32,"rle":[1024]}})")
            .status == 400);
  CHECK(svc->handle("POST", "/patches/fixture-a:0:0/query", "{not json").status == 400);
  CHECK(svc->handle("POST", "/concepts", R"({"name":""})").status == 400);
  CHECK(svc->handle("POST", "/labels", R"({"concept":"x","neurons":[]})").status == 400);
  CHECK(svc->handle("GET", "/neurons/7/0", {}, {{"k", "0"}}).status == 400);
  CHECK(svc->handle("GET", "/neurons/7/8").status == 404);
  CHECK(svc->handle("GET", "/neurons/3/0").status == 404);
  CHECK(svc->handle("DELETE", "/concepts").status == 405);
  CHECK(svc->handle("GET", "/nowhere").status == 404);
}

TEST_CASE("reports need labeled neurons") {
  auto svc = make_service("report409");
  const auto r = svc->handle("GET", "/patches/fixture-a:0:0/report/activation");
  CHECK(r.status == 409);
  CHECK(body_of(r).at("code") == "report_unavailable");
  svc->handle("POST", "/concepts", R"({"name":"square"})");
  CHECK(svc->handle("POST", "/patches/fixture-a:0:0/report/region", square_query()).status == 409);
  CHECK(svc->handle("POST", "/concepts", R"({"name":"Square"})").status == 409);
}

TEST_CASE("labeling flow ranks the square concept above the circle concept") {
  auto svc = make_service("flow");
  REQUIRE(svc->handle("POST", "/concepts", R"({"name":"square"})").status == 201);
  REQUIRE(svc->handle("POST", "/concepts", R"({"name":"circle"})").status == 201);
  const auto sq = body_of(svc->handle("POST", "/patches/fixture-a:0:0/query", square_query()));
  REQUIRE(svc->handle("POST", "/labels", session::labels_from_matches(sq, "square", "fixture-a:0:0").dump()).status ==
          200);
  const json circle{{"mask", session::mask_json(session::circle_mask_b())}};
  const auto ci = body_of(svc->handle("POST", "/patches/fixture-b:0:0/query", circle.dump()));
  CHECK(ci.at("best_aligned").at("channel") == synthetic::kCircleNeuron);
  REQUIRE(svc->handle("POST", "/labels", session::labels_from_matches(ci, "circle", "fixture-b:0:0").dump()).status ==
          200);

  const auto act = body_of(svc->handle("GET", "/patches/fixture-a:0:0/report/activation"));
  CHECK(act.at("kind") == "activation_value");
  REQUIRE(act.at("entries").size() == 2);
  CHECK(act.at("entries")[0].at("concept") == "square");
  CHECK(act.at("entries")[0].at("mean").get<double>() > act.at("entries")[1].at("mean").get<double>());

  const auto area = body_of(svc->handle("POST", "/patches/fixture-a:0:0/report/region", square_query()));
  CHECK(area.at("kind") == "activation_area");
  CHECK(area.at("entries")[0].at("concept") == "square");

  const auto neuron = body_of(svc->handle("GET", "/neurons/7/0", {}, {{"k", "2"}, {"patch_id", "fixture-a:0:0"}}));
  CHECK(neuron.at("label").at("id") == "square");
  CHECK(neuron.at("top_images").size() == 2);
  CHECK(neuron.at("patch").at("mask").at("width") == 32);

  const auto emb = body_of(svc->handle("GET", "/embedding"));
  REQUIRE(emb.at("points").size() == 8);
  CHECK(emb.at("points")[0].at("label") == "square");
  CHECK(emb.at("points")[7].at("label").is_null());
  CHECK(emb.at("points")[7].at("color") == "#9e9e9e");

  const auto labels = body_of(svc->handle("GET", "/labels"));
  CHECK(labels.at("audit").size() >= 4);
  const auto log = svc->handle("GET", "/labels/log");
  CHECK(log.content_type == "application/x-ndjson");
  CHECK(log.body == detail::read_file((std::filesystem::temp_directory_path() / "neuroscope_service_flow.jsonl").string()));
}

TEST_CASE("caching does not change responses") {
  ServiceConfig off;
  off.cache_capacity = 0;
  auto cached = make_service("cache_on");
  auto uncached = make_service("cache_off", off);
  for (int round = 0; round < 2; ++round) {
    for (const char* id : {"fixture-a:0:0", "fixture-c:32:96", "fixture-b:96:96"}) {
      const std::string p = std::string("/patches/") + id;
      CHECK(cached->handle("POST", p + "/select").body == uncached->handle("POST", p + "/select").body);
      CHECK(cached->handle("POST", p + "/query", square_query()).body ==
            uncached->handle("POST", p + "/query", square_query()).body);
    }
  }
  CHECK(cached->cache_stats().hits > 0);
  CHECK(uncached->cache_stats().size == 0);
}

TEST_CASE("read-only endpoints leave labeling state untouched") {
  auto svc = make_service("readonly");
  svc->handle("POST", "/concepts", R"({"name":"square"})");
  const auto before = *svc->store().snapshot();
  const auto log_before = svc->handle("GET", "/labels/log").body;
  svc->handle("GET", "/images");
  svc->handle("GET", "/images/fixture-a/patches");
  svc->handle("POST", "/patches/fixture-a:0:0/select");
  svc->handle("POST", "/patches/fixture-a:0:0/query", square_query());
  svc->handle("GET", "/neurons/7/1");
  svc->handle("GET", "/embedding");
  svc->handle("GET", "/concepts");
  svc->handle("GET", "/labels");
  CHECK(*svc->store().snapshot() == before);
  CHECK(svc->handle("GET", "/labels/log").body == log_before);
}

TEST_CASE("scripted session is deterministic") {
  auto a = make_service("script_a");
  auto b = make_service("script_b");
  const auto ta = session::run(session::in_process(*a));
  const auto tb = session::run(session::in_process(*b));
  CHECK(ta == tb);
  CHECK(ta.size() == 20);
}

TEST_CASE("service refuses a stale index or a mismatched corpus") {
  const auto& f = fixtures();
  const Model base = synthetic::shape_model();
  std::vector<std::vector<float>> weights, biases;
  for (std::size_t i = 0; i < base.layer_count(); ++i) {
    weights.emplace_back(base.weights(i).begin(), base.weights(i).end());
    biases.emplace_back(base.bias(i).begin(), base.bias(i).end());
  }
  biases[0][0] += 0.25f;
  const Model changed(base.spec(), weights, biases);
  try {
    Service svc(changed, load_index(f.index), ReferenceCorpus::load(f.corpus), {});
    FAIL("expected StaleIndex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StaleIndex);
  }

  auto index = load_index(f.index);
  index.corpus[0].image_id = "someone-else";
  try {
    Service svc(synthetic::shape_model(), index, ReferenceCorpus::load(f.corpus), {});
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("labels survive a service restart") {
  const auto& f = fixtures();
  const auto log = fresh_log("restart");
  {
    Service svc(load_weights(f.model), load_index(f.index), ReferenceCorpus::load(f.corpus), log, {}, fixed_clock());
    svc.handle("POST", "/concepts", R"({"name":"square"})");
    svc.handle("POST", "/labels", R"({"concept":"square","neurons":[{"layer":7,"channel":0}]})");
  }
  Service again(load_weights(f.model), load_index(f.index), ReferenceCorpus::load(f.corpus), log, {}, fixed_clock());
  const auto labels = body_of(again.handle("GET", "/labels"));
  CHECK(labels.at("labels").size() == 1);
}

TEST_CASE("mounted on a real HTTP server") {
  auto svc = make_service("http");
  httplib::Server server;
  svc->mount(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);
  const auto r = client.Get("/images");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(json::parse(r->body).at("images").size() == 3);
  const auto q = client.Post("/patches/fixture-a:0:0/query", square_query(), "application/json");
  REQUIRE(q);
  CHECK(q->body == svc->handle("POST", "/patches/fixture-a:0:0/query", square_query()).body);
  const auto n = client.Get("/neurons/7/0?k=1");
  REQUIRE(n);
  CHECK(json::parse(n->body).at("top_images").size() == 1);
  server.stop();
  t.join();
}
