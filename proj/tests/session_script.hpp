#pragma once

// Scripted browser session against the service, shared by the unit tests
// (in-process) and the acceptance binary (over HTTP).

#include <cmath>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <string>

#include "neuroscope/binary_mask.hpp"
#include "neuroscope/service.hpp"
#include "neuroscope/synthetic.hpp"

namespace session {

using nlohmann::json;

struct Reply {
  int status = 0;
  std::string content_type;
  std::string body;
};

using Transport = std::function<Reply(const std::string& method, const std::string& path, const std::string& body)>;

inline Transport in_process(neuroscope::Service& service) {
  return [&service](const std::string& method, const std::string& target, const std::string& body) {
    neuroscope::QueryParams params;
    std::string path = target;
    if (auto q = target.find('?'); q != std::string::npos) {
      path = target.substr(0, q);
      std::stringstream ss(target.substr(q + 1));
      std::string kv;
      while (std::getline(ss, kv, '&')) {
        const auto eq = kv.find('=');
        params[kv.substr(0, eq)] = eq == std::string::npos ? "" : kv.substr(eq + 1);
      }
    }
    const auto r = service.handle(method, path, body, params);
    return Reply{r.status, r.content_type, r.body};
  };
}

inline json mask_json(const neuroscope::BinaryMask& m) {
  return {{"width", m.width()}, {"height", m.height()}, {"rle", m.to_rle()}};
}

inline neuroscope::BinaryMask square_mask_a() {
  const auto f = neuroscope::synthetic::fixture_images()[0];
  return neuroscope::synthetic::shape_mask(f.shapes[0], 0, 0, 32, 32);
}

inline neuroscope::BinaryMask circle_mask_b() {
  const auto f = neuroscope::synthetic::fixture_images()[1];
  for (const auto& s : f.shapes)
    if (s.kind == neuroscope::synthetic::Shape::Kind::Circle) return neuroscope::synthetic::shape_mask(s, 0, 0, 32, 32);
  return neuroscope::BinaryMask(32, 32);
}

/// Replaces every timestamp-valued field with a fixed token.
inline void canonicalize(json& j) {
  if (j.is_object()) {
    for (auto& [key, value] : j.items()) {
      if ((key == "created_at" || key == "at" || key == "timestamp") && value.is_string())
        value = "<timestamp>";
      else
        canonicalize(value);
    }
  } else if (j.is_array()) {
    for (auto& v : j) canonicalize(v);
  }
}

inline json parse_body(const Reply& r) {
  if (r.content_type.rfind("application/json", 0) == 0) return json::parse(r.body);
  if (r.content_type.rfind("application/x-ndjson", 0) == 0) {
    json lines = json::array();
    std::stringstream ss(r.body);
    std::string line;
    while (std::getline(ss, line))
      if (!line.empty()) lines.push_back(json::parse(line));
    return lines;
  }
  return {{"content_type", r.content_type}, {"bytes", r.body.size()}};
}

inline json labels_from_matches(const json& query, const std::string& concept_id, const std::string& patch) {
  json neurons = json::array();
  for (const auto& m : query.at("matches"))
    neurons.push_back({{"layer", m.at("layer")}, {"channel", m.at("channel")}, {"iou", m.at("iou")}});
  return {{"concept", concept_id}, {"neurons", neurons}, {"source_patch", patch}};
}

/// Runs the scripted session and returns the canonicalized transcript.
inline json run(const Transport& send) {
  json transcript = json::array();
  auto step = [&](const std::string& method, const std::string& path, const json& body = nullptr) {
    const std::string text = body.is_null() ? std::string() : body.dump();
    const Reply r = send(method, path, text);
    json response = parse_body(r);
    json entry{{"method", method}, {"path", path}, {"status", r.status}, {"response", response}};
    if (!body.is_null()) entry["request"] = body;
    canonicalize(entry);
    transcript.push_back(entry);
    return response;
  };
  const std::string pa = "fixture-a:0:0", pb = "fixture-b:0:0";
  const json square{{"mask", mask_json(square_mask_a())}};
  const json circle{{"mask", mask_json(circle_mask_b())}};

  step("GET", "/images");
  step("GET", "/images/fixture-a");
  step("GET", "/images/fixture-a/patches");
  step("POST", "/patches/" + pa + "/select");
  step("GET", "/patches/" + pa + "/report/activation");
  step("POST", "/concepts", {{"name", "Square"}});
  step("POST", "/concepts", {{"name", "circle"}});
  step("POST", "/concepts", {{"name", "square"}});
  const json sq = step("POST", "/patches/" + pa + "/query", square);
  step("POST", "/labels", labels_from_matches(sq, "square", pa));
  const json ci = step("POST", "/patches/" + pb + "/query", circle);
  step("POST", "/labels", labels_from_matches(ci, "circle", pb));
  step("GET", "/neurons/7/0?k=2&patch_id=" + pa);
  step("GET", "/embedding");
  step("GET", "/concepts");
  step("GET", "/labels");
  step("GET", "/patches/" + pa + "/report/activation");
  step("POST", "/patches/" + pa + "/report/region", square);
  step("POST", "/patches/" + pa + "/query", json{{"mask", {{"width", 32}, {"height", 32}, {"rle", {5, 3}}}}});
  step("GET", "/labels/log");
  return transcript;
}

/// Structural equality with relative tolerance on floating-point numbers.
inline bool close(const json& a, const json& b, std::string& where, const std::string& at = "$") {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    if (std::abs(x - y) <= 1e-9 * std::max(1.0, std::max(std::abs(x), std::abs(y)))) return true;
    where = at;
    return false;
  }
  if (a.type() != b.type() || a.size() != b.size()) {
    where = at;
    return false;
  }
  if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!close(a[i], b[i], where, at + "[" + std::to_string(i) + "]")) return false;
    return true;
  }
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) {
        where = at + "." + it.key();
        return false;
      }
      if (!close(it.value(), b.at(it.key()), where, at + "." + it.key())) return false;
    }
    return true;
  }
  if (a != b) where = at;
  return a == b;
}

}  // namespace session
