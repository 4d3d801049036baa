#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "toricgw/cache.hpp"
#include "toricgw/fan_io.hpp"

using namespace toricgw;

namespace {

FanInput raw(const std::string& name) {
  return load_fan(std::string(TORICGW_DATA_DIR) + "/fans/" + name + ".json");
}

ErrorCode parse_code(const std::string& text) {
  try {
    parse_fan(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse succeeded: " << text);
  return ErrorCode::InvalidArgument;
}

struct TempFile {
  std::string path;
  TempFile() : path((std::filesystem::temp_directory_path() / "toricgw_test_cache.jsonl").string()) {
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("fan documents round trip") {
  for (const auto& name : {"p1", "p2", "p3", "f1", "bundle_m2", "bundle_m3"}) {
    auto in = raw(name);
    auto again = parse_fan(fan_to_json(in).dump());
    CHECK(again.dim == in.dim);
    CHECK(again.rays == in.rays);
    CHECK(again.max_cones == in.max_cones);
    CHECK(again.ample == in.ample);
    CHECK(again.name == in.name);
    CHECK(again.curve_generators == in.curve_generators);
    CHECK(fan_to_json(again) == fan_to_json(in));
  }
}

TEST_CASE("ample entries may be integers or rational strings") {
  auto in = parse_fan(R"({"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]], "ample": [1, "1/2"]})");
  REQUIRE(in.ample);
  CHECK((*in.ample)[0] == 1);
  CHECK((*in.ample)[1] == make_rational(1, 2));
  CHECK_FALSE(parse_fan(R"({"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]})").ample);
}

TEST_CASE("malformed fan documents") {
  CHECK(parse_code(read_file(std::string(TORICGW_TEST_DATA_DIR) + "/malformed.json")) == ErrorCode::ParseError);
  CHECK(parse_code("[]") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"rays": [[1]], "max_cones": [[0]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim": "2", "rays": [], "max_cones": []})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim": 1, "rays": [[1.5]], "max_cones": [[0]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]], "ample": ["x", 0]})") ==
        ErrorCode::ParseError);
  CHECK_THROWS_AS(read_file("/nonexistent/fan.json"), Error);
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("cache keys") {
  auto in = raw("bundle_m2");
  auto x = validate_fan(in);
  auto a = fixtures::gen(x, {0, 1});
  SamplingOptions s;
  auto k1 = cache_key(in, a, fixtures::insertions(x, {"Z3", "Z3", "Z4*Z5"}), s);
  auto k2 = cache_key(in, a, fixtures::insertions(x, {"Z4*Z5", "Z3", "Z3"}), s);
  CHECK(k1 == k2);
  CHECK(fan_hash(in).size() == 16);
  CHECK(k1.rfind(fan_hash(in), 0) == 0);
  CHECK(k1 != cache_key(in, fixtures::gen(x, {1, 0}), fixtures::insertions(x, {"Z3", "Z3", "Z4*Z5"}), s));
  SamplingOptions t = s;
  t.seed = s.seed + 1;
  CHECK(k1 != cache_key(in, a, fixtures::insertions(x, {"Z3", "Z3", "Z4*Z5"}), t));
  CHECK(fan_hash(in) != fan_hash(raw("bundle_m3")));
}

TEST_CASE("cache store and lookup") {
  TempFile tmp;
  InvariantCache cache(tmp.path);
  CHECK_FALSE(cache.lookup("k"));
  cache.store("k", nlohmann::json{{"value", "-1"}});
  cache.store("other", nlohmann::json{{"value", "3"}});
  auto hit = cache.lookup("k");
  REQUIRE(hit);
  CHECK(hit->at("value") == "-1");
  cache.store("k", nlohmann::json{{"value", "-2"}});
  CHECK(cache.lookup("k")->at("value") == "-2");
  {
    std::ofstream torn(tmp.path, std::ios::app);
    torn << "{\"key\": \"k\", \"res";
  }
  CHECK(cache.lookup("k")->at("value") == "-2");
  std::ifstream in(tmp.path);
  std::string line;
  std::getline(in, line);
  auto rec = nlohmann::json::parse(line);
  CHECK(rec.at("version") == kToolVersion);
  CHECK(rec.contains("timestamp"));
}
