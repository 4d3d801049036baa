#include "toricgw/fan_io.hpp"

#include <fstream>
#include <sstream>

#include "toricgw/error.hpp"

namespace toricgw {

using nlohmann::json;

namespace {

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return doc.at(key);
}

IntVector int_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, what + " must be an array");
  IntVector v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error(ErrorCode::ParseError, what + " entries must be integers");
    v.push_back(x.get<long>());
  }
  return v;
}

}  // namespace

FanInput parse_fan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "fan document must be an object");

  FanInput in;
  const json& dim = field(doc, "dim");
  if (!dim.is_number_integer()) throw Error(ErrorCode::ParseError, "dim must be an integer");
  in.dim = dim.get<int>();

  const json& rays = field(doc, "rays");
  if (!rays.is_array()) throw Error(ErrorCode::ParseError, "rays must be an array");
  for (const auto& r : rays) in.rays.push_back(int_vector(r, "ray"));

  const json& cones = field(doc, "max_cones");
  if (!cones.is_array()) throw Error(ErrorCode::ParseError, "max_cones must be an array");
  for (const auto& c : cones) {
    std::vector<int> cone;
    for (long i : int_vector(c, "cone")) cone.push_back(static_cast<int>(i));
    in.max_cones.push_back(std::move(cone));
  }

  if (doc.contains("ample") && !doc.at("ample").is_null()) {
    std::vector<Rational> phi;
    for (const auto& x : doc.at("ample")) {
      if (x.is_string()) phi.push_back(parse_rational(x.get<std::string>()));
      else if (x.is_number_integer()) phi.emplace_back(x.get<long>());
      else throw Error(ErrorCode::ParseError, "ample entries must be \"p/q\" strings");
    }
    in.ample = std::move(phi);
  }
  if (doc.contains("name")) in.name = doc.at("name").get<std::string>();
  if (doc.contains("curve_generators")) {
    for (const auto& g : doc.at("curve_generators")) in.curve_generators.push_back(int_vector(g, "generator"));
  }
  return in;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

FanInput load_fan(const std::string& path) { return parse_fan(read_file(path)); }

json fan_to_json(const FanInput& in) {
  json doc;
  doc["dim"] = in.dim;
  doc["rays"] = in.rays;
  doc["max_cones"] = in.max_cones;
  if (in.ample) {
    json a = json::array();
    for (const auto& x : *in.ample) a.push_back(to_string(x));
    doc["ample"] = a;
  }
  if (!in.name.empty()) doc["name"] = in.name;
  if (!in.curve_generators.empty()) doc["curve_generators"] = in.curve_generators;
  return doc;
}

}  // namespace toricgw
