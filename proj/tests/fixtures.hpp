#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "toricgw/error.hpp"
#include "toricgw/fan_io.hpp"
#include "toricgw/localization.hpp"
#include "toricgw/toric.hpp"

namespace fixtures {

using namespace toricgw;

inline SmoothToricVariety fan(const std::string& name) {
  return validate_fan(load_fan(std::string(TORICGW_DATA_DIR) + "/fans/" + name + ".json"));
}

inline std::string basis_path(const std::string& name) {
  return std::string(TORICGW_DATA_DIR) + "/bases/" + name + ".json";
}

inline DivisorMonomial mono(const SmoothToricVariety& x, const std::string& text) {
  return parse_monomial(text, x.num_rays());
}

inline std::vector<Insertion> insertions(const SmoothToricVariety& x, const std::vector<std::string>& texts) {
  std::vector<DivisorMonomial> ms;
  for (const auto& t : texts) ms.push_back(mono(x, t));
  return group_insertions(ms);
}

inline CurveClass gen(const SmoothToricVariety& x, std::vector<long> coords) {
  return x.class_from_generators(coords);
}

/// Maximal cone with exactly these (0-based) rays.
inline int cone(const SmoothToricVariety& x, std::vector<int> rays) {
  std::sort(rays.begin(), rays.end());
  for (std::size_t s = 0; s < x.num_cones(); ++s)
    if (x.cone_rays(static_cast<int>(s)) == rays) return static_cast<int>(s);
  throw Error(ErrorCode::InvalidArgument, "no such cone");
}

/// Value of sum_j c_j w_j at p, written out independently of LinearForm.
inline Rational w(const EvalPoint& p, std::vector<long> c) {
  Rational r = 0;
  for (std::size_t j = 0; j < c.size(); ++j) r += c[j] * p.values[j];
  return r;
}

/// A small point with distinct integer coordinates, away from the sampler.
inline EvalPoint point(std::vector<long> values) {
  EvalPoint p;
  for (long v : values) p.values.emplace_back(v);
  return p;
}

}  // namespace fixtures
