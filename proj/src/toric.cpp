#include "toricgw/toric.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "toricgw/error.hpp"

namespace toricgw {

namespace {

std::string list_to_string(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

long dot(const IntVector& a, const IntVector& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Exact inverse of an integer matrix over Q. Returns nullopt when singular.
std::optional<std::vector<std::vector<Rational>>> invert(const std::vector<IntVector>& rows,
                                                         Rational* det_out) {
  const std::size_t d = rows.size();
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(2 * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a[i][j] = rows[i][j];
    a[i][d + i] = 1;
  }
  Rational det = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && a[pivot][col] == 0) ++pivot;
    if (pivot == d) {
      if (det_out) *det_out = 0;
      return std::nullopt;
    }
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    Rational p = a[col][col];
    det *= p;
    for (auto& x : a[col]) x /= p;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < 2 * d; ++j) a[r][j] -= f * a[col][j];
    }
  }
  if (det_out) *det_out = det;
  std::vector<std::vector<Rational>> inv(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) inv[i][j] = a[i][d + j];
  return inv;
}

}  // namespace

bool CurveClass::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](long c) { return c == 0; });
}

CurveClass operator+(const CurveClass& a, const CurveClass& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "curve class size mismatch");
  CurveClass r(a.components);
  for (std::size_t i = 0; i < r.size(); ++i) r.components[i] += b.components[i];
  return r;
}

CurveClass operator*(long k, const CurveClass& a) {
  CurveClass r(a.components);
  for (auto& c : r.components) c *= k;
  return r;
}

std::string to_string(const CurveClass& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c.components[i]);
  return s + ")";
}

int DivisorMonomial::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

DivisorMonomial operator*(const DivisorMonomial& a, const DivisorMonomial& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "monomial size mismatch");
  DivisorMonomial r(a.exponents);
  for (std::size_t i = 0; i < r.size(); ++i) r.exponents[i] += b.exponents[i];
  return r;
}

DivisorMonomial parse_monomial(std::string_view text, std::size_t n) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  DivisorMonomial m = DivisorMonomial::unit(n);
  if (s == "1") return m;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty monomial");
  std::size_t pos = 0;
  auto read_int = [&](const char* what) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos || pos - start > 9) {
      throw Error(ErrorCode::ParseError, std::string("expected ") + what + " in '" + s + "'");
    }
    return std::stoi(s.substr(start, pos - start));
  };
  while (pos < s.size()) {
    if (s[pos] != 'Z' && s[pos] != 'z') {
      throw Error(ErrorCode::ParseError, "expected Z<k> in monomial '" + s + "'");
    }
    ++pos;
    int index = read_int("divisor index");
    int exponent = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      exponent = read_int("exponent");
    }
    if (index < 1 || static_cast<std::size_t>(index) > n) {
      throw Error(ErrorCode::ParseError, "divisor index out of range in '" + s + "'");
    }
    m.exponents[index - 1] += exponent;
    if (pos < s.size()) {
      if (s[pos] != '*') throw Error(ErrorCode::ParseError, "expected '*' in monomial '" + s + "'");
      ++pos;
      if (pos == s.size()) throw Error(ErrorCode::ParseError, "dangling '*' in '" + s + "'");
    }
  }
  return m;
}

std::string to_string(const DivisorMonomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += 'Z' + std::to_string(i + 1);
    if (m.exponents[i] > 1) s += '^' + std::to_string(m.exponents[i]);
  }
  return s.empty() ? "1" : s;
}

Rational FormProduct::eval(const EvalPoint& p) const {
  if (zero) return 0;
  Rational r = 1;
  for (const auto& f : factors) r *= toricgw::eval(f, p);
  return r;
}

bool SmoothToricVariety::adjacent(int sigma, int gamma) const {
  return wall_index_.count({std::min(sigma, gamma), std::max(sigma, gamma)}) > 0;
}

int SmoothToricVariety::missing_position(int sigma, int gamma) const {
  if (!adjacent(sigma, gamma)) {
    throw Error(ErrorCode::NotAdjacent,
                "cones " + std::to_string(sigma) + " and " + std::to_string(gamma));
  }
  const auto& n = neighbors_.at(sigma);
  for (std::size_t a = 0; a < n.size(); ++a)
    if (n[a] == gamma) return static_cast<int>(a);
  throw Error(ErrorCode::NotAdjacent, "inconsistent adjacency");
}

std::optional<int> SmoothToricVariety::wall_between(int sigma, int gamma) const {
  auto it = wall_index_.find({std::min(sigma, gamma), std::max(sigma, gamma)});
  if (it == wall_index_.end()) return std::nullopt;
  return it->second;
}

bool SmoothToricVariety::in_relation_lattice(const CurveClass& c) const {
  if (c.size() != num_rays()) return false;
  for (int k = 0; k < dim(); ++k) {
    long s = 0;
    for (std::size_t i = 0; i < num_rays(); ++i) s += c.components[i] * input_.rays[i][k];
    if (s != 0) return false;
  }
  return true;
}

CurveClass SmoothToricVariety::class_from_generators(std::span<const long> coords) const {
  const auto& gens = input_.curve_generators;
  if (coords.size() != gens.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::to_string(gens.size()) + " generator coordinates");
  }
  CurveClass c(IntVector(num_rays(), 0));
  for (std::size_t g = 0; g < gens.size(); ++g) c = c + coords[g] * CurveClass(gens[g]);
  return c;
}

SmoothToricVariety validate_fan(FanInput input) {
  const int d = input.dim;
  const std::size_t n = input.rays.size();
  if (d < 1) throw Error(ErrorCode::MalformedFan, "dimension must be positive");
  if (n < static_cast<std::size_t>(d) + 1) throw Error(ErrorCode::MalformedFan, "too few rays");
  if (input.max_cones.empty()) throw Error(ErrorCode::MalformedFan, "no maximal cones");

  for (std::size_t i = 0; i < n; ++i) {
    const auto& v = input.rays[i];
    if (v.size() != static_cast<std::size_t>(d)) {
      throw Error(ErrorCode::MalformedFan, "ray " + std::to_string(i) + " has wrong length");
    }
    long g = 0;
    for (long c : v) g = std::gcd(g, c < 0 ? -c : c);
    if (g != 1) throw Error(ErrorCode::NonPrimitiveRay, "ray " + std::to_string(i));
  }

  SmoothToricVariety x;
  std::set<std::vector<int>> seen;
  for (const auto& raw : input.max_cones) {
    std::vector<int> cone = raw;
    std::sort(cone.begin(), cone.end());
    if (cone.size() != static_cast<std::size_t>(d) ||
        std::adjacent_find(cone.begin(), cone.end()) != cone.end()) {
      throw Error(ErrorCode::MalformedFan, "cone " + list_to_string(raw) + " needs " +
                                               std::to_string(d) + " distinct rays");
    }
    for (int r : cone)
      if (r < 0 || static_cast<std::size_t>(r) >= n)
        throw Error(ErrorCode::MalformedFan, "ray index out of range in " + list_to_string(raw));
    if (!seen.insert(cone).second) throw Error(ErrorCode::DuplicateCone, list_to_string(raw));
    x.cone_rays_.push_back(cone);
  }

  for (std::size_t s = 0; s < x.cone_rays_.size(); ++s) {
    const auto& cone = x.cone_rays_[s];
    std::vector<IntVector> rows;
    for (int r : cone) rows.push_back(input.rays[r]);
    Rational det;
    auto inv = invert(rows, &det);
    if (!inv || (det != 1 && det != -1)) {
      throw Error(ErrorCode::NonUnimodularCone,
                  "cone " + list_to_string(cone) + " has determinant " + to_string(det));
    }
    // Column b of the inverse is the dual vector of the b-th ray.
    std::vector<IntVector> duals(d, IntVector(d));
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k) duals[b][k] = (*inv)[k][b].get_num().get_si();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (dot(rows[a], duals[b]) != (a == b ? 1 : 0))
          throw Error(ErrorCode::NonUnimodularCone, "dual basis check failed");
    x.dual_bases_.push_back(std::move(duals));
  }

  std::map<std::vector<int>, std::vector<std::pair<int, int>>> facets;
  for (std::size_t s = 0; s < x.cone_rays_.size(); ++s) {
    for (int a = 0; a < d; ++a) {
      std::vector<int> facet;
      for (int b = 0; b < d; ++b)
        if (b != a) facet.push_back(x.cone_rays_[s][b]);
      facets[facet].emplace_back(static_cast<int>(s), a);
    }
  }
  x.neighbors_.assign(x.cone_rays_.size(), std::vector<int>(d, -1));
  for (const auto& [facet, owners] : facets) {
    if (owners.size() != 2) {
      throw Error(ErrorCode::DanglingWall, "facet " + list_to_string(facet) + " lies in " +
                                               std::to_string(owners.size()) + " maximal cone(s)");
    }
    auto [s1, a1] = owners[0];
    auto [s2, a2] = owners[1];
    x.neighbors_[s1][a1] = s2;
    x.neighbors_[s2][a2] = s1;
    Wall w;
    w.tau_rays = facet;
    w.sigma1 = s1;
    w.sigma2 = s2;
    w.l1 = x.cone_rays_[s1][a1];
    w.l2 = x.cone_rays_[s2][a2];
    x.wall_index_[{std::min(s1, s2), std::max(s1, s2)}] = static_cast<int>(x.walls_.size());
    x.walls_.push_back(std::move(w));
  }

  x.input_ = std::move(input);
  for (auto& w : x.walls_) w.curve_class = wall_curve_class(x, w);

  // Primitive collections are the minimal non-faces; they have at most d+1 rays.
  std::vector<std::uint64_t> cone_masks;
  if (n > 62) throw Error(ErrorCode::MalformedFan, "more than 62 rays are not supported");
  for (const auto& cone : x.cone_rays_) {
    std::uint64_t m = 0;
    for (int r : cone) m |= std::uint64_t{1} << r;
    cone_masks.push_back(m);
  }
  auto is_face = [&](std::uint64_t s) {
    return std::any_of(cone_masks.begin(), cone_masks.end(),
                       [s](std::uint64_t c) { return (s & ~c) == 0; });
  };
  for (std::size_t k = 2; k <= static_cast<std::size_t>(d) + 1 && k <= n; ++k) {
    std::vector<bool> select(n, false);
    std::fill(select.begin(), select.begin() + k, true);
    do {
      std::uint64_t s = 0;
      std::vector<int> members;
      for (std::size_t i = 0; i < n; ++i)
        if (select[i]) {
          s |= std::uint64_t{1} << i;
          members.push_back(static_cast<int>(i));
        }
      if (is_face(s)) continue;
      bool minimal = std::all_of(members.begin(), members.end(), [&](int r) {
        return is_face(s & ~(std::uint64_t{1} << r));
      });
      if (minimal) x.primitive_.push_back(members);
    } while (std::prev_permutation(select.begin(), select.end()));
  }
  std::sort(x.primitive_.begin(), x.primitive_.end());
  return x;
}

LinearForm weight(const SmoothToricVariety& x, int sigma, int gamma) {
  int pos = x.missing_position(sigma, gamma);
  const IntVector& u = x.dual_basis(sigma)[pos];
  LinearForm f(x.num_rays());
  for (std::size_t j = 0; j < x.num_rays(); ++j) f.coeffs[j] = dot(x.input().rays[j], u);
  return f;
}

FormProduct total_weight(const SmoothToricVariety& x, int sigma) {
  FormProduct p;
  for (int gamma : x.neighbors(sigma)) p.factors.push_back(weight(x, sigma, gamma));
  return p;
}

FormProduct class_weight(const SmoothToricVariety& x, int sigma, const DivisorMonomial& l) {
  FormProduct p;
  const auto& rays = x.cone_rays(sigma);
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (l.exponents[k] == 0) continue;
    auto it = std::find(rays.begin(), rays.end(), static_cast<int>(k));
    if (it == rays.end()) {
      p.zero = true;
      p.factors.clear();
      return p;
    }
    int gamma = x.neighbor(sigma, static_cast<int>(it - rays.begin()));
    LinearForm w = weight(x, sigma, gamma);
    for (int e = 0; e < l.exponents[k]; ++e) p.factors.push_back(w);
  }
  return p;
}

CurveClass wall_curve_class(const SmoothToricVariety& x, const Wall& wall) {
  // Write v_{l2} in the basis of sigma1; the relation v_{l1} + v_{l2} + sum a_i v_i = 0
  // needs the coefficient of v_{l1} to be -1, which smoothness guarantees.
  const auto& rays = x.cone_rays(wall.sigma1);
  const auto& duals = x.dual_basis(wall.sigma1);
  const IntVector& v2 = x.input().rays[wall.l2];
  CurveClass c(IntVector(x.num_rays(), 0));
  for (std::size_t a = 0; a < rays.size(); ++a) {
    long coeff = dot(v2, duals[a]);
    if (rays[a] == wall.l1) {
      if (coeff != -1) throw Error(ErrorCode::NonUnimodularCone, "wall relation is not primitive");
      c.components[rays[a]] = 1;
    } else {
      c.components[rays[a]] = -coeff;
    }
  }
  c.components[wall.l2] = 1;
  return c;
}

long first_chern_pairing(const SmoothToricVariety&, const CurveClass& a) {
  return std::accumulate(a.components.begin(), a.components.end(), 0L);
}

Rational phi_degree(std::span<const Rational> phi, const CurveClass& a) {
  if (phi.size() != a.size()) throw Error(ErrorCode::InvalidArgument, "support function size");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += phi[i] * a.components[i];
  return s;
}

bool validate_ample(const SmoothToricVariety& x, std::span<const Rational> phi) {
  if (phi.size() != x.num_rays()) {
    throw Error(ErrorCode::InvalidArgument, "support function needs one value per ray");
  }
  const int d = x.dim();
  for (const auto& pc : x.primitive_collections()) {
    IntVector sum(d, 0);
    Rational lhs = 0;
    for (int r : pc) {
      for (int k = 0; k < d; ++k) sum[k] += x.input().rays[r][k];
      lhs += phi[r];
    }
    std::optional<Rational> rhs;
    for (std::size_t s = 0; s < x.num_cones() && !rhs; ++s) {
      const auto& duals = x.dual_basis(static_cast<int>(s));
      std::vector<long> coeff(d);
      bool inside = true;
      for (int a = 0; a < d; ++a) {
        coeff[a] = dot(sum, duals[a]);
        if (coeff[a] < 0) inside = false;
      }
      if (!inside) continue;
      Rational value = 0;
      for (int a = 0; a < d; ++a) value += phi[x.cone_rays(static_cast<int>(s))[a]] * coeff[a];
      rhs = value;
    }
    if (!rhs) {
      throw Error(ErrorCode::VectorOutsideSupport,
                  "sum of primitive collection " + list_to_string(pc) + " lies in no cone");
    }
    if (!(lhs > *rhs)) return false;
  }
  return true;
}

Rational classical_integral(const SmoothToricVariety& x, const DivisorMonomial& l,
                            const EvalPoint& p) {
  if (l.degree() != x.dim()) return 0;
  Rational sum = 0;
  for (std::size_t s = 0; s < x.num_cones(); ++s) {
    FormProduct num = class_weight(x, static_cast<int>(s), l);
    if (num.zero) continue;
    sum += num.eval(p) * inverse(total_weight(x, static_cast<int>(s)).eval(p));
  }
  return sum;
}

Rational classical_integral(const SmoothToricVariety& x, const DivisorMonomial& l,
                            std::uint64_t seed) {
  if (l.degree() != x.dim()) return 0;
  SamplingOptions opts;
  opts.seed = seed;
  return evaluate_certified(
             x.num_rays(), [&](const EvalPoint& p) { return classical_integral(x, l, p); }, opts)
      .value;
}

}  // namespace toricgw
