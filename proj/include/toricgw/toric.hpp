#pragma once

// Smooth complete fans and the combinatorial data the localization formula
// reads off them: dual bases, walls, torus weights and invariant-curve classes.

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "toricgw/rational.hpp"

namespace toricgw {

using IntVector = std::vector<long>;

struct FanInput {
  int dim = 0;
  std::vector<IntVector> rays;
  std::vector<std::vector<int>> max_cones;  // 0-based ray indices
  std::optional<std::vector<Rational>> ample;
  std::string name;
  /// Optional named generators of the curve classes, used for `gen:` and
  /// `q[...]` coordinates. Each entry is a vector of length n in R(Sigma).
  std::vector<IntVector> curve_generators;
};

/// A curve class in the redundant coordinates lambda_i = A . D_i.
struct CurveClass {
  IntVector components;

  CurveClass() = default;
  explicit CurveClass(IntVector c) : components(std::move(c)) {}

  std::size_t size() const { return components.size(); }
  bool is_zero() const;
  auto operator<=>(const CurveClass&) const = default;
};

CurveClass operator+(const CurveClass& a, const CurveClass& b);
CurveClass operator*(long k, const CurveClass& a);
std::string to_string(const CurveClass& c);

/// Z_1^{l_1} ... Z_n^{l_n}.
struct DivisorMonomial {
  std::vector<int> exponents;

  DivisorMonomial() = default;
  explicit DivisorMonomial(std::vector<int> e) : exponents(std::move(e)) {}
  static DivisorMonomial unit(std::size_t n) { return DivisorMonomial(std::vector<int>(n, 0)); }

  int degree() const;
  std::size_t size() const { return exponents.size(); }
  auto operator<=>(const DivisorMonomial&) const = default;
};

DivisorMonomial operator*(const DivisorMonomial& a, const DivisorMonomial& b);

/// Parses "1", "Z3", "Z1*Z3^2" (1-based divisor indices) for a fan with n rays.
DivisorMonomial parse_monomial(std::string_view text, std::size_t n);
std::string to_string(const DivisorMonomial& m);

struct Wall {
  std::vector<int> tau_rays;  // sorted, d-1 entries
  int sigma1 = -1;
  int sigma2 = -1;
  int l1 = -1;  // ray of sigma1 not in tau
  int l2 = -1;  // ray of sigma2 not in tau
  CurveClass curve_class;
};

/// Product of linear forms, or the zero product.
struct FormProduct {
  bool zero = false;
  std::vector<LinearForm> factors;

  Rational eval(const EvalPoint& p) const;
};

class SmoothToricVariety {
 public:
  const FanInput& input() const { return input_; }
  int dim() const { return input_.dim; }
  std::size_t num_rays() const { return input_.rays.size(); }
  std::size_t num_cones() const { return cone_rays_.size(); }
  const std::string& name() const { return input_.name; }

  /// Rays of a maximal cone in ascending index order.
  const std::vector<int>& cone_rays(int sigma) const { return cone_rays_.at(sigma); }
  /// u_1..u_d with <v_{cone_rays[a]}, u_b> = delta_ab.
  const std::vector<IntVector>& dual_basis(int sigma) const { return dual_bases_.at(sigma); }
  /// Neighbouring maximal cone across the facet that omits cone_rays(sigma)[position].
  int neighbor(int sigma, int position) const { return neighbors_.at(sigma).at(position); }
  const std::vector<int>& neighbors(int sigma) const { return neighbors_.at(sigma); }
  bool adjacent(int sigma, int gamma) const;
  /// Position in cone_rays(sigma) of the ray that is not in gamma.
  int missing_position(int sigma, int gamma) const;

  const std::vector<Wall>& walls() const { return walls_; }
  std::optional<int> wall_between(int sigma, int gamma) const;

  const std::vector<std::vector<int>>& primitive_collections() const { return primitive_; }

  /// Sum_i lambda_i v_i == 0.
  bool in_relation_lattice(const CurveClass& c) const;

  /// Curve class of a point given in generator coordinates.
  CurveClass class_from_generators(std::span<const long> coords) const;

 private:
  friend SmoothToricVariety validate_fan(FanInput input);

  FanInput input_;
  std::vector<std::vector<int>> cone_rays_;
  std::vector<std::vector<IntVector>> dual_bases_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<Wall> walls_;
  std::map<std::pair<int, int>, int> wall_index_;
  std::vector<std::vector<int>> primitive_;
};

/// Checks primitivity, smoothness, distinctness and that every facet is a wall;
/// derives dual bases, walls, curve classes and primitive collections.
SmoothToricVariety validate_fan(FanInput input);

/// omega^sigma_gamma: the torus weight of the invariant curve joining sigma and
/// gamma, seen from the fixed point sigma. Throws NotAdjacent.
LinearForm weight(const SmoothToricVariety& x, int sigma, int gamma);

/// Product of the d weights omega^sigma_gamma over the neighbours gamma.
FormProduct total_weight(const SmoothToricVariety& x, int sigma);

/// Restriction of Z^l to the fixed point sigma (zero if some Z_k with l_k > 0
/// has v_k outside sigma).
FormProduct class_weight(const SmoothToricVariety& x, int sigma, const DivisorMonomial& l);

CurveClass wall_curve_class(const SmoothToricVariety& x, const Wall& wall);

long first_chern_pairing(const SmoothToricVariety& x, const CurveClass& a);

/// Sum_i lambda_i phi(v_i).
Rational phi_degree(std::span<const Rational> phi, const CurveClass& a);

/// Strict convexity of phi across every primitive collection.
bool validate_ample(const SmoothToricVariety& x, std::span<const Rational> phi);

/// Integral of Z^l over X by fixed-point residues, evaluated at one point.
/// Zero unless deg l == dim.
Rational classical_integral(const SmoothToricVariety& x, const DivisorMonomial& l,
                            const EvalPoint& p);

/// classical_integral at three sample points, certified constant.
Rational classical_integral(const SmoothToricVariety& x, const DivisorMonomial& l,
                            std::uint64_t seed = 1);

}  // namespace toricgw
