#pragma once

// Small quantum products assembled from 3-point invariants, with a user-given
// cohomology basis and an explicit truncation in curve-class generators.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "toricgw/localization.hpp"

namespace toricgw {

/// Integer combination of divisor monomials.
using MonomialCombination = std::vector<std::pair<long, DivisorMonomial>>;

/// Parses "Z1*Z3-2*Z3^2", "1", "-Z2".
MonomialCombination parse_combination(std::string_view text, std::size_t n);
std::string to_string(const MonomialCombination& c);

struct CohomologyBasis {
  std::vector<DivisorMonomial> basis;
  std::vector<MonomialCombination> dual;

  std::size_t size() const { return basis.size(); }
};

/// JSON {"basis": ["1", "Z1", ...], "dual": ["Z1*Z3^2", "Z3^2", "Z1*Z3-2*Z3^2", ...]}.
CohomologyBasis parse_basis(std::string_view text, std::size_t n);

Rational integrate(const SmoothToricVariety& x, const MonomialCombination& c, const DivisorMonomial& times);

/// Pairing matrix M[i][j] = integral of basis_i * dual_j. Throws NotDual unless it is the identity.
std::vector<std::vector<Rational>> verify_basis(const SmoothToricVariety& x, const CohomologyBasis& b);

/// Curve classes a_1 g_1 + ... + a_k g_k with 0 <= a_i <= caps_i over the fan's curve generators.
struct Truncation {
  std::vector<long> caps;

  bool contains(const std::vector<long>& coords) const;
};

using GeneratorCoords = std::vector<long>;

struct QuantumPolynomial {
  /// Generator coordinates of A -> coefficients over the basis.
  std::map<GeneratorCoords, std::vector<Rational>> terms;
  Truncation truncation;

  void add(const GeneratorCoords& a, const std::vector<Rational>& coeffs);
  void prune();
  bool is_zero() const { return terms.empty(); }
};

QuantumPolynomial operator-(const QuantumPolynomial& l, const QuantumPolynomial& r);

class QuantumRing {
 public:
  QuantumRing(const SmoothToricVariety& x, CohomologyBasis basis, Truncation truncation, GwOptions opts = {});

  const SmoothToricVariety& variety() const { return x_; }
  const CohomologyBasis& basis() const { return basis_; }
  const Truncation& truncation() const { return truncation_; }

  /// Coordinates of a cohomology class over the basis.
  std::vector<Rational> coordinates(const DivisorMonomial& m) const;

  /// alpha * beta up to the truncation.
  QuantumPolynomial product(const DivisorMonomial& alpha, const DivisorMonomial& beta);

  /// Left-to-right product of the factors, starting from the class of factors[0].
  QuantumPolynomial iterated(const std::vector<DivisorMonomial>& factors);

  /// Invariant Phi^A(alpha, beta, gamma), memoised.
  Rational three_point(const CurveClass& a, const DivisorMonomial& alpha, const DivisorMonomial& beta,
                       const DivisorMonomial& gamma);

 private:
  const SmoothToricVariety& x_;
  CohomologyBasis basis_;
  Truncation truncation_;
  GwOptions opts_;
  std::vector<std::vector<Rational>> gram_;  // integral of dual_i * dual_k
  std::map<std::vector<long>, GraphSum> sums_;
  std::map<std::string, Rational> invariants_;
  std::map<std::pair<DivisorMonomial, DivisorMonomial>, QuantumPolynomial> products_;
};

/// Terms of a relation side: integer * q^A * (factor_1 * ... * factor_k).
struct RelationTerm {
  long coefficient = 1;
  GeneratorCoords q;
  std::vector<DivisorMonomial> factors;
};

struct Relation {
  std::vector<RelationTerm> lhs;
  std::vector<RelationTerm> rhs;
};

/// "Z3*Z3*Z3 = Z2*Z2*q[0,1]"; `*` is the quantum product, factors are Zi, Zi^k,
/// q[a,b,...] or integers, terms are joined by + and -.
Relation parse_relation(std::string_view text, std::size_t n, std::size_t generators);

QuantumPolynomial evaluate_side(QuantumRing& ring, const std::vector<RelationTerm>& side);

struct RelationReport {
  QuantumPolynomial lhs;
  QuantumPolynomial rhs;
  QuantumPolynomial residual;
  bool holds = false;
};

RelationReport verify_relation(QuantumRing& ring, const Relation& relation);

}  // namespace toricgw
