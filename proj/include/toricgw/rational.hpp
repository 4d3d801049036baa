#pragma once

// Exact rational values, integer linear forms in the torus weights w_1..w_n,
// and the generic-point machinery used to evaluate localization sums.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace toricgw {

/// Arbitrary-precision rational; gmp keeps it canonical (reduced, q > 0).
using Rational = mpq_class;

/// p/q in canonical form; q must be nonzero.
Rational make_rational(long p, long q);

/// Reduced "p/q" form, "/q" omitted when q == 1.
std::string to_string(const Rational& x);

/// Accepts "p", "p/q" and "-p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// Exact power with integer exponent. Throws ZeroToNegativePower for 0^k, k < 0.
Rational pow(const Rational& x, long k);

/// 1/x, throwing DegeneratePoint when x vanishes. Every division in the
/// evaluation path goes through here so a bad sample point can be retried.
Rational inverse(const Rational& x);

/// scale * (c_1 w_1 + ... + c_n w_n).
struct LinearForm {
  std::vector<long> coeffs;
  Rational scale{1};

  LinearForm() = default;
  explicit LinearForm(std::size_t n) : coeffs(n, 0) {}
  LinearForm(std::vector<long> c, Rational s = 1) : coeffs(std::move(c)), scale(std::move(s)) {}

  /// Coordinate form w_j (0-based j).
  static LinearForm variable(std::size_t n, std::size_t j);

  std::size_t size() const { return coeffs.size(); }
  bool is_zero() const;

  friend bool operator==(const LinearForm& a, const LinearForm& b);
};

/// a + b as forms; the result carries scale 1 unless both scales agree.
LinearForm operator+(const LinearForm& a, const LinearForm& b);
LinearForm operator-(const LinearForm& a, const LinearForm& b);

/// Human-readable rendering like "(w1-w2-3*w5)/2".
std::string to_string(const LinearForm& f);

struct EvalPoint {
  std::vector<Rational> values;
  std::uint64_t seed = 0;

  std::size_t size() const { return values.size(); }
};

inline constexpr std::uint64_t kDefaultSampleBound = std::uint64_t{1} << 62;

/// n distinct integers drawn uniformly from [1, bound], a pure function of
/// (n, seed, bound). Requires bound >= n^2.
EvalPoint sample_point(std::size_t n, std::uint64_t seed,
                       std::uint64_t bound = kDefaultSampleBound);

Rational eval(const LinearForm& form, const EvalPoint& p);

struct SamplingOptions {
  int points = 3;
  std::uint64_t seed = 1;
  std::uint64_t bound = kDefaultSampleBound;
  int max_attempts = 32;
};

struct CertifiedValue {
  Rational value;
  std::vector<std::uint64_t> seeds;
  std::vector<Rational> values;
};

/// Evaluates f at `points` sample points drawn from consecutive seeds starting
/// at opts.seed. A point on which f hits a vanishing denominator is skipped and
/// the next seed tried; more than max_attempts skips is a DegeneratePoint error.
CertifiedValue evaluate_certified(std::size_t n, const std::function<Rational(const EvalPoint&)>& f,
                                  const SamplingOptions& opts);

/// Returns the common value of a list of evaluations taken at distinct points.
/// Throws NotConstant when they disagree and InvalidArgument for fewer than two.
Rational certify_constant(std::span<const Rational> values);

}  // namespace toricgw
