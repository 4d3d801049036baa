#include "toricgw/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>
#include <sstream>

#include "toricgw/error.hpp"

namespace toricgw {

Rational make_rational(long p, long q) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) {
      return std::isdigit(c);
    });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class p(num), q(den);
  if (q == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& x, long k) {
  if (k < 0) {
    if (x == 0) throw Error(ErrorCode::ZeroToNegativePower, "0^" + std::to_string(k));
    Rational inv = 1 / x;
    return pow(inv, -k);
  }
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(result.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(k));
  result.canonicalize();
  return result;
}

Rational inverse(const Rational& x) {
  if (x == 0) throw Error(ErrorCode::DegeneratePoint, "vanishing denominator");
  return 1 / x;
}

LinearForm LinearForm::variable(std::size_t n, std::size_t j) {
  LinearForm f(n);
  f.coeffs.at(j) = 1;
  return f;
}

bool LinearForm::is_zero() const {
  return scale == 0 || std::all_of(coeffs.begin(), coeffs.end(), [](long c) { return c == 0; });
}

bool operator==(const LinearForm& a, const LinearForm& b) {
  if (a.size() != b.size()) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a.scale * a.coeffs[j] != b.scale * b.coeffs[j]) return false;
  }
  return true;
}

namespace {

LinearForm combine(const LinearForm& a, const LinearForm& b, long sign) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "linear form size mismatch");
  if (a.scale == b.scale) {
    LinearForm r(a.size());
    r.scale = a.scale;
    for (std::size_t j = 0; j < a.size(); ++j) r.coeffs[j] = a.coeffs[j] + sign * b.coeffs[j];
    return r;
  }
  // Bring both to a common integer numerator over lcm of the denominators.
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), a.scale.get_den_mpz_t(), b.scale.get_den_mpz_t());
  mpz_class fa = a.scale.get_num() * (den / a.scale.get_den());
  mpz_class fb = b.scale.get_num() * (den / b.scale.get_den());
  LinearForm r(a.size());
  r.scale = Rational(1, den);
  r.scale.canonicalize();
  for (std::size_t j = 0; j < a.size(); ++j) {
    mpz_class c = fa * a.coeffs[j] + sign * fb * b.coeffs[j];
    if (!c.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "linear form overflow");
    r.coeffs[j] = c.get_si();
  }
  return r;
}

}  // namespace

LinearForm operator+(const LinearForm& a, const LinearForm& b) { return combine(a, b, 1); }
LinearForm operator-(const LinearForm& a, const LinearForm& b) { return combine(a, b, -1); }

std::string to_string(const LinearForm& f) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t j = 0; j < f.size(); ++j) {
    long c = f.coeffs[j];
    if (c == 0) continue;
    if (c < 0) out << '-';
    else if (!first) out << '+';
    if (c != 1 && c != -1) out << (c < 0 ? -c : c) << '*';
    out << 'w' << (j + 1);
    first = false;
  }
  std::string body = first ? "0" : out.str();
  if (f.scale == 1 || first) return body;
  if (f.scale.get_num() == 1) return "(" + body + ")/" + f.scale.get_den().get_str();
  return to_string(f.scale) + "*(" + body + ")";
}

EvalPoint sample_point(std::size_t n, std::uint64_t seed, std::uint64_t bound) {
  if (bound < n * n || bound == 0) {
    throw Error(ErrorCode::InvalidArgument, "sample bound must be at least n^2");
  }
  // mt19937_64's output sequence is fixed by the standard; the reduction to
  // [1, bound] is done here so the points are identical on every platform.
  std::mt19937_64 engine(seed);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::vector<std::uint64_t> drawn;
  drawn.reserve(n);
  while (drawn.size() < n) {
    std::uint64_t r = engine();
    if (r >= limit) continue;
    std::uint64_t v = r % bound + 1;
    if (std::find(drawn.begin(), drawn.end(), v) != drawn.end()) continue;
    drawn.push_back(v);
  }
  EvalPoint p;
  p.seed = seed;
  p.values.reserve(n);
  for (auto v : drawn) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    p.values.emplace_back(z);
  }
  return p;
}

Rational eval(const LinearForm& form, const EvalPoint& p) {
  if (form.size() != p.size()) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  Rational acc = 0;
  for (std::size_t j = 0; j < form.size(); ++j) {
    if (form.coeffs[j] != 0) acc += p.values[j] * form.coeffs[j];
  }
  return acc * form.scale;
}

Rational certify_constant(std::span<const Rational> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "certification needs at least two evaluations");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] != values[0]) {
      std::string list;
      for (const auto& v : values) list += (list.empty() ? "" : ", ") + to_string(v);
      throw Error(ErrorCode::NotConstant, "evaluations disagree: [" + list + "]");
    }
  }
  return values[0];
}

CertifiedValue evaluate_certified(std::size_t n, const std::function<Rational(const EvalPoint&)>& f,
                                  const SamplingOptions& opts) {
  if (opts.points < 2) throw Error(ErrorCode::InvalidArgument, "need at least two evaluation points");
  CertifiedValue out;
  int failures = 0;
  std::uint64_t seed = opts.seed;
  while (static_cast<int>(out.values.size()) < opts.points) {
    EvalPoint p = sample_point(n, seed, opts.bound);
    try {
      out.values.push_back(f(p));
      out.seeds.push_back(seed);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegeneratePoint && e.code() != ErrorCode::ZeroToNegativePower) throw;
      if (++failures > opts.max_attempts) {
        throw Error(ErrorCode::DegeneratePoint,
                    "no usable evaluation point after " + std::to_string(failures) + " attempts");
      }
    }
    ++seed;
  }
  out.value = certify_constant(out.values);
  return out;
}

}  // namespace toricgw
