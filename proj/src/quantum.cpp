#include "toricgw/quantum.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "toricgw/error.hpp"

namespace toricgw {

namespace {

std::string strip(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  return s;
}

// Splits at top-level '+'/'-' keeping the sign with each piece.
std::vector<std::pair<long, std::string>> signed_terms(const std::string& s) {
  std::vector<std::pair<long, std::string>> out;
  long sign = 1;
  std::string cur;
  int depth = 0;
  bool pending = false;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if ((c == '+' || c == '-') && depth == 0) {
      if (!cur.empty()) out.emplace_back(sign, cur);
      else if (pending) throw Error(ErrorCode::ParseError, "doubled sign in '" + s + "'");
      cur.clear();
      sign = c == '-' ? -1 : 1;
      pending = true;
      continue;
    }
    cur += c;
  }
  if (cur.empty()) throw Error(ErrorCode::ParseError, "empty term in '" + s + "'");
  out.emplace_back(sign, cur);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (const auto& piece : out)
    if (piece.empty()) throw Error(ErrorCode::ParseError, "empty factor in '" + s + "'");
  return out;
}

bool is_integer(const std::string& s) {
  return !s.empty() && s.size() < 18 &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

MonomialCombination parse_combination(std::string_view text, std::size_t n) {
  MonomialCombination out;
  for (auto& [sign, term] : signed_terms(strip(text))) {
    long coeff = sign;
    DivisorMonomial m = DivisorMonomial::unit(n);
    for (const auto& f : split(term, '*')) {
      if (is_integer(f)) coeff *= std::stol(f);
      else m = m * parse_monomial(f, n);
    }
    out.emplace_back(coeff, m);
  }
  return out;
}

std::string to_string(const MonomialCombination& c) {
  std::string s;
  for (const auto& [k, m] : c) {
    std::string mono = to_string(m);
    long a = k < 0 ? -k : k;
    if (s.empty()) s += k < 0 ? "-" : "";
    else s += k < 0 ? "-" : "+";
    if (mono == "1") s += std::to_string(a);
    else s += (a == 1 ? "" : std::to_string(a) + "*") + mono;
  }
  return s.empty() ? "0" : s;
}

CohomologyBasis parse_basis(std::string_view text, std::size_t n) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.contains("basis") || !doc.contains("dual")) throw Error(ErrorCode::ParseError, "basis needs 'basis' and 'dual'");
  CohomologyBasis b;
  for (const auto& s : doc.at("basis")) b.basis.push_back(parse_monomial(s.get<std::string>(), n));
  for (const auto& s : doc.at("dual")) b.dual.push_back(parse_combination(s.get<std::string>(), n));
  if (b.basis.size() != b.dual.size()) throw Error(ErrorCode::ParseError, "basis and dual differ in length");
  return b;
}

Rational integrate(const SmoothToricVariety& x, const MonomialCombination& c, const DivisorMonomial& times) {
  Rational r = 0;
  for (const auto& [k, m] : c) r += k * classical_integral(x, m * times);
  return r;
}

std::vector<std::vector<Rational>> verify_basis(const SmoothToricVariety& x, const CohomologyBasis& b) {
  const std::size_t r = b.size();
  std::vector<std::vector<Rational>> pairing(r, std::vector<Rational>(r));
  bool identity = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      pairing[i][j] = integrate(x, b.dual[j], b.basis[i]);
      if (pairing[i][j] != (i == j ? 1 : 0)) identity = false;
    }
  if (!identity) {
    std::string rows;
    for (const auto& row : pairing) {
      rows += "[";
      for (std::size_t j = 0; j < r; ++j) rows += (j ? "," : "") + to_string(row[j]);
      rows += "]";
    }
    throw Error(ErrorCode::NotDual, "pairing matrix " + rows);
  }
  return pairing;
}

bool Truncation::contains(const std::vector<long>& coords) const {
  if (coords.size() != caps.size()) return false;
  for (std::size_t i = 0; i < caps.size(); ++i)
    if (coords[i] < 0 || coords[i] > caps[i]) return false;
  return true;
}

void QuantumPolynomial::add(const GeneratorCoords& a, const std::vector<Rational>& coeffs) {
  auto [it, fresh] = terms.try_emplace(a, coeffs);
  if (!fresh)
    for (std::size_t k = 0; k < coeffs.size(); ++k) it->second[k] += coeffs[k];
}

void QuantumPolynomial::prune() {
  std::erase_if(terms, [](const auto& kv) {
    return std::all_of(kv.second.begin(), kv.second.end(), [](const Rational& c) { return c == 0; });
  });
}

QuantumPolynomial operator-(const QuantumPolynomial& l, const QuantumPolynomial& r) {
  QuantumPolynomial out = l;
  for (const auto& [a, v] : r.terms) {
    std::vector<Rational> neg(v);
    for (auto& c : neg) c = -c;
    out.add(a, neg);
  }
  out.prune();
  return out;
}

QuantumRing::QuantumRing(const SmoothToricVariety& x, CohomologyBasis basis, Truncation truncation, GwOptions opts)
    : x_(x), basis_(std::move(basis)), truncation_(std::move(truncation)), opts_(std::move(opts)) {
  if (truncation_.caps.size() != x_.input().curve_generators.size()) {
    throw Error(ErrorCode::InvalidArgument, "truncation needs one cap per curve generator");
  }
  verify_basis(x_, basis_);
  const std::size_t r = basis_.size();
  gram_.assign(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      Rational s = 0;
      for (const auto& [c, m] : basis_.dual[k]) s += c * integrate(x_, basis_.dual[i], m);
      gram_[i][k] = s;
    }
}

std::vector<Rational> QuantumRing::coordinates(const DivisorMonomial& m) const {
  std::vector<Rational> y(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) y[k] = integrate(x_, basis_.dual[k], m);
  return y;
}

Rational QuantumRing::three_point(const CurveClass& a, const DivisorMonomial& alpha, const DivisorMonomial& beta,
                                  const DivisorMonomial& gamma) {
  if (alpha.degree() + beta.degree() + gamma.degree() != virtual_dimension(x_, a, 3)) return 0;
  std::vector<DivisorMonomial> ms{alpha, beta, gamma};
  std::sort(ms.begin(), ms.end());
  std::string key = to_string(a);
  for (const auto& m : ms) key += " " + to_string(m);
  if (auto it = invariants_.find(key); it != invariants_.end()) return it->second;

  Invariant inv;
  if (a.is_zero()) {
    inv = gw_invariant(x_, a, group_insertions(ms), opts_);
  } else {
    auto it = sums_.find(a.components);
    if (it == sums_.end()) {
      auto graphs = enumerate_graph_types(x_, a, degree_bound(x_, opts_.fallback_bound));
      it = sums_.try_emplace(a.components, x_, a, std::move(graphs), opts_).first;
    }
    inv = it->second.evaluate(group_insertions(ms));
  }
  invariants_.emplace(key, inv.value);
  return inv.value;
}

QuantumPolynomial QuantumRing::product(const DivisorMonomial& alpha, const DivisorMonomial& beta) {
  if (auto it = products_.find({alpha, beta}); it != products_.end()) return it->second;
  QuantumPolynomial out;
  out.truncation = truncation_;
  const std::size_t r = basis_.size();
  GeneratorCoords coords(truncation_.caps.size(), 0);
  while (true) {
    CurveClass a = x_.class_from_generators(coords);
    std::vector<Rational> c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = three_point(a, alpha, beta, basis_.basis[i]);
    std::vector<Rational> y(r);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < r; ++i) y[k] += c[i] * gram_[i][k];
    for (std::size_t k = 0; k < r; ++k) {
      if (y[k] != 0 && alpha.degree() + beta.degree() != basis_.basis[k].degree() + first_chern_pairing(x_, a)) {
        throw Error(ErrorCode::InvalidArgument, "degree grading violated at q^" + to_string(a));
      }
    }
    out.add(coords, y);
    std::size_t i = 0;
    while (i < coords.size() && coords[i] == truncation_.caps[i]) coords[i++] = 0;
    if (i == coords.size()) break;
    ++coords[i];
  }
  out.prune();
  products_.emplace(std::make_pair(alpha, beta), out);
  return out;
}

QuantumPolynomial QuantumRing::iterated(const std::vector<DivisorMonomial>& factors) {
  QuantumPolynomial acc;
  acc.truncation = truncation_;
  const GeneratorCoords zero(truncation_.caps.size(), 0);
  if (factors.empty()) {
    acc.add(zero, coordinates(DivisorMonomial::unit(x_.num_rays())));
    acc.prune();
    return acc;
  }
  if (factors.size() == 1) {
    acc.add(zero, coordinates(factors[0]));
    acc.prune();
    return acc;
  }
  acc = product(factors[0], factors[1]);
  for (std::size_t f = 2; f < factors.size(); ++f) {
    QuantumPolynomial next;
    next.truncation = truncation_;
    for (const auto& [a, coeffs] : acc.terms) {
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        for (const auto& [b, v] : product(basis_.basis[k], factors[f]).terms) {
          GeneratorCoords sum(a);
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b[i];
          if (!truncation_.contains(sum)) continue;
          std::vector<Rational> scaled(v);
          for (auto& c : scaled) c *= coeffs[k];
          next.add(sum, scaled);
        }
      }
    }
    next.prune();
    acc = std::move(next);
  }
  return acc;
}

Relation parse_relation(std::string_view text, std::size_t n, std::size_t generators) {
  std::string s = strip(text);
  auto eq = s.find('=');
  if (eq == std::string::npos || s.find('=', eq + 1) != std::string::npos) {
    throw Error(ErrorCode::ParseError, "relation needs exactly one '='");
  }
  auto side = [&](const std::string& part) {
    std::vector<RelationTerm> terms;
    for (auto& [sign, body] : signed_terms(part)) {
      RelationTerm t;
      t.coefficient = sign;
      t.q.assign(generators, 0);
      for (const auto& f : split(body, '*')) {
        if (is_integer(f)) {
          t.coefficient *= std::stol(f);
        } else if (f.size() > 2 && f[0] == 'q' && f[1] == '[' && f.back() == ']') {
          std::vector<long> coords;
          for (const auto& c : split(f.substr(2, f.size() - 3), ',')) {
            std::string digits = c[0] == '-' ? c.substr(1) : c;
            if (!is_integer(digits)) throw Error(ErrorCode::ParseError, "bad q coordinate in '" + f + "'");
            coords.push_back(std::stol(c));
          }
          if (coords.size() != generators) {
            throw Error(ErrorCode::ParseError, "q[...] needs " + std::to_string(generators) + " coordinates");
          }
          for (std::size_t i = 0; i < generators; ++i) t.q[i] += coords[i];
        } else {
          t.factors.push_back(parse_monomial(f, n));
        }
      }
      terms.push_back(std::move(t));
    }
    return terms;
  };
  return {side(s.substr(0, eq)), side(s.substr(eq + 1))};
}

QuantumPolynomial evaluate_side(QuantumRing& ring, const std::vector<RelationTerm>& side) {
  QuantumPolynomial out;
  out.truncation = ring.truncation();
  for (const auto& t : side) {
    for (const auto& [a, v] : ring.iterated(t.factors).terms) {
      GeneratorCoords sum(a);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += t.q[i];
      if (!ring.truncation().contains(sum)) continue;
      std::vector<Rational> scaled(v);
      for (auto& c : scaled) c *= t.coefficient;
      out.add(sum, scaled);
    }
  }
  out.prune();
  return out;
}

RelationReport verify_relation(QuantumRing& ring, const Relation& relation) {
  RelationReport r;
  r.lhs = evaluate_side(ring, relation.lhs);
  r.rhs = evaluate_side(ring, relation.rhs);
  r.residual = r.lhs - r.rhs;
  r.residual.truncation = ring.truncation();
  r.holds = r.residual.is_zero();
  return r;
}

}  // namespace toricgw
