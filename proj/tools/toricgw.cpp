// toricgw: genus-0 Gromov-Witten invariants of smooth toric varieties.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "toricgw/cache.hpp"
#include "toricgw/error.hpp"
#include "toricgw/fan_io.hpp"
#include "toricgw/graph.hpp"
#include "toricgw/localization.hpp"
#include "toricgw/quantum.hpp"

using nlohmann::json;
using namespace toricgw;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kComputation = 3;
constexpr int kRelationFailed = 4;
constexpr int kSchemaVersion = 1;

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::MalformedFan:
    case ErrorCode::NonPrimitiveRay:
    case ErrorCode::NonUnimodularCone:
    case ErrorCode::DuplicateCone:
    case ErrorCode::DanglingWall:
    case ErrorCode::VectorOutsideSupport:
    case ErrorCode::NotDual:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotAdjacent:
      return kValidation;
    default:
      return kComputation;
  }
}

std::vector<long> parse_longs(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorCode::ParseError, "bad integer list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

CurveClass parse_class(const SmoothToricVariety& x, const std::string& text) {
  if (text.rfind("gen:", 0) == 0) {
    auto coords = parse_longs(text.substr(4));
    return x.class_from_generators(coords);
  }
  CurveClass c(parse_longs(text));
  if (c.size() != x.num_rays() || !x.in_relation_lattice(c)) {
    throw Error(ErrorCode::InvalidArgument, "class " + to_string(c) + " does not satisfy sum lambda_i v_i = 0");
  }
  return c;
}

json strings(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

std::string combination_text(const CohomologyBasis& b, const std::vector<Rational>& coeffs) {
  std::string s;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    Rational c = coeffs[k];
    std::string mono = to_string(b.basis[k]);
    bool neg = c < 0;
    if (neg) c = -c;
    s += neg ? "-" : (s.empty() ? "" : "+");
    if (mono == "1") s += to_string(c);
    else s += (c == 1 ? "" : to_string(c) + "*") + mono;
  }
  return s.empty() ? "0" : s;
}

json polynomial_json(const SmoothToricVariety& x, const CohomologyBasis& b, const QuantumPolynomial& p) {
  json terms = json::array();
  for (const auto& [a, coeffs] : p.terms) {
    terms.push_back({{"q", a},
                     {"class", x.class_from_generators(a).components},
                     {"coefficients", strings(coeffs)},
                     {"expression", combination_text(b, coeffs)}});
  }
  return terms;
}


SmoothToricVariety load(const std::string& path) { return validate_fan(load_fan(path)); }

int cmd_validate(const std::string& path) {
  auto x = load(path);
  json walls = json::array();
  for (const auto& w : x.walls()) {
    walls.push_back({{"tau", w.tau_rays},
                     {"sigma1", w.sigma1},
                     {"sigma2", w.sigma2},
                     {"l1", w.l1},
                     {"l2", w.l2},
                     {"class", w.curve_class.components},
                     {"c1", first_chern_pairing(x, w.curve_class)}});
  }
  json gens = json::array();
  for (const auto& g : x.input().curve_generators) {
    CurveClass c(g);
    gens.push_back({{"class", g}, {"c1", first_chern_pairing(x, c)}, {"in_lattice", x.in_relation_lattice(c)}});
  }
  json out{{"schema", kSchemaVersion},
           {"name", x.name()},
           {"dim", x.dim()},
           {"rays", x.num_rays()},
           {"cones", x.num_cones()},
           {"walls", walls},
           {"primitive_collections", x.primitive_collections()},
           {"curve_generators", gens},
           {"valid", true}};
  if (x.input().ample) out["ample"] = validate_ample(x, *x.input().ample);
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_info(const std::string& path) {
  auto x = load(path);
  json cones = json::array();
  for (std::size_t s = 0; s < x.num_cones(); ++s) {
    int sigma = static_cast<int>(s);
    json weights = json::object();
    for (int gamma : x.neighbors(sigma)) weights[std::to_string(gamma)] = to_string(weight(x, sigma, gamma));
    cones.push_back({{"id", sigma},
                     {"rays", x.cone_rays(sigma)},
                     {"dual_basis", x.dual_basis(sigma)},
                     {"neighbors", x.neighbors(sigma)},
                     {"weights", weights}});
  }
  json out{{"schema", kSchemaVersion},
           {"name", x.name()},
           {"dim", x.dim()},
           {"fan_hash", fan_hash(x.input())},
           {"cones", cones}};
  if (x.input().ample) {
    out["degree_bound"] = strings(degree_bound(x).phi);
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

struct GwArgs {
  std::string fan_path;
  std::string class_text;
  std::vector<std::string> monomials;
  int points = 3;
  std::uint64_t seed = 1;
  bool oracle = false;
  bool trace = false;
  std::string cache_path;
  std::string bound;
};

int cmd_gw(const GwArgs& args) {
  auto x = load(args.fan_path);
  CurveClass a = parse_class(x, args.class_text);
  std::vector<DivisorMonomial> monos;
  for (const auto& m : args.monomials) monos.push_back(parse_monomial(m, x.num_rays()));
  auto insertions = group_insertions(monos);

  GwOptions opts;
  opts.sampling.points = args.points;
  opts.sampling.seed = args.seed;
  opts.trace = args.trace;
  if (!args.bound.empty()) {
    std::vector<Rational> phi;
    std::stringstream ss(args.bound);
    std::string item;
    while (std::getline(ss, item, ',')) phi.push_back(parse_rational(item));
    opts.fallback_bound = phi;
  }

  std::string cache_path = args.cache_path;
  if (cache_path.empty())
    if (const char* env = std::getenv(kCacheEnvVar)) cache_path = env;
  std::optional<InvariantCache> cache;
  std::string key;
  if (!cache_path.empty()) {
    cache.emplace(cache_path);
    key = cache_key(x.input(), a, insertions, opts.sampling);
  }

  json out;
  bool hit = false;
  if (cache && !args.trace && !args.oracle) {
    if (auto rec = cache->lookup(key)) {
      out = *rec;
      hit = true;
    }
  }
  if (!hit) {
    Invariant inv = gw_invariant(x, a, insertions, opts);
    out = {{"schema", kSchemaVersion},
           {"class", a.components},
           {"insertions", args.monomials},
           {"value", to_string(inv.value)},
           {"graphs", inv.graph_count},
           {"points", inv.seeds.size()},
           {"seeds", inv.seeds},
           {"point_values", strings(inv.point_values)},
           {"dimension_ok", inv.dimension_ok}};
    if (cache) cache->store(key, out);
    if (args.trace) {
      json trace = json::array();
      for (const auto& t : inv.trace)
        trace.push_back({{"code", t.code},
                         {"a_order", t.a_order},
                         {"seed", t.seed},
                         {"T", to_string(t.t)},
                         {"S", strings(t.s)},
                         {"term", to_string(t.term)}});
      out["trace"] = trace;
    }
    if (args.oracle) {
      Invariant direct = gw_invariant_direct(x, a, insertions, opts);
      out["oracle_value"] = to_string(direct.value);
      out["oracle_agrees"] = direct.value == inv.value;
    }
  }
  out["cache_hit"] = hit;
  std::cout << out.dump(2) << "\n";
  if (args.oracle && !out.value("oracle_agrees", true)) return kComputation;
  return kOk;
}

int cmd_dump_graphs(const std::string& path, const std::string& class_text) {
  auto x = load(path);
  CurveClass a = parse_class(x, class_text);
  for (const auto& eg : enumerate_graph_types(x, a)) std::cout << describe(eg.graph, eg.form) << "\n";
  return kOk;
}

struct QhArgs {
  std::string fan_path;
  std::string basis_path;
  std::string caps;
  std::string alpha;
  std::string beta;
  std::string relation;
  int points = 3;
  std::uint64_t seed = 1;
};

QuantumRing make_ring(const SmoothToricVariety& x, const QhArgs& args) {
  CohomologyBasis b = parse_basis(read_file(args.basis_path), x.num_rays());
  Truncation t;
  t.caps = parse_longs(args.caps);
  GwOptions opts;
  opts.sampling.points = args.points;
  opts.sampling.seed = args.seed;
  return QuantumRing(x, std::move(b), std::move(t), opts);
}

int cmd_qh_product(const QhArgs& args) {
  auto x = load(args.fan_path);
  QuantumRing ring = make_ring(x, args);
  auto p = ring.product(parse_monomial(args.alpha, x.num_rays()), parse_monomial(args.beta, x.num_rays()));
  json basis = json::array();
  for (const auto& m : ring.basis().basis) basis.push_back(to_string(m));
  json out{{"schema", kSchemaVersion},
           {"alpha", args.alpha},
           {"beta", args.beta},
           {"basis", basis},
           {"truncation", ring.truncation().caps},
           {"terms", polynomial_json(x, ring.basis(), p)}};
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int cmd_qh_verify(const QhArgs& args) {
  auto x = load(args.fan_path);
  QuantumRing ring = make_ring(x, args);
  Relation rel = parse_relation(args.relation, x.num_rays(), x.input().curve_generators.size());
  RelationReport r = verify_relation(ring, rel);
  json basis = json::array();
  for (const auto& m : ring.basis().basis) basis.push_back(to_string(m));
  json out{{"schema", kSchemaVersion},
           {"relation", args.relation},
           {"basis", basis},
           {"truncation", ring.truncation().caps},
           {"lhs", polynomial_json(x, ring.basis(), r.lhs)},
           {"rhs", polynomial_json(x, ring.basis(), r.rhs)},
           {"residual", polynomial_json(x, ring.basis(), r.residual)},
           {"holds", r.holds}};
  std::cout << out.dump(2) << "\n";
  return r.holds ? kOk : kRelationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus-0 Gromov-Witten invariants of smooth toric varieties by torus localization"};
  app.require_subcommand(1);

  std::string fan_path, class_text;

  auto* validate = app.add_subcommand("validate", "Check a fan and list walls, curve classes, primitive collections");
  validate->add_option("fan", fan_path, "Fan JSON file")->required();

  auto* info = app.add_subcommand("info", "Print dual bases and torus weights of every maximal cone");
  info->add_option("fan", fan_path, "Fan JSON file")->required();

  GwArgs gw;
  auto* gwc = app.add_subcommand("gw", "Compute a genus-0 invariant");
  gwc->add_option("fan", gw.fan_path, "Fan JSON file")->required();
  gwc->add_option("--class,-A", gw.class_text, "Curve class: n integers or gen:a,b,...")->required();
  gwc->add_option("monomials", gw.monomials, "Insertions such as Z3 or Z1*Z3^2")->required();
  gwc->add_option("--points", gw.points, "Evaluation points")->check(CLI::Range(2, 64));
  gwc->add_option("--seed", gw.seed, "First sampling seed");
  gwc->add_flag("--oracle", gw.oracle, "Also evaluate the direct marked-graph route");
  gwc->add_flag("--trace", gw.trace, "Emit per-graph terms");
  gwc->add_option("--cache", gw.cache_path, "JSON-lines cache file (default from TORICGW_CACHE)");
  gwc->add_option("--bound", gw.bound, "Fallback functional, one rational per ray, positive on every wall");

  auto* dump = app.add_subcommand("dump-graphs", "List the graph types of a curve class");
  dump->add_option("fan", fan_path, "Fan JSON file")->required();
  dump->add_option("--class,-A", class_text, "Curve class")->required();

  QhArgs qh;
  auto* qhc = app.add_subcommand("qh", "Small quantum cohomology");
  qhc->require_subcommand(1);
  auto* product = qhc->add_subcommand("product", "Quantum product of two monomials");
  auto* verify = qhc->add_subcommand("verify", "Check a relation in the quantum ring");
  for (auto* sub : {product, verify}) {
    sub->add_option("fan", qh.fan_path, "Fan JSON file")->required();
    sub->add_option("basis", qh.basis_path, "Basis JSON file")->required();
    sub->add_option("--caps", qh.caps, "Per-generator truncation caps, e.g. 2,3")->required();
    sub->add_option("--points", qh.points, "Evaluation points")->check(CLI::Range(2, 64));
    sub->add_option("--seed", qh.seed, "First sampling seed");
  }
  product->add_option("alpha", qh.alpha)->required();
  product->add_option("beta", qh.beta)->required();
  verify->add_option("relation", qh.relation, "e.g. \"Z3*Z3*Z3 = Z2*Z2*q[0,1]\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*validate) return cmd_validate(fan_path);
    if (*info) return cmd_info(fan_path);
    if (*gwc) return cmd_gw(gw);
    if (*dump) return cmd_dump_graphs(fan_path, class_text);
    if (*product) return cmd_qh_product(qh);
    if (*verify) return cmd_qh_verify(qh);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}
