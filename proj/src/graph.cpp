#include "toricgw/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toricgw/error.hpp"

namespace toricgw {

int GraphType::valence(int v) const {
  int n = 0;
  for (const auto& e : edges) n += (e.a == v) + (e.b == v);
  return n;
}

std::vector<int> GraphType::incident(int v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].a == v || edges[i].b == v) out.push_back(static_cast<int>(i));
  return out;
}

int GraphType::other_end(int edge, int v) const {
  const auto& e = edges.at(edge);
  return e.a == v ? e.b : e.a;
}

std::vector<Flag> flags(const GraphType& g) {
  std::vector<Flag> out;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    out.push_back({g.edges[i].a, static_cast<int>(i)});
    out.push_back({g.edges[i].b, static_cast<int>(i)});
  }
  return out;
}

LinearForm flag_weight(const SmoothToricVariety& x, const GraphType& g, const Flag& f) {
  int other = g.other_end(f.edge, f.vertex);
  LinearForm w = weight(x, g.cones.at(f.vertex), g.cones.at(other));
  w.scale = Rational(1, g.edges[f.edge].mult);
  return w;
}

CurveClass graph_class(const SmoothToricVariety& x, const GraphType& g) {
  CurveClass c(IntVector(x.num_rays(), 0));
  for (const auto& e : g.edges) c = c + static_cast<long>(e.mult) * x.walls().at(e.wall).curve_class;
  return c;
}

void check_graph(const SmoothToricVariety& x, const GraphType& g) {
  const int nv = static_cast<int>(g.num_vertices());
  if (nv == 0) throw Error(ErrorCode::InvalidArgument, "graph has no vertices");
  if (g.edges.size() + 1 != g.num_vertices()) throw Error(ErrorCode::InvalidArgument, "graph is not a tree");
  std::vector<int> parent(nv);
  for (int i = 0; i < nv; ++i) parent[i] = i;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : g.edges) {
    if (e.a < 0 || e.b < 0 || e.a >= nv || e.b >= nv) throw Error(ErrorCode::InvalidArgument, "edge endpoint");
    if (e.mult < 1) throw Error(ErrorCode::InvalidArgument, "edge multiplicity must be positive");
    int ca = g.cones[e.a], cb = g.cones[e.b];
    if (ca == cb) throw Error(ErrorCode::InvalidArgument, "edge joins equal cones");
    auto w = x.wall_between(ca, cb);
    if (!w || *w != e.wall) throw Error(ErrorCode::InvalidArgument, "edge label is not the wall between its cones");
    int ra = find(e.a), rb = find(e.b);
    if (ra == rb) throw Error(ErrorCode::InvalidArgument, "graph has a cycle");
    parent[ra] = rb;
  }
}

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(const GraphType& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.num_vertices());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    adj[g.edges[i].a].emplace_back(g.edges[i].b, static_cast<int>(i));
    adj[g.edges[i].b].emplace_back(g.edges[i].a, static_cast<int>(i));
  }
  return adj;
}

long factorial(long k) {
  long r = 1;
  for (long i = 2; i <= k; ++i) r *= i;
  return r;
}

CanonicalForm rooted(const GraphType& g, const std::vector<std::vector<std::pair<int, int>>>& adj, int v,
                     int parent) {
  std::vector<std::string> children;
  long aut = 1;
  for (auto [u, e] : adj[v]) {
    if (u == parent) continue;
    CanonicalForm sub = rooted(g, adj, u, v);
    aut *= sub.automorphisms;
    children.push_back("[" + std::to_string(g.edges[e].wall) + "," + std::to_string(g.edges[e].mult) + ":" +
                       sub.code + "]");
  }
  std::sort(children.begin(), children.end());
  for (std::size_t i = 0; i < children.size();) {
    std::size_t j = i;
    while (j < children.size() && children[j] == children[i]) ++j;
    aut *= factorial(static_cast<long>(j - i));
    i = j;
  }
  std::string code = "(" + std::to_string(g.cones[v]);
  for (const auto& c : children) code += c;
  return {code + ")", aut};
}

std::vector<int> centers(const std::vector<std::vector<std::pair<int, int>>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> degree(n);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    degree[v] = static_cast<int>(adj[v].size());
    if (degree[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer)
      for (auto [u, e] : adj[v])
        if (--degree[u] == 1) next.push_back(u);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace

CanonicalForm canonical_form(const GraphType& g) {
  auto adj = adjacency(g);
  auto c = centers(adj);
  if (c.size() == 1) {
    CanonicalForm f = rooted(g, adj, c[0], -1);
    f.code = "V" + f.code;
    return f;
  }
  int u = c[0], v = c[1];
  int edge = -1;
  for (auto [w, e] : adj[u])
    if (w == v) edge = e;
  CanonicalForm fu = rooted(g, adj, u, v);
  CanonicalForm fv = rooted(g, adj, v, u);
  if (fv.code < fu.code) std::swap(fu, fv);
  CanonicalForm out;
  out.code = "E<" + std::to_string(g.edges[edge].wall) + "," + std::to_string(g.edges[edge].mult) + ">" +
             fu.code + fv.code;
  out.automorphisms = fu.automorphisms * fv.automorphisms * (fu.code == fv.code ? 2 : 1);
  return out;
}

long automorphism_order(const GraphType& g) { return canonical_form(g).automorphisms; }

long a_order(const GraphType& g) {
  long r = automorphism_order(g);
  for (const auto& e : g.edges) r *= e.mult;
  return r;
}

DegreeBound degree_bound(const SmoothToricVariety& x, const std::optional<std::vector<Rational>>& fallback) {
  auto positive_on_walls = [&](const std::vector<Rational>& phi) {
    if (phi.size() != x.num_rays()) return false;
    return std::all_of(x.walls().begin(), x.walls().end(),
                       [&](const Wall& w) { return phi_degree(phi, w.curve_class) > 0; });
  };
  if (x.input().ample && validate_ample(x, *x.input().ample) && positive_on_walls(*x.input().ample)) {
    return {*x.input().ample, true};
  }
  if (fallback && positive_on_walls(*fallback)) return {*fallback, false};
  throw Error(ErrorCode::NoAmpleBound, "no ample function and no functional positive on every wall");
}

std::vector<EnumeratedGraph> enumerate_graph_types(const SmoothToricVariety& x, const CurveClass& a,
                                                   const DegreeBound& bound) {
  std::vector<EnumeratedGraph> found;
  if (a.is_zero()) return found;
  const Rational budget = phi_degree(bound.phi, a);
  std::vector<Rational> wall_degree;
  for (const auto& w : x.walls()) {
    wall_degree.push_back(phi_degree(bound.phi, w.curve_class));
    if (wall_degree.back() <= 0) throw Error(ErrorCode::NoAmpleBound, "bound is not positive on a wall");
  }

  struct Partial {
    GraphType g;
    Rational degree;
  };
  std::map<std::string, Partial> level;
  auto offer = [&](std::map<std::string, Partial>& into, GraphType g, Rational degree) {
    CanonicalForm f = canonical_form(g);
    into.try_emplace(f.code, Partial{std::move(g), std::move(degree)});
  };

  for (std::size_t w = 0; w < x.walls().size(); ++w) {
    const Wall& wall = x.walls()[w];
    for (int d = 1; d * wall_degree[w] <= budget; ++d) {
      GraphType g;
      g.cones = {wall.sigma1, wall.sigma2};
      g.edges = {{0, 1, static_cast<int>(w), d}};
      offer(level, std::move(g), d * wall_degree[w]);
    }
  }

  while (!level.empty()) {
    std::map<std::string, Partial> next;
    for (auto& [code, p] : level) {
      if (p.degree == budget && graph_class(x, p.g) == a) found.push_back({p.g, canonical_form(p.g)});
      if (p.degree >= budget) continue;
      for (int v = 0; v < static_cast<int>(p.g.num_vertices()); ++v) {
        const int sigma = p.g.cones[v];
        for (int gamma : x.neighbors(sigma)) {
          int w = *x.wall_between(sigma, gamma);
          for (int d = 1; p.degree + d * wall_degree[w] <= budget; ++d) {
            GraphType g = p.g;
            g.cones.push_back(gamma);
            g.edges.push_back({v, static_cast<int>(g.cones.size()) - 1, w, d});
            offer(next, std::move(g), p.degree + d * wall_degree[w]);
          }
        }
      }
    }
    level = std::move(next);
  }
  std::sort(found.begin(), found.end(),
            [](const EnumeratedGraph& l, const EnumeratedGraph& r) { return l.form.code < r.form.code; });
  return found;
}

std::vector<EnumeratedGraph> enumerate_graph_types(const SmoothToricVariety& x, const CurveClass& a) {
  if (a.is_zero()) return {};
  return enumerate_graph_types(x, a, degree_bound(x));
}

std::vector<MarkedGraph> enumerate_markings(const GraphType& g, const std::vector<int>& class_multiplicities) {
  int m = 0;
  for (int k : class_multiplicities) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative multiplicity");
    m += k;
  }
  const int nv = static_cast<int>(g.num_vertices());
  std::vector<MarkedGraph> out;
  std::vector<int> place(m, 0);
  while (true) {
    out.push_back({&g, place});
    int i = m - 1;
    while (i >= 0 && place[i] == nv - 1) place[i--] = 0;
    if (i < 0) break;
    ++place[i];
  }
  return out;
}

std::string describe(const GraphType& g, const CanonicalForm& form) {
  std::string s = "vertices=[";
  for (std::size_t v = 0; v < g.cones.size(); ++v) s += (v ? " " : "") + std::string("σ:") + std::to_string(g.cones[v]);
  s += "] edges=[";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    s += (i ? " " : "") + std::string("(") + std::to_string(e.a) + "," + std::to_string(e.b) + "," +
         std::to_string(e.wall) + "," + std::to_string(e.mult) + ")";
  }
  long prod = 1;
  for (const auto& e : g.edges) prod *= e.mult;
  s += "] code=" + form.code + " aut=" + std::to_string(form.automorphisms) +
       " a_order=" + std::to_string(form.automorphisms * prod);
  return s;
}

}  // namespace toricgw
