#include "toricgw/localization.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "toricgw/error.hpp"

namespace toricgw {

namespace {

mpz_class factorial(long k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

Rational eval_product(const FormProduct& f, const EvalPoint& p) { return f.eval(p); }

}  // namespace

Rational dm_integral(std::span<const int> k) {
  const long m = static_cast<long>(k.size());
  if (m < 3) throw Error(ErrorCode::InvalidArgument, "Deligne-Mumford integral needs at least 3 points");
  long sum = 0;
  mpz_class den = 1;
  for (int ki : k) {
    if (ki < 0) throw Error(ErrorCode::InvalidArgument, "negative psi exponent");
    sum += ki;
    den *= factorial(ki);
  }
  if (sum != m - 3) return 0;
  Rational r(factorial(m - 3), den);
  r.canonicalize();
  return r;
}

EdgeContext edge_context(const SmoothToricVariety& x, int sigma1, int sigma2, int mult) {
  auto w = x.wall_between(sigma1, sigma2);
  if (!w) throw Error(ErrorCode::NotAdjacent, std::to_string(sigma1) + " and " + std::to_string(sigma2));
  const CurveClass& c = x.walls()[*w].curve_class;
  EdgeContext ctx;
  ctx.sigma1 = sigma1;
  ctx.sigma2 = sigma2;
  ctx.mult = mult;
  ctx.omega = weight(x, sigma1, sigma2);
  for (int gamma : x.neighbors(sigma1)) {
    if (gamma == sigma2) continue;
    int k = x.cone_rays(sigma1)[x.missing_position(sigma1, gamma)];
    ctx.sides.push_back({gamma, weight(x, sigma1, gamma), mult * c.components[k]});
  }
  return ctx;
}

Rational edge_factor(const EdgeContext& ctx, const EvalPoint& p) {
  const long d = ctx.mult;
  const Rational omega = eval(ctx.omega, p);
  mpz_class d_pow;
  mpz_pow_ui(d_pow.get_mpz_t(), mpz_class(d).get_mpz_t(), static_cast<unsigned long>(2 * d));
  mpz_class fac = factorial(d);
  Rational r = Rational(d_pow) * inverse(Rational(fac * fac) * pow(omega, 2 * d));
  if (d % 2) r = -r;
  for (const auto& side : ctx.sides) {
    const Rational og = eval(side.omega, p);
    const long lambda = side.lambda;
    for (long i = lambda + 1; i <= -1; ++i) r *= og - make_rational(i, d) * omega;
    for (long i = 0; i <= lambda; ++i) r *= inverse(og - make_rational(i, d) * omega);
  }
  return r;
}

Rational t_term(const SmoothToricVariety& x, const GraphType& g, const EvalPoint& p) {
  Rational r = 1;
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    const auto inc = g.incident(v);
    const long val = static_cast<long>(inc.size());
    Rational inv_prod = 1, inv_sum = 0;
    for (int e : inc) {
      Rational w = inverse(eval(flag_weight(x, g, {v, e}), p));
      inv_prod *= w;
      inv_sum += w;
    }
    r *= pow(eval_product(total_weight(x, g.cones[v]), p), val - 1) * inv_prod * pow(inv_sum, val - 3);
  }
  for (const auto& e : g.edges) r *= edge_factor(edge_context(x, g.cones[e.a], g.cones[e.b], e.mult), p);
  return r;
}

Rational s_term(const SmoothToricVariety& x, const GraphType& g, const DivisorMonomial& l, int m_l,
                const EvalPoint& p) {
  Rational sum = 0;
  for (const Flag& f : flags(g)) {
    FormProduct cw = class_weight(x, g.cones[f.vertex], l);
    if (cw.zero) continue;
    sum += cw.eval(p) * inverse(eval(flag_weight(x, g, f), p));
  }
  return pow(sum, m_l);
}

std::vector<Insertion> group_insertions(const std::vector<DivisorMonomial>& monomials) {
  std::vector<Insertion> out;
  for (const auto& m : monomials) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Insertion& i) { return i.monomial == m; });
    if (it == out.end()) out.push_back({m, 1});
    else ++it->multiplicity;
  }
  return out;
}

long virtual_dimension(const SmoothToricVariety& x, const CurveClass& a, int marks) {
  return x.dim() + first_chern_pairing(x, a) + marks - 3;
}

namespace {

struct Prepared {
  Invariant inv;
  int marks = 0;
  bool done = false;  // value already settled without a graph sum
};

Prepared prepare(const SmoothToricVariety& x, const CurveClass& a, const std::vector<Insertion>& insertions,
                 const GwOptions& opts) {
  Prepared p;
  p.inv.curve_class = a;
  p.inv.insertions = insertions;
  if (a.size() != x.num_rays() || !x.in_relation_lattice(a)) {
    throw Error(ErrorCode::InvalidArgument, "class " + to_string(a) + " is not a relation among the rays");
  }
  long degree = 0;
  for (const auto& ins : insertions) {
    if (ins.monomial.size() != x.num_rays()) throw Error(ErrorCode::InvalidArgument, "monomial length");
    if (ins.multiplicity < 0) throw Error(ErrorCode::InvalidArgument, "negative multiplicity");
    p.marks += ins.multiplicity;
    degree += static_cast<long>(ins.multiplicity) * ins.monomial.degree();
  }
  if (p.marks < 3) throw Error(ErrorCode::InvalidArgument, "at least three insertions are required");
  if (degree != virtual_dimension(x, a, p.marks)) {
    p.inv.value = 0;
    p.inv.dimension_ok = false;
    p.done = true;
    return p;
  }
  if (a.is_zero()) {
    p.done = true;
    if (p.marks > 3) {
      p.inv.value = 0;
      return p;
    }
    DivisorMonomial prod = DivisorMonomial::unit(x.num_rays());
    for (const auto& ins : insertions)
      for (int i = 0; i < ins.multiplicity; ++i) prod = prod * ins.monomial;
    auto cv = evaluate_certified(
        x.num_rays(), [&](const EvalPoint& pt) { return classical_integral(x, prod, pt); }, opts.sampling);
    p.inv.value = cv.value;
    p.inv.seeds = cv.seeds;
    p.inv.point_values = cv.values;
  }
  return p;
}

// Graph types with the same per-wall total multiplicity share their S-terms.
std::vector<std::pair<int, int>> image_key(const GraphType& g) {
  std::map<int, int> total;
  for (const auto& e : g.edges) total[e.wall] += e.mult;
  return {total.begin(), total.end()};
}

}  // namespace

Invariant gw_invariant(const SmoothToricVariety& x, const CurveClass& a, const std::vector<Insertion>& insertions,
                       const GwOptions& opts) {
  Prepared p = prepare(x, a, insertions, opts);
  if (p.done) return p.inv;
  return gw_invariant(x, a, insertions, enumerate_graph_types(x, a, degree_bound(x, opts.fallback_bound)), opts);
}

Invariant gw_invariant(const SmoothToricVariety& x, const CurveClass& a, const std::vector<Insertion>& insertions,
                       const std::vector<EnumeratedGraph>& graphs, const GwOptions& opts) {
  GraphSum sum(x, a, graphs, opts);
  return sum.evaluate(insertions);
}

GraphSum::GraphSum(const SmoothToricVariety& x, CurveClass a, std::vector<EnumeratedGraph> graphs, GwOptions opts)
    : x_(x), a_(std::move(a)), graphs_(std::move(graphs)), opts_(std::move(opts)) {
  for (const auto& eg : graphs_) {
    long prod = eg.form.automorphisms;
    for (const auto& e : eg.graph.edges) prod *= e.mult;
    orders_.push_back(prod);
    images_.push_back(image_key(eg.graph));
  }
}

GraphSum::PointData& GraphSum::point(std::uint64_t seed) {
  if (auto it = points_.find(seed); it != points_.end()) return it->second;
  PointData pd;
  pd.point = sample_point(x_.num_rays(), seed, opts_.sampling.bound);
  for (const auto& w : x_.walls()) {
    pd.inverse_weight.push_back(inverse(eval(weight(x_, w.sigma1, w.sigma2), pd.point)));
    pd.inverse_weight.push_back(inverse(eval(weight(x_, w.sigma2, w.sigma1), pd.point)));
  }
  for (const auto& eg : graphs_) pd.t.push_back(t_term(x_, eg.graph, pd.point));
  return points_.emplace(seed, std::move(pd)).first->second;
}

Rational GraphSum::sum_at(PointData& pd, const std::vector<Insertion>& insertions, std::vector<GraphTrace>* trace) {
  std::vector<const std::vector<Rational>*> restr;
  for (const auto& ins : insertions) {
    auto it = pd.restriction.find(ins.monomial);
    if (it == pd.restriction.end()) {
      std::vector<Rational> r;
      for (std::size_t s = 0; s < x_.num_cones(); ++s)
        r.push_back(class_weight(x_, static_cast<int>(s), ins.monomial).eval(pd.point));
      it = pd.restriction.emplace(ins.monomial, std::move(r)).first;
    }
    restr.push_back(&it->second);
  }
  // Flags at sigma across a wall of total multiplicity D contribute D * restriction / omega.
  auto s_base = [&](std::size_t gi, std::size_t i) {
    Rational sum = 0;
    for (auto [w, total] : images_[gi]) {
      const Wall& wall = x_.walls()[w];
      const auto& r = *restr[i];
      sum += total * (r[wall.sigma1] * pd.inverse_weight[2 * w] + r[wall.sigma2] * pd.inverse_weight[2 * w + 1]);
    }
    return sum;
  };
  Rational total = 0;
  for (std::size_t gi = 0; gi < graphs_.size(); ++gi) {
    Rational term = pd.t[gi];
    GraphTrace tr;
    for (std::size_t i = 0; i < insertions.size() && term != 0; ++i) {
      Rational s = pow(s_base(gi, i), insertions[i].multiplicity);
      term *= s;
      if (trace) tr.s.push_back(std::move(s));
    }
    term /= orders_[gi];
    total += term;
    if (trace) {
      tr.code = graphs_[gi].form.code;
      tr.a_order = orders_[gi];
      tr.seed = pd.point.seed;
      tr.t = pd.t[gi];
      tr.term = term;
      trace->push_back(std::move(tr));
    }
  }
  return total;
}

Invariant GraphSum::evaluate(const std::vector<Insertion>& insertions) {
  Prepared p = prepare(x_, a_, insertions, opts_);
  if (p.done) return p.inv;
  Invariant inv = std::move(p.inv);
  inv.graph_count = graphs_.size();
  auto at_point = [&](const EvalPoint& pt) {
    std::vector<GraphTrace> trace;
    Rational v = sum_at(point(pt.seed), insertions, opts_.trace ? &trace : nullptr);
    inv.trace.insert(inv.trace.end(), trace.begin(), trace.end());
    return v;
  };
  auto cv = evaluate_certified(x_.num_rays(), at_point, opts_.sampling);
  inv.value = cv.value;
  inv.seeds = cv.seeds;
  inv.point_values = cv.values;
  return inv;
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur, const std::function<void()>& visit) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    visit();
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, parts, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

Invariant gw_invariant_direct(const SmoothToricVariety& x, const CurveClass& a,
                              const std::vector<Insertion>& insertions, const GwOptions& opts) {
  Prepared prep = prepare(x, a, insertions, opts);
  if (prep.done) return prep.inv;
  Invariant inv = std::move(prep.inv);
  auto graphs = enumerate_graph_types(x, a, degree_bound(x, opts.fallback_bound));
  inv.graph_count = graphs.size();

  std::vector<int> mults;
  std::vector<const DivisorMonomial*> mark_class;
  for (const auto& ins : insertions) {
    mults.push_back(ins.multiplicity);
    for (int i = 0; i < ins.multiplicity; ++i) mark_class.push_back(&ins.monomial);
  }

  long terms = 0;
  for (const auto& eg : graphs) {
    const long nv = static_cast<long>(eg.graph.num_vertices());
    long placements = 1;
    for (int i = 0; i < prep.marks; ++i) placements *= nv;
    terms += placements * nv;
    if (terms > opts.term_cap) {
      throw Error(ErrorCode::TermCapExceeded, "direct route needs more than " + std::to_string(opts.term_cap) +
                                                  " vertex terms");
    }
  }

  auto at_point = [&](const EvalPoint& pt) {
    Rational total = 0;
    for (const auto& eg : graphs) {
      const GraphType& g = eg.graph;
      const int nv = static_cast<int>(g.num_vertices());
      Rational fixed = 1;
      for (const auto& e : g.edges) fixed *= edge_factor(edge_context(x, g.cones[e.a], g.cones[e.b], e.mult), pt);
      std::vector<std::vector<Rational>> flag_w(nv);
      std::vector<Rational> totwe(nv);
      for (int v = 0; v < nv; ++v) {
        for (int e : g.incident(v)) flag_w[v].push_back(eval(flag_weight(x, g, {v, e}), pt));
        totwe[v] = eval_product(total_weight(x, g.cones[v]), pt);
        fixed *= pow(totwe[v], static_cast<long>(flag_w[v].size()) - 1);
      }
      // Restrictions of each insertion to each vertex.
      std::vector<std::vector<Rational>> restriction(mark_class.size(), std::vector<Rational>(nv));
      for (std::size_t j = 0; j < mark_class.size(); ++j)
        for (int v = 0; v < nv; ++v) restriction[j][v] = class_weight(x, g.cones[v], *mark_class[j]).eval(pt);

      // Vertex integral as a function of (vertex, number of marks placed there).
      std::map<std::pair<int, int>, Rational> vertex_cache;
      auto vertex_integral = [&](int v, int s) -> Rational {
        auto key = std::make_pair(v, s);
        if (auto it = vertex_cache.find(key); it != vertex_cache.end()) return it->second;
        const auto& w = flag_w[v];
        const int val = static_cast<int>(w.size());
        Rational r;
        if (val == 1 && s == 0) {
          r = w[0];
        } else if (val == 2 && s == 0) {
          r = inverse(w[0] + w[1]);
        } else if (val == 1 && s == 1) {
          r = 1;
        } else {
          r = 0;
          std::vector<int> k;
          compositions(val + s - 3, val, k, [&] {
            std::vector<int> all(k);
            all.resize(val + s, 0);
            Rational c = dm_integral(all);
            for (int i = 0; i < val; ++i) c *= pow(w[i], -(k[i] + 1));
            r += c;
          });
        }
        vertex_cache.emplace(key, r);
        return r;
      };

      Rational graph_sum = 0;
      for (const auto& mg : enumerate_markings(g, mults)) {
        Rational term = 1;
        std::vector<int> count(nv, 0);
        for (std::size_t j = 0; j < mg.vertex_of_mark.size() && term != 0; ++j) {
          term *= restriction[j][mg.vertex_of_mark[j]];
          ++count[mg.vertex_of_mark[j]];
        }
        if (term == 0) continue;
        for (int v = 0; v < nv; ++v) term *= vertex_integral(v, count[v]);
        graph_sum += term;
      }
      long order = eg.form.automorphisms;
      for (const auto& e : g.edges) order *= e.mult;
      total += fixed * graph_sum / order;
    }
    return total;
  };
  auto cv = evaluate_certified(x.num_rays(), at_point, opts.sampling);
  inv.value = cv.value;
  inv.seeds = cv.seeds;
  inv.point_values = cv.values;
  return inv;
}

}  // namespace toricgw
