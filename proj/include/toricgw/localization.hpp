#pragma once

// Fixed-point evaluation of genus-0 invariants: Deligne-Mumford integrals,
// Euler factors of the edges and the per-graph T and S terms.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "toricgw/graph.hpp"
#include "toricgw/toric.hpp"

namespace toricgw {

/// <tau_{k_1} ... tau_{k_m}> on the genus-0 moduli of stable curves; m >= 3.
Rational dm_integral(std::span<const int> k);

struct EdgeContext {
  int sigma1 = -1;
  int sigma2 = -1;
  int mult = 1;
  LinearForm omega;  // omega^{sigma1}_{sigma2}
  struct Side {
    int gamma = -1;
    LinearForm omega;  // omega^{sigma1}_{gamma}
    long lambda = 0;
  };
  std::vector<Side> sides;  // the d-1 neighbours of sigma1 other than sigma2
};

/// Context for a curve of multiplicity `mult` on the wall between sigma1 and
/// sigma2, read from the sigma1 end.
EdgeContext edge_context(const SmoothToricVariety& x, int sigma1, int sigma2, int mult);

Rational edge_factor(const EdgeContext& ctx, const EvalPoint& p);

Rational t_term(const SmoothToricVariety& x, const GraphType& g, const EvalPoint& p);

/// (sum over flags of class_weight(sigma(F), l) / omega_F)^{m_l}.
Rational s_term(const SmoothToricVariety& x, const GraphType& g, const DivisorMonomial& l, int m_l,
                const EvalPoint& p);

/// Insertion Z^l repeated `multiplicity` times.
struct Insertion {
  DivisorMonomial monomial;
  int multiplicity = 1;
};

std::vector<Insertion> group_insertions(const std::vector<DivisorMonomial>& monomials);

struct GraphTrace {
  std::string code;
  long a_order = 1;
  std::uint64_t seed = 0;
  Rational t;
  std::vector<Rational> s;
  Rational term;
};

struct Invariant {
  Rational value;
  CurveClass curve_class;
  std::vector<Insertion> insertions;
  std::size_t graph_count = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<Rational> point_values;
  bool dimension_ok = true;
  std::vector<GraphTrace> trace;
};

struct GwOptions {
  SamplingOptions sampling;
  bool trace = false;
  std::optional<std::vector<Rational>> fallback_bound;
  /// Upper limit on the number of vertex terms the direct route may expand.
  long term_cap = 2'000'000;
};

/// Evaluates the collapsed graph sum for one class against many insertion
/// lists, reusing T-terms and vertex restrictions per evaluation point.
class GraphSum {
 public:
  GraphSum(const SmoothToricVariety& x, CurveClass a, std::vector<EnumeratedGraph> graphs, GwOptions opts = {});

  const std::vector<EnumeratedGraph>& graphs() const { return graphs_; }
  Invariant evaluate(const std::vector<Insertion>& insertions);

 private:
  struct PointData {
    EvalPoint point;
    std::vector<Rational> t;  // per graph
    std::vector<Rational> inverse_weight;  // per wall: 1/omega^{s1}_{s2}, 1/omega^{s2}_{s1} interleaved
    std::map<DivisorMonomial, std::vector<Rational>> restriction;  // per cone
  };
  PointData& point(std::uint64_t seed);
  Rational sum_at(PointData& pd, const std::vector<Insertion>& insertions, std::vector<GraphTrace>* trace);

  const SmoothToricVariety& x_;
  CurveClass a_;
  std::vector<EnumeratedGraph> graphs_;
  GwOptions opts_;
  std::vector<long> orders_;
  std::vector<std::vector<std::pair<int, int>>> images_;
  std::map<std::uint64_t, PointData> points_;
};

long virtual_dimension(const SmoothToricVariety& x, const CurveClass& a, int marks);

Invariant gw_invariant(const SmoothToricVariety& x, const CurveClass& a, const std::vector<Insertion>& insertions,
                       const GwOptions& opts = {});

/// Same sum over an already enumerated list of graph types.
Invariant gw_invariant(const SmoothToricVariety& x, const CurveClass& a, const std::vector<Insertion>& insertions,
                       const std::vector<EnumeratedGraph>& graphs, const GwOptions& opts = {});

/// Independent route: sums over every marking of every graph type and expands
/// the vertex integrals into Deligne-Mumford monomials.
Invariant gw_invariant_direct(const SmoothToricVariety& x, const CurveClass& a,
                              const std::vector<Insertion>& insertions, const GwOptions& opts = {});

}  // namespace toricgw
