#pragma once

// Decorated trees indexing the torus-fixed components of the stable-map space:
// vertices carry maximal cones, edges carry walls and covering multiplicities.

#include <optional>
#include <string>
#include <vector>

#include "toricgw/toric.hpp"

namespace toricgw {

struct GraphEdge {
  int a = 0;
  int b = 0;
  int wall = -1;
  int mult = 1;
};

struct GraphType {
  std::vector<int> cones;  // cone label per vertex
  std::vector<GraphEdge> edges;

  std::size_t num_vertices() const { return cones.size(); }
  int valence(int v) const;
  /// Edge ids incident to v, in edge order.
  std::vector<int> incident(int v) const;
  int other_end(int edge, int v) const;
};

struct Flag {
  int vertex = 0;
  int edge = 0;
};

std::vector<Flag> flags(const GraphType& g);

/// omega_F = omega^{sigma(v)}_{sigma(v')} / d_e for the flag (v, e).
LinearForm flag_weight(const SmoothToricVariety& x, const GraphType& g, const Flag& f);

CurveClass graph_class(const SmoothToricVariety& x, const GraphType& g);

/// Checks tree shape, wall labels between distinct adjacent cones and d_e >= 1.
/// Throws InvalidArgument describing the first violation.
void check_graph(const SmoothToricVariety& x, const GraphType& g);

struct CanonicalForm {
  std::string code;
  long automorphisms = 1;
};

/// AHU encoding rooted at the tree centre; equal codes iff isomorphic as
/// decorated trees. The automorphism count falls out of the same pass.
CanonicalForm canonical_form(const GraphType& g);

long automorphism_order(const GraphType& g);
/// |Aut| times the product of the edge multiplicities.
long a_order(const GraphType& g);

/// Linear functional used to bound the enumeration; positive on every wall class.
struct DegreeBound {
  std::vector<Rational> phi;
  bool from_ample = false;
};

/// The fan's ample function if present, otherwise `fallback`, which must be
/// positive on every wall class. Throws NoAmpleBound when neither works.
DegreeBound degree_bound(const SmoothToricVariety& x,
                         const std::optional<std::vector<Rational>>& fallback = std::nullopt);

struct EnumeratedGraph {
  GraphType graph;
  CanonicalForm form;
};

/// All graph types of class A up to isomorphism, sorted by canonical code.
/// Empty for A = 0 or when A is not reachable.
std::vector<EnumeratedGraph> enumerate_graph_types(const SmoothToricVariety& x, const CurveClass& a,
                                                   const DegreeBound& bound);
std::vector<EnumeratedGraph> enumerate_graph_types(const SmoothToricVariety& x, const CurveClass& a);

/// Placement of marks 0..m-1 on vertices.
struct MarkedGraph {
  const GraphType* graph = nullptr;
  std::vector<int> vertex_of_mark;
};

/// Every function from the m marks to the vertices, no symmetry reduction.
/// The grouping of marks by class does not change the set of placements.
std::vector<MarkedGraph> enumerate_markings(const GraphType& g, const std::vector<int>& class_multiplicities);

/// Line-oriented description: cones, edges, code, |Aut|, a_order.
std::string describe(const GraphType& g, const CanonicalForm& form);

}  // namespace toricgw
