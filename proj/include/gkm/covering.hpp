#ifndef GKM_COVERING_HPP
#define GKM_COVERING_HPP

#include <string>
#include <vector>

#include "gkm/faces.hpp"
#include "gkm/graph.hpp"

namespace gkm {

struct Factor {
  FactorKind kind = FactorKind::Delta;
  int size = 1;
  int vertex_count() const { return kind == FactorKind::Delta ? size + 1 : 2; }
  std::string str() const;
  friend bool operator==(const Factor &, const Factor &) = default;
};

// Δ-factors by decreasing size, then Σ-factors by decreasing size.
void sort_factors(std::vector<Factor> &fs);
std::string factors_str(const std::vector<Factor> &fs);

// Unlabelled product graph with its natural connection. Vertices are named by
// comma-joined coordinate tuples; an edge changing factor f from a to b (a<b)
// is named "<u>|<w>" (Δ) or "<u>|<w>#j" (Σ, parallel index j), directed from
// the smaller coordinate.
struct ProductGraph {
  std::vector<Factor> factors;
  GkmGraph graph;
  std::vector<std::vector<int>> coords;  // per vertex
  std::vector<int> edge_factor;          // per directed edge
  std::vector<int> edge_parallel;        // Σ parallel index, -1 for Δ
  // Rank-n labels: Δ^k edge {i,j} gets e_j - e_i (e_0 = 0), Σ^m edge j gets
  // e_j, in consecutive coordinate blocks.
  GkmGraph standard_labels() const;
  int dimension() const;
};

// Throws InvalidFactor.
ProductGraph build_product_graph(const std::vector<Factor> &factors);

// Vertex and directed-edge permutation of a graph.
struct Automorphism {
  std::vector<VertexId> vertex;
  std::vector<EdgeId> edge;
  friend bool operator==(const Automorphism &, const Automorphism &) = default;
};

Automorphism identity_automorphism(const GkmGraph &g);
Automorphism compose(const Automorphism &a, const Automorphism &b); // a∘b
// Empty string when a is an automorphism of g commuting with the connection
// (and preserving weights when `labels`); otherwise a witness.
std::string check_automorphism(const GkmGraph &g, const Automorphism &a, bool labels);

struct CoveringMap {
  ProductGraph total;
  GkmGraph base;
  std::vector<VertexId> vertex_map; // total vertex -> base vertex
  std::vector<EdgeId> edge_map;     // total directed edge -> base directed edge
  VertexId total_base_point = 0;
  VertexId base_point = 0;

  std::size_t degree() const { return total.graph.num_vertices() / base.num_vertices(); }
};

// Throws WellDefinednessFailure / PartitionInconsistent.
CoveringMap build_covering(const GkmGraph &g, VertexId x);
CoveringMap build_covering(const GkmGraph &g);

// Exhaustive check of pi∘nabla~ = nabla∘pi and of the star bijections.
std::string verify_covering(const CoveringMap &c);

struct DeckGroup {
  std::vector<Automorphism> elements; // identity first
  std::vector<std::vector<int>> table; // table[a][b] = index of a∘b
  std::size_t order() const { return elements.size(); }
  int inverse(int a) const;
};

// Throws NotGalois.
DeckGroup deck_group(const CoveringMap &c);

// The total graph with labels alpha∘pi and its natural connection.
GkmGraph pull_back_labels(const CoveringMap &c);

// Quotient by a finite group (all elements listed) acting freely on vertices
// and preserving labels and connection. Quotient vertices and edges keep the
// lexicographically smallest name in their orbit. Throws NotFree,
// NotCompatible.
GkmGraph quotient_graph(const GkmGraph &g, const std::vector<Automorphism> &group);

// Vertex-count gap bound: every multiset of factors with
// total dimension n <= max_n; returns a witness string on violation.
struct GapRow {
  int n;
  std::size_t multisets;
  std::size_t max_non_cube; // largest vertex count other than the cube
  bool ok;
};
std::vector<GapRow> gap_corollary_table(int max_n);

} // namespace gkm

#endif
