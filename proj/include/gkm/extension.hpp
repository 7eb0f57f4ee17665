#ifndef GKM_EXTENSION_HPP
#define GKM_EXTENSION_HPP

#include <map>
#include <vector>

#include "gkm/covering.hpp"

namespace gkm {

enum class TreeOrder { Lexicographic, Reverse };

struct Extension {
  int n = 0;                 // rank of beta
  VertexId base = 0;
  QMatrix phi;               // k x n, phi(b_i) = lift(e_i)
  std::vector<EdgeId> basis; // e_1..e_n at the base vertex
  // signed lifts: star_vectors[v][i] for star(v)[i], with phi(.) equal to the
  // canonical weight of that edge
  std::vector<std::vector<QVector>> star_vectors;
  GkmGraph beta; // same graph and connection, rank n canonical labels

  const QVector &lift(const GkmGraph &g, EdgeId e) const {
    return star_vectors[g.source(e)][g.star_position(e)];
  }
};

// Transported star vectors along a path of directed edges starting at v0,
// beginning from the standard basis in star order. Throws
// CoefficientNotFound.
std::vector<QVector> transport_weights(const GkmGraph &g, VertexId v0,
                                       const std::vector<EdgeId> &path);

// Throws InconsistentHolonomy (with the offending fundamental cycle) or
// CoefficientNotFound.
Extension extend_to_gkm_n(const GkmGraph &g, TreeOrder order = TreeOrder::Lexicographic);

// A_g for every deck element, with A_g beta(e_i) = beta(g e_i). Checks
// phi A_g = phi, A_g lift(e) = lift(g e) on every edge, preservation of the
// lattice spanned by all lifts, and A_{gh} = A_g A_h. Throws
// ActionNotCompatible.
std::vector<QMatrix> induced_weight_action(const GkmGraph &g, const Extension &ext,
                                           const DeckGroup &deck);

// lambda(F) for every facet of the extended torus graph: the vector dual to
// the beta lifts at the lexicographically first vertex of F.
struct FacetLabel {
  std::vector<VertexId> vertices;
  QVector lambda;
};
std::vector<FacetLabel> facet_labels(const Extension &ext);

} // namespace gkm

#endif
