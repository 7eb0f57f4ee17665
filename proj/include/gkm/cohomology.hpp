#ifndef GKM_COHOMOLOGY_HPP
#define GKM_COHOMOLOGY_HPP

#include <vector>

#include "gkm/covering.hpp"
#include "gkm/faces.hpp"
#include "gkm/poly.hpp"

namespace gkm {

// Tuple of degree-d polynomials in torus_rank variables, one per vertex.
struct CohomologyClass {
  std::size_t degree = 0;
  std::vector<HomogPoly> entries;

  bool is_zero() const;
  friend bool operator==(const CohomologyClass &, const CohomologyClass &) = default;
};

struct GradedDims {
  std::vector<std::size_t> equivariant; // E_0 .. E_{n+1}
  std::vector<long> betti;              // b_0, b_2, .., b_{2n}
  long total = 0;
  std::size_t vertices = 0; // vertex count (orbit count for invariants)
};

CohomologyClass constant_class(const GkmGraph &g, const HomogPoly &p);
// Empty string when every edge congruence holds, otherwise the first
// offending edge.
std::string check_congruences(const GkmGraph &g, const CohomologyClass &c);

// Deterministic echelon basis of the degree-d classes.
std::vector<CohomologyClass> equivariant_basis(const GkmGraph &g, std::size_t d);
std::size_t equivariant_dim(const GkmGraph &g, std::size_t d);

// Throws FormalityViolation. Degrees run concurrently when jobs > 1.
GradedDims betti_numbers(const GkmGraph &g, int jobs = 1);

// Degree-1 class supported on the facet, normalised at its first vertex to
// the canonical weight of the edge leaving it. Throws NoSuchClass.
CohomologyClass facet_class(const GkmGraph &g, const Face &facet);

// Throws DimensionMismatch.
CohomologyClass multiply_classes(const CohomologyClass &a, const CohomologyClass &b);

// True iff c lies in the ideal generated by the linear constants.
bool ordinary_zero_check(const GkmGraph &g, const CohomologyClass &c);

// (h.f)_v = f_{h^{-1} v}; the group must fix every label.
CohomologyClass act(const Automorphism &h, const CohomologyClass &c);

// Invariant subspaces for a label-preserving group (all elements listed).
// Throws NotCompatible, FormalityViolation.
std::vector<CohomologyClass> invariant_basis(const GkmGraph &g,
                                             const std::vector<Automorphism> &group,
                                             std::size_t d);
GradedDims invariant_betti(const GkmGraph &g, const std::vector<Automorphism> &group,
                           int jobs = 1);

// Push a class to a subtorus: entries composed with phi (k x n), so that a
// linear form beta becomes phi beta.
CohomologyClass restrict_to_subtorus(const CohomologyClass &c, const QMatrix &phi);

// Deck orbits on the product's facets minus the invariant b_2 of the
// pulled-back labels.
long torus_upper_bound(const CoveringMap &c, const DeckGroup &deck, int jobs = 1);

} // namespace gkm

#endif
