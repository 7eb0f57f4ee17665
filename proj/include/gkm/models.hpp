#ifndef GKM_MODELS_HPP
#define GKM_MODELS_HPP

#include <string>
#include <vector>

#include "gkm/covering.hpp"
#include "gkm/poly.hpp"

namespace gkm {

// Facet i of a Δ^k factor (i = 0..k) contains the vertices whose coordinate
// differs from i; facet j of a Σ^m factor (j = 0..m-1) contains both vertices
// and every parallel edge except edge j.
struct CharacteristicPair {
  std::vector<Factor> factors;
  std::vector<std::vector<QVector>> lambda; // lambda[factor][facet]
};

// λ(F_i) = e_i, λ(F_0) = -(e_1+...+e_k) on each Δ^k block; λ(F_j) = e_j on Σ
// blocks.
CharacteristicPair standard_pair(const std::vector<Factor> &factors);

// Torus graph of the pair: edge weights are the dual basis to the incident
// facet labels, taken at the record-direction source of each edge; connection
// inferred. Throws DependentLabels with a vertex witness.
GkmGraph product_model(const CharacteristicPair &pair);

GkmGraph simplex_model(int n);
GkmGraph sigma_model(int m);
GkmGraph standard_product_model(const std::vector<Factor> &factors);
// Δ² with λ = (1,0), (0,1), (alpha, beta).
GkmGraph weighted_projective_model(long alpha, long beta);
// I² with λ(F_{2,-}) = (a, 1): a = 0 is CP¹×CP¹.
GkmGraph hirzebruch_model(long a);

struct HypercubeModel {
  GkmGraph total;           // Iⁿ, rank n labels
  Automorphism involution;  // all coordinates flipped
  GkmGraph total_projected; // rank n-1 labels invariant under the involution
  GkmGraph quotient;        // 2^(n-1) vertices
};
HypercubeModel hypercube_involution_model(int n);

// Iterated projective bundles; bundles[l][i] is the coefficient of x_{i+1} in
// c_1 of the l-th line bundle (earlier generators only).
struct BottStage {
  int n = 1;
  std::vector<std::vector<long>> bundles;
};

struct BottRing {
  std::size_t generators = 0;
  std::vector<int> fiber_dims;
  std::vector<HomogPoly> relations; // f_j(x_j), monic in x_j
  std::vector<std::size_t> betti;   // b_0, b_2, ...

  // Rewrites x_j^{n_j+1} via f_j, last stage first.
  HomogPoly normal_form(const HomogPoly &p) const;
  // Monomials of degree d with every x_j exponent <= n_j.
  std::vector<Exponent> standard_monomials(std::size_t d) const;
};

// Throws MalformedSpec.
BottRing bott_tower_cohomology(const std::vector<BottStage> &stages);

} // namespace gkm

#endif
