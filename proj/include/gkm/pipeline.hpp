#ifndef GKM_PIPELINE_HPP
#define GKM_PIPELINE_HPP

#include <string>
#include <vector>

#include "gkm/extension.hpp"

namespace gkm {

struct ModelReport {
  bool ok = false;
  std::string failed_stage; // covering, deck_group, extension, weight_action, graph_betti, invariant_betti, betti_chain
  std::string witness;

  // hypotheses, recorded rather than enforced
  bool small_three_faces = false;
  std::string small_faces_witness;
  int gkm_order = 0;
  bool effective = false;

  std::vector<Factor> factors;
  std::size_t deck_order = 0;
  int extension_rank = 0;
  QMatrix phi;
  std::vector<FacetLabel> lambda;
  std::vector<QMatrix> action;
  std::vector<long> graph_betti;
  std::vector<long> model_betti;
};

ModelReport build_model(const GkmGraph &g, int jobs = 1);

enum class Verdict { Product, NontrivialCover, PreconditionFailed };
std::string to_string(Verdict v);

struct OrbitSpaceReport {
  Verdict verdict = Verdict::PreconditionFailed;
  std::vector<Factor> factors;
  std::size_t deck_order = 0;
  // every factor is Delta1, the group has order 2, and its nontrivial element
  // sends each vertex to the complementary tuple
  bool antipodal_cube = false;
  std::string witness;
};

OrbitSpaceReport classify_orbit_space(const GkmGraph &g);

} // namespace gkm

#endif
