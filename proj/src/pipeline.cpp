#include "gkm/pipeline.hpp"

#include "gkm/cohomology.hpp"
#include "gkm/error.hpp"

namespace gkm {

namespace {

struct StageError {
  std::string stage;
  std::string witness;
};

template <class F>
auto stage(const char *name, F &&f) {
  try {
    return f();
  } catch (const Error &e) {
    throw StageError{name, e.kind() + ": " + e.witness()};
  }
}

std::string betti_str(const std::vector<long> &b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i)
    s += (i ? "," : "") + std::to_string(b[i]);
  return s + ")";
}

} // namespace

ModelReport build_model(const GkmGraph &g, int jobs) {
  ModelReport r;
  SmallFacesResult sf = check_small_three_faces(g);
  r.small_three_faces = sf.ok;
  r.small_faces_witness = sf.witness;
  r.gkm_order = g.labelled() ? gkm_order(g) : 0;
  r.effective = check_effective(g);
  try {
    CoveringMap c = stage("covering", [&] { return build_covering(g); });
    r.factors = c.total.factors;
    DeckGroup deck = stage("deck_group", [&] { return deck_group(c); });
    r.deck_order = deck.order();
    GkmGraph pb = stage("pull_back", [&] { return pull_back_labels(c); });
    Extension ext = stage("extension", [&] { return extend_to_gkm_n(pb); });
    r.extension_rank = ext.n;
    r.phi = ext.phi;
    r.lambda = stage("extension", [&] { return facet_labels(ext); });
    r.action = stage("weight_action", [&] { return induced_weight_action(pb, ext, deck); });
    r.graph_betti = stage("graph_betti", [&] { return betti_numbers(g, jobs).betti; });
    r.model_betti =
        stage("invariant_betti", [&] { return invariant_betti(pb, deck.elements, jobs).betti; });
    if (r.graph_betti != r.model_betti)
      throw StageError{"betti_chain", "graph " + betti_str(r.graph_betti) + " vs model " +
                                          betti_str(r.model_betti)};
    r.ok = true;
  } catch (const StageError &e) {
    r.failed_stage = e.stage;
    r.witness = e.witness;
  }
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Product:
    return "Product";
  case Verdict::NontrivialCover:
    return "NontrivialCover";
  case Verdict::PreconditionFailed:
    return "PreconditionFailed";
  }
  return "?";
}

OrbitSpaceReport classify_orbit_space(const GkmGraph &g) {
  OrbitSpaceReport r;
  if (!g.valence()) {
    r.witness = "graph is not regular";
    return r;
  }
  if (*g.valence() >= 2)
    for (const Face &f : enumerate_faces(g, 2))
      if (f.vertices.size() > 4) {
        r.witness = "2-face with " + std::to_string(f.vertices.size()) + " vertices at " +
                    g.vertex_name(f.vertices.front());
        return r;
      }
  CoveringMap c;
  try {
    c = build_covering(g);
  } catch (const Error &e) {
    r.witness = e.kind() + ": " + e.witness();
    return r;
  }
  DeckGroup deck = deck_group(c);
  r.factors = c.total.factors;
  r.deck_order = deck.order();
  if (deck.order() == 1) {
    r.verdict = Verdict::Product;
    return r;
  }
  r.verdict = Verdict::NontrivialCover;
  bool cubes = true;
  for (const Factor &f : r.factors)
    cubes = cubes && f.kind == FactorKind::Delta && f.size == 1;
  if (cubes && deck.order() == 2) {
    const auto &h = deck.elements[1];
    bool antipodal = true;
    for (std::size_t v = 0; v < c.total.coords.size(); ++v) {
      const auto &a = c.total.coords[v], &b = c.total.coords[h.vertex[v]];
      for (std::size_t i = 0; i < a.size(); ++i)
        antipodal = antipodal && a[i] + b[i] == 1;
    }
    r.antipodal_cube = antipodal;
  }
  return r;
}

} // namespace gkm
