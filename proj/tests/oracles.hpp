#ifndef GKM_TEST_ORACLES_HPP
#define GKM_TEST_ORACLES_HPP

#include <cstdint>
#include <optional>
#include <set>

#include "fixtures.hpp"

namespace oracles {

using namespace gkm;
using fixtures::D;

// Smallest connected, l-valent, nabla-closed edge subset containing the seed,
// found by enumerating all undirected edge subsets.
inline std::optional<Face> oracle_face(const GkmGraph &g, VertexId v, const std::vector<EdgeId> &seed) {
  const std::size_t m = g.num_undirected();
  const std::size_t l = seed.size();
  std::optional<Face> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    bool ok = true;
    for (EdgeId e : seed)
      ok = ok && ((mask >> g.edge(e).undirected) & 1);
    if (!ok)
      continue;
    auto in = [&](EdgeId e) { return ((mask >> g.edge(e).undirected) & 1) != 0; };
    std::set<VertexId> verts{v};
    for (std::size_t u = 0; u < m; ++u)
      if ((mask >> u) & 1) {
        verts.insert(g.source(static_cast<EdgeId>(2 * u)));
        verts.insert(g.target(static_cast<EdgeId>(2 * u)));
      }
    for (VertexId u : verts) {
      std::size_t cnt = 0;
      for (EdgeId e : g.star(u))
        cnt += in(e);
      ok = ok && cnt == l;
      for (EdgeId e : g.star(u))
        if (in(e))
          for (EdgeId h : g.star(u))
            if (in(h))
              ok = ok && in(g.nabla(e, h));
    }
    if (!ok)
      continue;
    // connected through the subset
    std::set<VertexId> reach{v};
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (EdgeId e : g.star(u))
        if (in(e) && reach.insert(g.target(e)).second)
          stack.push_back(g.target(e));
    }
    if (reach != verts)
      continue;
    Face f;
    f.vertices.assign(verts.begin(), verts.end());
    for (std::size_t u = 0; u < m; ++u)
      if ((mask >> u) & 1)
        f.edges.push_back(static_cast<int>(u));
    if (!best || f.edges.size() < best->edges.size())
      best = f;
  }
  return best;
}

inline std::vector<fixtures::Named> small_fixtures() {
  auto fs = fixtures::product_fixtures();
  fs.push_back({"Delta4", simplex_model(4)});
  fs.push_back({"Delta3xDelta1", standard_product_model({D(3), D(1)})});
  fs.push_back({"WP12", weighted_projective_model(1, 2)});
  fs.push_back({"Q3", hypercube_involution_model(3).quotient});
  fs.push_back({"Q4", hypercube_involution_model(4).quotient});
  return fs;
}


} // namespace oracles

#endif
