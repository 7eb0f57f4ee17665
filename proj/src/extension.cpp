#include "gkm/extension.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "gkm/error.hpp"

namespace gkm {

namespace {

// Star vectors at target(h) from those at source(h), by the recursion
// lift(nabla_h c) = p lift(c) + q lift(h) with p, q read off the labels.
std::vector<QVector> step(const GkmGraph &g, const std::vector<QVector> &at_u, EdgeId h) {
  VertexId u = g.source(h), w = g.target(h);
  const auto &su = g.star(u);
  std::vector<QVector> out(g.star(w).size());
  const QVector &bh = at_u[g.star_position(h)];
  for (std::size_t i = 0; i < su.size(); ++i) {
    EdgeId c = su[i];
    EdgeId img = g.nabla(h, c);
    if (c == h) {
      out[g.star_position(img)] = bh;
      continue;
    }
    std::vector<QVector> gens{g.weight(c), g.weight(h)};
    auto pq = solve_in_span(g.weight(img), gens);
    if (!pq)
      throw Error("CoefficientNotFound", "weight of " + g.edge_name(img) +
                                             " is not in span{w(" + g.edge_name(c) + "), w(" +
                                             g.edge_name(h) + ")}");
    out[g.star_position(img)] = at_u[i] * (*pq)[0] + bh * (*pq)[1];
  }
  return out;
}

std::vector<QVector> standard_basis(std::size_t n) {
  std::vector<QVector> b;
  for (std::size_t i = 0; i < n; ++i)
    b.push_back(QVector::unit(n, i));
  return b;
}

std::string tree_path(const GkmGraph &g, const std::vector<EdgeId> &parent, VertexId v) {
  std::vector<std::string> names{g.vertex_name(v)};
  while (parent[v] >= 0) {
    v = g.source(parent[v]);
    names.push_back(g.vertex_name(v));
  }
  std::string s;
  for (auto it = names.rbegin(); it != names.rend(); ++it)
    s += (s.empty() ? "" : " -> ") + *it;
  return s;
}

} // namespace

std::vector<QVector> transport_weights(const GkmGraph &g, VertexId v0,
                                       const std::vector<EdgeId> &path) {
  if (!g.labelled() || !g.has_connection())
    throw Error("CoefficientNotFound", "transport needs labels and a connection");
  std::vector<QVector> cur = standard_basis(g.star(v0).size());
  VertexId at = v0;
  for (EdgeId h : path) {
    if (g.source(h) != at)
      throw Error("Malformed", "path is not connected at " + g.edge_name(h));
    cur = step(g, cur, h);
    at = g.target(h);
  }
  return cur;
}

Extension extend_to_gkm_n(const GkmGraph &g, TreeOrder order) {
  if (!g.labelled() || !g.has_connection())
    throw Error("CoefficientNotFound", "extension needs labels and a connection");
  auto val = g.valence();
  if (!val)
    throw Error("Malformed", "graph is not regular");
  Extension ext;
  ext.n = static_cast<int>(*val);
  ext.base = 0;
  ext.basis = g.star(0);
  const std::size_t k = static_cast<std::size_t>(g.torus_rank());
  std::vector<QVector> cols;
  for (EdgeId e : ext.basis)
    cols.push_back(g.weight(e));
  ext.phi = QMatrix::from_columns(cols, k);

  const std::size_t V = g.num_vertices();
  ext.star_vectors.assign(V, {});
  std::vector<EdgeId> parent(V, -1);
  std::vector<bool> seen(V, false);
  ext.star_vectors[0] = standard_basis(*val);
  seen[0] = true;
  std::queue<VertexId> q;
  q.push(0);
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    std::vector<EdgeId> s = g.star(u);
    if (order == TreeOrder::Reverse)
      std::reverse(s.begin(), s.end());
    for (EdgeId h : s) {
      VertexId w = g.target(h);
      if (seen[w])
        continue;
      seen[w] = true;
      parent[w] = h;
      ext.star_vectors[w] = step(g, ext.star_vectors[u], h);
      q.push(w);
    }
  }
  for (VertexId v = 0; v < static_cast<VertexId>(V); ++v)
    if (!seen[v])
      throw Error("Malformed", "graph is disconnected");
  // every non-tree edge closes a fundamental cycle
  for (EdgeId h = 0; h < static_cast<EdgeId>(g.num_edges()); ++h) {
    VertexId u = g.source(h), w = g.target(h);
    if (parent[w] == h)
      continue;
    auto pred = step(g, ext.star_vectors[u], h);
    if (pred != ext.star_vectors[w]) {
      std::ostringstream os;
      os << "cycle [" << tree_path(g, parent, u) << "] --" << g.edge_name(h) << "--> ["
         << tree_path(g, parent, w) << "] reversed";
      for (std::size_t i = 0; i < pred.size(); ++i)
        if (pred[i] != ext.star_vectors[w][i]) {
          os << "; edge " << g.edge_name(g.star(w)[i]) << " gets " << pred[i].str()
             << " instead of " << ext.star_vectors[w][i].str();
          break;
        }
      throw Error("InconsistentHolonomy", os.str());
    }
  }
  std::vector<QVector> beta;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); e += 2)
    beta.push_back(ext.star_vectors[g.source(e)][g.star_position(e)]);
  ext.beta = g.with_weights(ext.n, std::move(beta));
  return ext;
}

std::vector<QMatrix> induced_weight_action(const GkmGraph &g, const Extension &ext,
                                           const DeckGroup &deck) {
  std::vector<QVector> all;
  for (const auto &sv : ext.star_vectors)
    all.insert(all.end(), sv.begin(), sv.end());
  Lattice lattice(all, static_cast<std::size_t>(ext.n));

  std::vector<QMatrix> mats;
  for (std::size_t a = 0; a < deck.order(); ++a) {
    const Automorphism &gr = deck.elements[a];
    std::vector<QVector> cols;
    for (EdgeId e : ext.basis)
      cols.push_back(ext.lift(g, gr.edge[e]));
    QMatrix A = QMatrix::from_columns(cols, static_cast<std::size_t>(ext.n));
    if (!(ext.phi * A == ext.phi))
      throw Error("ActionNotCompatible", "phi A_g != phi for element " + std::to_string(a));
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e)
      if (A * ext.lift(g, e) != ext.lift(g, gr.edge[e]))
        throw Error("ActionNotCompatible", "A_g lift(" + g.edge_name(e) + ") != lift(" +
                                               g.edge_name(gr.edge[e]) + ") for element " +
                                               std::to_string(a));
    for (const auto &b : lattice.basis())
      if (!lattice.contains(A * b))
        throw Error("ActionNotCompatible", "A_g does not preserve the weight lattice (element " +
                                               std::to_string(a) + ", vector " + b.str() + ")");
    mats.push_back(std::move(A));
  }
  for (std::size_t a = 0; a < deck.order(); ++a)
    for (std::size_t b = 0; b < deck.order(); ++b)
      if (!(mats[deck.table[a][b]] == mats[a] * mats[b]))
        throw Error("ActionNotCompatible", "g -> A_g is not a homomorphism at (" +
                                               std::to_string(a) + "," + std::to_string(b) + ")");
  return mats;
}

std::vector<FacetLabel> facet_labels(const Extension &ext) {
  const GkmGraph &g = ext.beta;
  std::vector<FacetLabel> out;
  for (const Face &f : enumerate_faces(g, ext.n - 1)) {
    VertexId v = f.vertices[0];
    std::vector<QVector> inside;
    QVector leave;
    for (EdgeId e : g.star(v)) {
      const QVector &b = ext.lift(g, e);
      if (std::binary_search(f.edges.begin(), f.edges.end(), g.edge(e).undirected))
        inside.push_back(b);
      else
        leave = b;
    }
    QVector lam(static_cast<std::size_t>(ext.n));
    if (!inside.empty()) {
      auto ns = nullspace_basis(QMatrix::from_rows(inside, static_cast<std::size_t>(ext.n)));
      if (ns.size() != 1)
        throw Error("DependentLabels", "facet normal not unique at " + g.vertex_name(v));
      lam = ns[0];
    } else {
      lam = QVector::unit(static_cast<std::size_t>(ext.n), 0);
    }
    Rational s = lam.dot(leave);
    if (s.is_zero())
      throw Error("DependentLabels", "facet normal orthogonal to the leaving edge");
    out.push_back({f.vertices, lam * s.inverse()});
  }
  return out;
}

} // namespace gkm
