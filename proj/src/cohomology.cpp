#include "gkm/cohomology.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

#include "gkm/error.hpp"

namespace gkm {

namespace {

// Unknown blocks: vertex v uses block slot[v]. Identity for the full ring,
// orbit index for invariants.
struct Slots {
  std::vector<std::size_t> of;
  std::size_t count = 0;
};

Slots identity_slots(const GkmGraph &g) {
  Slots s;
  s.count = g.num_vertices();
  for (std::size_t v = 0; v < s.count; ++v)
    s.of.push_back(v);
  return s;
}

Slots orbit_slots(const GkmGraph &g, const std::vector<Automorphism> &group) {
  Slots s;
  s.of.assign(g.num_vertices(), SIZE_MAX);
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    if (s.of[v] != SIZE_MAX)
      continue;
    for (const auto &h : group)
      s.of[h.vertex[v]] = s.count;
    ++s.count;
  }
  return s;
}

void require_labelled(const GkmGraph &g) {
  if (!g.labelled())
    throw Error("Unlabelled", "cohomology needs edge weights");
}

SparseEliminator constraint_system(const GkmGraph &g, const Slots &s, std::size_t d) {
  const std::size_t k = static_cast<std::size_t>(g.torus_rank());
  const std::size_t D = graded_dim(k, d);
  SparseEliminator el(s.count * D);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); e += 2) {
    std::size_t a = s.of[g.source(e)], b = s.of[g.target(e)];
    if (a == b)
      continue;
    QMatrix c = hyperplane_constraints(g.weight(e), d);
    // f_a - f_b; entries must come in increasing column order
    Rational sa = a < b ? Rational(1) : Rational(-1);
    std::size_t lo = std::min(a, b), hi = std::max(a, b);
    for (std::size_t r = 0; r < c.rows(); ++r) {
      SparseEliminator::Row row;
      for (std::size_t m = 0; m < D; ++m)
        if (c(r, m) != 0)
          row.emplace_back(lo * D + m, sa * c(r, m));
      for (std::size_t m = 0; m < D; ++m)
        if (c(r, m) != 0)
          row.emplace_back(hi * D + m, -sa * c(r, m));
      if (!row.empty())
        el.add_row(row);
    }
  }
  return el;
}

std::vector<CohomologyClass> basis_from(const GkmGraph &g, const Slots &s, std::size_t d) {
  const std::size_t k = static_cast<std::size_t>(g.torus_rank());
  const std::size_t D = graded_dim(k, d);
  SparseEliminator el = constraint_system(g, s, d);
  std::vector<CohomologyClass> out;
  for (const QVector &x : el.nullspace()) {
    CohomologyClass c;
    c.degree = d;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      std::vector<Rational> block(x.begin() + s.of[v] * D, x.begin() + (s.of[v] + 1) * D);
      c.entries.push_back(HomogPoly::from_coefficients(k, d, QVector(std::move(block))));
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t dim_from(const GkmGraph &g, const Slots &s, std::size_t d) {
  SparseEliminator el = constraint_system(g, s, d);
  return el.cols() - el.rank();
}

GradedDims graded_dims(const GkmGraph &g, const Slots &s, int jobs) {
  require_labelled(g);
  auto val = g.valence();
  if (!val)
    throw Error("FormalityViolation", "graph is not regular");
  const std::size_t n = *val;
  const std::size_t k = static_cast<std::size_t>(g.torus_rank());
  GradedDims out;
  out.vertices = s.count;
  out.equivariant.resize(n + 2);
  if (jobs > 1) {
    std::vector<std::future<std::size_t>> fs;
    for (std::size_t d = 0; d <= n + 1; ++d)
      fs.push_back(std::async(std::launch::async, [&, d] { return dim_from(g, s, d); }));
    for (std::size_t d = 0; d <= n + 1; ++d)
      out.equivariant[d] = fs[d].get();
  } else {
    for (std::size_t d = 0; d <= n + 1; ++d)
      out.equivariant[d] = dim_from(g, s, d);
  }
  std::vector<long> b;
  for (std::size_t d = 0; d <= n + 1; ++d) {
    long x = static_cast<long>(out.equivariant[d]);
    for (std::size_t j = 0; j < d; ++j)
      x -= b[j] * static_cast<long>(graded_dim(k, d - j));
    if (x < 0)
      throw Error("FormalityViolation",
                  "recursion gives b_" + std::to_string(2 * d) + " = " + std::to_string(x));
    b.push_back(x);
  }
  if (b[n + 1] != 0)
    throw Error("FormalityViolation",
                "guard degree " + std::to_string(n + 1) + " leaves b = " + std::to_string(b[n + 1]));
  b.pop_back();
  out.betti = b;
  for (long x : b)
    out.total += x;
  if (out.total != static_cast<long>(s.count))
    throw Error("FormalityViolation", "total Betti " + std::to_string(out.total) + " != " +
                                          std::to_string(s.count) + " fixed points");
  return out;
}

SparseEliminator::Row flatten(const CohomologyClass &c) {
  SparseEliminator::Row row;
  std::size_t D = c.entries.empty() ? 0 : graded_dim(c.entries[0].num_vars(), c.degree);
  for (std::size_t v = 0; v < c.entries.size(); ++v) {
    QVector x = c.entries[v].coefficients();
    for (std::size_t m = 0; m < D; ++m)
      if (x[m] != 0)
        row.emplace_back(v * D + m, x[m]);
  }
  return row;
}

} // namespace

bool CohomologyClass::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](const HomogPoly &p) { return p.is_zero(); });
}

CohomologyClass constant_class(const GkmGraph &g, const HomogPoly &p) {
  return CohomologyClass{p.degree(), std::vector<HomogPoly>(g.num_vertices(), p)};
}

std::string check_congruences(const GkmGraph &g, const CohomologyClass &c) {
  if (c.entries.size() != g.num_vertices())
    return "class has " + std::to_string(c.entries.size()) + " entries";
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); e += 2) {
    HomogPoly diff = c.entries[g.source(e)] - c.entries[g.target(e)];
    if (!vanishes_on_hyperplane(diff, g.weight(e)))
      return "edge " + g.describe_edge(e);
  }
  return {};
}

std::vector<CohomologyClass> equivariant_basis(const GkmGraph &g, std::size_t d) {
  require_labelled(g);
  return basis_from(g, identity_slots(g), d);
}

std::size_t equivariant_dim(const GkmGraph &g, std::size_t d) {
  require_labelled(g);
  return dim_from(g, identity_slots(g), d);
}

GradedDims betti_numbers(const GkmGraph &g, int jobs) {
  return graded_dims(g, identity_slots(g), jobs);
}

CohomologyClass facet_class(const GkmGraph &g, const Face &facet) {
  require_labelled(g);
  const std::size_t k = static_cast<std::size_t>(g.torus_rank());
  std::set<int> inside(facet.edges.begin(), facet.edges.end());
  std::map<VertexId, std::size_t> idx;
  std::vector<EdgeId> leaving;
  for (VertexId v : facet.vertices) {
    EdgeId out = -1;
    for (EdgeId e : g.star(v)) {
      if (inside.count(g.edge(e).undirected))
        continue;
      if (out != -1)
        throw Error("NoSuchClass", "vertex " + g.vertex_name(v) + " leaves the face twice");
      out = e;
    }
    if (out == -1)
      throw Error("NoSuchClass", "vertex " + g.vertex_name(v) + " has no edge leaving the face");
    idx[v] = leaving.size();
    leaving.push_back(out);
  }
  // c_u w(out_u) - c_w w(out_w) must vanish on ker of each inner edge
  std::vector<QVector> rows;
  for (int u : facet.edges) {
    EdgeId e = 2 * u;
    QMatrix c = hyperplane_constraints(g.weight(e), 1);
    std::size_t a = idx.at(g.source(e)), b = idx.at(g.target(e));
    QVector ra = c * g.weight(leaving[a]), rb = c * g.weight(leaving[b]);
    for (std::size_t r = 0; r < c.rows(); ++r) {
      QVector row(leaving.size());
      row[a] += ra[r];
      row[b] -= rb[r];
      rows.push_back(std::move(row));
    }
  }
  std::vector<QVector> ns;
  if (rows.empty()) {
    for (std::size_t i = 0; i < leaving.size(); ++i)
      ns.push_back(QVector::unit(leaving.size(), i));
  } else {
    ns = nullspace_basis(QMatrix::from_rows(rows, leaving.size()));
  }
  if (ns.size() != 1 || ns[0][0] == 0)
    throw Error("NoSuchClass", "support constraints leave a " + std::to_string(ns.size()) +
                                   "-dimensional solution space");
  QVector coef = ns[0] * (Rational(1) / ns[0][0]);
  CohomologyClass out;
  out.degree = 1;
  out.entries.assign(g.num_vertices(), HomogPoly(k, 1));
  for (VertexId v : facet.vertices) {
    std::size_t i = idx[v];
    out.entries[v] = HomogPoly::linear(g.weight(leaving[i]) * coef[i]);
  }
  return out;
}

CohomologyClass multiply_classes(const CohomologyClass &a, const CohomologyClass &b) {
  if (a.entries.size() != b.entries.size())
    throw Error("DimensionMismatch", "classes live on different graphs");
  CohomologyClass out;
  out.degree = a.degree + b.degree;
  for (std::size_t v = 0; v < a.entries.size(); ++v)
    out.entries.push_back(a.entries[v] * b.entries[v]);
  return out;
}

bool ordinary_zero_check(const GkmGraph &g, const CohomologyClass &c) {
  if (c.is_zero())
    return true;
  if (c.degree == 0)
    return false;
  const std::size_t k = static_cast<std::size_t>(g.torus_rank());
  SparseEliminator el(g.num_vertices() * graded_dim(k, c.degree));
  for (const auto &b : equivariant_basis(g, c.degree - 1))
    for (std::size_t i = 0; i < k; ++i) {
      HomogPoly x = HomogPoly::linear(QVector::unit(k, i));
      el.add_row(flatten(multiply_classes(constant_class(g, x), b)));
    }
  return el.reduce(flatten(c)).empty();
}

CohomologyClass act(const Automorphism &h, const CohomologyClass &c) {
  CohomologyClass out = c;
  for (std::size_t v = 0; v < c.entries.size(); ++v)
    out.entries[h.vertex[v]] = c.entries[v];
  return out;
}

static void require_label_preserving(const GkmGraph &g, const std::vector<Automorphism> &group) {
  for (const auto &h : group) {
    std::string w = check_automorphism(g, h, true);
    if (!w.empty())
      throw Error("NotCompatible", w);
  }
}

std::vector<CohomologyClass> invariant_basis(const GkmGraph &g,
                                             const std::vector<Automorphism> &group,
                                             std::size_t d) {
  require_labelled(g);
  require_label_preserving(g, group);
  return basis_from(g, orbit_slots(g, group), d);
}

GradedDims invariant_betti(const GkmGraph &g, const std::vector<Automorphism> &group, int jobs) {
  require_labelled(g);
  require_label_preserving(g, group);
  return graded_dims(g, orbit_slots(g, group), jobs);
}

CohomologyClass restrict_to_subtorus(const CohomologyClass &c, const QMatrix &phi) {
  QMatrix sub = phi.transpose();
  CohomologyClass out;
  out.degree = c.degree;
  for (const auto &p : c.entries)
    out.entries.push_back(p.substitute(sub));
  return out;
}

long torus_upper_bound(const CoveringMap &c, const DeckGroup &deck, int jobs) {
  const GkmGraph &t = c.total.graph;
  int n = c.total.dimension();
  std::set<std::pair<std::vector<VertexId>, std::vector<int>>> seen;
  long orbits = 0;
  for (const Face &f : enumerate_faces(t, n - 1)) {
    if (seen.count(f.key()))
      continue;
    ++orbits;
    for (const auto &h : deck.elements) {
      std::vector<VertexId> vs;
      std::vector<int> es;
      for (VertexId v : f.vertices)
        vs.push_back(h.vertex[v]);
      for (int u : f.edges)
        es.push_back(t.edge(h.edge[2 * u]).undirected);
      std::sort(vs.begin(), vs.end());
      std::sort(es.begin(), es.end());
      seen.emplace(std::move(vs), std::move(es));
    }
  }
  GradedDims inv = invariant_betti(pull_back_labels(c), deck.elements, jobs);
  long b2 = inv.betti.size() > 1 ? inv.betti[1] : 0;
  return orbits - b2;
}

} // namespace gkm
