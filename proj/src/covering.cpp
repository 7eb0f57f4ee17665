#include "gkm/covering.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "gkm/error.hpp"

namespace gkm {

std::string Factor::str() const {
  return (kind == FactorKind::Delta ? "Delta" : "Sigma") + std::to_string(size);
}

void sort_factors(std::vector<Factor> &fs) {
  std::stable_sort(fs.begin(), fs.end(), [](const Factor &a, const Factor &b) {
    if (a.kind != b.kind)
      return a.kind == FactorKind::Delta;
    return a.size > b.size;
  });
}

std::string factors_str(const std::vector<Factor> &fs) {
  std::string s;
  for (std::size_t i = 0; i < fs.size(); ++i)
    s += (i ? "x" : "") + fs[i].str();
  return s;
}

namespace {

std::string tuple_name(const std::vector<int> &c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i)
    s += (i ? "," : "") + std::to_string(c[i]);
  return s;
}

} // namespace

int ProductGraph::dimension() const {
  int n = 0;
  for (const auto &f : factors)
    n += f.size;
  return n;
}

ProductGraph build_product_graph(const std::vector<Factor> &factors) {
  if (factors.empty())
    throw Error("InvalidFactor", "empty factor list");
  for (const auto &f : factors)
    if ((f.kind == FactorKind::Delta && f.size < 1) || (f.kind == FactorKind::Sigma && f.size < 2))
      throw Error("InvalidFactor", "factor " + f.str() + " has invalid size");
  ProductGraph p;
  p.factors = factors;
  const std::size_t r = factors.size();

  std::vector<std::vector<int>> tuples;
  std::vector<int> cur(r, 0);
  while (true) {
    tuples.push_back(cur);
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (++cur[i] < factors[i].vertex_count())
        break;
      cur[i] = 0;
      if (i == 0) {
        i = r + 1;
        break;
      }
    }
    if (i == r + 1)
      break;
  }

  GraphData d;
  d.torus_rank = 0;
  struct Meta {
    int factor, parallel;
  };
  std::map<std::string, Meta> meta;
  for (const auto &t : tuples) {
    d.vertices.push_back(tuple_name(t));
    for (std::size_t f = 0; f < r; ++f) {
      const Factor &fac = factors[f];
      if (fac.kind == FactorKind::Delta) {
        for (int b = t[f] + 1; b <= fac.size; ++b) {
          auto w = t;
          w[f] = b;
          std::string id = tuple_name(t) + "|" + tuple_name(w);
          d.edges.push_back({id, tuple_name(t), tuple_name(w), {}});
          meta[id] = {static_cast<int>(f), -1};
        }
      } else if (t[f] == 0) {
        auto w = t;
        w[f] = 1;
        for (int j = 0; j < fac.size; ++j) {
          std::string id = tuple_name(t) + "|" + tuple_name(w) + "#" + std::to_string(j);
          d.edges.push_back({id, tuple_name(t), tuple_name(w), {}});
          meta[id] = {static_cast<int>(f), j};
        }
      }
    }
  }
  GkmGraph g = GkmGraph::from_data(d);
  p.coords.resize(g.num_vertices());
  for (const auto &t : tuples)
    p.coords[*g.find_vertex(tuple_name(t))] = t;
  p.edge_factor.resize(g.num_edges());
  p.edge_parallel.resize(g.num_edges());
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); e += 2) {
    const Meta &m = meta.at(g.edge_name(e));
    p.edge_factor[e] = p.edge_factor[e + 1] = m.factor;
    p.edge_parallel[e] = p.edge_parallel[e + 1] = m.parallel;
  }
  // (source, factor, target coordinate, parallel) -> edge
  std::map<std::tuple<VertexId, int, int, int>, EdgeId> step;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    int f = p.edge_factor[e];
    step[{g.source(e), f, p.coords[g.target(e)][f], p.edge_parallel[e]}] = e;
  }
  GkmGraph::Connection conn(g.num_edges());
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    VertexId u = g.source(e), w = g.target(e);
    int fe = p.edge_factor[e];
    for (EdgeId h : g.star(u)) {
      EdgeId img;
      int fh = p.edge_factor[h];
      if (h == e) {
        img = g.reverse(e);
      } else if (fh == fe && factors[fe].kind == FactorKind::Sigma) {
        img = g.reverse(h);
      } else {
        img = step.at({w, fh, p.coords[g.target(h)][fh], p.edge_parallel[h]});
      }
      conn[e].push_back(img);
    }
  }
  p.graph = g.with_connection(std::move(conn));
  return p;
}

GkmGraph ProductGraph::standard_labels() const {
  const int n = dimension();
  std::vector<int> offset;
  int off = 0;
  for (const auto &f : factors) {
    offset.push_back(off);
    off += f.size;
  }
  std::vector<QVector> ws;
  for (EdgeId e = 0; e < static_cast<EdgeId>(graph.num_edges()); e += 2) {
    int f = edge_factor[e];
    QVector w(static_cast<std::size_t>(n));
    if (factors[f].kind == FactorKind::Delta) {
      int a = coords[graph.source(e)][f], b = coords[graph.target(e)][f];
      if (b > 0)
        w[offset[f] + b - 1] += Rational(1);
      if (a > 0)
        w[offset[f] + a - 1] -= Rational(1);
    } else {
      w[offset[f] + edge_parallel[e]] = 1;
    }
    ws.push_back(std::move(w));
  }
  return graph.with_weights(n, std::move(ws));
}

Automorphism identity_automorphism(const GkmGraph &g) {
  Automorphism a;
  a.vertex.resize(g.num_vertices());
  a.edge.resize(g.num_edges());
  std::iota(a.vertex.begin(), a.vertex.end(), 0);
  std::iota(a.edge.begin(), a.edge.end(), 0);
  return a;
}

Automorphism compose(const Automorphism &a, const Automorphism &b) {
  Automorphism c;
  c.vertex.resize(b.vertex.size());
  c.edge.resize(b.edge.size());
  for (std::size_t v = 0; v < b.vertex.size(); ++v)
    c.vertex[v] = a.vertex[b.vertex[v]];
  for (std::size_t e = 0; e < b.edge.size(); ++e)
    c.edge[e] = a.edge[b.edge[e]];
  return c;
}

std::string check_automorphism(const GkmGraph &g, const Automorphism &a, bool labels) {
  if (a.vertex.size() != g.num_vertices() || a.edge.size() != g.num_edges())
    return "size mismatch";
  std::set<VertexId> vs(a.vertex.begin(), a.vertex.end());
  std::set<EdgeId> es(a.edge.begin(), a.edge.end());
  if (vs.size() != g.num_vertices() || es.size() != g.num_edges())
    return "not a bijection";
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    EdgeId ae = a.edge[e];
    if (g.source(ae) != a.vertex[g.source(e)] || g.target(ae) != a.vertex[g.target(e)])
      return "edge " + g.describe_edge(e) + " not mapped along its endpoints";
    if (a.edge[g.reverse(e)] != g.reverse(ae))
      return "reverse of " + g.edge_name(e) + " not preserved";
    if (labels && g.weight(ae) != g.weight(e))
      return "weight of " + g.edge_name(e) + " " + g.weight(e).str() + " becomes " +
             g.weight(ae).str();
    if (g.has_connection())
      for (EdgeId h : g.star(g.source(e)))
        if (a.edge[g.nabla(e, h)] != g.nabla(ae, a.edge[h]))
          return "connection along " + g.edge_name(e) + " at " + g.edge_name(h) +
                 " not preserved";
  }
  return {};
}

namespace {

// Transports a star bijection from `root` of `src` over the whole graph,
// assuming each step commutes with the connections. `dst_nabla(e, h)` is the
// connection of the target graph. Returns per-vertex star images; throws
// `kind` on a conflict.
struct Propagation {
  std::vector<VertexId> vertex;          // image vertex, -1 unset
  std::vector<std::vector<EdgeId>> star; // image of star(v)[i]
};

template <class TargetGraph>
Propagation propagate(const GkmGraph &src, VertexId root, std::vector<EdgeId> root_star,
                      const TargetGraph &dst, const std::string &kind) {
  Propagation pr;
  pr.vertex.assign(src.num_vertices(), -1);
  pr.star.assign(src.num_vertices(), {});
  pr.vertex[root] = dst.source(root_star.empty() ? 0 : root_star[0]);
  pr.star[root] = std::move(root_star);
  std::queue<VertexId> q;
  q.push(root);
  while (!q.empty()) {
    VertexId y = q.front();
    q.pop();
    const auto &sy = src.star(y);
    for (std::size_t i = 0; i < sy.size(); ++i) {
      EdgeId e = sy[i];
      EdgeId be = pr.star[y][i];
      VertexId z = src.target(e);
      std::vector<EdgeId> img(src.star(z).size(), -1);
      for (std::size_t j = 0; j < sy.size(); ++j) {
        EdgeId th = src.nabla(e, sy[j]);
        img[src.star_position(th)] = dst.nabla(be, pr.star[y][j]);
      }
      VertexId bz = dst.target(be);
      if (pr.vertex[z] < 0) {
        pr.vertex[z] = bz;
        pr.star[z] = std::move(img);
        q.push(z);
      } else if (pr.vertex[z] != bz || pr.star[z] != img) {
        std::ostringstream os;
        os << "vertex " << src.vertex_name(z) << " reached along " << src.describe_edge(e)
           << " maps to " << dst.vertex_name(bz) << " but was assigned "
           << dst.vertex_name(pr.vertex[z]);
        if (pr.vertex[z] == bz)
          for (std::size_t j = 0; j < img.size(); ++j)
            if (img[j] != pr.star[z][j]) {
              os << "; star edge " << src.edge_name(src.star(z)[j]) << " maps to "
                 << dst.edge_name(img[j]) << " and " << dst.edge_name(pr.star[z][j]);
              break;
            }
        throw Error(kind, os.str());
      }
    }
  }
  for (VertexId v = 0; v < static_cast<VertexId>(src.num_vertices()); ++v)
    if (pr.vertex[v] < 0)
      throw Error(kind, "vertex " + src.vertex_name(v) + " unreachable");
  return pr;
}

} // namespace

CoveringMap build_covering(const GkmGraph &g, VertexId x) {
  if (!g.has_connection())
    throw Error("MissingConnection", "covering needs a connection");
  SimplexPartition part = maximal_simplex_partition(g, x);
  std::vector<SimplexBlock> blocks = part.blocks;
  std::stable_sort(blocks.begin(), blocks.end(), [](const SimplexBlock &a, const SimplexBlock &b) {
    if (a.kind != b.kind)
      return a.kind == FactorKind::Delta;
    return a.size() > b.size();
  });
  std::vector<Factor> factors;
  for (const auto &b : blocks) {
    if (b.kind == FactorKind::Sigma && b.size() < 2)
      throw Error("PartitionInconsistent", "Sigma block of size 1");
    factors.push_back({b.kind, b.size()});
  }
  CoveringMap c;
  c.total = build_product_graph(factors);
  c.base = g;
  c.base_point = x;
  const GkmGraph &P = c.total.graph;
  VertexId x0 = *P.find_vertex(tuple_name(std::vector<int>(factors.size(), 0)));
  c.total_base_point = x0;

  // star(x0) in factor order, then target coordinate / parallel index
  std::vector<EdgeId> ordered(P.star(x0).begin(), P.star(x0).end());
  std::sort(ordered.begin(), ordered.end(), [&](EdgeId a, EdgeId b) {
    int fa = c.total.edge_factor[a], fb = c.total.edge_factor[b];
    if (fa != fb)
      return fa < fb;
    if (c.total.edge_parallel[a] != c.total.edge_parallel[b])
      return c.total.edge_parallel[a] < c.total.edge_parallel[b];
    return c.total.coords[P.target(a)][fa] < c.total.coords[P.target(b)][fb];
  });
  std::vector<EdgeId> root_star(ordered.size());
  std::size_t k = 0;
  for (const auto &b : blocks)
    for (EdgeId e : b.edges)
      root_star[P.star_position(ordered[k++])] = e;

  Propagation pr = propagate(P, x0, std::move(root_star), g, "WellDefinednessFailure");
  c.vertex_map = pr.vertex;
  c.edge_map.assign(P.num_edges(), -1);
  for (VertexId v = 0; v < static_cast<VertexId>(P.num_vertices()); ++v)
    for (std::size_t i = 0; i < P.star(v).size(); ++i)
      c.edge_map[P.star(v)[i]] = pr.star[v][i];
  std::string bad = verify_covering(c);
  if (!bad.empty())
    throw Error("WellDefinednessFailure", bad);
  return c;
}

CoveringMap build_covering(const GkmGraph &g) { return build_covering(g, 0); }

std::string verify_covering(const CoveringMap &c) {
  const GkmGraph &P = c.total.graph;
  const GkmGraph &g = c.base;
  std::vector<std::size_t> fiber(g.num_vertices(), 0);
  for (VertexId y = 0; y < static_cast<VertexId>(P.num_vertices()); ++y) {
    VertexId b = c.vertex_map[y];
    ++fiber[b];
    std::set<EdgeId> img;
    for (EdgeId e : P.star(y)) {
      EdgeId be = c.edge_map[e];
      if (be < 0 || g.source(be) != b || g.target(be) != c.vertex_map[P.target(e)])
        return "edge " + P.describe_edge(e) + " not mapped onto an edge at " + g.vertex_name(b);
      if (c.edge_map[P.reverse(e)] != g.reverse(be))
        return "reverse of " + P.edge_name(e) + " not preserved";
      img.insert(be);
      for (EdgeId h : P.star(y))
        if (g.nabla(be, c.edge_map[h]) != c.edge_map[P.nabla(e, h)])
          return "connection not compatible along " + P.describe_edge(e) + " at " +
                 P.edge_name(h);
    }
    if (img.size() != g.star(b).size() || img.size() != P.star(y).size())
      return "star of " + P.vertex_name(y) + " not mapped bijectively";
  }
  for (std::size_t b = 0; b < fiber.size(); ++b)
    if (fiber[b] != fiber[0] || fiber[b] == 0)
      return "fibers have different sizes";
  return {};
}

int DeckGroup::inverse(int a) const {
  for (std::size_t b = 0; b < order(); ++b)
    if (table[a][b] == 0)
      return static_cast<int>(b);
  return -1;
}

DeckGroup deck_group(const CoveringMap &c) {
  const GkmGraph &P = c.total.graph;
  const VertexId x0 = c.total_base_point;
  std::vector<VertexId> fiber{x0};
  for (VertexId y = 0; y < static_cast<VertexId>(P.num_vertices()); ++y)
    if (y != x0 && c.vertex_map[y] == c.vertex_map[x0])
      fiber.push_back(y);
  DeckGroup G;
  for (VertexId y : fiber) {
    std::map<EdgeId, EdgeId> at_y; // base edge -> star edge of y
    for (EdgeId e : P.star(y))
      at_y[c.edge_map[e]] = e;
    std::vector<EdgeId> root_star;
    for (EdgeId h : P.star(x0))
      root_star.push_back(at_y.at(c.edge_map[h]));
    Propagation pr = propagate(P, x0, std::move(root_star), P, "NotGalois");
    Automorphism a;
    a.vertex = pr.vertex;
    a.edge.assign(P.num_edges(), -1);
    for (VertexId v = 0; v < static_cast<VertexId>(P.num_vertices()); ++v)
      for (std::size_t i = 0; i < P.star(v).size(); ++i)
        a.edge[P.star(v)[i]] = pr.star[v][i];
    std::string bad = check_automorphism(P, a, false);
    if (!bad.empty())
      throw Error("NotGalois", "extension to " + P.vertex_name(y) + ": " + bad);
    for (VertexId v = 0; v < static_cast<VertexId>(P.num_vertices()); ++v)
      if (c.vertex_map[a.vertex[v]] != c.vertex_map[v])
        throw Error("NotGalois", "extension to " + P.vertex_name(y) +
                                     " does not commute with the projection at " +
                                     P.vertex_name(v));
    for (EdgeId e = 0; e < static_cast<EdgeId>(P.num_edges()); ++e)
      if (c.edge_map[a.edge[e]] != c.edge_map[e])
        throw Error("NotGalois", "extension to " + P.vertex_name(y) +
                                     " does not commute with the projection on " +
                                     P.edge_name(e));
    G.elements.push_back(std::move(a));
  }
  std::map<VertexId, int> by_image;
  for (std::size_t i = 0; i < G.elements.size(); ++i)
    by_image[G.elements[i].vertex[x0]] = static_cast<int>(i);
  G.table.assign(G.order(), std::vector<int>(G.order(), -1));
  for (std::size_t a = 0; a < G.order(); ++a)
    for (std::size_t b = 0; b < G.order(); ++b) {
      Automorphism ab = compose(G.elements[a], G.elements[b]);
      auto it = by_image.find(ab.vertex[x0]);
      if (it == by_image.end() || !(G.elements[it->second] == ab))
        throw Error("NotGalois", "deck transformations are not closed under composition");
      G.table[a][b] = it->second;
    }
  // simple transitivity on every fiber
  std::map<VertexId, std::vector<VertexId>> fibers;
  for (VertexId y = 0; y < static_cast<VertexId>(P.num_vertices()); ++y)
    fibers[c.vertex_map[y]].push_back(y);
  for (const auto &[b, ys] : fibers) {
    if (ys.size() != G.order())
      throw Error("NotGalois", "fiber over " + c.base.vertex_name(b) + " has " +
                                   std::to_string(ys.size()) + " points, group order " +
                                   std::to_string(G.order()));
    for (VertexId y : ys) {
      std::set<VertexId> orbit;
      for (const auto &a : G.elements)
        orbit.insert(a.vertex[y]);
      if (orbit != std::set<VertexId>(ys.begin(), ys.end()))
        throw Error("NotGalois", "action on the fiber over " + c.base.vertex_name(b) +
                                     " is not simply transitive");
    }
  }
  return G;
}

GkmGraph pull_back_labels(const CoveringMap &c) {
  if (!c.base.labelled())
    throw Error("Unlabelled", "base graph has no labels");
  const GkmGraph &P = c.total.graph;
  std::vector<QVector> ws;
  for (EdgeId e = 0; e < static_cast<EdgeId>(P.num_edges()); e += 2)
    ws.push_back(c.base.weight(c.edge_map[e]));
  return P.with_weights(c.base.torus_rank(), std::move(ws));
}

GkmGraph quotient_graph(const GkmGraph &g, const std::vector<Automorphism> &group) {
  if (group.empty())
    throw Error("NotCompatible", "empty group");
  Automorphism id = identity_automorphism(g);
  for (const auto &a : group) {
    if (a == id || a.vertex.size() != g.num_vertices())
      continue;
    for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
      if (a.vertex[v] == v)
        throw Error("NotFree", "a non-identity element fixes vertex " + g.vertex_name(v));
  }
  for (std::size_t i = 0; i < group.size(); ++i) {
    std::string bad = check_automorphism(g, group[i], g.labelled());
    if (!bad.empty())
      throw Error("NotCompatible", "element " + std::to_string(i) + ": " + bad);
  }
  for (const auto &a : group)
    for (const auto &b : group)
      if (std::find(group.begin(), group.end(), compose(a, b)) == group.end())
        throw Error("NotCompatible", "elements do not form a group");
  std::vector<VertexId> vrep(g.num_vertices());
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    vrep[v] = v;
    for (const auto &a : group)
      vrep[v] = std::min(vrep[v], a.vertex[v]);
  }
  // quotient edge label for each directed edge
  std::vector<std::string> qname(g.num_edges());
  GraphData d;
  d.torus_rank = g.torus_rank();
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
    if (vrep[v] == v)
      d.vertices.push_back(g.vertex_name(v));
  std::vector<bool> done(g.num_edges(), false);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); e += 2) {
    if (done[e])
      continue;
    std::set<EdgeId> fwd, bwd;
    for (const auto &a : group) {
      fwd.insert(a.edge[e]);
      bwd.insert(a.edge[g.reverse(e)]);
    }
    for (EdgeId f : fwd)
      if (bwd.count(f))
        throw Error("NotFree", "edge " + g.edge_name(e) + " is reversed by the action");
    if (vrep[g.source(e)] == vrep[g.target(e)])
      throw Error("NotCompatible", "edge " + g.edge_name(e) + " joins two points of one orbit");
    // representative: smallest record-direction id in either orbit
    EdgeId rep = -1;
    for (EdgeId f : fwd)
      if (f % 2 == 0 && (rep < 0 || f < rep))
        rep = f;
    for (EdgeId f : bwd)
      if (f % 2 == 0 && (rep < 0 || f < rep))
        rep = f;
    const bool rep_in_fwd = fwd.count(rep) > 0;
    const std::string &name = g.edge_name(rep);
    for (EdgeId f : fwd) {
      qname[f] = rep_in_fwd ? name : name + "~";
      done[f] = true;
    }
    for (EdgeId f : bwd) {
      qname[f] = rep_in_fwd ? name + "~" : name;
      done[f] = true;
    }
    EdgeRecord r{name, g.vertex_name(vrep[g.source(rep)]), g.vertex_name(vrep[g.target(rep)]), {}};
    if (g.labelled())
      r.weight = g.weight(rep).entries();
    d.edges.push_back(std::move(r));
  }
  if (g.has_connection()) {
    std::vector<ConnectionRecord> conn;
    std::set<std::string> emitted;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
      if (!emitted.insert(qname[e]).second)
        continue;
      ConnectionRecord rec{qname[e], {}};
      for (EdgeId h : g.star(g.source(e)))
        rec.map.emplace_back(qname[h], qname[g.nabla(e, h)]);
      conn.push_back(std::move(rec));
    }
    d.connection = std::move(conn);
  }
  return GkmGraph::from_data(d);
}

std::vector<GapRow> gap_corollary_table(int max_n) {
  std::vector<GapRow> rows;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<Factor> types;
    for (int s = n; s >= 1; --s)
      types.push_back({FactorKind::Delta, s});
    for (int s = n; s >= 2; --s)
      types.push_back({FactorKind::Sigma, s});
    GapRow row{n, 0, 0, true};
    const std::size_t cube = std::size_t{1} << n;
    std::vector<Factor> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
      if (left == 0) {
        ++row.multisets;
        std::size_t v = 1;
        bool all_d1 = true;
        for (const auto &f : cur) {
          v *= static_cast<std::size_t>(f.vertex_count());
          all_d1 = all_d1 && f.kind == FactorKind::Delta && f.size == 1;
        }
        if (all_d1) {
          row.ok = row.ok && v == cube;
          return;
        }
        row.max_non_cube = std::max(row.max_non_cube, v);
        // v <= 3 * 2^(n-2)  <=>  4 v <= 3 * 2^n
        if (4 * v > 3 * cube || v == cube)
          row.ok = false;
        return;
      }
      for (std::size_t i = from; i < types.size(); ++i)
        if (types[i].size <= left) {
          cur.push_back(types[i]);
          rec(i, left - types[i].size);
          cur.pop_back();
        }
    };
    rec(0, n);
    rows.push_back(row);
  }
  return rows;
}

} // namespace gkm
