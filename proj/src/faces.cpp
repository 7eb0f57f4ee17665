#include "gkm/faces.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "gkm/error.hpp"

namespace gkm {

std::string to_string(FaceType t) {
  switch (t) {
  case FaceType::Point: return "Point";
  case FaceType::Edge: return "Edge";
  case FaceType::Biangle: return "Biangle";
  case FaceType::Triangle: return "Triangle";
  case FaceType::Square: return "Square";
  case FaceType::Simplex3: return "Delta3";
  case FaceType::Sigma3: return "Sigma3";
  case FaceType::TriangleTimesI: return "Delta2xI";
  case FaceType::BiangleTimesI: return "Sigma2xI";
  case FaceType::Cube: return "I3";
  case FaceType::Other: return "Other";
  }
  return "Other";
}

bool Face::contains_vertex(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::vector<EdgeId> Face::star(const GkmGraph &g, VertexId v) const {
  std::vector<EdgeId> out;
  for (EdgeId e : g.star(v))
    if (std::binary_search(edges.begin(), edges.end(), g.edge(e).undirected))
      out.push_back(e);
  return out;
}

namespace {

std::string edge_list(const GkmGraph &g, const std::vector<EdgeId> &es) {
  std::string s = "{";
  for (std::size_t i = 0; i < es.size(); ++i)
    s += (i ? "," : "") + g.edge_name(es[i]);
  return s + "}";
}

bool span_applicable(const GkmGraph &g, int l) {
  auto val = g.valence();
  if (!g.labelled() || !val || l + 1 > static_cast<int>(*val) || l < 1)
    return false;
  return l + 1 < 2 || check_gkm_k(g, l + 1).ok;
}

Face finish(const GkmGraph &g, std::set<VertexId> verts, std::set<int> edges, int l) {
  Face f;
  f.vertices.assign(verts.begin(), verts.end());
  f.edges.assign(edges.begin(), edges.end());
  f.dim = l;
  (void)g;
  return f;
}

// Transport the edge set along the connection until closed.
Face connection_closure(const GkmGraph &g, VertexId v, std::vector<EdgeId> start) {
  if (!g.has_connection())
    throw Error("MissingConnection", "face closure needs a connection or GKM_{l+1} labels");
  const int l = static_cast<int>(start.size());
  auto by_pos = [&](EdgeId a, EdgeId b) { return g.star_position(a) < g.star_position(b); };
  std::sort(start.begin(), start.end(), by_pos);
  std::map<VertexId, std::vector<EdgeId>> sets;
  sets[v] = start;
  std::queue<VertexId> q;
  q.push(v);
  std::set<int> und;
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    const auto su = sets[u];
    for (EdgeId e : su) {
      und.insert(g.edge(e).undirected);
      std::vector<EdgeId> img;
      for (EdgeId f : su) {
        EdgeId t = g.nabla(e, f);
        if (t < 0)
          throw Error("NotClosed", "connection undefined along " + g.describe_edge(e));
        img.push_back(t);
      }
      std::sort(img.begin(), img.end(), by_pos);
      VertexId w = g.target(e);
      auto it = sets.find(w);
      if (it == sets.end()) {
        sets.emplace(w, img);
        q.push(w);
      } else if (it->second != img) {
        throw Error("NotClosed", "transport of " + edge_list(g, start) + " reaches " +
                                     g.vertex_name(w) + " with both " +
                                     edge_list(g, it->second) + " and " + edge_list(g, img));
      }
    }
  }
  std::set<VertexId> verts;
  for (const auto &[u, s] : sets)
    verts.insert(u);
  return finish(g, std::move(verts), std::move(und), l);
}

Face span_closure(const GkmGraph &g, VertexId v, const std::vector<EdgeId> &start) {
  const int l = static_cast<int>(start.size());
  std::vector<QVector> span;
  for (EdgeId e : start)
    span.push_back(g.weight(e));
  if (rank_of(span) != span.size())
    throw Error("SpanViolation", "weights of " + edge_list(g, start) + " are dependent");
  auto in_span = [&](EdgeId e) { return solve_in_span(g.weight(e), span).has_value(); };

  std::set<VertexId> verts{v};
  std::set<int> und;
  std::queue<VertexId> q;
  q.push(v);
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    std::vector<EdgeId> here;
    for (EdgeId e : g.star(u))
      if (in_span(e))
        here.push_back(e);
    if (static_cast<int>(here.size()) != l)
      throw Error("SpanViolation", "vertex " + g.vertex_name(u) + " has " +
                                       std::to_string(here.size()) +
                                       " edges in the span of " + edge_list(g, start) +
                                       ", expected " + std::to_string(l));
    if (u == v) {
      auto a = here, b = start;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b)
        throw Error("SpanViolation", "extra edges at " + g.vertex_name(v) + " in span of " +
                                         edge_list(g, start));
    }
    for (EdgeId e : here) {
      und.insert(g.edge(e).undirected);
      if (verts.insert(g.target(e)).second)
        q.push(g.target(e));
    }
  }
  Face f = finish(g, std::move(verts), std::move(und), l);
  if (g.has_connection())
    for (VertexId u : f.vertices) {
      auto su = f.star(g, u);
      for (EdgeId e : su)
        for (EdgeId h : su) {
          EdgeId t = g.nabla(e, h);
          if (t < 0 || !std::binary_search(f.edges.begin(), f.edges.end(), g.edge(t).undirected))
            throw Error("NotClosed", "span face through " + edge_list(g, start) +
                                         " is not invariant under nabla along " +
                                         g.describe_edge(e));
        }
    }
  return f;
}

Face whole_graph(const GkmGraph &g, int l) {
  std::set<VertexId> verts;
  std::set<int> und;
  for (VertexId u : bfs_order(g, 0))
    verts.insert(u);
  for (VertexId u : verts)
    for (EdgeId e : g.star(u))
      und.insert(g.edge(e).undirected);
  return finish(g, std::move(verts), std::move(und), l);
}

Face face_impl(const GkmGraph &g, VertexId v, const std::vector<EdgeId> &edges, bool span) {
  const int l = static_cast<int>(edges.size());
  std::set<EdgeId> uniq(edges.begin(), edges.end());
  if (uniq.size() != edges.size())
    throw Error("Malformed", "repeated edge in face seed");
  for (EdgeId e : edges)
    if (g.source(e) != v)
      throw Error("Malformed", "edge " + g.edge_name(e) + " does not start at " + g.vertex_name(v));
  Face f;
  if (l == 0) {
    f.vertices = {v};
    f.dim = 0;
  } else if (l == 1) {
    f.vertices = {std::min(v, g.target(edges[0])), std::max(v, g.target(edges[0]))};
    f.edges = {g.edge(edges[0]).undirected};
    f.dim = 1;
  } else if (g.valence() && static_cast<std::size_t>(l) == *g.valence()) {
    f = whole_graph(g, l);
  } else if (span) {
    f = span_closure(g, v, edges);
  } else {
    f = connection_closure(g, v, edges);
  }
  return f;
}

void tag(const GkmGraph &g, Face &f);

struct FaceCache {
  const GkmGraph &g;
  bool span2, span3;
  std::map<std::pair<std::vector<VertexId>, std::vector<int>>, FaceType> types;

  explicit FaceCache(const GkmGraph &gr)
      : g(gr), span2(span_applicable(gr, 2)), span3(span_applicable(gr, 3)) {}

  Face face(VertexId v, const std::vector<EdgeId> &edges) {
    int l = static_cast<int>(edges.size());
    Face f = face_impl(g, v, edges, l == 2 ? span2 : l == 3 ? span3 : span_applicable(g, l));
    if (l <= 2) {
      tag(g, f);
    } else if (l == 3) {
      auto it = types.find(f.key());
      if (it != types.end()) {
        f.type = it->second;
      } else {
        tag(g, f);
        types.emplace(f.key(), f.type);
      }
    }
    return f;
  }

  std::vector<Face> two_faces(const Face &f) {
    std::vector<Face> out;
    std::set<std::pair<std::vector<VertexId>, std::vector<int>>> seen;
    for (VertexId u : f.vertices) {
      auto s = f.star(g, u);
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          Face t = face(u, {s[i], s[j]});
          if (seen.insert(t.key()).second)
            out.push_back(std::move(t));
        }
    }
    std::sort(out.begin(), out.end(), [](const Face &a, const Face &b) { return a.key() < b.key(); });
    return out;
  }
};

void tag(const GkmGraph &g, Face &f) {
  switch (f.dim) {
  case 0: f.type = FaceType::Point; break;
  case 1: f.type = FaceType::Edge; break;
  case 2: f.type = classify_two_face(f); break;
  case 3: f.type = classify_three_face(g, f); break;
  default: f.type = FaceType::Other;
  }
}

} // namespace

Face face_through_edges(const GkmGraph &g, VertexId v, const std::vector<EdgeId> &edges) {
  FaceCache cache(g);
  return cache.face(v, edges);
}

std::vector<Face> enumerate_faces(const GkmGraph &g, int l) {
  auto val = g.valence();
  if (!val || l < 0 || l > static_cast<int>(*val))
    throw Error("OutOfRange", "face dimension outside [0, valence]");
  FaceCache cache(g);
  std::map<std::pair<std::vector<VertexId>, std::vector<int>>, Face> faces;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    const auto &s = g.star(v);
    std::vector<std::size_t> idx(static_cast<std::size_t>(l));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<EdgeId> seed;
      for (auto i : idx)
        seed.push_back(s[i]);
      bool known = false;
      // skip seeds already covered by a found face
      for (const auto &[k, f] : faces)
        if (f.contains_vertex(v)) {
          bool all = true;
          for (EdgeId e : seed)
            all = all && std::binary_search(f.edges.begin(), f.edges.end(), g.edge(e).undirected);
          if (all && l > 0 && f.star(g, v).size() == static_cast<std::size_t>(l)) {
            known = true;
            break;
          }
        }
      if (!known || l == 0) {
        Face f = cache.face(v, seed);
        faces.emplace(f.key(), std::move(f));
      }
      std::size_t i = idx.size();
      while (i > 0 && idx[i - 1] == s.size() - idx.size() + i - 1)
        --i;
      if (i == 0)
        break;
      ++idx[i - 1];
      for (std::size_t j = i; j < idx.size(); ++j)
        idx[j] = idx[j - 1] + 1;
    }
  }
  std::vector<Face> out;
  for (auto &[k, f] : faces)
    out.push_back(std::move(f));
  return out;
}

FaceType classify_two_face(const Face &f) {
  std::size_t v = f.vertices.size(), e = f.edges.size();
  if (v == 2 && e == 2)
    return FaceType::Biangle;
  if (v == 3 && e == 3)
    return FaceType::Triangle;
  if (v == 4 && e == 4)
    return FaceType::Square;
  return FaceType::Other;
}

FaceType classify_three_face(std::size_t vertices, std::size_t edges,
                             const std::vector<FaceType> &two_faces) {
  std::map<FaceType, int> c;
  for (auto t : two_faces)
    ++c[t];
  auto only = [&](std::map<FaceType, int> want) { return c == want; };
  if (vertices == 4 && edges == 6 && only({{FaceType::Triangle, 4}}))
    return FaceType::Simplex3;
  if (vertices == 2 && edges == 3 && only({{FaceType::Biangle, 3}}))
    return FaceType::Sigma3;
  if (vertices == 6 && edges == 9 && only({{FaceType::Triangle, 2}, {FaceType::Square, 3}}))
    return FaceType::TriangleTimesI;
  if (vertices == 4 && edges == 6 && only({{FaceType::Biangle, 2}, {FaceType::Square, 2}}))
    return FaceType::BiangleTimesI;
  if (vertices == 8 && edges == 12 && only({{FaceType::Square, 6}}))
    return FaceType::Cube;
  return FaceType::Other;
}

std::vector<Face> two_faces_of(const GkmGraph &g, const Face &f) {
  FaceCache cache(g);
  return cache.two_faces(f);
}

FaceType classify_three_face(const GkmGraph &g, const Face &f) {
  if (f.dim != 3)
    throw Error("OutOfRange", "not a 3-face");
  std::vector<FaceType> types;
  for (const auto &t : two_faces_of(g, f))
    types.push_back(t.type);
  return classify_three_face(f.vertices.size(), f.edges.size(), types);
}

SmallFacesResult check_small_three_faces(const GkmGraph &g) {
  SmallFacesResult res;
  auto val = g.valence();
  if (!val) {
    res.ok = false;
    res.witness = "graph is not regular";
    return res;
  }
  if (*val < 3)
    return res;
  FaceCache cache(g);
  std::set<std::pair<std::vector<VertexId>, std::vector<int>>> seen;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    const auto &s = g.star(v);
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        for (std::size_t c = b + 1; c < s.size(); ++c) {
          std::vector<EdgeId> seed{s[a], s[b], s[c]};
          Face f;
          try {
            f = cache.face(v, seed);
          } catch (const Error &e) {
            res.ok = false;
            res.witness = "no unique 3-face through " + edge_list(g, seed) + " at " +
                          g.vertex_name(v) + ": " + e.what();
            return res;
          }
          if (f.type == FaceType::Other) {
            std::ostringstream os;
            os << "3-face through " << edge_list(g, seed) << " at " << g.vertex_name(v)
               << " has " << f.vertices.size() << " vertices, " << f.edges.size()
               << " edges and 2-faces:";
            for (const auto &t : cache.two_faces(f))
              os << " " << to_string(t.type) << "(" << t.vertices.size() << ")";
            res.ok = false;
            res.witness = os.str();
            return res;
          }
          if (seen.insert(f.key()).second)
            ++res.type_counts[f.type];
        }
  }
  return res;
}

namespace {

SimplexPartition partition_with(FaceCache &cache, VertexId v) {
  const GkmGraph &g = cache.g;
  const auto &s = g.star(v);
  const std::size_t n = s.size();
  // rel[i][j]: 0 none (square), 1 triangle, 2 biangle
  std::vector<std::vector<int>> rel(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Face f = cache.face(v, {s[i], s[j]});
      int r = 0;
      if (f.type == FaceType::Triangle)
        r = 1;
      else if (f.type == FaceType::Biangle)
        r = 2;
      else if (f.type != FaceType::Square)
        throw Error("PartitionInconsistent", "edges " + g.edge_name(s[i]) + ", " +
                                                 g.edge_name(s[j]) + " at " + g.vertex_name(v) +
                                                 " span a 2-face with " +
                                                 std::to_string(f.vertices.size()) + " vertices");
      rel[i][j] = rel[j][i] = r;
    }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rel[i][j])
        parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i)
    groups[find(i)].push_back(i);
  SimplexPartition p;
  p.vertex = v;
  for (auto &[root, members] : groups) {
    SimplexBlock b;
    int kind = members.size() > 1 ? rel[members[0]][members[1]] : 1;
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t c = a + 1; c < members.size(); ++c)
        if (rel[members[a]][members[c]] != kind)
          throw Error("PartitionInconsistent",
                      "at " + g.vertex_name(v) + " edges " + g.edge_name(s[members[a]]) + ", " +
                          g.edge_name(s[members[c]]) + " break transitivity of the simplex relation");
    b.kind = kind == 2 ? FactorKind::Sigma : FactorKind::Delta;
    for (auto i : members)
      b.edges.push_back(s[i]); // star order is name order
    p.blocks.push_back(std::move(b));
  }
  std::sort(p.blocks.begin(), p.blocks.end(), [&](const SimplexBlock &a, const SimplexBlock &b) {
    return g.edge_name(a.edges[0]) < g.edge_name(b.edges[0]);
  });
  return p;
}

} // namespace

SimplexPartition maximal_simplex_partition(const GkmGraph &g, VertexId v) {
  FaceCache cache(g);
  return partition_with(cache, v);
}

IdentityResult check_connection_identities(const GkmGraph &g) {
  IdentityResult res;
  if (!g.has_connection()) {
    res.ok = false;
    res.witness = "no connection";
    return res;
  }
  FaceCache cache(g);
  std::vector<SimplexPartition> parts;
  try {
    for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
      parts.push_back(partition_with(cache, v));
  } catch (const Error &e) {
    res.ok = false;
    res.witness = e.what();
    return res;
  }
  auto fail = [&](std::string w) {
    res.ok = false;
    res.witness = std::move(w);
  };
  for (VertexId x = 0; x < static_cast<VertexId>(g.num_vertices()) && res.ok; ++x) {
    const auto &s = g.star(x);
    for (std::size_t i = 0; i < s.size() && res.ok; ++i)
      for (std::size_t j = 0; j < s.size() && res.ok; ++j) {
        if (i == j)
          continue;
        EdgeId e = s[i], e2 = s[j];
        Face f = cache.face(x, {std::min(e, e2), std::max(e, e2)});
        if (f.type == FaceType::Biangle) {
          for (EdgeId h : s)
            if (h != e && h != e2 && g.nabla(e, h) != g.nabla(e2, h)) {
              fail("biangle " + g.edge_name(e) + "," + g.edge_name(e2) + " at " +
                   g.vertex_name(x) + ": transports of " + g.edge_name(h) + " differ");
              break;
            }
        } else if (f.type == FaceType::Square) {
          EdgeId e1p = g.nabla(e, e2);  // y -> w
          EdgeId e1 = g.nabla(e2, e);   // z -> w
          if (g.target(e1p) != g.target(e1)) {
            fail("square " + g.edge_name(e) + "," + g.edge_name(e2) + " at " +
                 g.vertex_name(x) + " does not close");
            break;
          }
          for (EdgeId h : s) {
            if (h == e || h == e2)
              continue;
            EdgeId a = g.nabla(e1p, g.nabla(e, h));
            EdgeId b = g.nabla(e1, g.nabla(e2, h));
            if (a != b) {
              fail("square " + g.edge_name(e) + "," + g.edge_name(e2) + " at " +
                   g.vertex_name(x) + ": " + g.edge_name(h) + " goes to " + g.edge_name(a) +
                   " and " + g.edge_name(b));
              break;
            }
          }
        }
      }
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()) && res.ok; ++e) {
    const auto &src = parts[g.source(e)];
    const auto &dst = parts[g.target(e)];
    for (const auto &b : src.blocks) {
      std::vector<EdgeId> img;
      for (EdgeId h : b.edges)
        img.push_back(g.nabla(e, h));
      std::sort(img.begin(), img.end(), [&](EdgeId a, EdgeId c) {
        return g.edge_name(a) < g.edge_name(c);
      });
      bool found = false;
      for (const auto &c : dst.blocks)
        found = found || (c.edges == img && c.kind == b.kind);
      if (!found) {
        fail("nabla along " + g.describe_edge(e) + " does not map the block " +
             edge_list(g, b.edges) + " onto a block of the same type");
        break;
      }
    }
  }
  return res;
}

} // namespace gkm
