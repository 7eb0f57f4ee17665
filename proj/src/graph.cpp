#include "gkm/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "gkm/error.hpp"

namespace gkm {

QVector Weight::canonical(QVector v) {
  std::size_t lead = v.leading_index();
  if (lead == v.size())
    throw Error("ZeroWeight", "weight vector is zero");
  if (v[lead].sign() < 0)
    v = -v;
  return v;
}

Weight::Weight(QVector v) : v_(canonical(std::move(v))) {}

std::optional<VertexId> GkmGraph::find_vertex(const std::string &name) const {
  auto it = std::lower_bound(vertex_names_.begin(), vertex_names_.end(), name);
  if (it == vertex_names_.end() || *it != name)
    return std::nullopt;
  return static_cast<VertexId>(it - vertex_names_.begin());
}

std::optional<EdgeId> GkmGraph::find_edge(const std::string &name) const {
  // record ids are sorted, reverse edges carry a trailing '~'
  bool rev = !name.empty() && name.back() == '~';
  std::string base = rev ? name.substr(0, name.size() - 1) : name;
  std::size_t lo = 0, hi = num_undirected();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (edges_[2 * mid].name < base)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < num_undirected() && edges_[2 * lo].name == base)
    return static_cast<EdgeId>(2 * lo + (rev ? 1 : 0));
  return std::nullopt;
}

std::optional<std::size_t> GkmGraph::valence() const {
  if (star_.empty())
    return std::nullopt;
  std::size_t n = star_[0].size();
  for (const auto &s : star_)
    if (s.size() != n)
      return std::nullopt;
  return n;
}

EdgeId GkmGraph::nabla(EdgeId e, EdgeId f) const {
  if (!connection_)
    throw Error("MissingConnection", "graph has no connection");
  if (source(f) != source(e))
    throw Error("Malformed", "nabla applied to an edge outside the star");
  return (*connection_)[e][star_pos_[f]];
}

GkmGraph GkmGraph::from_data(const GraphData &data) {
  GkmGraph g;
  if (data.torus_rank < 0)
    throw Error("Malformed", "negative torus rank");
  g.torus_rank_ = data.torus_rank;
  g.vertex_names_ = data.vertices;
  std::sort(g.vertex_names_.begin(), g.vertex_names_.end());
  if (std::adjacent_find(g.vertex_names_.begin(), g.vertex_names_.end()) !=
      g.vertex_names_.end())
    throw Error("Malformed", "duplicate vertex id");

  std::vector<const EdgeRecord *> recs;
  for (const auto &e : data.edges)
    recs.push_back(&e);
  std::sort(recs.begin(), recs.end(),
            [](const EdgeRecord *a, const EdgeRecord *b) { return a->id < b->id; });
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto &r = *recs[i];
    if (r.id.empty() || r.id.back() == '~')
      throw Error("Malformed", "edge id '" + r.id + "' is empty or ends in '~'");
    if (i > 0 && recs[i - 1]->id == r.id)
      throw Error("Malformed", "duplicate edge id '" + r.id + "'");
    auto s = g.find_vertex(r.source);
    auto t = g.find_vertex(r.target);
    if (!s || !t)
      throw Error("Malformed", "edge '" + r.id + "' references an unknown vertex");
    if (*s == *t)
      throw Error("Malformed", "edge '" + r.id + "' is a loop");
    auto u = static_cast<int>(i);
    g.edges_.push_back({r.id, *s, *t, 2 * u + 1, u});
    g.edges_.push_back({r.id + "~", *t, *s, 2 * u, u});
    if (g.torus_rank_ > 0) {
      if (r.weight.size() != static_cast<std::size_t>(g.torus_rank_))
        throw Error("Malformed", "edge '" + r.id + "' weight has wrong length");
      QVector w{std::vector<Rational>(r.weight)};
      if (w.is_zero())
        throw Error("ZeroWeight", "edge '" + r.id + "' has zero weight");
      g.weights_.emplace_back(std::move(w));
    } else if (!r.weight.empty()) {
      throw Error("Malformed", "edge '" + r.id + "' weighted in an unlabelled graph");
    }
  }
  g.star_.assign(g.vertex_names_.size(), {});
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges_.size()); ++e)
    g.star_[g.edges_[e].source].push_back(e);
  g.star_pos_.assign(g.edges_.size(), 0);
  for (auto &s : g.star_) {
    std::sort(s.begin(), s.end(),
              [&](EdgeId a, EdgeId b) { return g.edges_[a].name < g.edges_[b].name; });
    for (std::size_t i = 0; i < s.size(); ++i)
      g.star_pos_[s[i]] = i;
  }

  if (data.connection) {
    Connection conn(g.edges_.size());
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.edges_.size()); ++e)
      conn[e].assign(g.star_[g.edges_[e].source].size(), -1);
    std::vector<bool> seen(g.edges_.size(), false);
    for (const auto &rec : *data.connection) {
      auto along = g.find_edge(rec.along);
      if (!along)
        throw Error("Malformed", "connection along unknown edge '" + rec.along + "'");
      if (seen[*along])
        throw Error("Malformed", "duplicate connection entry for '" + rec.along + "'");
      seen[*along] = true;
      for (const auto &[from, to] : rec.map) {
        auto f = g.find_edge(from);
        auto t = g.find_edge(to);
        if (!f || !t)
          throw Error("Malformed", "connection map of '" + rec.along +
                                       "' references an unknown edge");
        if (g.source(*f) != g.source(*along) || g.source(*t) != g.target(*along))
          throw Error("Malformed", "connection map of '" + rec.along +
                                       "' uses an edge outside the stars");
        conn[*along][g.star_pos_[*f]] = *t;
      }
    }
    g.connection_ = std::move(conn);
  }
  return g;
}

GraphData GkmGraph::to_data() const {
  GraphData d;
  d.torus_rank = torus_rank_;
  d.vertices = vertex_names_;
  for (std::size_t u = 0; u < num_undirected(); ++u) {
    const Edge &e = edges_[2 * u];
    EdgeRecord r{e.name, vertex_names_[e.source], vertex_names_[e.target], {}};
    if (labelled())
      r.weight = weights_[u].vector().entries();
    d.edges.push_back(std::move(r));
  }
  if (connection_) {
    std::vector<ConnectionRecord> conn;
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
      ConnectionRecord rec{edges_[e].name, {}};
      const auto &s = star_[edges_[e].source];
      for (std::size_t i = 0; i < s.size(); ++i)
        if ((*connection_)[e][i] >= 0)
          rec.map.emplace_back(edges_[s[i]].name, edges_[(*connection_)[e][i]].name);
      conn.push_back(std::move(rec));
    }
    d.connection = std::move(conn);
  }
  return d;
}

GkmGraph GkmGraph::with_connection(Connection conn) const {
  if (conn.size() != edges_.size())
    throw Error("Malformed", "connection size differs from edge count");
  GkmGraph g = *this;
  g.connection_ = std::move(conn);
  return g;
}

GkmGraph GkmGraph::without_connection() const {
  GkmGraph g = *this;
  g.connection_.reset();
  return g;
}

GkmGraph GkmGraph::with_weights(int torus_rank, std::vector<QVector> weights) const {
  if (weights.size() != num_undirected() && torus_rank > 0)
    throw Error("Malformed", "one weight per undirected edge required");
  GkmGraph g = *this;
  g.torus_rank_ = torus_rank;
  g.weights_.clear();
  if (torus_rank > 0)
    for (auto &w : weights) {
      if (w.size() != static_cast<std::size_t>(torus_rank))
        throw Error("Malformed", "weight has wrong length");
      g.weights_.emplace_back(std::move(w));
    }
  return g;
}

std::string GkmGraph::describe_edge(EdgeId e) const {
  return edges_[e].name + "(" + vertex_names_[edges_[e].source] + "->" +
         vertex_names_[edges_[e].target] + ")";
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
}

const Check *ValidationReport::find(const std::string &name) const {
  for (const auto &c : checks)
    if (c.name == name)
      return &c;
  return nullptr;
}

void ValidationReport::add(std::string name, bool passed, std::string witness) {
  if (!passed && witness.empty())
    witness = "failed";
  if (passed)
    witness.clear();
  checks.push_back({std::move(name), passed, std::move(witness)});
}

std::vector<VertexId> bfs_order(const GkmGraph &g, VertexId root) {
  std::vector<VertexId> order;
  std::vector<bool> seen(g.num_vertices(), false);
  std::queue<VertexId> q;
  q.push(root);
  seen[root] = true;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    order.push_back(v);
    for (EdgeId e : g.star(v))
      if (!seen[g.target(e)]) {
        seen[g.target(e)] = true;
        q.push(g.target(e));
      }
  }
  return order;
}

bool is_connected(const GkmGraph &g) {
  return g.num_vertices() > 0 && bfs_order(g, 0).size() == g.num_vertices();
}

namespace {

// Structural checks that need only names; fills `report` and returns the
// graph if references resolve.
std::optional<GkmGraph> structural_precheck(const GraphData &data, ValidationReport &report) {
  std::ostringstream bad;
  std::set<std::string> verts(data.vertices.begin(), data.vertices.end());
  if (verts.size() != data.vertices.size())
    bad << "duplicate vertex id; ";
  std::set<std::string> ids;
  for (const auto &e : data.edges) {
    if (!ids.insert(e.id).second)
      bad << "duplicate edge id '" << e.id << "'; ";
    if (!verts.count(e.source))
      bad << "edge '" << e.id << "' has dangling source '" << e.source << "'; ";
    if (!verts.count(e.target))
      bad << "edge '" << e.id << "' has dangling target '" << e.target << "'; ";
    if (e.source == e.target)
      bad << "edge '" << e.id << "' is a loop; ";
  }
  if (data.connection)
    for (const auto &c : *data.connection) {
      auto known = [&](const std::string &n) {
        std::string b = (!n.empty() && n.back() == '~') ? n.substr(0, n.size() - 1) : n;
        return ids.count(b) > 0;
      };
      if (!known(c.along))
        bad << "connection along dangling edge '" << c.along << "'; ";
      for (const auto &[f, t] : c.map)
        if (!known(f) || !known(t))
          bad << "connection of '" << c.along << "' maps dangling edge; ";
    }
  std::string refs = bad.str();
  if (!refs.empty()) {
    report.add("references", false, refs);
    return std::nullopt;
  }
  try {
    GkmGraph g = GkmGraph::from_data(data);
    report.add("references", true);
    return g;
  } catch (const Error &e) {
    report.add("references", false, e.what());
    return std::nullopt;
  }
}

void graph_checks(const GkmGraph &g, ValidationReport &report) {
  report.add("connected", is_connected(g),
             g.num_vertices() == 0 ? "empty graph"
                                   : "vertices unreachable from " + g.vertex_name(0));
  {
    auto val = g.valence();
    std::string w;
    if (!val && g.num_vertices() > 0) {
      std::ostringstream os;
      for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
        os << g.vertex_name(v) << ":" << g.star(v).size() << " ";
      w = os.str();
    }
    report.add("uniform_valence", val.has_value(), w);
  }
  {
    bool ok = true;
    std::string w;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()) && ok; ++e) {
      EdgeId r = g.reverse(e);
      if (g.reverse(r) != e || g.source(r) != g.target(e)) {
        ok = false;
        w = g.describe_edge(e);
      }
    }
    report.add("reverse_pairing", ok, w);
  }
  report.add("weight_symmetry", true); // one label per undirected edge by construction
  if (!g.has_connection()) {
    report.add("connection_present", false, "no connection supplied");
    return;
  }
  const auto &conn = g.connection();
  bool bij = true, ax1 = true, ax2 = true;
  std::string wb, w1, w2;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    const auto &src = g.star(g.source(e));
    const auto &img = conn[e];
    std::set<EdgeId> targets;
    bool good = true;
    for (EdgeId t : img)
      good = good && t >= 0 && g.source(t) == g.target(e) && targets.insert(t).second;
    good = good && targets.size() == g.star(g.target(e)).size();
    if (!good && bij) {
      bij = false;
      wb = "nabla along " + g.describe_edge(e) + " is not a bijection of stars";
    }
    if (!good)
      continue;
    if (img[g.star_position(e)] != g.reverse(e) && ax1) {
      ax1 = false;
      w1 = "nabla_e(e) != reverse(e) for e = " + g.describe_edge(e);
    }
    EdgeId r = g.reverse(e);
    for (std::size_t i = 0; i < src.size() && ax2; ++i) {
      EdgeId f = img[i];
      const auto &back = conn[r];
      if (back.size() != g.star(g.target(e)).size())
        continue;
      EdgeId ff = back[g.star_position(f)];
      if (ff != src[i]) {
        ax2 = false;
        w2 = "nabla_{reverse e} is not the inverse of nabla_e for e = " + g.describe_edge(e) +
             " at " + g.edge_name(src[i]);
      }
    }
  }
  report.add("connection_bijective", bij, wb);
  report.add("connection_reverse_axiom", ax1, w1);
  report.add("connection_inverse_axiom", ax2, w2);
}

} // namespace

ValidationReport validate_structure(const GraphData &data) {
  ValidationReport report;
  auto g = structural_precheck(data, report);
  if (g) {
    graph_checks(*g, report);
    if (g->labelled() && g->valence() && *g->valence() >= 2)
      report.gkm_order = gkm_order(*g);
  }
  return report;
}

ValidationReport validate_structure(const GkmGraph &g) {
  ValidationReport report;
  report.add("references", true);
  graph_checks(g, report);
  if (g.labelled() && g.valence() && *g.valence() >= 2)
    report.gkm_order = gkm_order(g);
  return report;
}

namespace {

// Calls fn on every k-subset of [0, n) until it returns false.
template <class Fn> bool for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  if (k > n)
    return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!fn(idx))
      return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1)
      --i;
    if (i == 0)
      return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

} // namespace

IndependenceResult check_gkm_k(const GkmGraph &g, int k) {
  auto val = g.valence();
  if (!g.labelled())
    throw Error("Unlabelled", "independence needs weights");
  if (!val || k < 2 || static_cast<std::size_t>(k) > *val)
    throw Error("OutOfRange", "k must satisfy 2 <= k <= valence");
  IndependenceResult res;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()) && res.ok; ++v) {
    const auto &s = g.star(v);
    for_each_subset(s.size(), static_cast<std::size_t>(k), [&](const auto &idx) {
      std::vector<QVector> ws;
      for (auto i : idx)
        ws.push_back(g.weight(s[i]));
      if (rank_of(ws) == static_cast<std::size_t>(k))
        return true;
      res.ok = false;
      res.vertex = v;
      std::ostringstream os;
      os << "vertex " << g.vertex_name(v) << ": weights of {";
      for (std::size_t j = 0; j < idx.size(); ++j) {
        res.edges.push_back(s[idx[j]]);
        os << (j ? "," : "") << g.edge_name(s[idx[j]]) << "=" << g.weight(s[idx[j]]).str();
      }
      os << "} are dependent";
      res.witness = os.str();
      return false;
    });
  }
  return res;
}

int gkm_order(const GkmGraph &g) {
  auto val = g.valence();
  if (!g.labelled() || !val || *val < 2)
    return 1;
  int order = 1;
  for (int k = 2; k <= static_cast<int>(*val); ++k) {
    if (!check_gkm_k(g, k).ok)
      break;
    order = k;
  }
  return order;
}

CompatReport check_connection_compat(const GkmGraph &g) {
  if (!g.has_connection())
    throw Error("MissingConnection", "connection compatibility needs a connection");
  CompatReport out;
  bool ok = true;
  std::string witness;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    const auto &s = g.star(v);
    for (EdgeId e1 : s)
      for (EdgeId e2 : s) {
        if (e1 == e2)
          continue;
        EdgeId img = g.nabla(e1, e2);
        if (img < 0) {
          if (ok)
            witness = "nabla along " + g.describe_edge(e1) + " undefined on " + g.edge_name(e2);
          ok = false;
          continue;
        }
        std::vector<QVector> gens{g.weight(e2), g.weight(e1)};
        auto sol = solve_in_span(g.weight(img), gens);
        if (!sol) {
          // the negated left side lies in the same span, so one try suffices
          if (ok)
            witness = "at " + g.vertex_name(v) + ": w(" + g.edge_name(img) + ")=" +
                      g.weight(img).str() + " not in span{w(" + g.edge_name(e2) + "), w(" +
                      g.edge_name(e1) + ")}";
          ok = false;
          continue;
        }
        out.table.push_back({v, e1, e2, img, (*sol)[0], (*sol)[1]});
      }
  }
  out.report.add("connection_compatible", ok, witness);
  out.report.gkm_order = gkm_order(g);
  return out;
}

IndependenceResult check_manifold_integrality(const CompatReport &compat, const GkmGraph &g) {
  IndependenceResult res;
  for (const auto &c : compat.table) {
    bool any = false;
    for (int sp : {1, -1})
      for (int sq : {1, -1}) {
        Rational p = c.p * Rational(sp), q = c.q * Rational(sq);
        if ((p.is_one() || (-p).is_one()) && q.is_integer())
          any = true;
      }
    if (!any) {
      res.ok = false;
      res.vertex = c.vertex;
      res.edges = {c.along, c.edge, c.image};
      res.witness = "at " + g.vertex_name(c.vertex) + " along " + g.edge_name(c.along) +
                    " on " + g.edge_name(c.edge) + ": (p,q)=(" + c.p.str() + "," +
                    c.q.str() + ")";
      return res;
    }
  }
  if (!compat.report.ok()) {
    res.ok = false;
    res.witness = compat.report.checks.front().witness;
  }
  return res;
}

IndependenceResult check_manifold_integrality(const GkmGraph &g) {
  return check_manifold_integrality(check_connection_compat(g), g);
}

bool check_effective(const GkmGraph &g) {
  if (!g.labelled())
    return false;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    std::vector<QVector> ws;
    for (EdgeId e : g.star(v))
      ws.push_back(g.weight(e));
    if (rank_of(ws) != static_cast<std::size_t>(g.torus_rank()))
      return false;
  }
  return true;
}

GkmGraph infer_connection(const GkmGraph &g) {
  if (!g.labelled())
    throw Error("Unlabelled", "connection inference needs weights");
  GkmGraph::Connection conn(g.num_edges());
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    const auto &src = g.star(g.source(e));
    const auto &dst = g.star(g.target(e));
    conn[e].assign(src.size(), -1);
    for (std::size_t i = 0; i < src.size(); ++i) {
      EdgeId f = src[i];
      if (f == e) {
        conn[e][i] = g.reverse(e);
        continue;
      }
      std::vector<QVector> span{g.weight(e), g.weight(f)};
      std::vector<EdgeId> cand;
      for (EdgeId h : dst)
        if (h != g.reverse(e) && solve_in_span(g.weight(h), span))
          cand.push_back(h);
      if (cand.empty())
        throw Error("NoCandidate", "no edge at " + g.vertex_name(g.target(e)) +
                                       " with weight in span{w(" + g.edge_name(e) + "), w(" +
                                       g.edge_name(f) + ")}");
      if (cand.size() > 1)
        throw Error("AmbiguousConnection",
                    "edges " + g.edge_name(cand[0]) + " and " + g.edge_name(cand[1]) +
                        " at " + g.vertex_name(g.target(e)) + " both lie in span{w(" +
                        g.edge_name(e) + "), w(" + g.edge_name(f) + ")}");
      conn[e][i] = cand[0];
    }
  }
  // nabla_e must be a bijection
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e) {
    std::set<EdgeId> img(conn[e].begin(), conn[e].end());
    if (img.size() != conn[e].size())
      throw Error("AmbiguousConnection",
                  "inferred transport along " + g.describe_edge(e) + " is not injective");
  }
  return g.with_connection(std::move(conn));
}

} // namespace gkm
