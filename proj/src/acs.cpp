#include "gkm/acs.hpp"

#include <algorithm>
#include <deque>

#include "gkm/error.hpp"
#include "gkm/extension.hpp"

namespace gkm {

namespace {

int dir(EdgeId e) { return e % 2 == 0 ? 1 : -1; }

std::string relation_str(const GkmGraph &g, const ConnectionCoefficient &c) {
  return "at " + g.vertex_name(c.vertex) + " along " + g.edge_name(c.along) + ": " +
         g.edge_name(c.edge) + " -> " + g.edge_name(c.image) + " (p=" + c.p.str() +
         ", q=" + c.q.str() + ")";
}

struct Parity {
  int other;
  int c;
  std::size_t rel;
};

} // namespace

AcsResult find_acs_lift(const GkmGraph &g) {
  AcsResult out;
  CompatReport compat = check_connection_compat(g);
  if (!compat.report.ok()) {
    out.witness = compat.report.checks.front().witness;
    return out;
  }
  const auto &table = compat.table;
  const int U = static_cast<int>(g.num_undirected());
  std::vector<std::vector<Parity>> adj(U);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto &r = table[i];
    if (!(r.p.abs() == Rational(1)) || !r.q.is_integer()) {
      out.witness = "no sign makes p = 1 with integral q: " + relation_str(g, r);
      out.cycle = {relation_str(g, r)};
      return out;
    }
    // sigma_img * sigma_e2 = sign(p) dir(img) dir(e2)
    int c = r.p.sign() * dir(r.image) * dir(r.edge);
    int a = g.edge(r.image).undirected, b = g.edge(r.edge).undirected;
    if (a == b) {
      if (c != 1) {
        out.witness = "relation forces an edge to differ from itself: " + relation_str(g, r);
        out.cycle = {relation_str(g, r)};
        return out;
      }
      continue;
    }
    adj[a].push_back({b, c, i});
    adj[b].push_back({a, c, i});
  }

  std::vector<int> sign(U, 0);
  std::vector<std::pair<int, std::size_t>> parent(U, {-1, 0});
  auto chain = [&](int x) {
    std::vector<std::string> path;
    for (; parent[x].first != -1; x = parent[x].first)
      path.push_back(relation_str(g, table[parent[x].second]));
    return path;
  };
  for (int root = 0; root < U; ++root) {
    if (sign[root] != 0)
      continue;
    sign[root] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (const auto &p : adj[x]) {
        int want = p.c * sign[x];
        if (sign[p.other] == 0) {
          sign[p.other] = want;
          parent[p.other] = {x, p.rel};
          queue.push_back(p.other);
        } else if (sign[p.other] != want) {
          // tree path up from x, the closing relation, tree path down to other
          std::vector<std::string> up = chain(x), down = chain(p.other);
          while (!up.empty() && !down.empty() && up.back() == down.back()) {
            up.pop_back();
            down.pop_back();
          }
          out.cycle = up;
          out.cycle.push_back(relation_str(g, table[p.rel]));
          out.cycle.insert(out.cycle.end(), down.rbegin(), down.rend());
          out.witness = "sign contradiction on edge " + g.edge_name(2 * p.other) +
                        " around a cycle of " + std::to_string(out.cycle.size()) +
                        " relations";
          return out;
        }
      }
    }
  }

  AcsLift lift;
  lift.sign = sign;
  lift.lift.resize(g.num_edges());
  for (int u = 0; u < U; ++u) {
    lift.lift[2 * u] = g.weight(2 * u) * Rational(sign[u]);
    lift.lift[2 * u + 1] = -lift.lift[2 * u];
  }
  for (auto r : table) {
    int s_img = sign[g.edge(r.image).undirected] * dir(r.image);
    int s_e1 = sign[g.edge(r.along).undirected] * dir(r.along);
    r.p = Rational(1);
    r.q = r.q * Rational(s_img * s_e1);
    out.table.push_back(r);
  }
  std::string bad = verify_acs_lift(g, lift.lift);
  if (!bad.empty())
    throw Error("Internal", "propagated signs fail re-verification: " + bad);
  out.lift = std::move(lift);
  return out;
}

std::string verify_acs_lift(const GkmGraph &g, const std::vector<QVector> &lift) {
  if (lift.size() != g.num_edges())
    return "lift has " + std::to_string(lift.size()) + " entries";
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e)
    if (!(lift[g.reverse(e)] == -lift[e]))
      return "lift of " + g.edge_name(e) + " is not odd under reversal";
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v)
    for (EdgeId e1 : g.star(v))
      for (EdgeId e2 : g.star(v)) {
        if (e1 == e2)
          continue;
        EdgeId img = g.nabla(e1, e2);
        std::vector<QVector> gens{lift[e2], lift[e1]};
        auto sol = solve_in_span(lift[img], gens);
        if (!sol || !(*sol)[0].is_one() || !(*sol)[1].is_integer())
          return "at " + g.vertex_name(v) + " along " + g.edge_name(e1) + " on " +
                 g.edge_name(e2);
      }
  return {};
}

std::vector<QVector> embedding_positions(const GkmGraph &g) {
  CoveringMap c = build_covering(g);
  for (const Factor &f : c.total.factors)
    if (f.kind != FactorKind::Delta)
      throw Error("NotProductOfSimplices", "factor " + f.str());
  if (c.degree() != 1)
    throw Error("NotProductOfSimplices",
                "covering has degree " + std::to_string(c.degree()));
  const int n = c.total.dimension();
  std::vector<QVector> pos(g.num_vertices(), QVector(static_cast<std::size_t>(n)));
  for (std::size_t t = 0; t < c.total.coords.size(); ++t) {
    QVector x(static_cast<std::size_t>(n));
    std::size_t off = 0;
    for (std::size_t f = 0; f < c.total.factors.size(); ++f) {
      int a = c.total.coords[t][f];
      if (a > 0)
        x[off + static_cast<std::size_t>(a) - 1] = 1;
      off += static_cast<std::size_t>(c.total.factors[f].size);
    }
    pos[c.vertex_map[t]] = x;
  }
  return pos;
}

std::vector<QVector> natural_lift(const GkmGraph &g) {
  auto pos = embedding_positions(g);
  std::vector<QVector> lift;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e)
    lift.push_back(pos[g.target(e)] - pos[g.source(e)]);
  return lift;
}

SignCheck quasitoric_sign_check(const GkmGraph &g, const std::vector<QVector> &lift) {
  auto pos = embedding_positions(g);
  SignCheck out;
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    std::vector<QVector> dirs, ws;
    for (EdgeId e : g.star(v)) {
      dirs.push_back(pos[g.target(e)] - pos[v]);
      ws.push_back(lift[e]);
    }
    int s = determinant(QMatrix::from_columns(dirs)).sign() *
            determinant(QMatrix::from_columns(ws)).sign();
    out.signs.push_back(s);
  }
  out.constant = std::all_of(out.signs.begin(), out.signs.end(),
                             [&](int s) { return s != 0 && s == out.signs.front(); });
  return out;
}

SignCheck quasitoric_sign_check(const GkmGraph &g) {
  AcsResult r = find_acs_lift(g);
  if (!r.lift) {
    embedding_positions(g); // surface NotProductOfSimplices first
    return SignCheck{false, {}};
  }
  return quasitoric_sign_check(g, r.lift->lift);
}

BottReport recognize_bott(const GkmGraph &g) {
  BottReport out;
  auto fail = [&](std::string stage, std::string witness) {
    out.failed_stage = std::move(stage);
    out.witness = std::move(witness);
    return out;
  };
  SmallFacesResult faces = check_small_three_faces(g);
  if (!faces.ok)
    return fail("small_three_faces", faces.witness);
  AcsResult acs = find_acs_lift(g);
  if (!acs.lift)
    return fail("acs_lift", acs.witness);
  CoveringMap c;
  try {
    c = build_covering(g);
  } catch (const Error &e) {
    return fail("covering", e.kind() + ": " + e.witness());
  }
  out.factors = c.total.factors;
  for (const Factor &f : c.total.factors)
    if (f.kind != FactorKind::Delta)
      return fail("delta_factors_only", "covering has factor " + f.str());
  DeckGroup deck = deck_group(c);
  if (deck.order() != 1)
    return fail("trivial_deck_group", "deck group of order " + std::to_string(deck.order()));
  try {
    extend_to_gkm_n(g);
  } catch (const Error &e) {
    return fail("extension", e.kind() + ": " + e.witness());
  }
  out.recognized = true;
  std::string dims;
  for (const Factor &f : out.factors)
    dims += (dims.empty() ? "" : ",") + std::to_string(f.size);
  out.conclusion = "rational cohomology ring of a generalized Bott manifold with stages (" +
                   dims + ")";
  return out;
}

} // namespace gkm
