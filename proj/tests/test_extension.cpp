#include "doctest.h"
#include "fixtures.hpp"
#include "gkm/error.hpp"
#include "gkm/extension.hpp"

using namespace gkm;
using namespace fixtures;

namespace {

// Δ²×Σ² with rank-3 labels: the standard rank-4 labels pushed through
// e_i -> e_i (i<4), e_4 -> (1,1,1).
GkmGraph delta2_sigma2_rank3() {
  GkmGraph g = standard_product_model({D(2), S(2)});
  std::vector<QVector> ws;
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); e += 2) {
    const QVector &w = g.weight(e);
    ws.push_back(QVector{w[0] + w[3], w[1] + w[3], w[2] + w[3]});
  }
  return g.with_weights(3, ws);
}

struct Case {
  std::string name;
  GkmGraph g;
  int phi_rank;
};

std::vector<Case> extension_cases() {
  std::vector<Case> cs;
  for (const auto &f : product_fixtures())
    cs.push_back({f.name, f.g, static_cast<int>(*f.g.valence())});
  cs.push_back({"Delta2xSigma2 rank3", delta2_sigma2_rank3(), 3});
  for (int n = 3; n <= 5; ++n) {
    auto m = hypercube_involution_model(n);
    CoveringMap c = build_covering(m.quotient);
    cs.push_back({"cube cover " + std::to_string(n), pull_back_labels(c), n - 1});
  }
  return cs;
}

} // namespace

TEST_CASE("transport_weights") {
  GkmGraph cp2 = simplex_model(2);
  auto id = transport_weights(cp2, 0, {});
  CHECK(id == std::vector<QVector>{{1, 0}, {0, 1}});
  EdgeId e = cp2.star(0)[0];
  auto far = transport_weights(cp2, 0, {e});
  std::vector<QVector> cols;
  for (EdgeId b : cp2.star(0))
    cols.push_back(cp2.weight(b));
  QMatrix phi = QMatrix::from_columns(cols, 2);
  for (std::size_t i = 0; i < far.size(); ++i)
    CHECK(phi * far[i] == cp2.weight(cp2.star(cp2.target(e))[i]));
  // boundary loop of the Hirzebruch square returns the basis
  GkmGraph h = hirzebruch_model(1);
  std::vector<EdgeId> loop;
  VertexId at = 0;
  EdgeId cur = h.star(0)[0];
  EdgeId side = h.star(0)[1];
  for (int i = 0; i < 4; ++i) {
    loop.push_back(cur);
    EdgeId next = h.nabla(cur, side);
    side = h.reverse(cur);
    at = h.target(cur);
    cur = next;
  }
  CHECK(at == 0);
  CHECK(transport_weights(h, 0, loop) == std::vector<QVector>{{1, 0}, {0, 1}});
}

TEST_CASE("extension suite") {
  for (const auto &c : extension_cases()) {
    INFO(c.name);
    Extension a = extend_to_gkm_n(c.g, TreeOrder::Lexicographic);
    Extension b = extend_to_gkm_n(c.g, TreeOrder::Reverse);
    CHECK(a.n == static_cast<int>(*c.g.valence()));
    CHECK(rank(a.phi) == static_cast<std::size_t>(c.phi_rank));
    for (EdgeId e = 0; e < static_cast<EdgeId>(c.g.num_edges()); ++e) {
      QVector img = a.phi * a.beta.weight(e);
      CHECK((img == c.g.weight(e) || img == -c.g.weight(e)));
      CHECK(a.beta.weight(e) == b.beta.weight(e));
    }
    if (a.n >= 2)
      CHECK(check_gkm_k(a.beta, a.n).ok);
    auto ta = check_connection_compat(c.g);
    auto tb = check_connection_compat(a.beta);
    REQUIRE(ta.table.size() == tb.table.size());
    for (std::size_t i = 0; i < ta.table.size(); ++i) {
      // canonical lifts may flip independently on each of the three edges
      CHECK(ta.table[i].p.abs() == tb.table[i].p.abs());
      CHECK(ta.table[i].q.abs() == tb.table[i].q.abs());
    }
  }
}

TEST_CASE("square exchange invariance") {
  GkmGraph g = standard_product_model({D(2), D(1), D(1)});
  Extension ext = extend_to_gkm_n(g);
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    const auto &s = g.star(v);
    for (EdgeId f1 : s)
      for (EdgeId f2 : s) {
        if (f1 == f2)
          continue;
        Face f = face_through_edges(g, v, {std::min(f1, f2), std::max(f1, f2)});
        if (f.type != FaceType::Square)
          continue;
        // f1 then its translate vs f2 then its translate
        EdgeId a2 = g.nabla(f1, f2), b2 = g.nabla(f2, f1);
        auto x = transport_weights(g, v, {f1, a2});
        auto y = transport_weights(g, v, {f2, b2});
        REQUIRE(g.target(a2) == g.target(b2));
        CHECK(x == y);
      }
  }
}

TEST_CASE("inconsistent holonomy is reported") {
  // Δ³ pushed to rank 2, then one label rescaled off the projection
  GkmGraph d3 = simplex_model(3);
  std::vector<QVector> ws;
  for (EdgeId e = 0; e < static_cast<EdgeId>(d3.num_edges()); e += 2) {
    const QVector &w = d3.weight(e);
    ws.push_back(QVector{w[0] + w[2], w[1] + Rational(2) * w[2]});
  }
  CHECK_NOTHROW(extend_to_gkm_n(d3.with_weights(2, ws)));
  ws[2][0] = ws[2][0] * Rational(3);
  GkmGraph g = d3.with_weights(2, ws);
  try {
    extend_to_gkm_n(g);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == "InconsistentHolonomy");
    CHECK(e.witness().find("cycle") != std::string::npos);
  }
}

TEST_CASE("induced weight action") {
  GkmGraph d3 = simplex_model(3);
  CoveringMap c = build_covering(d3);
  DeckGroup G = deck_group(c);
  GkmGraph pb = pull_back_labels(c);
  auto mats = induced_weight_action(pb, extend_to_gkm_n(pb), G);
  REQUIRE(mats.size() == 1);
  CHECK(mats[0] == QMatrix::identity(3));
  for (int n : {3, 4, 5}) {
    auto m = hypercube_involution_model(n);
    CoveringMap cv = build_covering(m.quotient);
    DeckGroup dg = deck_group(cv);
    GkmGraph lab = pull_back_labels(cv);
    Extension ext = extend_to_gkm_n(lab);
    auto A = induced_weight_action(lab, ext, dg);
    REQUIRE(A.size() == 2);
    CHECK(A[1] * A[1] == QMatrix::identity(n));
    CHECK(!(A[1] == QMatrix::identity(n)));
    CHECK(ext.phi * A[1] == ext.phi);
    // exactly one anti-invariant direction
    QMatrix diff = A[1];
    for (int i = 0; i < n; ++i)
      diff(i, i) -= Rational(1);
    CHECK(rank(diff) == 1);
    auto labels = facet_labels(ext);
    CHECK(labels.size() == static_cast<std::size_t>(2 * n));
  }
}
