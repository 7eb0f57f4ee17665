#include <chrono>

#include "doctest.h"
#include "fixtures.hpp"
#include "gkm/error.hpp"

using namespace gkm;
using namespace fixtures;

TEST_CASE("build_product_graph") {
  auto i2 = build_product_graph({D(1), D(1)});
  CHECK(i2.graph.num_vertices() == 4);
  CHECK(i2.graph.num_undirected() == 4);
  CHECK(enumerate_faces(i2.graph, 2).size() == 1);
  auto s2 = build_product_graph({S(2)});
  CHECK(s2.graph.num_vertices() == 2);
  CHECK(s2.graph.num_undirected() == 2);
  auto ds = build_product_graph({D(2), S(2)});
  CHECK(ds.graph.num_vertices() == 6);
  CHECK(ds.graph.valence() == 4u);
  CHECK(validate_structure(ds.graph).ok());
  CHECK_THROWS_AS(build_product_graph({S(1)}), Error);
  CHECK_THROWS_AS(build_product_graph({D(0)}), Error);
  // standard labels agree with the characteristic-pair model
  auto lab = ds.standard_labels();
  GkmGraph m = standard_product_model({D(2), S(2)});
  for (EdgeId e = 0; e < static_cast<EdgeId>(m.num_edges()); ++e)
    CHECK(lab.weight(e) == m.weight(e));
}

TEST_CASE("identity coverings") {
  for (const auto &f : product_fixtures()) {
    CoveringMap c = build_covering(f.g);
    CHECK_MESSAGE(c.degree() == 1, f.name);
    CHECK(verify_covering(c).empty());
    DeckGroup G = deck_group(c);
    CHECK(G.order() == 1);
    GkmGraph pb = pull_back_labels(c);
    for (EdgeId e = 0; e < static_cast<EdgeId>(pb.num_edges()); ++e)
      CHECK(pb.weight(e) == f.g.weight(c.edge_map[e]));
  }
  CoveringMap c = build_covering(standard_product_model({D(1), D(1), D(1), D(1)}));
  CHECK(c.total.factors.size() == 4);
}

TEST_CASE("hypercube quotients are covered by the cube") {
  for (int n = 3; n <= 5; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    HypercubeModel m = hypercube_involution_model(n);
    CHECK(m.quotient.num_vertices() == (std::size_t{1} << (n - 1)));
    CHECK(m.quotient.valence() == static_cast<std::size_t>(n));
    CHECK(m.quotient.torus_rank() == n - 1);
    CHECK(check_automorphism(m.total_projected, m.involution, true).empty());
    CHECK(!check_automorphism(m.total, m.involution, true).empty());
    CoveringMap c = build_covering(m.quotient);
    CHECK(c.total.factors.size() == static_cast<std::size_t>(n));
    for (const auto &f : c.total.factors)
      CHECK(f == D(1));
    CHECK(c.degree() == 2);
    CHECK(verify_covering(c).empty());
    DeckGroup G = deck_group(c);
    CHECK(G.order() == 2);
    CHECK(G.table[1][1] == 0);
    GkmGraph pb = pull_back_labels(c);
    for (const auto &a : G.elements)
      CHECK(check_automorphism(pb, a, true).empty());
    CHECK(c.total.graph.num_vertices() == G.order() * m.quotient.num_vertices());
    // the quotient of the pulled-back cover is the original quotient again
    GkmGraph q2 = quotient_graph(pb, G.elements);
    CHECK(q2.num_vertices() == m.quotient.num_vertices());
    CHECK(build_covering(q2).degree() == 2);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 30.0);
  }
}

TEST_CASE("quotient_graph") {
  GkmGraph i3 = standard_product_model({D(1), D(1), D(1)});
  GkmGraph same = quotient_graph(i3, {identity_automorphism(i3)});
  CHECK(same.num_vertices() == 8);
  CHECK(same.num_undirected() == 12);
  // swapping the two parallel edges of Σ² fixes both vertices
  GkmGraph s2 = sigma_model(2);
  Automorphism swap = identity_automorphism(s2);
  swap.edge = {2, 3, 0, 1};
  try {
    quotient_graph(s2.without_connection(), {identity_automorphism(s2), swap});
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == "NotFree");
  }
}

TEST_CASE("a corrupted connection makes the covering fail loudly") {
  HypercubeModel m = hypercube_involution_model(4);
  auto conn = m.quotient.connection();
  // swap two images on one edge and the inverse on its reverse
  EdgeId e = 0;
  auto &row = conn[e];
  std::size_t a = 0, b = 0;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] != m.quotient.reverse(e)) {
      if (!a)
        a = i + 1;
      else if (!b)
        b = i + 1;
    }
  std::swap(row[a - 1], row[b - 1]);
  EdgeId r = m.quotient.reverse(e);
  for (std::size_t i = 0; i < conn[r].size(); ++i) {
    EdgeId src = m.quotient.star(m.quotient.source(e))[0];
    (void)src;
  }
  // rebuild reverse as the inverse
  const auto &g = m.quotient;
  conn[r].assign(g.star(g.target(e)).size(), -1);
  for (std::size_t i = 0; i < row.size(); ++i)
    conn[r][g.star_position(row[i])] = g.star(g.source(e))[i];
  GkmGraph bad = g.without_connection().with_connection(conn);
  CHECK(validate_structure(bad).ok());
  bool threw = false;
  try {
    build_covering(bad);
  } catch (const Error &err) {
    threw = true;
    CHECK(!err.witness().empty());
  }
  CHECK(threw);
}

TEST_CASE("gap bound table") {
  auto t0 = std::chrono::steady_clock::now();
  auto rows = gap_corollary_table(8);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 1.0);
  REQUIRE(rows.size() == 8);
  for (const auto &r : rows)
    CHECK_MESSAGE(r.ok, r.n);
  CHECK(rows[3].max_non_cube == 12); // n=4: Δ2×Δ1×Δ1 -> 3·2·2
}
