#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "gkm/error.hpp"

using namespace gkm;
using namespace fixtures;
using oracles::oracle_face;
using oracles::small_fixtures;


TEST_CASE("face_through_edges examples") {
  GkmGraph d3 = simplex_model(3);
  Face tri = face_through_edges(d3, 0, {d3.star(0)[0], d3.star(0)[1]});
  CHECK(tri.vertices.size() == 3);
  CHECK(tri.type == FaceType::Triangle);
  Face edge = face_through_edges(d3, 0, {d3.star(0)[2]});
  CHECK(edge.dim == 1);
  CHECK(edge.vertices.size() == 2);
  GkmGraph i3 = standard_product_model({D(1), D(1), D(1)});
  Face sq = face_through_edges(i3, 0, {i3.star(0)[0], i3.star(0)[2]});
  CHECK(sq.vertices.size() == 4);
  CHECK(sq.type == FaceType::Square);
}

TEST_CASE("enumerate_faces counts") {
  CHECK(enumerate_faces(simplex_model(2), 1).size() == 3);
  CHECK(enumerate_faces(standard_product_model({D(1), D(1), D(1)}), 2).size() == 6);
  auto s = enumerate_faces(sigma_model(2), 2);
  CHECK(s.size() == 1);
  // faces of a product are products of faces: Δ2×Δ1 has 6 edges·... f-vector
  GkmGraph p = standard_product_model({D(2), D(1)});
  CHECK(enumerate_faces(p, 0).size() == 6);
  CHECK(enumerate_faces(p, 1).size() == 3 * 2 + 3 * 1);
  CHECK(enumerate_faces(p, 2).size() == 3 * 1 + 1 * 2);
  CHECK(enumerate_faces(p, 3).size() == 1);
  GkmGraph q = standard_product_model({D(2), S(2)});
  // Δ2 f = (3,3,1), Σ2 f = (2,2,1)
  CHECK(enumerate_faces(q, 1).size() == 3 * 2 + 3 * 2);
  CHECK(enumerate_faces(q, 2).size() == 1 * 2 + 3 * 2 + 3 * 1);
  CHECK(enumerate_faces(q, 3).size() == 1 * 2 + 3 * 1);
}

TEST_CASE("classification") {
  Face f;
  f.dim = 2;
  f.vertices = {0, 1};
  f.edges = {0, 1};
  CHECK(classify_two_face(f) == FaceType::Biangle);
  f.vertices = {0, 1, 2};
  f.edges = {0, 1, 2};
  CHECK(classify_two_face(f) == FaceType::Triangle);
  f.vertices = {0, 1, 2, 3, 4};
  f.edges = {0, 1, 2, 3, 4};
  CHECK(classify_two_face(f) == FaceType::Other);

  GkmGraph sxi = standard_product_model({S(2), D(1)});
  auto three = enumerate_faces(sxi, 3);
  REQUIRE(three.size() == 1);
  CHECK(three[0].type == FaceType::BiangleTimesI);
  CHECK(enumerate_faces(simplex_model(3), 3)[0].type == FaceType::Simplex3);
  CHECK(enumerate_faces(sigma_model(3), 3)[0].type == FaceType::Sigma3);
  // two triangles and a biangle on three vertices: not a listed type
  CHECK(classify_three_face(3, 4, {FaceType::Biangle, FaceType::Triangle, FaceType::Triangle}) ==
        FaceType::Other);
  // triangle meeting a square at a vertex next to a triangle face
  CHECK(classify_three_face(5, 8, {FaceType::Triangle, FaceType::Triangle, FaceType::Square,
                                   FaceType::Square}) == FaceType::Other);
}

TEST_CASE("small three faces") {
  auto r = check_small_three_faces(standard_product_model({D(2), S(2)}));
  CHECK(r.ok);
  for (const auto &[t, c] : r.type_counts)
    CHECK((t == FaceType::TriangleTimesI || t == FaceType::BiangleTimesI));
  CHECK(check_small_three_faces(hypercube_involution_model(5).quotient).ok);
  CHECK(check_small_three_faces(hypercube_involution_model(4).quotient).ok);
  // at n = 3 the whole quotient is one 3-face with three square 2-faces
  GkmGraph q3 = hypercube_involution_model(3).quotient;
  auto r3 = check_small_three_faces(q3);
  CHECK(!r3.ok);
  auto whole = enumerate_faces(q3, 3);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].type == FaceType::Other);
  CHECK(two_faces_of(q3, whole[0]).size() == 3);

  // prism over a pentagon: the pentagon 2-faces make the single 3-face Other
  GraphData d;
  d.torus_rank = 0;
  for (int i = 0; i < 5; ++i)
    for (int s = 0; s < 2; ++s)
      d.vertices.push_back(std::to_string(s) + std::to_string(i));
  for (int i = 0; i < 5; ++i) {
    int j = (i + 1) % 5;
    for (int s = 0; s < 2; ++s)
      d.edges.push_back({"c" + std::to_string(s) + std::to_string(i), std::to_string(s) + std::to_string(i),
                         std::to_string(s) + std::to_string(j), {}});
    d.edges.push_back({"r" + std::to_string(i), "0" + std::to_string(i), "1" + std::to_string(i), {}});
  }
  GkmGraph prism = GkmGraph::from_data(d);
  // natural prism connection: translate around the cycle, swap the layers
  GkmGraph::Connection conn(prism.num_edges());
  auto layer = [&](VertexId v) { return prism.vertex_name(v)[0]; };
  for (EdgeId e = 0; e < static_cast<EdgeId>(prism.num_edges()); ++e) {
    VertexId u = prism.source(e), w = prism.target(e);
    for (EdgeId h : prism.star(u)) {
      EdgeId img = -1;
      if (h == e) {
        img = prism.reverse(e);
      } else if (layer(u) != layer(w)) {
        // rung: cycle edges go to the parallel cycle edge on the other layer
        for (EdgeId k : prism.star(w))
          if (k != prism.reverse(e) &&
              prism.vertex_name(prism.target(k))[1] == prism.vertex_name(prism.target(h))[1])
            img = k;
      } else if (layer(u) != layer(prism.target(h))) {
        for (EdgeId k : prism.star(w))
          if (layer(prism.target(k)) != layer(w))
            img = k;
      } else {
        for (EdgeId k : prism.star(w))
          if (k != prism.reverse(e) && layer(prism.target(k)) == layer(w))
            img = k;
      }
      conn[e].push_back(img);
    }
  }
  prism = prism.with_connection(conn);
  REQUIRE(validate_structure(prism).ok());
  auto pr = check_small_three_faces(prism);
  CHECK(!pr.ok);
  CHECK(!pr.witness.empty());
}

TEST_CASE("maximal simplex partition") {
  GkmGraph g = standard_product_model({D(2), S(2)});
  for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
    auto p = maximal_simplex_partition(g, v);
    REQUIRE(p.blocks.size() == 2);
    std::multiset<std::pair<int, int>> kinds;
    for (const auto &b : p.blocks)
      kinds.insert({static_cast<int>(b.kind), b.size()});
    CHECK(kinds == std::multiset<std::pair<int, int>>{{0, 2}, {1, 2}});
  }
  auto cube = maximal_simplex_partition(standard_product_model({D(1), D(1), D(1), D(1)}), 3);
  CHECK(cube.blocks.size() == 4);
  auto d3 = maximal_simplex_partition(simplex_model(3), 2);
  REQUIRE(d3.blocks.size() == 1);
  CHECK(d3.blocks[0].size() == 3);
}

TEST_CASE("connection identities") {
  for (const auto &f : product_fixtures())
    CHECK_MESSAGE(check_connection_identities(f.g).ok, f.name);
  CHECK(check_connection_identities(hypercube_involution_model(3).quotient).ok);

  // twist one square so its parallel classes are swapped
  GkmGraph i3 = standard_product_model({D(1), D(1), D(1)});
  auto conn = i3.connection();
  EdgeId e = *i3.find_edge("0,0,0|1,0,0");
  auto &row = conn[e];
  std::size_t a = 0, b = 0;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] != i3.reverse(e)) {
      if (!a)
        a = i;
      else
        b = i;
    }
  std::swap(row[a], row[b]);
  GkmGraph bent = i3.without_connection().with_connection(conn);
  auto res = check_connection_identities(bent);
  CHECK(!res.ok);
  CHECK(!res.witness.empty());
}

TEST_CASE("oracle: face_through_edges is the minimal closed subgraph") {
  for (const auto &fx : small_fixtures()) {
    const GkmGraph &g = fx.g;
    if (g.num_vertices() > 12 || g.num_undirected() > 20)
      continue;
    auto val = *g.valence();
    for (VertexId v = 0; v < static_cast<VertexId>(g.num_vertices()); ++v) {
      const auto &s = g.star(v);
      for (std::uint32_t mask = 1; mask < (1u << val); ++mask) {
        std::vector<EdgeId> seed;
        for (std::size_t i = 0; i < val; ++i)
          if ((mask >> i) & 1)
            seed.push_back(s[i]);
        Face f = face_through_edges(g, v, seed);
        auto o = oracle_face(g, v, seed);
        REQUIRE_MESSAGE(o.has_value(), fx.name);
        CHECK_MESSAGE(f.vertices == o->vertices, fx.name);
        CHECK_MESSAGE(f.edges == o->edges, fx.name);
      }
    }
  }
}

TEST_CASE("partition block types agree across vertices") {
  for (const auto &fx : small_fixtures()) {
    if (!check_small_three_faces(fx.g).ok)
      continue;
    std::multiset<std::pair<int, int>> first;
    for (VertexId v = 0; v < static_cast<VertexId>(fx.g.num_vertices()); ++v) {
      std::multiset<std::pair<int, int>> k;
      for (const auto &b : maximal_simplex_partition(fx.g, v).blocks)
        k.insert({static_cast<int>(b.kind), b.size()});
      if (v == 0)
        first = k;
      CHECK_MESSAGE(k == first, fx.name);
    }
  }
}
