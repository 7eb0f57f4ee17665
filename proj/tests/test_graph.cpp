#include "doctest.h"
#include "fixtures.hpp"
#include "gkm/error.hpp"
#include "gkm/io.hpp"

using namespace gkm;
using namespace fixtures;

namespace {

GraphData two_triangles() {
  GraphData d;
  d.torus_rank = 2;
  d.vertices = {"a", "b", "c", "x", "y", "z"};
  d.edges = {{"ab", "a", "b", {1, 0}}, {"bc", "b", "c", {0, 1}}, {"ca", "c", "a", {1, 1}},
             {"xy", "x", "y", {1, 0}}, {"yz", "y", "z", {0, 1}}, {"zx", "z", "x", {1, 1}}};
  return d;
}

} // namespace

TEST_CASE("weight canonicalization") {
  QVector v{0, -2, 3};
  CHECK(Weight::canonical(v) == QVector{0, 2, -3});
  CHECK(Weight::canonical(-v) == Weight::canonical(v));
  CHECK(Weight::canonical(Weight::canonical(v)) == Weight::canonical(v));
  CHECK_THROWS_AS(Weight(QVector{0, 0}), Error);
}

TEST_CASE("validate_structure") {
  GkmGraph cp2 = simplex_model(2);
  auto r = validate_structure(cp2);
  CHECK(r.ok());
  CHECK(cp2.valence() == 2u);
  CHECK(r.gkm_order == 2);

  GraphData bad = cp2.to_data();
  // break nabla_e(e) = reverse(e) on the first record
  auto &rec = (*bad.connection)[0];
  for (auto &[from, to] : rec.map)
    if (from == rec.along) {
      for (auto &[f2, t2] : rec.map)
        if (f2 != rec.along)
          std::swap(to, t2);
      break;
    }
  auto rb = validate_structure(bad);
  CHECK(!rb.ok());
  const Check *ax = rb.find("connection_reverse_axiom");
  REQUIRE(ax);
  CHECK(!ax->passed);
  CHECK(ax->witness.find(rec.along) != std::string::npos);

  auto rd = validate_structure(two_triangles());
  CHECK(!rd.find("connected")->passed);

  GraphData dangling = two_triangles();
  dangling.edges.push_back({"q", "a", "nowhere", {1, 0}});
  auto rq = validate_structure(dangling);
  CHECK(!rq.ok());
  CHECK(!rq.find("references")->passed);
  CHECK(rq.find("references")->witness.find("nowhere") != std::string::npos);
}

TEST_CASE("check_gkm_k") {
  GkmGraph d3 = simplex_model(3);
  CHECK(check_gkm_k(d3, 3).ok);
  CHECK(check_gkm_k(d3, 2).ok);
  CHECK(check_gkm_k(sigma_model(2), 2).ok);
  GraphData d;
  d.torus_rank = 1;
  d.vertices = {"a", "b"};
  d.edges = {{"p", "a", "b", {1}}, {"q", "a", "b", {1}}};
  auto res = check_gkm_k(GkmGraph::from_data(d), 2);
  CHECK(!res.ok);
  CHECK(res.edges.size() == 2);
  CHECK_THROWS_AS(check_gkm_k(d3, 4), Error);
  CHECK_THROWS_AS(check_gkm_k(d3, 1), Error);
}

TEST_CASE("check_gkm_k is monotone") {
  for (const auto &f : product_fixtures()) {
    int order = gkm_order(f.g);
    for (int k = 2; k <= order; ++k)
      CHECK(check_gkm_k(f.g, k).ok);
  }
}

TEST_CASE("connection compatibility and integrality") {
  GkmGraph cp2 = simplex_model(2);
  auto c = check_connection_compat(cp2);
  CHECK(c.report.ok());
  CHECK(c.table.size() == 3 * 2);
  CHECK(check_manifold_integrality(cp2).ok);
  for (int n = 1; n <= 4; ++n)
    CHECK(check_manifold_integrality(simplex_model(n)).ok);
  CHECK(check_manifold_integrality(sigma_model(2)).ok);
  for (const auto &row : check_connection_compat(sigma_model(2)).table) {
    CHECK(row.p == 1);
    CHECK(row.q == 0);
  }
  CHECK(!check_manifold_integrality(weighted_projective_model(1, 2)).ok);
  CHECK(check_manifold_integrality(weighted_projective_model(1, 1)).ok);
  CHECK(check_manifold_integrality(weighted_projective_model(-1, 1)).ok);

  // connection sending e' to an edge with an independent third weight
  GraphData d = simplex_model(3).to_data();
  d.edges[0].weight = {0, 0, 1};
  d.edges[1].weight = {1, 0, 0};
  d.edges[2].weight = {0, 1, 0};
  d.edges[3].weight = {1, 1, 1};
  d.edges[4].weight = {1, 2, 3};
  d.edges[5].weight = {1, 3, 7};
  auto bad = check_connection_compat(GkmGraph::from_data(d));
  CHECK(!bad.report.ok());
  CHECK(!bad.report.checks[0].witness.empty());
  CHECK_THROWS_AS(check_connection_compat(cp2.without_connection()), Error);
}

TEST_CASE("check_effective") {
  CHECK(check_effective(simplex_model(2)));
  CHECK(check_effective(sigma_model(3)));
  GkmGraph cp2 = simplex_model(2);
  std::vector<QVector> ws;
  for (EdgeId e = 0; e < static_cast<EdgeId>(cp2.num_edges()); e += 2)
    ws.push_back(QVector{cp2.weight(e)[0], cp2.weight(e)[1], 0});
  CHECK(!check_effective(cp2.with_weights(3, ws)));
}

TEST_CASE("infer_connection") {
  for (const auto &f : product_fixtures()) {
    GkmGraph inferred = infer_connection(f.g.without_connection());
    CHECK(inferred.connection() == f.g.connection());
    CHECK(check_connection_compat(inferred).report.ok());
    CHECK(validate_structure(inferred).ok());
    // nabla_{reverse e} ∘ nabla_e = id
    for (EdgeId e = 0; e < static_cast<EdgeId>(inferred.num_edges()); ++e)
      for (EdgeId h : inferred.star(inferred.source(e)))
        CHECK(inferred.nabla(inferred.reverse(e), inferred.nabla(e, h)) == h);
  }
  // the triangle: along u->v, u->w goes to v->w
  GkmGraph cp2 = infer_connection(simplex_model(2).without_connection());
  EdgeId e01 = *cp2.find_edge("0|1"), e02 = *cp2.find_edge("0|2"), e12 = *cp2.find_edge("1|2");
  CHECK(cp2.nabla(e01, e02) == e12);
  // Σ²: nabla_e e' = reverse e'
  GkmGraph s4 = infer_connection(sigma_model(2).without_connection());
  EdgeId a = *s4.find_edge("0|1#0"), b = *s4.find_edge("0|1#1");
  CHECK(s4.nabla(a, b) == s4.reverse(b));
  // I²: opposite edge translation
  GkmGraph i2 = infer_connection(standard_product_model({D(1), D(1)}).without_connection());
  EdgeId x = *i2.find_edge("0,0|1,0"), y = *i2.find_edge("0,0|0,1");
  CHECK(i2.edge_name(i2.nabla(x, y)) == "1,0|1,1");
}

TEST_CASE("json round trip") {
  GkmGraph g = simplex_model(3);
  json j = to_json(g);
  GkmGraph back = GkmGraph::from_data(graph_data_from_json(j));
  CHECK(to_json(back).dump() == j.dump());
  json extra = j;
  extra["colour"] = "blue";
  CHECK_THROWS_AS(graph_data_from_json(extra), ParseError);
  json badw = j;
  badw["edges"][0]["weight"][0] = "1/0";
  CHECK_THROWS_AS(graph_data_from_json(badw), Error);
}
