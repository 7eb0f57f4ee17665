#include "doctest.h"
#include "fixtures.hpp"
#include "gkm/pipeline.hpp"

using namespace gkm;
using namespace fixtures;

namespace {

std::vector<Named> quotient_fixtures() {
  std::vector<Named> out;
  for (int n = 3; n <= 5; ++n)
    out.push_back({"cube quotient " + std::to_string(n), hypercube_involution_model(n).quotient});
  return out;
}

} // namespace

TEST_CASE("model chain agrees on every fixture") {
  auto all = product_fixtures();
  for (auto &q : quotient_fixtures())
    all.push_back(q);
  all.push_back({"Delta4", simplex_model(4)});
  for (const auto &f : all) {
    INFO(f.name);
    ModelReport r = build_model(f.g, 2);
    CHECK(r.ok);
    INFO(r.failed_stage << " " << r.witness);
    CHECK(r.graph_betti == r.model_betti);
    CHECK(!r.graph_betti.empty());
  }
}

TEST_CASE("model details") {
  ModelReport d = build_model(standard_product_model({D(2), S(2)}));
  CHECK(d.ok);
  CHECK(d.deck_order == 1);
  CHECK(d.extension_rank == 4);
  CHECK(d.graph_betti == std::vector<long>{1, 1, 2, 1, 1});

  ModelReport q = build_model(hypercube_involution_model(5).quotient);
  CHECK(q.ok);
  CHECK(q.deck_order == 2);
  CHECK(q.extension_rank == 5);
  CHECK(q.phi.rows() == 4);
  CHECK(q.action.size() == 2);
  CHECK(q.lambda.size() == 10);
  long total = 0;
  for (long b : q.model_betti)
    total += b;
  CHECK(total == 16);

  ModelReport q3 = build_model(hypercube_involution_model(3).quotient);
  CHECK(q3.ok);
  CHECK(!q3.small_three_faces);

  ModelReport cp = build_model(simplex_model(3));
  CHECK(cp.ok);
  CHECK(cp.deck_order == 1);
  CHECK(cp.factors == std::vector<Factor>{D(3)});
  CHECK(cp.action.size() == 1);
}

TEST_CASE("orbit space verdicts") {
  for (const auto &f : product_fixtures()) {
    INFO(f.name);
    OrbitSpaceReport r = classify_orbit_space(f.g);
    CHECK(r.verdict == Verdict::Product);
    CHECK(!r.antipodal_cube);
  }
  OrbitSpaceReport i3 = classify_orbit_space(standard_product_model({D(1), D(1), D(1)}));
  CHECK(i3.factors == std::vector<Factor>{D(1), D(1), D(1)});
  OrbitSpaceReport ds = classify_orbit_space(standard_product_model({D(2), S(2)}));
  CHECK(ds.factors == std::vector<Factor>{D(2), S(2)});
  for (const auto &q : quotient_fixtures()) {
    INFO(q.name);
    OrbitSpaceReport r = classify_orbit_space(q.g);
    CHECK(r.verdict == Verdict::NontrivialCover);
    CHECK(r.deck_order == 2);
    CHECK(r.antipodal_cube);
  }
  // a pentagon has a 2-face with five vertices
  GraphData d;
  d.torus_rank = 2;
  d.vertices = {"a", "b", "c", "d", "e"};
  d.edges = {{"1", "a", "b", {1, 0}}, {"2", "b", "c", {0, 1}}, {"3", "c", "d", {1, 1}},
             {"4", "d", "e", {1, 2}}, {"5", "e", "a", {2, 1}}};
  GkmGraph pent = GkmGraph::from_data(d);
  CHECK(classify_orbit_space(pent).verdict == Verdict::PreconditionFailed);
}
