#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "gkm/error.hpp"

using namespace gkm;
using namespace fixtures;

TEST_CASE("simplex and sigma models") {
  GkmGraph d1 = simplex_model(1);
  CHECK(d1.num_vertices() == 2);
  CHECK(d1.num_undirected() == 1);
  CHECK(d1.weight(0) == QVector{1});
  GkmGraph d2 = simplex_model(2);
  std::set<QVector> ws;
  for (EdgeId e = 0; e < 6; e += 2)
    ws.insert(d2.weight(e));
  CHECK(ws == std::set<QVector>{{1, 0}, {0, 1}, {1, -1}});
  GkmGraph d3 = simplex_model(3);
  CHECK(d3.num_vertices() == 4);
  CHECK(d3.valence() == 3u);
  CHECK(check_manifold_integrality(d3).ok);
  GkmGraph s3 = sigma_model(3);
  CHECK(s3.valence() == 3u);
  auto f = enumerate_faces(s3, 3);
  REQUIRE(f.size() == 1);
  CHECK(f[0].type == FaceType::Sigma3);
  CHECK_THROWS_AS(sigma_model(1), Error);
}

TEST_CASE("every generated model validates") {
  auto fs = product_fixtures();
  fs.push_back({"WP12", weighted_projective_model(1, 2)});
  fs.push_back({"WPm11", weighted_projective_model(-1, 1)});
  for (int n = 3; n <= 5; ++n) {
    auto m = hypercube_involution_model(n);
    fs.push_back({"cube" + std::to_string(n), m.total});
    fs.push_back({"quot" + std::to_string(n), m.quotient});
  }
  for (const auto &f : fs) {
    CHECK_MESSAGE(validate_structure(f.g).ok(), f.name);
    if (*f.g.valence() >= 2)
      CHECK_MESSAGE(check_gkm_k(f.g, 2).ok, f.name);
    CHECK_MESSAGE(check_connection_compat(f.g).report.ok(), f.name);
  }
}

TEST_CASE("hypercube example weights") {
  const int n = 4;
  auto m = hypercube_involution_model(n);
  // at vertex (0,..,0) all epsilon = +1: e_1*..e_{n-1}* and e_n* - sum e_i*
  VertexId v = 0;
  std::set<QVector> ws;
  for (EdgeId e : m.total.star(v))
    ws.insert(m.total.weight(e));
  CHECK(ws == std::set<QVector>{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, -1}});
  CHECK(check_manifold_integrality(m.total).ok);
  CHECK(gkm_order(m.quotient) == n - 1);
}

TEST_CASE("dependent labels are rejected") {
  CharacteristicPair p = standard_pair({D(1), D(1)});
  p.lambda[1][1] = QVector{1, 0};
  CHECK_THROWS_AS(product_model(p), Error);
}

TEST_CASE("bott towers") {
  auto cp2 = bott_tower_cohomology({{2, {{}, {}, {}}}});
  CHECK(cp2.betti == std::vector<std::size_t>{1, 1, 1});
  CHECK(cp2.relations[0] == HomogPoly::monomial({3}));
  for (long a : {0L, 1L, 2L}) {
    auto h = bott_tower_cohomology({{1, {{}, {}}}, {1, {{0}, {a}}}});
    CHECK(h.betti == std::vector<std::size_t>{1, 2, 1});
    CHECK(h.relations[0] == HomogPoly::monomial({2, 0}));
    CHECK(h.relations[1] == HomogPoly::monomial({0, 2}) + HomogPoly::monomial({1, 1}, Rational(a)));
    // x2^2 reduces to -a x1 x2
    auto nf = h.normal_form(HomogPoly::monomial({0, 2}));
    CHECK(nf == HomogPoly::monomial({1, 1}, Rational(-a)));
    CHECK(h.normal_form(HomogPoly::monomial({0, 3})).is_zero());
  }
  auto t = bott_tower_cohomology({{2, {{}, {}, {}}}, {1, {{1}, {0}}}, {3, {{0, 2}, {1, 0}, {0, 0}, {1, 1}}}});
  // Poincaré polynomial (1+t+t^2)(1+t)(1+t+t^2+t^3)
  CHECK(t.betti == std::vector<std::size_t>{1, 3, 5, 6, 5, 3, 1});
  for (std::size_t d = 0; d < t.betti.size(); ++d)
    CHECK(t.standard_monomials(d).size() == t.betti[d]);
  CHECK_THROWS_AS(bott_tower_cohomology({{1, {{}, {}, {}}}}), Error);
  CHECK_THROWS_AS(bott_tower_cohomology({{1, {{1}, {}}}}), Error);
}
