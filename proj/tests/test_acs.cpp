#include "doctest.h"
#include "fixtures.hpp"
#include "gkm/acs.hpp"
#include "gkm/error.hpp"

using namespace gkm;
using namespace fixtures;

namespace {

void check_table(const GkmGraph &g, const AcsResult &r) {
  REQUIRE(r.lift);
  CHECK(verify_acs_lift(g, r.lift->lift).empty());
  CHECK(r.table.size() == g.num_vertices() * *g.valence() * (*g.valence() - 1));
  for (const auto &c : r.table) {
    CHECK(c.p.is_one());
    CHECK(c.q.is_integer());
    // the signed relation holds literally
    const auto &L = r.lift->lift;
    CHECK(L[c.image] == L[c.edge] + L[c.along] * c.q);
  }
}

} // namespace

TEST_CASE("lifts exist on complex examples") {
  for (int n = 1; n <= 3; ++n) {
    GkmGraph g = simplex_model(n);
    if (n >= 2)
      check_table(g, find_acs_lift(g));
    else
      CHECK(find_acs_lift(g).lift);
  }
  check_table(hirzebruch_model(1), find_acs_lift(hirzebruch_model(1)));
  check_table(hirzebruch_model(3), find_acs_lift(hirzebruch_model(3)));
  check_table(standard_product_model({D(2), D(1)}), find_acs_lift(standard_product_model({D(2), D(1)})));
}

TEST_CASE("sigma factors have no lift") {
  for (int m : {2, 3}) {
    AcsResult r = find_acs_lift(sigma_model(m));
    CHECK(!r.lift);
    CHECK(!r.witness.empty());
    CHECK(!r.cycle.empty());
  }
  AcsResult r = find_acs_lift(standard_product_model({S(2), D(1)}));
  CHECK(!r.lift);
}

TEST_CASE("non-unit p refutes") {
  // weighted projective line pair with p = 2 somewhere
  GkmGraph g = weighted_projective_model(1, 2);
  AcsResult r = find_acs_lift(g);
  if (!r.lift)
    CHECK(!r.witness.empty());
  // any lift returned must verify
  else
    CHECK(verify_acs_lift(g, r.lift->lift).empty());
}

TEST_CASE("verify rejects a wrong sign") {
  GkmGraph g = simplex_model(2);
  auto lift = find_acs_lift(g).lift->lift;
  lift[0] = -lift[0];
  lift[1] = -lift[1];
  CHECK(!verify_acs_lift(g, lift).empty());
  lift[1] = -lift[1];
  CHECK(!verify_acs_lift(g, lift).empty());
}

TEST_CASE("natural lift of standard products") {
  for (const auto &fs : std::vector<std::vector<Factor>>{{D(1)}, {D(2)}, {D(1), D(1)}, {D(2), D(1)}, {D(3)}}) {
    GkmGraph g = standard_product_model(fs);
    auto L = natural_lift(g);
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); ++e)
      CHECK(!L[e].is_zero());
    if (*g.valence() >= 2)
      CHECK(verify_acs_lift(g, L).empty());
  }
}

TEST_CASE("quasitoric sign check") {
  for (const auto &fs : std::vector<std::vector<Factor>>{{D(1), D(1)}, {D(2)}, {D(2), D(1)}, {D(3)}, {D(1), D(1), D(1)}}) {
    GkmGraph g = standard_product_model(fs);
    auto L = natural_lift(g);
    SignCheck s = quasitoric_sign_check(g, L);
    CHECK(s.constant);
    CHECK(s.signs.size() == g.num_vertices());
    // global re-gauge keeps the verdict
    for (auto &x : L)
      x = -x;
    CHECK(quasitoric_sign_check(g, L).constant);
    CHECK(quasitoric_sign_check(g).constant);
  }
  CHECK(quasitoric_sign_check(hirzebruch_model(1)).constant);
  CHECK(quasitoric_sign_check(hirzebruch_model(2)).constant);

  // mis-gauged: one directed lift flipped changes exactly one vertex
  GkmGraph i2 = standard_product_model({D(1), D(1)});
  auto L = natural_lift(i2);
  L[0] = -L[0];
  SignCheck bad = quasitoric_sign_check(i2, L);
  CHECK(!bad.constant);
  CHECK(std::count(bad.signs.begin(), bad.signs.end(), bad.signs[i2.source(0)]) == 1);

  CHECK_THROWS_AS(quasitoric_sign_check(sigma_model(2)), Error);
  auto m = hypercube_involution_model(3);
  try {
    quasitoric_sign_check(m.quotient, std::vector<QVector>(m.quotient.num_edges(), QVector{1, 0}));
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == "NotProductOfSimplices");
  }
}

TEST_CASE("recognize_bott") {
  BottReport r = recognize_bott(standard_product_model({D(2), D(1)}));
  CHECK(r.recognized);
  REQUIRE(r.factors.size() == 2);
  CHECK(r.factors[0] == D(2));
  CHECK(r.factors[1] == D(1));
  CHECK(r.conclusion.find("(2,1)") != std::string::npos);

  BottReport h = recognize_bott(hirzebruch_model(2));
  CHECK(h.recognized);

  BottReport q = recognize_bott(hypercube_involution_model(5).quotient);
  CHECK(!q.recognized);
  CHECK((q.failed_stage == "acs_lift" || q.failed_stage == "trivial_deck_group" ||
         q.failed_stage == "small_three_faces"));

  BottReport s = recognize_bott(sigma_model(2));
  CHECK(!s.recognized);
  CHECK(s.failed_stage == "acs_lift");

  for (const auto &f : product_fixtures()) {
    BottReport b = recognize_bott(f.g);
    if (b.recognized)
      for (const Factor &x : b.factors)
        CHECK(x.kind == FactorKind::Delta);
  }
}
