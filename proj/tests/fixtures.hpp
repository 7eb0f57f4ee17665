#ifndef GKM_TEST_FIXTURES_HPP
#define GKM_TEST_FIXTURES_HPP

#include <string>
#include <vector>

#include "gkm/models.hpp"

namespace fixtures {

using namespace gkm;

inline Factor D(int k) { return {FactorKind::Delta, k}; }
inline Factor S(int m) { return {FactorKind::Sigma, m}; }

struct Named {
  std::string name;
  GkmGraph g;
};

// Product-shaped torus graphs used across suites.
inline std::vector<Named> product_fixtures() {
  return {
      {"Delta1", simplex_model(1)},
      {"Delta2", simplex_model(2)},
      {"Delta3", simplex_model(3)},
      {"Sigma2", sigma_model(2)},
      {"Sigma3", sigma_model(3)},
      {"I2", standard_product_model({D(1), D(1)})},
      {"Hirzebruch1", hirzebruch_model(1)},
      {"I3", standard_product_model({D(1), D(1), D(1)})},
      {"Delta2xDelta1", standard_product_model({D(2), D(1)})},
      {"Sigma2xDelta1", standard_product_model({S(2), D(1)})},
      {"Delta2xSigma2", standard_product_model({D(2), S(2)})},
  };
}

} // namespace fixtures

#endif
