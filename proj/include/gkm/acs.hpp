#ifndef GKM_ACS_HPP
#define GKM_ACS_HPP

#include <optional>
#include <string>
#include <vector>

#include "gkm/covering.hpp"

namespace gkm {

// Signed weights with lift(reverse e) = -lift(e); sign[u] is the sign on the
// record direction of undirected edge u.
struct AcsLift {
  std::vector<int> sign;
  std::vector<QVector> lift; // per directed edge
};

struct AcsResult {
  std::optional<AcsLift> lift;
  // Relation table under the returned signs (p = 1 throughout).
  std::vector<ConnectionCoefficient> table;
  // On failure: the relation that cannot be met, or the chain of parity
  // constraints closing into a contradiction.
  std::string witness;
  std::vector<std::string> cycle;
};

// Parity propagation over the connection relations. Every relation must have
// |p| = 1 and integral q; the sign bits then form a linear system over F_2,
// which propagation decides without branching.
AcsResult find_acs_lift(const GkmGraph &g);

// Empty when every relation reads lift(nabla_e f) = lift(f) + q lift(e) with
// q integral; otherwise the first offending relation.
std::string verify_acs_lift(const GkmGraph &g, const std::vector<QVector> &lift);

// Vertex positions in the standard embedding of the product of simplices
// covering g (vertex c of a Delta^k block goes to 0 or e_c). Throws
// NotProductOfSimplices when the covering is nontrivial or has Sigma factors.
std::vector<QVector> embedding_positions(const GkmGraph &g);
// lift(e) = x_target - x_source.
std::vector<QVector> natural_lift(const GkmGraph &g);

// Sign of det(edge directions) * det(signed weights) at every vertex, under
// the standard embedding of the product of simplices covering g. Throws
// NotProductOfSimplices.
struct SignCheck {
  bool constant = true;
  std::vector<int> signs; // per vertex
};
SignCheck quasitoric_sign_check(const GkmGraph &g, const std::vector<QVector> &lift);
// Uses the lift found by find_acs_lift; false when there is none.
SignCheck quasitoric_sign_check(const GkmGraph &g);

struct BottReport {
  bool recognized = false;
  std::string failed_stage; // empty on success
  std::string witness;
  std::vector<Factor> factors;
  std::string conclusion;
};
BottReport recognize_bott(const GkmGraph &g);

} // namespace gkm

#endif
