#ifndef GKM_FACES_HPP
#define GKM_FACES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gkm/graph.hpp"

namespace gkm {

enum class FaceType {
  Point,
  Edge,
  Biangle,
  Triangle,
  Square,
  Simplex3,      // Δ³
  Sigma3,        // Σ³
  TriangleTimesI,
  BiangleTimesI, // Σ²×I
  Cube,          // I³
  Other
};

std::string to_string(FaceType t);

struct Face {
  std::vector<VertexId> vertices; // sorted
  std::vector<int> edges;         // undirected edge indices, sorted
  int dim = 0;
  FaceType type = FaceType::Other;

  auto key() const { return std::make_pair(vertices, edges); }
  bool contains_vertex(VertexId v) const;
  // Directed edges of the face leaving v, in star order.
  std::vector<EdgeId> star(const GkmGraph &g, VertexId v) const;
};

inline bool operator==(const Face &a, const Face &b) { return a.key() == b.key(); }

// The unique l-face through `edges` (all in star(v)). Uses the span closure
// when the graph is labelled with GKM order >= l+1, and transports the edge
// set by the connection otherwise. Throws SpanViolation / NotClosed.
Face face_through_edges(const GkmGraph &g, VertexId v, const std::vector<EdgeId> &edges);

// All l-faces, sorted by key.
std::vector<Face> enumerate_faces(const GkmGraph &g, int l);

// Type from vertex/edge counts only.
FaceType classify_two_face(const Face &f);
// Classification from counts and the multiset of 2-face types.
FaceType classify_three_face(std::size_t vertices, std::size_t edges,
                             const std::vector<FaceType> &two_faces);
FaceType classify_three_face(const GkmGraph &g, const Face &f);
// The 2-faces of g contained in f.
std::vector<Face> two_faces_of(const GkmGraph &g, const Face &f);

struct SmallFacesResult {
  bool ok = true;
  std::string witness;
  std::map<FaceType, int> type_counts; // over distinct 3-faces
};
SmallFacesResult check_small_three_faces(const GkmGraph &g);

enum class FactorKind { Delta, Sigma };

struct SimplexBlock {
  std::vector<EdgeId> edges; // sorted by name
  FactorKind kind = FactorKind::Delta;
  int size() const { return static_cast<int>(edges.size()); }
};

struct SimplexPartition {
  VertexId vertex = -1;
  std::vector<SimplexBlock> blocks; // ordered by first edge name
};

// Throws PartitionInconsistent.
SimplexPartition maximal_simplex_partition(const GkmGraph &g, VertexId v);

struct IdentityResult {
  bool ok = true;
  std::string witness;
};
IdentityResult check_connection_identities(const GkmGraph &g);

} // namespace gkm

#endif
