#ifndef GKM_GRAPH_HPP
#define GKM_GRAPH_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gkm/linalg.hpp"

namespace gkm {

// A weight modulo sign: the stored representative has first nonzero entry > 0.
class Weight {
public:
  Weight() = default;
  // Throws ZeroWeight.
  explicit Weight(QVector v);

  static QVector canonical(QVector v);

  const QVector &vector() const { return v_; }
  std::size_t rank() const { return v_.size(); }
  friend bool operator==(const Weight &, const Weight &) = default;

private:
  QVector v_;
};

// Name-level description of a graph, as read from / written to JSON. May be
// malformed; validate_structure reports what is wrong with it.
struct EdgeRecord {
  std::string id;
  std::string source;
  std::string target;
  std::vector<Rational> weight; // empty for unlabelled graphs
};

struct ConnectionRecord {
  std::string along;
  std::vector<std::pair<std::string, std::string>> map;
};

struct GraphData {
  int torus_rank = 0;
  std::vector<std::string> vertices;
  std::vector<EdgeRecord> edges;
  std::optional<std::vector<ConnectionRecord>> connection;
};

using VertexId = int;
using EdgeId = int; // directed edge; 2u is the record direction, 2u+1 its reverse

// Labelled graph with an optional connection. Vertices are sorted by name and
// undirected edges by record id, so every "pick the smallest" step in the
// toolkit is the lexicographic minimum. A graph with torus rank 0 is
// unlabelled.
class GkmGraph {
public:
  struct Edge {
    std::string name;
    VertexId source;
    VertexId target;
    EdgeId reverse;
    int undirected;
  };
  // conn[e][i] is the image under nabla_e of star(source(e))[i]; -1 = unset.
  using Connection = std::vector<std::vector<EdgeId>>;

  GkmGraph() = default;

  // Throws Error("Malformed", ...) on dangling or duplicate references.
  static GkmGraph from_data(const GraphData &data);
  GraphData to_data() const;

  int torus_rank() const { return torus_rank_; }
  bool labelled() const { return torus_rank_ > 0; }

  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_undirected() const { return edges_.size() / 2; }

  const std::string &vertex_name(VertexId v) const { return vertex_names_[v]; }
  const std::vector<std::string> &vertex_names() const { return vertex_names_; }
  std::optional<VertexId> find_vertex(const std::string &name) const;
  std::optional<EdgeId> find_edge(const std::string &name) const;

  const Edge &edge(EdgeId e) const { return edges_[e]; }
  const std::string &edge_name(EdgeId e) const { return edges_[e].name; }
  VertexId source(EdgeId e) const { return edges_[e].source; }
  VertexId target(EdgeId e) const { return edges_[e].target; }
  EdgeId reverse(EdgeId e) const { return edges_[e].reverse; }

  // Outgoing directed edges sorted by name.
  const std::vector<EdgeId> &star(VertexId v) const { return star_[v]; }
  std::size_t star_position(EdgeId e) const { return star_pos_[e]; }
  // Common valence, or nullopt if vertices differ.
  std::optional<std::size_t> valence() const;

  // Canonical weight of the undirected edge underlying e.
  const QVector &weight(EdgeId e) const { return weights_[edges_[e].undirected].vector(); }

  bool has_connection() const { return connection_.has_value(); }
  const Connection &connection() const { return *connection_; }
  // nabla_e(f) for f in star(source(e)); -1 if unset. Throws if no connection.
  EdgeId nabla(EdgeId e, EdgeId f) const;

  GkmGraph with_connection(Connection conn) const;
  GkmGraph without_connection() const;
  // Replace all labels; `weights` is indexed by undirected edge.
  GkmGraph with_weights(int torus_rank, std::vector<QVector> weights) const;

  std::string describe_edge(EdgeId e) const;

private:
  int torus_rank_ = 0;
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<Weight> weights_;
  std::vector<std::vector<EdgeId>> star_;
  std::vector<std::size_t> star_pos_;
  std::optional<Connection> connection_;
};

struct Check {
  std::string name;
  bool passed = true;
  std::string witness; // non-empty exactly when !passed
};

struct ValidationReport {
  std::vector<Check> checks;
  int gkm_order = 0;

  bool ok() const;
  const Check *find(const std::string &name) const;
  void add(std::string name, bool passed, std::string witness = {});
};

struct IndependenceResult {
  bool ok = true;
  VertexId vertex = -1;
  std::vector<EdgeId> edges;
  std::string witness;
};

// (p, q) with lift(nabla_{e1} e2) = p lift(e2) + q lift(e1), canonical lifts.
struct ConnectionCoefficient {
  VertexId vertex;
  EdgeId along;  // e1
  EdgeId edge;   // e2
  EdgeId image;  // nabla_{e1} e2
  Rational p;
  Rational q;
};

struct CompatReport {
  ValidationReport report;
  std::vector<ConnectionCoefficient> table;
};

ValidationReport validate_structure(const GraphData &data);
ValidationReport validate_structure(const GkmGraph &g);

// Every k-subset of incident weights at every vertex has rank k.
IndependenceResult check_gkm_k(const GkmGraph &g, int k);
// Largest k with the k-independence property (1 when even pairs fail).
int gkm_order(const GkmGraph &g);

CompatReport check_connection_compat(const GkmGraph &g);
IndependenceResult check_manifold_integrality(const GkmGraph &g);
IndependenceResult check_manifold_integrality(const CompatReport &compat,
                                              const GkmGraph &g);
bool check_effective(const GkmGraph &g);

// Unique connection of a GKM_3 graph: nabla_e e' is the edge f != reverse(e)
// at target(e) with weight in span{w(e), w(e')}.
GkmGraph infer_connection(const GkmGraph &g);

// BFS order from `root` following stars in name order.
std::vector<VertexId> bfs_order(const GkmGraph &g, VertexId root);
bool is_connected(const GkmGraph &g);

} // namespace gkm

#endif
