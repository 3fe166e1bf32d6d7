#pragma once

#include "conncurv/linalg.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace conncurv {

enum class Field { real, complex };

struct Vertex {
  std::string id;
  double measure = 1.0;
};

// Undirected edge; `sigma` is the connection for the orientation u -> v.
struct Edge {
  std::string u;
  std::string v;
  double weight = 1.0;
  Mat sigma;
};

// Weighted graph with vertex measures and unitary connections. The reverse
// connection sigma_vu = sigma_uv^H is derived on lookup, never stored.
class ConnectionGraph {
 public:
  // Validates every invariant; throws ValidationError.
  ConnectionGraph(int dimension, Field field, std::vector<Vertex> vertices, std::vector<Edge> edges);

  int dimension() const { return d_; }
  Field field() const { return field_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(const std::string& id) const { return index_.count(id) > 0; }
  double measure(const std::string& id) const;
  bool adjacent(const std::string& u, const std::string& v) const;
  // 0 when u, v are not adjacent.
  double weight(const std::string& u, const std::string& v) const;
  Mat sigma(const std::string& u, const std::string& v) const;
  // Neighbor ids in lexicographic order.
  std::vector<std::string> neighbors(const std::string& u) const;
  // Sum of incident edge weights.
  double degree(const std::string& u) const;

 private:
  std::size_t vertex_index(const std::string& id) const;

  int d_;
  Field field_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t> index_;
  // per vertex: neighbor id -> (edge index, stored orientation starts here)
  std::vector<std::map<std::string, std::pair<std::size_t, bool>>> adj_;
};

// Incomplete 2-ball around `center`. Local indices: 0 is the center,
// 1..m the sorted 1-sphere, m+1..m+n the sorted 2-sphere. Edges between two
// 2-sphere vertices are dropped.
struct LocalStructure {
  std::string center;
  std::vector<std::string> s1;
  std::vector<std::string> s2;
  int d = 1;
  int m = 0;
  int n = 0;
  double dx_over_mux = 0.0;
  // p(u, v) = w_uv / mu_u on every kept edge, 0 elsewhere. Rows for
  // 2-sphere vertices are incomplete by construction.
  Eigen::MatrixXd p;
  // sigma[u * size() + v] for kept edges; empty otherwise.
  std::vector<Mat> sigma_store;

  int size() const { return 1 + m + n; }
  bool linked(int u, int v) const { return p(u, v) > 0.0; }
  const Mat& sigma(int u, int v) const { return sigma_store[static_cast<std::size_t>(u * size() + v)]; }
  // Full d_u / mu_u for the center and 1-sphere vertices.
  double degree_over_measure(int u) const { return p.row(u).sum(); }
  std::string id(int u) const;
};

ConnectionGraph load_graph(const std::string& json_text);
ConnectionGraph load_graph_file(const std::string& path);
std::string to_json(const ConnectionGraph& g);

LocalStructure local_structure(const ConnectionGraph& g, const std::string& x);

// sigma^tau_xy = tau(x)^{-1} sigma_xy tau(y).
ConnectionGraph switch_graph(const ConnectionGraph& g, const std::map<std::string, Mat>& tau);

// Spanning-tree trivialization from the center, then every non-tree edge
// must carry the identity within 1e-9.
bool is_locally_balanced(const LocalStructure& local);

// Pairwise commutation of the edge connections of both graphs within 1e-9.
bool signature_groups_commute(const ConnectionGraph& g, const ConnectionGraph& g2);

}  // namespace conncurv
