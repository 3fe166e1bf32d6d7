#pragma once

#include "conncurv/graph.hpp"
#include "conncurv/linalg.hpp"

#include <map>
#include <random>
#include <string>

namespace conncurv {

using Rng = std::mt19937_64;

// Complex (or real) matrix with independent standard normal entries.
Mat random_gaussian(Index rows, Index cols, Rng& rng, bool real = false);
// Haar-distributed unitary (orthogonal when real).
Mat random_unitary(int d, Rng& rng, bool real = false);

struct RandomGraphOptions {
  int min_vertices = 3;
  int max_vertices = 6;
  int dimension = 1;
  bool real = false;               // O(d) connections instead of U(d)
  bool identity_connections = false;
  bool unit_weights = false;       // w = 1 and mu = 1
  double extra_edge_prob = 0.5;    // on top of a random spanning tree
};

// Connected graph on vertices "1".."k".
ConnectionGraph random_connection_graph(const RandomGraphOptions& opts, Rng& rng);

// Random unitary gauge on every vertex.
std::map<std::string, Mat> random_switching(const ConnectionGraph& g, Rng& rng, bool real = false);

}  // namespace conncurv
