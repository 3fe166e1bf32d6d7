#include "conncurv/random.hpp"

#include <Eigen/QR>

#include <cmath>

namespace conncurv {

Mat random_gaussian(Index rows, Index cols, Rng& rng, bool real) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = real ? 0.0 : normal(rng);
      out(i, j) = cplx(re, im);
    }
  return out;
}

Mat random_unitary(int d, Rng& rng, bool real) {
  const Mat z = random_gaussian(d, d, rng, real);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so the distribution is Haar.
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  if (real) q = q.real().cast<cplx>();
  return q;
}

ConnectionGraph random_connection_graph(const RandomGraphOptions& opts, Rng& rng) {
  std::uniform_int_distribution<int> count(opts.min_vertices, opts.max_vertices);
  std::uniform_real_distribution<double> positive(0.5, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int k = count(rng);
  const int d = opts.dimension;

  std::vector<Vertex> vertices;
  for (int i = 1; i <= k; ++i) vertices.push_back({std::to_string(i), opts.unit_weights ? 1.0 : positive(rng)});

  auto make_edge = [&](int a, int b) {
    Edge e;
    e.u = std::to_string(a);
    e.v = std::to_string(b);
    e.weight = opts.unit_weights ? 1.0 : positive(rng);
    e.sigma = opts.identity_connections ? Mat(Mat::Identity(d, d)) : random_unitary(d, rng, opts.real);
    return e;
  };

  std::vector<Edge> edges;
  std::vector<std::vector<bool>> used(static_cast<std::size_t>(k + 1), std::vector<bool>(static_cast<std::size_t>(k + 1), false));
  for (int b = 2; b <= k; ++b) {
    std::uniform_int_distribution<int> pick(1, b - 1);
    const int a = pick(rng);
    used[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    edges.push_back(make_edge(a, b));
  }
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      if (!used[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] && coin(rng) < opts.extra_edge_prob)
        edges.push_back(make_edge(a, b));

  return ConnectionGraph(d, opts.real ? Field::real : Field::complex, std::move(vertices), std::move(edges));
}

std::map<std::string, Mat> random_switching(const ConnectionGraph& g, Rng& rng, bool real) {
  std::map<std::string, Mat> tau;
  for (const auto& v : g.vertices()) tau[v.id] = random_unitary(g.dimension(), rng, real);
  return tau;
}

}  // namespace conncurv
