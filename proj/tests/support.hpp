#pragma once

// Reference implementations used only by tests. Everything here is evaluated
// straight from the recursive definitions on the graph, independent of the
// closed-form block assembly in the library.

#include "conncurv/graph.hpp"
#include "conncurv/linalg.hpp"
#include "conncurv/product.hpp"
#include "conncurv/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace support {

using conncurv::cplx;
using conncurv::ConnectionGraph;
using conncurv::Index;
using conncurv::Mat;
using conncurv::Vec;

using Function = std::map<std::string, Vec>;

inline Vec value(const Function& f, const std::string& u, int d) {
  const auto it = f.find(u);
  return it == f.end() ? Vec::Zero(d) : it->second;
}

inline double rate(const ConnectionGraph& g, const std::string& u, const std::string& v) {
  return g.weight(u, v) / g.measure(u);
}

inline Vec laplacian(const ConnectionGraph& g, const Function& f, const std::string& u) {
  const int d = g.dimension();
  Vec out = Vec::Zero(d);
  for (const auto& v : g.neighbors(u)) out += rate(g, u, v) * (g.sigma(u, v) * value(f, v, d) - value(f, u, d));
  return out;
}

inline cplx carre(const ConnectionGraph& g, const Function& f, const Function& h, const std::string& u) {
  const int d = g.dimension();
  cplx out = 0.0;
  for (const auto& v : g.neighbors(u)) {
    const Vec df = g.sigma(u, v) * value(f, v, d) - value(f, u, d);
    const Vec dh = g.sigma(u, v) * value(h, v, d) - value(h, u, d);
    out += rate(g, u, v) * (df.transpose() * dh.conjugate())(0, 0);
  }
  return 0.5 * out;
}

inline cplx carre2(const ConnectionGraph& g, const Function& f, const Function& h, const std::string& x) {
  Function lf, lh;
  lf[x] = laplacian(g, f, x);
  lh[x] = laplacian(g, h, x);
  for (const auto& y : g.neighbors(x)) {
    lf[y] = laplacian(g, f, y);
    lh[y] = laplacian(g, h, y);
  }
  cplx lap_gamma = 0.0;
  const cplx gx = carre(g, f, h, x);
  for (const auto& y : g.neighbors(x)) lap_gamma += rate(g, x, y) * (carre(g, f, h, y) - gx);
  return 0.5 * (lap_gamma - carre(g, f, lh, x) - carre(g, lf, h, x));
}

struct Recursive {
  std::vector<std::string> order;  // x, sorted 1-sphere, sorted 2-sphere
  int ball1 = 0;                   // (m+1) d
  Mat gamma;                       // 2 Gamma on the 1-ball
  Mat gamma2;                      // 4 Gamma_2 on the 2-ball
  Mat delta;                       // row a = (Delta e_a)(x)^T on the 1-ball
};

inline Recursive recursive_matrices(const ConnectionGraph& g, const std::string& x) {
  const int d = g.dimension();
  Recursive r;
  r.order.push_back(x);
  const auto s1 = g.neighbors(x);
  r.order.insert(r.order.end(), s1.begin(), s1.end());
  std::vector<std::string> s2;
  for (const auto& y : s1)
    for (const auto& z : g.neighbors(y))
      if (z != x && std::find(s1.begin(), s1.end(), z) == s1.end() && std::find(s2.begin(), s2.end(), z) == s2.end())
        s2.push_back(z);
  std::sort(s2.begin(), s2.end());
  r.order.insert(r.order.end(), s2.begin(), s2.end());
  const int total = static_cast<int>(r.order.size()) * d;
  r.ball1 = static_cast<int>(1 + s1.size()) * d;

  std::vector<Function> basis(total);
  for (int a = 0; a < total; ++a) {
    Vec e = Vec::Zero(d);
    e(a % d) = 1.0;
    basis[a][r.order[a / d]] = e;
  }
  r.gamma = Mat::Zero(r.ball1, r.ball1);
  r.delta = Mat::Zero(r.ball1, d);
  r.gamma2 = Mat::Zero(total, total);
  for (int a = 0; a < total; ++a) {
    if (a < r.ball1) r.delta.row(a) = laplacian(g, basis[a], x).transpose();
    for (int b = 0; b < total; ++b) {
      if (a < r.ball1 && b < r.ball1) r.gamma(a, b) = 2.0 * carre(g, basis[a], basis[b], x);
      r.gamma2(a, b) = 4.0 * carre2(g, basis[a], basis[b], x);
    }
  }
  return r;
}

inline double min_eig(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Largest K with 4 Gamma_2 - (4/N) Delta Delta^H - 2K (2 Gamma) >= 0 on the
// 2-ball, by bracket expansion and bisection.
inline double bisection_oracle(const ConnectionGraph& g, const std::string& x, double N, double eps = 1e-11) {
  const Recursive r = recursive_matrices(g, x);
  const Index total = r.gamma2.rows();
  Mat base = r.gamma2;
  if (!std::isinf(N)) base.topLeftCorner(r.ball1, r.ball1) -= (4.0 / N) * r.delta * r.delta.adjoint();
  Mat gam = Mat::Zero(total, total);
  gam.topLeftCorner(r.ball1, r.ball1) = 2.0 * r.gamma;
  // Rounding level of the probed matrix.
  const double rounding = 8.0 * static_cast<double>(total) * std::numeric_limits<double>::epsilon();
  auto feasible = [&](double k) {
    const Mat probe = base - k * gam;
    return min_eig(probe) >= -rounding * std::max(1.0, probe.cwiseAbs().rowwise().sum().maxCoeff());
  };
  double lo = -1.0, hi = 1.0;
  while (!feasible(lo)) lo *= 2.0;
  while (feasible(hi)) hi *= 2.0;
  while (hi - lo > eps) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

// Random graph options covering d in {1, 2}, real and complex connections.
inline conncurv::RandomGraphOptions random_options(conncurv::Rng& rng, int max_vertices = 6) {
  conncurv::RandomGraphOptions o;
  o.max_vertices = max_vertices;
  o.dimension = 1 + static_cast<int>(rng() % 2);
  o.real = rng() % 3 == 0;
  o.identity_connections = rng() % 5 == 0;
  o.unit_weights = rng() % 4 == 0;
  return o;
}

// A vertex with at least one neighbor.
inline std::string some_vertex(const ConnectionGraph& g, conncurv::Rng& rng) {
  const auto& vs = g.vertices();
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const auto& id = vs[(rng() + k) % vs.size()].id;
    if (!g.neighbors(id).empty()) return id;
  }
  return vs.front().id;
}

// Same graph with every connection multiplied by a random phase times the
// identity; such connections commute with every d x d matrix.
inline ConnectionGraph scalar_phases(const ConnectionGraph& g, conncurv::Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::vector<conncurv::Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.weight, std::polar(1.0, angle(rng)) * e.sigma});
  return ConnectionGraph(g.dimension(), conncurv::Field::complex, g.vertices(), std::move(edges));
}

struct Pair {
  ConnectionGraph g;
  ConnectionGraph g2;
  std::string x;
  std::string x2;
  conncurv::ProductSpec spec;
};

// Commuting pair: d = 1 with arbitrary U(1) connections, or d = 2 with one
// arbitrary factor and one factor of scalar phases.
inline Pair commuting_pair(conncurv::Rng& rng) {
  conncurv::RandomGraphOptions o = random_options(rng, 5);
  o.dimension = 1 + static_cast<int>(rng() % 2);
  ConnectionGraph g = conncurv::random_connection_graph(o, rng);
  conncurv::RandomGraphOptions o2 = random_options(rng, 4);
  o2.dimension = o.dimension;
  if (o.dimension == 2) o2.identity_connections = true;
  ConnectionGraph g2 = conncurv::random_connection_graph(o2, rng);
  if (o.dimension == 2) g2 = scalar_phases(g2, rng);
  if (rng() % 2) std::swap(g, g2);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  const std::string x = some_vertex(g, rng);
  const std::string x2 = some_vertex(g2, rng);
  return {g, g2, x, x2, {scale(rng), scale(rng), conncurv::Lift::same_dimension}};
}

}  // namespace support
