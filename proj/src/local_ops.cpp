#include "conncurv/local_ops.hpp"

#include "conncurv/errors.hpp"
#include "conncurv/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace conncurv {

bool is_s1_in_regular(const LocalStructure& local) {
  const double ref = local.p(1, 0);
  for (int i = 2; i <= local.m; ++i)
    if (std::abs(local.p(i, 0) - ref) > 1e-12 * std::max(1.0, ref)) return false;
  return true;
}

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::pair<ConnectionGraph, EditReport> add_spherical_edge(const ConnectionGraph& g, const std::string& x,
                                                          const std::string& yi, const std::string& yj,
                                                          double w_new, const std::optional<Mat>& sigma_new) {
  const LocalStructure before = local_structure(g, x);
  if (!contains(before.s1, yi) || !contains(before.s1, yj) || yi == yj)
    throw ValidationError("add_spherical_edge: " + yi + " and " + yj + " must be distinct neighbors of " + x);
  if (g.adjacent(yi, yj)) throw ValidationError("add_spherical_edge: " + yi + " and " + yj + " are already adjacent");
  if (!(w_new > 0.0)) throw ValidationError("add_spherical_edge: weight must be positive");

  std::vector<Edge> edges = g.edges();
  const Mat sigma = sigma_new ? *sigma_new : Mat(g.sigma(yi, x) * g.sigma(x, yj));
  edges.push_back({yi, yj, w_new, sigma});
  const bool stays_real = sigma.imag().cwiseAbs().maxCoeff() <= 1e-12;
  ConnectionGraph out(g.dimension(), g.field() == Field::real && stays_real ? Field::real : Field::complex,
                      g.vertices(), std::move(edges));
  const LocalStructure after = local_structure(out, x);

  EditReport rep;
  rep.vertex = x;
  rep.before = curvature(before, kInf).K;
  rep.after = curvature(after, kInf).K;
  rep.delta_psd = is_psd(HermitianMatrix(gamma2_matrix(after).mat() - gamma2_matrix(before).mat()));
  rep.s1_in_regular = is_s1_in_regular(before);
  rep.default_sigma = !sigma_new.has_value();
  if (rep.default_sigma && rep.s1_in_regular && (rep.after < rep.before - 1e-9 || !*rep.delta_psd)) {
    std::ostringstream os;
    os << "balanced spherical edge " << yi << "-" << yj << " at S1-in regular vertex " << x
       << " decreased curvature from " << rep.before << " to " << rep.after
       << (*rep.delta_psd ? "" : " (Gamma_2 difference not PSD)") << " (tolerance 1e-9)";
    throw CrossCheckError(os.str());
  }
  return {std::move(out), rep};
}

HermitianMatrix switched_gamma2_difference(const ConnectionGraph& before, const ConnectionGraph& after,
                                           const std::string& x) {
  const int d = before.dimension();
  std::map<std::string, Mat> tau;
  for (const auto& v : before.vertices()) tau[v.id] = Mat::Identity(d, d);
  for (const auto& y : before.neighbors(x)) tau[y] = before.sigma(x, y).adjoint();
  const LocalStructure lb = local_structure(switch_graph(before, tau), x);
  const LocalStructure la = local_structure(switch_graph(after, tau), x);
  if (lb.s1 != la.s1 || lb.s2 != la.s2)
    throw ValidationError("switched_gamma2_difference: local structures have different vertex sets");
  return HermitianMatrix(gamma2_matrix(la).mat() - gamma2_matrix(lb).mat());
}

const std::vector<double>& merge_check_grid() {
  static const std::vector<double> grid{0.5, 1.0, 2.0, 4.0, kInf};
  return grid;
}

std::pair<ConnectionGraph, EditReport> merge_s2(const ConnectionGraph& g, const std::string& x, const std::string& zk,
                                                const std::string& zl) {
  const LocalStructure before = local_structure(g, x);
  if (!contains(before.s2, zk) || !contains(before.s2, zl) || zk == zl)
    throw ValidationError("merge_s2: " + zk + " and " + zl + " must be distinct vertices of the 2-sphere of " + x);
  if (g.adjacent(zk, zl)) throw ValidationError("merge_s2: " + zk + " and " + zl + " are adjacent");
  const auto nk = g.neighbors(zk);
  for (const auto& u : g.neighbors(zl))
    if (contains(nk, u)) throw ValidationError("merge_s2: " + zk + " and " + zl + " share the neighbor " + u);

  const std::string z = zk + "+" + zl;
  if (g.has_vertex(z)) throw ValidationError("merge_s2: vertex id " + z + " already exists");
  std::vector<Vertex> vertices;
  for (const auto& v : g.vertices()) {
    if (v.id == zk) {
      vertices.push_back({z, g.measure(zk) + g.measure(zl)});
    } else if (v.id != zl) {
      vertices.push_back(v);
    }
  }
  auto rename = [&](const std::string& id) { return id == zk || id == zl ? z : id; };
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) {
    e.u = rename(e.u);
    e.v = rename(e.v);
  }
  ConnectionGraph out(g.dimension(), g.field(), std::move(vertices), std::move(edges));
  const LocalStructure after = local_structure(out, x);

  for (double N : merge_check_grid()) {
    const double kb = curvature(before, N).K;
    const double ka = curvature(after, N).K;
    if (ka < kb - 1e-9) {
      std::ostringstream os;
      os << "merging " << zk << " and " << zl << " decreased curvature at " << x << " from " << kb << " to " << ka
         << " at N=" << N << " (tolerance 1e-9)";
      throw CrossCheckError(os.str());
    }
  }
  EditReport rep;
  rep.vertex = x;
  rep.before = curvature(before, kInf).K;
  rep.after = curvature(after, kInf).K;
  rep.s1_in_regular = is_s1_in_regular(before);
  return {std::move(out), rep};
}

}  // namespace conncurv
