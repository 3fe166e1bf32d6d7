#include "conncurv/product.hpp"

#include "conncurv/curvature.hpp"
#include "conncurv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conncurv {

std::string product_vertex(const std::string& x, const std::string& x2) { return x + "|" + x2; }

namespace {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Field joint_field(const ConnectionGraph& g, const ConnectionGraph& g2) {
  return g.field() == Field::real && g2.field() == Field::real ? Field::real : Field::complex;
}

}  // namespace

ConnectionGraph tensor_lift(const ConnectionGraph& g, int left, int right) {
  const Mat il = Mat::Identity(left, left);
  const Mat ir = Mat::Identity(right, right);
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.sigma = kron(kron(il, e.sigma), ir);
  return ConnectionGraph(g.dimension() * left * right, g.field(), g.vertices(), std::move(edges));
}

ConnectionGraph cartesian_product(const ConnectionGraph& g, const ConnectionGraph& g2, const ProductSpec& spec) {
  if (!(spec.alpha > 0.0) || !(spec.beta > 0.0)) throw ValidationError("product weights alpha, beta must be positive");
  if (spec.lift == Lift::tensor) {
    return cartesian_product(tensor_lift(g, 1, g2.dimension()), tensor_lift(g2, g.dimension(), 1),
                             {spec.alpha, spec.beta, Lift::same_dimension});
  }
  if (g.dimension() != g2.dimension())
    throw ValidationError("product of graphs with different dimensions requires the tensor lift");

  std::vector<Vertex> vertices;
  for (const auto& v : g.vertices())
    for (const auto& v2 : g2.vertices()) vertices.push_back({product_vertex(v.id, v2.id), v.measure * v2.measure});
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    for (const auto& v2 : g2.vertices())
      edges.push_back({product_vertex(e.u, v2.id), product_vertex(e.v, v2.id), spec.alpha * e.weight * v2.measure, e.sigma});
  for (const auto& e : g2.edges())
    for (const auto& v : g.vertices())
      edges.push_back({product_vertex(v.id, e.u), product_vertex(v.id, e.v), spec.beta * e.weight * v.measure, e.sigma});
  return ConnectionGraph(g.dimension(), joint_field(g, g2), std::move(vertices), std::move(edges));
}

namespace {

Mat reorder(const Mat& m, const std::vector<int>& order, int d) {
  const Index k = static_cast<Index>(order.size());
  Mat out(k * d, k * d);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) out.block(i * d, j * d, d, d) = m.block(order[i] * d, order[j] * d, d, d);
  return out;
}

// The limit of the J blocks is taken when either parameter is infinite.
struct JCoefficients {
  double top = 0.0;
  double off = 0.0;
  double bottom = 0.0;
};

JCoefficients j_coefficients(double alpha, double beta, double N, double N2) {
  JCoefficients c;
  const bool inf1 = std::isinf(N);
  const bool inf2 = std::isinf(N2);
  if (inf1 && inf2) return c;
  if (inf1) {
    c.bottom = 2.0 * beta / N2;
    return c;
  }
  if (inf2) {
    c.top = 2.0 * alpha / N;
    return c;
  }
  const double s = 2.0 / (N + N2);
  c.top = s * alpha * N2 / N;
  c.off = -s * std::sqrt(alpha * beta);
  c.bottom = s * beta * N / N2;
  return c;
}

}  // namespace

ProductDecomposition product_decomposition(const ConnectionGraph& g_in, const ConnectionGraph& g2_in,
                                           const ProductSpec& spec, const std::string& x, const std::string& x2,
                                           double N, double N2) {
  const bool lift = spec.lift == Lift::tensor;
  const ConnectionGraph g = lift ? tensor_lift(g_in, 1, g2_in.dimension()) : g_in;
  const ConnectionGraph g2 = lift ? tensor_lift(g2_in, g_in.dimension(), 1) : g2_in;
  if (g.dimension() != g2.dimension())
    throw ValidationError("product of graphs with different dimensions requires the tensor lift");
  if (!signature_groups_commute(g, g2))
    throw ValidationError("product_decomposition: the connections of the two factors do not commute (tolerance 1e-9)");

  const double alpha = spec.alpha;
  const double beta = spec.beta;
  const int d = g.dimension();
  const LocalStructure l1 = local_structure(g, x);
  const LocalStructure l2 = local_structure(g2, x2);
  const CurvatureBundle b1 = curvature_bundle(l1, N, canonical_basis(l1));
  const CurvatureBundle b2 = curvature_bundle(l2, N2, canonical_basis(l2));

  const ConnectionGraph prod = cartesian_product(g, g2, {alpha, beta, Lift::same_dimension});
  const LocalStructure lp = local_structure(prod, product_vertex(x, x2));
  const double total = std::isinf(N) || std::isinf(N2) ? kInf : N + N2;
  const HermitianMatrix ap = curvature_matrix(lp, total);

  ProductDecomposition out;
  for (const auto& y : l1.s1)
    out.order.push_back(static_cast<int>(std::lower_bound(lp.s1.begin(), lp.s1.end(), product_vertex(y, x2)) - lp.s1.begin()));
  for (const auto& y2 : l2.s1)
    out.order.push_back(static_cast<int>(std::lower_bound(lp.s1.begin(), lp.s1.end(), product_vertex(x, y2)) - lp.s1.begin()));
  out.product = HermitianMatrix(reorder(ap.mat(), out.order, d));

  const Index n1 = b1.a_n.size();
  const Index n2 = b2.a_n.size();
  Mat bd = Mat::Zero(n1 + n2, n1 + n2);
  bd.topLeftCorner(n1, n1) = alpha * b1.a_n.mat();
  bd.bottomRightCorner(n2, n2) = beta * b2.a_n.mat();
  out.block_diagonal = HermitianMatrix(bd);

  const Mat& a1 = b1.a.mat();
  const Mat& a2 = b2.a.mat();
  const Mat& w1 = b1.omega_t;
  const Mat& w2 = b2.omega_t;
  const double floor = 1e-12 * std::max({1.0, max_abs(a1), max_abs(a2)});
  auto pinv_d = [&](const Mat& m) { return pinv((m + m.adjoint()) / 2.0, 1e-10 * d, floor); };
  const Mat sum_pinv = pinv_d(alpha * alpha * a1 + beta * beta * a2);
  Mat r(n1 + n2, n1 + n2);
  r.topLeftCorner(n1, n1) = std::pow(alpha, 3) * w1.adjoint() * (pinv_d(alpha * alpha * a1) - sum_pinv) * w1;
  r.topRightCorner(n1, n2) = -std::pow(alpha * beta, 1.5) * w1.adjoint() * sum_pinv * w2;
  r.bottomLeftCorner(n2, n1) = -std::pow(alpha * beta, 1.5) * w2.adjoint() * sum_pinv * w1;
  r.bottomRightCorner(n2, n2) = std::pow(beta, 3) * w2.adjoint() * (pinv_d(beta * beta * a2) - sum_pinv) * w2;
  out.r = HermitianMatrix((r + r.adjoint()) / 2.0);

  const JCoefficients c = j_coefficients(alpha, beta, N, N2);
  Mat j(n1 + n2, n1 + n2);
  j.topLeftCorner(n1, n1) = c.top * b1.v0 * b1.v0.adjoint();
  j.topRightCorner(n1, n2) = c.off * b1.v0 * b2.v0.adjoint();
  j.bottomLeftCorner(n2, n1) = c.off * b2.v0 * b1.v0.adjoint();
  j.bottomRightCorner(n2, n2) = c.bottom * b2.v0 * b2.v0.adjoint();
  out.j = HermitianMatrix(j);

  out.residual = max_abs(out.product.mat() - bd - out.r.mat() - out.j.mat());
  out.r_min_eig = eigenvalues(out.r)(0);
  out.j_min_eig = eigenvalues(out.j)(0);
  if (out.residual > 1e-9 || out.r_min_eig < -1e-9 || out.j_min_eig < -1e-9) {
    std::ostringstream os;
    os << "product decomposition at " << product_vertex(x, x2) << " fails: residual " << out.residual
       << ", lambda_min(R) " << out.r_min_eig << ", lambda_min(J) " << out.j_min_eig << " (tolerance 1e-9)";
    throw CrossCheckError(os.str());
  }
  return out;
}

double star_product(const std::function<double(double)>& f1, const std::function<double(double)>& f2, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("star_product: t must be positive");
  if (std::isinf(t)) return std::min(f1(kInf), f2(kInf));
  constexpr int kProbes = 16;
  double prev1 = -kInf;
  double prev2 = -kInf;
  for (int k = 1; k < kProbes; ++k) {
    const double s = t * k / kProbes;
    const double v1 = f1(s);
    const double v2 = f2(s);
    if (v1 < prev1 - 1e-9 * std::max(1.0, std::abs(prev1)) || v2 < prev2 - 1e-9 * std::max(1.0, std::abs(prev2)))
      throw std::invalid_argument("star_product: input functions are not monotone non-decreasing");
    prev1 = v1;
    prev2 = v2;
  }
  // f1(t1) - f2(t - t1) increases from -inf to +inf on (0, t).
  double lo = 0.0;
  double hi = t;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * t; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f1(mid) - f2(t - mid) < 0.0 ? lo : hi) = mid;
  }
  return f1(0.5 * (lo + hi));
}

}  // namespace conncurv
